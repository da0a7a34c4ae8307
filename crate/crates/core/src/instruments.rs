//! Linear interest-rate instruments priced off a [`CurveSet`].
//!
//! Cash flows are discounted on the discount curve while floating coupons
//! are projected from the forward curve matching the leg's tenor. A payer
//! swap (pays fixed) has omega +1, a receiver -1, and the two prices are
//! exact negations of each other.

use std::fmt;
use std::str::FromStr;

use crate::curves::{Curve, CurveSet, DiscountCurve, ForwardCurve};
use crate::error::{Error, Result};
use crate::temporal::{
    add_tenor, adjust, generate_schedule, year_fraction, BusinessDayConvention, Calendar, Date,
    DayCount, Schedule, Tenor,
};

/// Direction of the fixed leg: a payer pays fixed and receives floating.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwapSide {
    Payer,
    Receiver,
}

impl SwapSide {
    /// Sign applied to (floating leg - fixed leg).
    pub fn omega(self) -> f64 {
        match self {
            SwapSide::Payer => 1.0,
            SwapSide::Receiver => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            SwapSide::Payer => SwapSide::Receiver,
            SwapSide::Receiver => SwapSide::Payer,
        }
    }
}

impl fmt::Display for SwapSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SwapSide::Payer => "payer",
            SwapSide::Receiver => "receiver",
        })
    }
}

impl FromStr for SwapSide {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "payer" => Ok(SwapSide::Payer),
            "receiver" => Ok(SwapSide::Receiver),
            _ => Err(Error::InvalidLabel { what: "swap side", text: s.to_string() }),
        }
    }
}

// ---------------------------------------------------------------------------
// Market conventions
// ---------------------------------------------------------------------------

/// Schedule and quotation conventions shared by instrument builders, the
/// bootstrap and the report generators.
#[derive(Debug, Clone)]
pub struct Conventions {
    /// Accrual basis of floating legs and deposits.
    pub float_day_count: DayCount,
    /// Accrual basis of fixed legs.
    pub fixed_day_count: DayCount,
    /// Coupon frequency of fixed legs (annual by default).
    pub fixed_frequency: Tenor,
    pub business_day_convention: BusinessDayConvention,
    pub calendar: Calendar,
    /// Business days from trade anchor to spot start.
    pub spot_lag: u32,
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions {
            float_day_count: DayCount::Act360,
            fixed_day_count: DayCount::Thirty360European,
            fixed_frequency: Tenor::years(1),
            business_day_convention: BusinessDayConvention::ModifiedFollowing,
            calendar: Calendar::weekends_only(),
            spot_lag: 2,
        }
    }
}

impl Conventions {
    /// Spot date: `spot_lag` business days after `anchor`.
    pub fn spot(&self, anchor: Date) -> Date {
        self.calendar.add_business_days(anchor, self.spot_lag)
    }

    /// `start + tenor`, rolled onto a business day.
    pub fn end_date(&self, start: Date, tenor: Tenor) -> Date {
        adjust(add_tenor(start, tenor), self.business_day_convention, &self.calendar)
    }

    /// Fixed-leg schedule over `[start, end)`.
    pub fn fixed_schedule(&self, start: Date, end: Date) -> Result<Schedule> {
        generate_schedule(
            start,
            end,
            self.fixed_frequency,
            self.fixed_day_count,
            self.business_day_convention,
            &self.calendar,
        )
    }

    /// Floating-leg schedule over `[start, end)` at the coupon frequency
    /// `tenor`.
    pub fn float_schedule(&self, start: Date, end: Date, tenor: Tenor) -> Result<Schedule> {
        generate_schedule(
            start,
            end,
            tenor,
            self.float_day_count,
            self.business_day_convention,
            &self.calendar,
        )
    }

    pub fn float_leg(&self, nominal: f64, start: Date, end: Date, tenor: Tenor) -> Result<FloatLeg> {
        FloatLeg::new(
            nominal,
            self.float_schedule(start, end, tenor)?,
            tenor,
            self.business_day_convention,
            &self.calendar,
        )
    }

    pub fn fixed_leg(&self, nominal: f64, start: Date, end: Date, rate: f64) -> Result<FixedLeg> {
        FixedLeg::new(nominal, self.fixed_schedule(start, end)?, rate)
    }

    /// Deposit starting at `start`, maturing at the rolled `start + tenor`.
    pub fn deposit(&self, nominal: f64, start: Date, tenor: Tenor, fixing: f64) -> Result<Deposit> {
        Deposit::new(nominal, start, self.end_date(start, tenor), fixing, self.float_day_count)
    }

    pub fn vanilla_swap(
        &self,
        nominal: f64,
        start: Date,
        end: Date,
        rate: f64,
        tenor: Tenor,
        side: SwapSide,
    ) -> Result<VanillaSwap> {
        VanillaSwap::new(
            self.fixed_leg(nominal, start, end, rate)?,
            self.float_leg(nominal, start, end, tenor)?,
            side,
        )
    }

    pub fn ois_swap(
        &self,
        nominal: f64,
        start: Date,
        end: Date,
        rate: f64,
        side: SwapSide,
    ) -> Result<OisSwap> {
        Ok(OisSwap { fixed: self.fixed_leg(nominal, start, end, rate)?, side })
    }

    pub fn basis_swap(
        &self,
        nominal: f64,
        start: Date,
        end: Date,
        tenor_x: Tenor,
        tenor_y: Tenor,
    ) -> Result<BasisSwap> {
        BasisSwap::new(
            self.float_leg(nominal, start, end, tenor_x)?,
            self.float_leg(nominal, start, end, tenor_y)?,
            self.fixed_schedule(start, end)?,
        )
    }
}

fn ensure_positive_nominal(nominal: f64) -> Result<()> {
    if !(nominal.is_finite() && nominal > 0.0) {
        return Err(Error::Instrument(format!("nominal must be positive, got {nominal}")));
    }
    Ok(())
}

fn ensure_alive(final_payment: Date, anchor: Date) -> Result<()> {
    if final_payment <= anchor {
        return Err(Error::Matured { maturity: final_payment, anchor });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Deposit
// ---------------------------------------------------------------------------

/// A money-market deposit with a known fixing, repaying
/// `N * (1 + fixing * tau)` at maturity.
#[derive(Debug, Clone, PartialEq)]
pub struct Deposit {
    pub nominal: f64,
    pub start: Date,
    pub maturity: Date,
    pub fixing: f64,
    pub day_count: DayCount,
}

impl Deposit {
    pub fn new(
        nominal: f64,
        start: Date,
        maturity: Date,
        fixing: f64,
        day_count: DayCount,
    ) -> Result<Self> {
        ensure_positive_nominal(nominal)?;
        if maturity <= start {
            return Err(Error::DateOrder { first: start, second: maturity });
        }
        Ok(Deposit { nominal, start, maturity, fixing, day_count })
    }
}

/// Discounted terminal cash flow of a deposit:
/// `N * df(maturity) * (1 + fixing * tau(start, maturity))`.
pub fn price_deposit(deposit: &Deposit, discount: &DiscountCurve) -> Result<f64> {
    ensure_alive(deposit.maturity, discount.anchor())?;
    let tau = year_fraction(deposit.start, deposit.maturity, deposit.day_count)?;
    let df = discount.discount_factor(deposit.maturity)?;
    Ok(deposit.nominal * df * (1.0 + deposit.fixing * tau))
}

// ---------------------------------------------------------------------------
// Legs
// ---------------------------------------------------------------------------

/// Fixed leg paying `rate` on each schedule period.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedLeg {
    pub nominal: f64,
    pub schedule: Schedule,
    pub rate: f64,
}

impl FixedLeg {
    pub fn new(nominal: f64, schedule: Schedule, rate: f64) -> Result<Self> {
        ensure_positive_nominal(nominal)?;
        Ok(FixedLeg { nominal, schedule, rate })
    }
}

/// Floating leg indexed to one Libor tenor. Stub-free: every period spans
/// exactly one tenor step, which construction verifies against the
/// schedule grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatLeg {
    pub nominal: f64,
    pub schedule: Schedule,
    pub tenor: Tenor,
}

impl FloatLeg {
    pub fn new(
        nominal: f64,
        schedule: Schedule,
        tenor: Tenor,
        convention: BusinessDayConvention,
        calendar: &Calendar,
    ) -> Result<Self> {
        ensure_positive_nominal(nominal)?;
        let start = schedule.start();
        match tenor.unit() {
            crate::temporal::TenorUnit::Day => {
                for p in schedule.periods() {
                    let expected = calendar.add_business_days(p.accrual_start, tenor.count());
                    if p.accrual_end != expected {
                        return Err(Error::Instrument(format!(
                            "floating period {} .. {} does not span one {tenor} step",
                            p.accrual_start, p.accrual_end
                        )));
                    }
                }
            }
            _ => {
                for (k, p) in schedule.periods().iter().enumerate() {
                    let expected =
                        adjust(add_tenor(start, tenor.scaled(k as u32 + 1)), convention, calendar);
                    if p.accrual_end != expected {
                        return Err(Error::Instrument(format!(
                            "floating period {} .. {} does not span one {tenor} step",
                            p.accrual_start, p.accrual_end
                        )));
                    }
                }
            }
        }
        Ok(FloatLeg { nominal, schedule, tenor })
    }
}

/// Fixed-leg annuity: `sum_i df(pay_i) * tau_i` under the schedule's own
/// day count.
pub fn annuity(schedule: &Schedule, discount: &DiscountCurve) -> Result<f64> {
    let mut total = 0.0;
    for p in schedule.periods() {
        total += discount.discount_factor(p.pay_date)? * schedule.accrual(p)?;
    }
    Ok(total)
}

/// `N * rate * annuity`.
pub fn price_fixed_leg(leg: &FixedLeg, discount: &DiscountCurve) -> Result<f64> {
    ensure_alive(leg.schedule.final_pay_date(), discount.anchor())?;
    Ok(leg.nominal * leg.rate * annuity(&leg.schedule, discount)?)
}

/// Floating leg value: each coupon projects the forward of the leg tenor
/// over its accrual period and discounts it at the payment date.
pub fn price_float_leg(
    leg: &FloatLeg,
    discount: &DiscountCurve,
    forward: &ForwardCurve,
) -> Result<f64> {
    if forward.tenor() != leg.tenor {
        return Err(Error::TenorMismatch {
            leg: leg.tenor.to_string(),
            curve: forward.tenor().to_string(),
        });
    }
    ensure_alive(leg.schedule.final_pay_date(), discount.anchor())?;
    let day_count = leg.schedule.day_count();
    let mut total = 0.0;
    for p in leg.schedule.periods() {
        let f = forward.forward_rate(p.accrual_start, p.accrual_end, day_count)?;
        let tau = leg.schedule.accrual(p)?;
        total += discount.discount_factor(p.pay_date)? * f * tau;
    }
    Ok(leg.nominal * total)
}

/// Single-curve shortcut for a floating leg whose forwards and discounts
/// come from the same curve: the sum telescopes to
/// `N * (df(start) - df(end))`.
pub fn single_curve_float_leg(
    schedule: &Schedule,
    curve: &DiscountCurve,
    nominal: f64,
) -> Result<f64> {
    ensure_positive_nominal(nominal)?;
    let first = curve.discount_factor(schedule.start())?;
    let last = curve.discount_factor(schedule.final_pay_date())?;
    Ok(nominal * (first - last))
}

// ---------------------------------------------------------------------------
// Swaps
// ---------------------------------------------------------------------------

/// Fixed-for-floating interest rate swap.
#[derive(Debug, Clone, PartialEq)]
pub struct VanillaSwap {
    pub fixed: FixedLeg,
    pub floating: FloatLeg,
    pub side: SwapSide,
}

impl VanillaSwap {
    /// Legs must share start and end dates.
    pub fn new(fixed: FixedLeg, floating: FloatLeg, side: SwapSide) -> Result<Self> {
        if fixed.schedule.start() != floating.schedule.start()
            || fixed.schedule.end() != floating.schedule.end()
        {
            return Err(Error::Instrument(format!(
                "leg schedules misaligned: fixed {} .. {}, floating {} .. {}",
                fixed.schedule.start(),
                fixed.schedule.end(),
                floating.schedule.start(),
                floating.schedule.end()
            )));
        }
        Ok(VanillaSwap { fixed, floating, side })
    }
}

/// Swap value `omega * (floating leg - fixed leg)`. Payer and receiver
/// prices are exact negations.
pub fn price_swap(swap: &VanillaSwap, curves: &CurveSet) -> Result<f64> {
    let forward = curves.forward(swap.floating.tenor)?;
    let float_pv = price_float_leg(&swap.floating, curves.discount(), forward)?;
    let fixed_pv = price_fixed_leg(&swap.fixed, curves.discount())?;
    Ok(swap.side.omega() * (float_pv - fixed_pv))
}

/// Par rate of the floating leg against a fixed schedule:
/// `float_pv / (N * annuity)`.
pub fn swap_rate(
    floating: &FloatLeg,
    fixed_schedule: &Schedule,
    curves: &CurveSet,
) -> Result<f64> {
    let forward = curves.forward(floating.tenor)?;
    let float_pv = price_float_leg(floating, curves.discount(), forward)?;
    let a = annuity(fixed_schedule, curves.discount())?;
    if a == 0.0 {
        return Err(Error::Instrument("degenerate fixed schedule: zero annuity".into()));
    }
    Ok(float_pv / (floating.nominal * a))
}

/// Overnight indexed swap: the compounded floating leg telescopes to
/// `df(start) - df(end)`, so only the discount curve enters.
#[derive(Debug, Clone, PartialEq)]
pub struct OisSwap {
    pub fixed: FixedLeg,
    pub side: SwapSide,
}

impl OisSwap {
    pub fn start(&self) -> Date {
        self.fixed.schedule.start()
    }

    pub fn end(&self) -> Date {
        self.fixed.schedule.final_pay_date()
    }
}

/// OIS value `omega * (N * (df(start) - df(end)) - fixed leg)`.
pub fn price_ois(
    fixed: &FixedLeg,
    start: Date,
    end: Date,
    discount: &DiscountCurve,
    side: SwapSide,
) -> Result<f64> {
    ensure_alive(end, discount.anchor())?;
    let float_pv =
        fixed.nominal * (discount.discount_factor(start)? - discount.discount_factor(end)?);
    let fixed_pv = fixed.nominal * fixed.rate * annuity(&fixed.schedule, discount)?;
    Ok(side.omega() * (float_pv - fixed_pv))
}

/// Par rate of an OIS: `(df(start) - df(end)) / annuity`.
pub fn ois_rate(fixed_schedule: &Schedule, discount: &DiscountCurve) -> Result<f64> {
    let start = fixed_schedule.start();
    let end = fixed_schedule.final_pay_date();
    let a = annuity(fixed_schedule, discount)?;
    if a == 0.0 {
        return Err(Error::Instrument("degenerate fixed schedule: zero annuity".into()));
    }
    Ok((discount.discount_factor(start)? - discount.discount_factor(end)?) / a)
}

/// Tenor basis swap: floating leg of tenor x against floating leg of
/// tenor y, quoted through the equivalent fixed rates over a common fixed
/// schedule.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisSwap {
    pub leg_x: FloatLeg,
    pub leg_y: FloatLeg,
    pub fixed_schedule: Schedule,
}

impl BasisSwap {
    /// All three schedules must share start and end dates.
    pub fn new(leg_x: FloatLeg, leg_y: FloatLeg, fixed_schedule: Schedule) -> Result<Self> {
        let (s, e) = (fixed_schedule.start(), fixed_schedule.end());
        for (name, sched) in [("x", &leg_x.schedule), ("y", &leg_y.schedule)] {
            if sched.start() != s || sched.end() != e {
                return Err(Error::Instrument(format!(
                    "basis swap leg {name} misaligned: {} .. {} against fixed {s} .. {e}",
                    sched.start(),
                    sched.end()
                )));
            }
        }
        Ok(BasisSwap { leg_x, leg_y, fixed_schedule })
    }
}

/// Basis spread `delta(x, y) = R_x - R_y`: the difference of the two
/// equivalent fixed rates over the common fixed schedule. Antisymmetric in
/// the legs.
pub fn basis_spread(swap: &BasisSwap, curves: &CurveSet) -> Result<f64> {
    let rx = swap_rate(&swap.leg_x, &swap.fixed_schedule, curves)?;
    let ry = swap_rate(&swap.leg_y, &swap.fixed_schedule, curves)?;
    Ok(rx - ry)
}

// ---------------------------------------------------------------------------
// Trade wrapper
// ---------------------------------------------------------------------------

/// Any instrument the pricer and the risk ladder accept.
#[derive(Debug, Clone, PartialEq)]
pub enum Trade {
    Deposit(Deposit),
    Swap(VanillaSwap),
    Ois(OisSwap),
    Basis(BasisSwap),
}

impl Trade {
    /// Name of the measure [`price_trade`] reports: present value for
    /// cash-flow trades, the fair spread for basis swaps.
    pub fn measure_name(&self) -> &'static str {
        match self {
            Trade::Basis(_) => "spread",
            _ => "pv",
        }
    }
}

/// The trade's quoted measure on the given curves: PV for deposits, swaps
/// and OIS, the fair basis spread for basis swaps.
pub fn price_trade(trade: &Trade, curves: &CurveSet) -> Result<f64> {
    match trade {
        Trade::Deposit(d) => price_deposit(d, curves.discount()),
        Trade::Swap(s) => price_swap(s, curves),
        Trade::Ois(o) => price_ois(&o.fixed, o.start(), o.end(), curves.discount(), o.side),
        Trade::Basis(b) => basis_spread(b, curves),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::Interpolation;
    use crate::temporal::date;
    use proptest::prelude::*;

    fn d(y: i32, m: u32, dd: u32) -> Date {
        date(y, m, dd).unwrap()
    }

    /// Conventions with unadjusted rolling and 30E/360 everywhere, so the
    /// hand-computed fixtures below see exact year fractions.
    fn exact_conventions() -> Conventions {
        Conventions {
            float_day_count: DayCount::Thirty360European,
            business_day_convention: BusinessDayConvention::Unadjusted,
            ..Conventions::default()
        }
    }

    fn disc(anchor: Date, pillars: &[(Date, f64)]) -> DiscountCurve {
        DiscountCurve::from_pillars(anchor, pillars, Interpolation::LogLinearDf).unwrap()
    }

    fn fwd(tenor: Tenor, anchor: Date, pillars: &[(Date, f64)]) -> ForwardCurve {
        ForwardCurve::from_pillars(tenor, anchor, pillars, Interpolation::LogLinearDf).unwrap()
    }

    #[test]
    fn deposit_discounts_terminal_flow() {
        // 90 days ACT/360, fixing 2%, df(maturity) 0.995
        let anchor = d(2011, 6, 30);
        let maturity = d(2011, 9, 28);
        let curve = disc(anchor, &[(maturity, 0.995)]);
        let depo = Deposit::new(1.0, anchor, maturity, 0.02, DayCount::Act360).unwrap();
        let pv = price_deposit(&depo, &curve).unwrap();
        assert_eq!(pv, 0.995 * (1.0 + 0.02 * 0.25));
        assert!((pv - 0.999_975_0).abs() < 1e-9);
    }

    #[test]
    fn deposit_matured_when_anchor_reaches_maturity() {
        let maturity = d(2011, 9, 28);
        let curve = disc(maturity, &[(d(2012, 9, 28), 0.99)]);
        let depo = Deposit::new(1.0, d(2011, 6, 30), maturity, 0.02, DayCount::Act360).unwrap();
        assert!(matches!(price_deposit(&depo, &curve), Err(Error::Matured { .. })));
    }

    #[test]
    fn annuity_single_annual_period() {
        // 2010-06-30 .. 2011-06-30 is tau 1.0 under 30E/360; both weekdays
        let anchor = d(2010, 6, 30);
        let end = d(2011, 6, 30);
        let conv = exact_conventions();
        let sched = conv.fixed_schedule(anchor, end).unwrap();
        assert_eq!(sched.len(), 1);
        let curve = disc(anchor, &[(end, 0.98)]);
        assert_eq!(annuity(&sched, &curve).unwrap(), 0.98);
    }

    #[test]
    fn float_leg_single_period_value() {
        // forward 2.4% over one year, df(pay) 0.98: pv = 0.98 * 0.024
        let anchor = d(2010, 6, 30);
        let end = d(2011, 6, 30);
        let conv = exact_conventions();
        let curve = disc(anchor, &[(end, 0.98)]);
        let forward = fwd(Tenor::months(12), anchor, &[(end, 1.0 / 1.024)]);
        let leg = conv.float_leg(1.0, anchor, end, Tenor::months(12)).unwrap();
        let pv = price_float_leg(&leg, &curve, &forward).unwrap();
        assert!((pv - 0.98 * 0.024).abs() < 1e-15);
    }

    #[test]
    fn float_leg_rejects_mismatched_curve_tenor() {
        let anchor = d(2010, 6, 30);
        let end = d(2011, 6, 30);
        let conv = exact_conventions();
        let curve = disc(anchor, &[(end, 0.98)]);
        let forward = fwd(Tenor::months(6), anchor, &[(end, 0.97)]);
        let leg = conv.float_leg(1.0, anchor, end, Tenor::months(12)).unwrap();
        assert!(matches!(
            price_float_leg(&leg, &curve, &forward),
            Err(Error::TenorMismatch { .. })
        ));
    }

    #[test]
    fn float_leg_rejects_stub_schedules() {
        let conv = exact_conventions();
        // nine months at a 6M frequency leaves a 3M stub
        let err = conv.float_leg(1.0, d(2011, 6, 30), d(2012, 3, 30), Tenor::months(6));
        assert!(matches!(err, Err(Error::Instrument(_))));
    }

    #[test]
    fn swap_single_period_payer_value() {
        // forward 3%, fixed 2%, tau 1, df 0.97: payer pv = 0.97 * 0.01
        let anchor = d(2010, 6, 30);
        let end = d(2011, 6, 30);
        let conv = exact_conventions();
        let curves = CurveSet::new(disc(anchor, &[(end, 0.97)]))
            .with_forward(fwd(Tenor::months(12), anchor, &[(end, 1.0 / 1.03)]))
            .unwrap();
        let swap = conv
            .vanilla_swap(1.0, anchor, end, 0.02, Tenor::months(12), SwapSide::Payer)
            .unwrap();
        let pv = price_swap(&swap, &curves).unwrap();
        assert!((pv - 0.0097).abs() < 1e-15);
    }

    #[test]
    fn payer_and_receiver_negate_exactly() {
        let anchor = d(2011, 6, 30);
        let end = d(2021, 6, 30);
        let conv = Conventions::default();
        let curves = CurveSet::new(DiscountCurve::flat(anchor, 0.02, end).unwrap())
            .with_forward(ForwardCurve::flat(Tenor::months(6), anchor, 0.024, end).unwrap())
            .unwrap();
        let spot = conv.spot(anchor);
        let swap_end = conv.end_date(spot, Tenor::years(10));
        let payer = conv
            .vanilla_swap(5e6, spot, swap_end, 0.021, Tenor::months(6), SwapSide::Payer)
            .unwrap();
        let mut receiver = payer.clone();
        receiver.side = SwapSide::Receiver;
        let p = price_swap(&payer, &curves).unwrap();
        let r = price_swap(&receiver, &curves).unwrap();
        assert_eq!(p, -r);
    }

    #[test]
    fn par_swap_prices_to_zero() {
        let anchor = d(2011, 6, 30);
        let horizon = d(2031, 6, 30);
        let conv = Conventions::default();
        let curves = CurveSet::new(DiscountCurve::flat(anchor, 0.02, horizon).unwrap())
            .with_forward(ForwardCurve::flat(Tenor::months(6), anchor, 0.025, horizon).unwrap())
            .unwrap();
        let spot = conv.spot(anchor);
        let end = conv.end_date(spot, Tenor::years(10));
        let leg = conv.float_leg(1.0, spot, end, Tenor::months(6)).unwrap();
        let fixed_schedule = conv.fixed_schedule(spot, end).unwrap();
        let par = swap_rate(&leg, &fixed_schedule, &curves).unwrap();
        let nominal = 3e6;
        let swap = conv
            .vanilla_swap(nominal, spot, end, par, Tenor::months(6), SwapSide::Payer)
            .unwrap();
        let pv = price_swap(&swap, &curves).unwrap();
        assert!(pv.abs() <= 1e-13 * nominal * 10.0, "pv = {pv}");
    }

    #[test]
    fn ois_at_implied_par_rate_prices_to_zero() {
        // df(1Y) = 1/1.02 makes 2% the par rate of a one-period annual OIS
        let anchor = d(2010, 6, 30);
        let end = d(2011, 6, 30);
        let conv = exact_conventions();
        let curve = disc(anchor, &[(end, 1.0 / 1.02)]);
        let sched = conv.fixed_schedule(anchor, end).unwrap();
        let par = ois_rate(&sched, &curve).unwrap();
        assert!((par - 0.02).abs() < 1e-15);
        let ois = conv.ois_swap(1.0, anchor, end, par, SwapSide::Payer).unwrap();
        let pv = price_ois(&ois.fixed, ois.start(), ois.end(), &curve, ois.side).unwrap();
        assert!(pv.abs() < 1e-15);
    }

    #[test]
    fn single_curve_float_leg_telescopes() {
        let anchor = d(2011, 6, 30);
        let horizon = d(2014, 6, 30);
        let conv = Conventions::default();
        let curve = DiscountCurve::flat(anchor, 0.03, horizon).unwrap();
        let forward = ForwardCurve::from_discount(Tenor::months(3), &curve).unwrap();
        let spot = conv.spot(anchor);
        let end = conv.end_date(spot, Tenor::years(2));
        let nominal = 1e6;
        let leg = conv.float_leg(nominal, spot, end, Tenor::months(3)).unwrap();
        let pv = price_float_leg(&leg, &curve, &forward).unwrap();
        let shortcut = single_curve_float_leg(&leg.schedule, &curve, nominal).unwrap();
        assert!((pv - shortcut).abs() <= 1e-12 * nominal, "gap = {}", pv - shortcut);
    }

    #[test]
    fn basis_spread_from_hand_curves() {
        // dfs 0.99 / 0.98 at 6M / 1Y; 6M forwards 2%, 12M forward 2.4%;
        // fixed tau 1: delta = 0.024 - (0.99 + 0.98) * 0.01 / 0.98
        let anchor = d(2011, 6, 30);
        let mid = d(2011, 12, 30);
        let end = d(2012, 6, 30);
        let conv = exact_conventions();
        let curves = CurveSet::new(disc(anchor, &[(mid, 0.99), (end, 0.98)]))
            .with_forward(fwd(
                Tenor::months(6),
                anchor,
                &[(mid, 1.0 / 1.01), (end, 1.0 / (1.01 * 1.01))],
            ))
            .unwrap()
            .with_forward(fwd(Tenor::months(12), anchor, &[(end, 1.0 / 1.024)]))
            .unwrap();
        let basis = conv
            .basis_swap(1.0, anchor, end, Tenor::months(12), Tenor::months(6))
            .unwrap();
        let delta = basis_spread(&basis, &curves).unwrap();
        let expected = 0.024 - (0.99 * 0.01 + 0.98 * 0.01) / 0.98;
        assert!((delta - expected).abs() < 1e-14);
        assert!((delta - 0.003_898_0).abs() < 1e-7);

        // antisymmetry is exact
        let flipped = conv
            .basis_swap(1.0, anchor, end, Tenor::months(6), Tenor::months(12))
            .unwrap();
        assert_eq!(basis_spread(&flipped, &curves).unwrap(), -delta);
    }

    #[test]
    fn basis_swap_rejects_misaligned_legs() {
        let conv = exact_conventions();
        let start = d(2011, 6, 30);
        let x = conv.float_leg(1.0, start, d(2012, 6, 30), Tenor::months(6)).unwrap();
        let y = conv.float_leg(1.0, start, d(2013, 6, 30), Tenor::months(6)).unwrap();
        let fixed = conv.fixed_schedule(start, d(2012, 6, 30)).unwrap();
        assert!(matches!(BasisSwap::new(x, y, fixed), Err(Error::Instrument(_))));
    }

    #[test]
    fn matured_legs_are_rejected() {
        let conv = exact_conventions();
        let start = d(2009, 6, 30);
        let end = d(2010, 6, 30);
        let curve = disc(d(2011, 6, 30), &[(d(2012, 6, 30), 0.98)]);
        let leg = conv.fixed_leg(1.0, start, end, 0.02).unwrap();
        assert!(matches!(price_fixed_leg(&leg, &curve), Err(Error::Matured { .. })));
    }

    #[test]
    fn nominal_must_be_positive() {
        let conv = exact_conventions();
        assert!(conv.float_leg(0.0, d(2011, 6, 30), d(2012, 6, 30), Tenor::months(6)).is_err());
        assert!(conv.float_leg(-1.0, d(2011, 6, 30), d(2012, 6, 30), Tenor::months(6)).is_err());
        assert!(Deposit::new(f64::NAN, d(2011, 6, 30), d(2012, 6, 30), 0.02, DayCount::Act360)
            .is_err());
    }

    proptest! {
        #[test]
        fn price_is_linear_in_nominal(nominal in 1.0f64..1e9, rate in 0.0f64..0.05) {
            let anchor = d(2011, 6, 30);
            let horizon = d(2031, 6, 30);
            let conv = Conventions::default();
            let curves = CurveSet::new(DiscountCurve::flat(anchor, 0.02, horizon).unwrap())
                .with_forward(ForwardCurve::flat(Tenor::months(6), anchor, 0.024, horizon).unwrap())
                .unwrap();
            let spot = conv.spot(anchor);
            let end = conv.end_date(spot, Tenor::years(5));
            let unit = conv.vanilla_swap(1.0, spot, end, rate, Tenor::months(6), SwapSide::Payer).unwrap();
            let sized = conv.vanilla_swap(nominal, spot, end, rate, Tenor::months(6), SwapSide::Payer).unwrap();
            let unit_pv = price_swap(&unit, &curves).unwrap();
            let sized_pv = price_swap(&sized, &curves).unwrap();
            prop_assert!((sized_pv - nominal * unit_pv).abs() <= 1e-15 * nominal * (1.0 + unit_pv.abs()));
        }
    }
}
