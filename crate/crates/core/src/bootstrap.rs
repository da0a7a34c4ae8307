//! Sequential curve calibration from market quote sets.
//!
//! Quotes are consumed in maturity order and each one pins exactly one new
//! pillar: the discount factor (or pseudo discount factor) at the
//! instrument's final payment date is solved so the instrument reprices at
//! its quoted par rate on the curve built so far. The discount curve is
//! calibrated first from OIS-style quotes; tenor curves follow, projecting
//! their forwards from pseudo discount factors while discounting every
//! cash flow on the already-built discount curve.
//!
//! The one-dimensional root search brackets each pillar df in
//! `(1e-8, 10)` and refines by false position with the Illinois
//! safeguard, which shrinks the bracket from both sides and converges
//! superlinearly for these smooth, monotone objectives.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::curves::{Curve, CurveSet, DiscountCurve, ForwardCurve, Interpolation};
use crate::error::{Error, Result};
use crate::instruments::{annuity, price_float_leg, Conventions};
use crate::temporal::{adjust, Date, Tenor};

// ---------------------------------------------------------------------------
// Quotes
// ---------------------------------------------------------------------------

/// Instrument family of a market quote.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuoteKind {
    Deposit,
    Fra,
    Swap,
    Ois,
    BasisSwap,
}

impl fmt::Display for QuoteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuoteKind::Deposit => "DEPOSIT",
            QuoteKind::Fra => "FRA",
            QuoteKind::Swap => "SWAP",
            QuoteKind::Ois => "OIS",
            QuoteKind::BasisSwap => "BASIS",
        })
    }
}

impl FromStr for QuoteKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "DEPOSIT" | "DEPO" => Ok(QuoteKind::Deposit),
            "FRA" => Ok(QuoteKind::Fra),
            "SWAP" => Ok(QuoteKind::Swap),
            "OIS" => Ok(QuoteKind::Ois),
            "BASIS" | "BASISSWAP" | "BASIS_SWAP" => Ok(QuoteKind::BasisSwap),
            _ => Err(Error::InvalidLabel { what: "quote kind", text: s.to_string() }),
        }
    }
}

/// Start of the quoted instrument: the spot date or an explicit date.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuoteStart {
    Spot,
    On(Date),
}

impl fmt::Display for QuoteStart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuoteStart::Spot => f.write_str("SPOT"),
            QuoteStart::On(d) => write!(f, "{d}"),
        }
    }
}

/// Maturity of the quoted instrument: a tenor from the start date or an
/// explicit date.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuoteMaturity {
    Tenor(Tenor),
    On(Date),
}

impl fmt::Display for QuoteMaturity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuoteMaturity::Tenor(t) => write!(f, "{t}"),
            QuoteMaturity::On(d) => write!(f, "{d}"),
        }
    }
}

/// One calibration quote. `tenor` names the underlying index (1D for
/// overnight instruments); `quote` is a decimal rate.
#[derive(Debug, Clone, PartialEq)]
pub struct MarketQuote {
    pub curve_id: String,
    pub kind: QuoteKind,
    pub tenor: Tenor,
    pub start: QuoteStart,
    pub maturity: QuoteMaturity,
    pub quote: f64,
}

impl MarketQuote {
    /// Short identifier used in diagnostics.
    pub fn label(&self) -> String {
        format!("{} {} {} {}", self.curve_id, self.kind, self.tenor, self.maturity)
    }

    pub fn resolve_start(&self, anchor: Date, conventions: &Conventions) -> Date {
        match self.start {
            QuoteStart::Spot => conventions.spot(anchor),
            QuoteStart::On(d) => d,
        }
    }

    /// The date of the pillar this quote pins: its business-day adjusted
    /// final payment date.
    pub fn pillar_date(&self, anchor: Date, conventions: &Conventions) -> Date {
        let start = self.resolve_start(anchor, conventions);
        let raw = match self.maturity {
            QuoteMaturity::Tenor(t) => return conventions.end_date(start, t),
            QuoteMaturity::On(d) => d,
        };
        adjust(raw, conventions.business_day_convention, &conventions.calendar)
    }
}

impl fmt::Display for MarketQuote {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{},{},{}",
            self.curve_id, self.kind, self.tenor, self.start, self.maturity, self.quote
        )
    }
}

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

/// Bootstrap settings. The defaults reproduce standard EUR-style
/// conventions: spot lag 2, annual 30E/360 fixed legs, ACT/360 floats.
#[derive(Debug, Clone)]
pub struct BootstrapConfig {
    /// Bracket-width stop for the pillar root search, in df units.
    pub df_tolerance: f64,
    pub max_iterations: u32,
    pub interpolation: Interpolation,
    pub conventions: Conventions,
}

impl Default for BootstrapConfig {
    fn default() -> Self {
        BootstrapConfig {
            df_tolerance: 1e-12,
            max_iterations: 100,
            interpolation: Interpolation::LogLinearDf,
            conventions: Conventions::default(),
        }
    }
}

// ---------------------------------------------------------------------------
// Root search
// ---------------------------------------------------------------------------

const BRACKET_LO: f64 = 1e-8;
const BRACKET_HI: f64 = 10.0;
/// The solver keeps iterating until the residual is this small as well as
/// the bracket being narrow, so short-dated pillars (whose par rates react
/// steeply to df) still reprice far inside reporting tolerances.
const RESIDUAL_TOL: f64 = 1e-13;

/// Finds the df in `(BRACKET_LO, BRACKET_HI)` that zeroes `objective`.
fn solve_pillar<F>(mut objective: F, config: &BootstrapConfig, label: &str) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let solver_err = |reason: String| Error::Solver { quote: label.to_string(), reason };

    let mut a = BRACKET_LO;
    let mut b = BRACKET_HI;
    let mut fa = objective(a)?;
    let mut fb = objective(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(solver_err(format!(
            "no sign change on ({BRACKET_LO:e}, {BRACKET_HI}): f(lo) = {fa:e}, f(hi) = {fb:e}"
        )));
    }

    let mut best = if fa.abs() <= fb.abs() { (a, fa) } else { (b, fb) };
    let mut side: i8 = 0;
    for _ in 0..config.max_iterations {
        // false-position candidate, midpoint when it rounds onto the bracket
        let mut c = (a * fb - b * fa) / (fb - fa);
        if !c.is_finite() || c <= a.min(b) || c >= a.max(b) {
            c = 0.5 * (a + b);
        }
        let fc = objective(c)?;
        if fc.abs() < best.1.abs() {
            best = (c, fc);
        }
        if fc == 0.0 {
            return Ok(c);
        }
        if fc.signum() == fb.signum() {
            b = c;
            fb = fc;
            // same endpoint replaced twice running: halve the stale side
            // so it cannot pin the iteration (the Illinois step)
            if side == 1 {
                fa *= 0.5;
            }
            side = 1;
        } else {
            a = c;
            fa = fc;
            if side == -1 {
                fb *= 0.5;
            }
            side = -1;
        }
        if (b - a).abs() <= config.df_tolerance && best.1.abs() <= RESIDUAL_TOL {
            return Ok(best.0);
        }
    }
    Err(solver_err(format!(
        "no convergence after {} iterations: bracket width {:e}, residual {:e}",
        config.max_iterations,
        (b - a).abs(),
        best.1
    )))
}

// ---------------------------------------------------------------------------
// Par-rate models
// ---------------------------------------------------------------------------

/// Par rate of `quote` when forwards project from `projection` and cash
/// flows discount on `discount`. For OIS quotes only the discount curve
/// enters. Basis quotes are spreads of the quote tenor against the
/// overnight leg and need a full curve set, so they are handled in
/// [`reprice_residuals`] instead.
fn model_par_rate(
    quote: &MarketQuote,
    anchor: Date,
    discount: &DiscountCurve,
    projection: &ForwardCurve,
    conventions: &Conventions,
) -> Result<f64> {
    let start = quote.resolve_start(anchor, conventions);
    let pillar = quote.pillar_date(anchor, conventions);
    match quote.kind {
        QuoteKind::Deposit | QuoteKind::Fra => {
            projection.forward_rate(start, pillar, conventions.float_day_count)
        }
        QuoteKind::Swap => {
            let end = match quote.maturity {
                QuoteMaturity::Tenor(_) => pillar,
                QuoteMaturity::On(d) => d,
            };
            let leg = conventions.float_leg(1.0, start, end, quote.tenor)?;
            let float_pv = price_float_leg(&leg, discount, projection)?;
            let fixed = conventions.fixed_schedule(start, end)?;
            let a = annuity(&fixed, discount)?;
            if a == 0.0 {
                return Err(Error::Instrument("degenerate fixed schedule: zero annuity".into()));
            }
            Ok(float_pv / a)
        }
        QuoteKind::Ois => {
            let end = match quote.maturity {
                QuoteMaturity::Tenor(_) => pillar,
                QuoteMaturity::On(d) => d,
            };
            let fixed = conventions.fixed_schedule(start, end)?;
            let a = annuity(&fixed, discount)?;
            if a == 0.0 {
                return Err(Error::Instrument("degenerate fixed schedule: zero annuity".into()));
            }
            let float_pv = discount.discount_factor(fixed.start())?
                - discount.discount_factor(fixed.final_pay_date())?;
            Ok(float_pv / a)
        }
        QuoteKind::BasisSwap => Err(Error::UnsupportedQuote {
            quote: quote.label(),
            reason: "basis quotes are redundant checks, not calibration instruments".into(),
        }),
    }
}

// ---------------------------------------------------------------------------
// Bootstrap
// ---------------------------------------------------------------------------

fn ensure_new_pillar(
    pillar: Date,
    last: Option<Date>,
    anchor: Date,
    quote: &MarketQuote,
) -> Result<()> {
    if pillar <= anchor {
        return Err(Error::QuoteOrdering(format!(
            "{} matures at {pillar}, not after the anchor {anchor}",
            quote.label()
        )));
    }
    if let Some(last) = last {
        if pillar <= last {
            return Err(Error::QuoteOrdering(format!(
                "{} pins {pillar}, which does not follow the last solved pillar {last}",
                quote.label()
            )));
        }
    }
    Ok(())
}

/// Calibrates the discount curve from OIS and deposit quotes sorted by
/// maturity. Each quote adds one pillar at its final payment date.
pub fn bootstrap_discount_curve(
    anchor: Date,
    quotes: &[MarketQuote],
    config: &BootstrapConfig,
) -> Result<DiscountCurve> {
    if quotes.is_empty() {
        return Err(Error::Config("discount bootstrap needs at least one quote".into()));
    }
    let conv = &config.conventions;
    let mut pillars: Vec<(Date, f64)> = Vec::with_capacity(quotes.len());
    for q in quotes {
        match q.kind {
            QuoteKind::Deposit | QuoteKind::Ois => {}
            _ => {
                return Err(Error::UnsupportedQuote {
                    quote: q.label(),
                    reason: "discount bootstrap accepts OIS and deposit quotes only".into(),
                })
            }
        }
        let pillar = q.pillar_date(anchor, conv);
        ensure_new_pillar(pillar, pillars.last().map(|p| p.0), anchor, q)?;

        let df = solve_pillar(
            |x| {
                let mut trial = pillars.clone();
                trial.push((pillar, x));
                let curve = DiscountCurve::from_pillars(anchor, &trial, config.interpolation)?;
                let projection = ForwardCurve::from_discount(Tenor::days(1), &curve)?;
                Ok(model_par_rate(q, anchor, &curve, &projection, conv)? - q.quote)
            },
            config,
            &q.label(),
        )?;
        pillars.push((pillar, df));
    }
    DiscountCurve::from_pillars(anchor, &pillars, config.interpolation)
}

/// Calibrates the pseudo-df curve of one index tenor against an already
/// built discount curve. Quotes must be deposits, FRAs or swaps on that
/// tenor, sorted by maturity.
pub fn bootstrap_forward_curve(
    tenor: Tenor,
    quotes: &[MarketQuote],
    discount: &DiscountCurve,
    config: &BootstrapConfig,
) -> Result<ForwardCurve> {
    if quotes.is_empty() {
        return Err(Error::Config(format!("forward bootstrap for {tenor} needs quotes")));
    }
    let anchor = discount.anchor();
    let conv = &config.conventions;
    let mut pillars: Vec<(Date, f64)> = Vec::with_capacity(quotes.len());
    for q in quotes {
        match q.kind {
            QuoteKind::Deposit | QuoteKind::Fra | QuoteKind::Swap => {}
            _ => {
                return Err(Error::UnsupportedQuote {
                    quote: q.label(),
                    reason: "forward bootstrap accepts deposit, FRA and swap quotes only".into(),
                })
            }
        }
        if q.tenor != tenor {
            return Err(Error::UnsupportedQuote {
                quote: q.label(),
                reason: format!("quote tenor {} differs from curve tenor {tenor}", q.tenor),
            });
        }
        let pillar = q.pillar_date(anchor, conv);
        ensure_new_pillar(pillar, pillars.last().map(|p| p.0), anchor, q)?;

        let df = solve_pillar(
            |x| {
                let mut trial = pillars.clone();
                trial.push((pillar, x));
                let curve =
                    ForwardCurve::from_pillars(tenor, anchor, &trial, config.interpolation)?;
                Ok(model_par_rate(q, anchor, discount, &curve, conv)? - q.quote)
            },
            config,
            &q.label(),
        )?;
        pillars.push((pillar, df));
    }
    ForwardCurve::from_pillars(tenor, anchor, &pillars, config.interpolation)
}

/// Splits a quote file into curve groups, bootstraps the discount curve
/// and every tenor curve, and returns the assembled set.
///
/// The discount curve is the group holding OIS quotes; exactly one group
/// may hold them. Every other group must quote a single index tenor.
/// Quotes are sorted by pillar date within each group. When the file
/// defines no 1D curve, the overnight curve is installed as a copy of the
/// discount pillars.
pub fn build_curve_set(
    anchor: Date,
    quotes: &[MarketQuote],
    config: &BootstrapConfig,
) -> Result<CurveSet> {
    if quotes.is_empty() {
        return Err(Error::Config("no quotes supplied".into()));
    }
    let conv = &config.conventions;

    let mut groups: BTreeMap<&str, Vec<&MarketQuote>> = BTreeMap::new();
    for q in quotes {
        groups.entry(q.curve_id.as_str()).or_default().push(q);
    }

    let mut discount_ids: Vec<&str> = groups
        .iter()
        .filter(|(_, qs)| qs.iter().any(|q| q.kind == QuoteKind::Ois))
        .map(|(id, _)| *id)
        .collect();
    let discount_id = match (discount_ids.len(), discount_ids.pop()) {
        (1, Some(id)) => id,
        (0, _) => {
            return Err(Error::Config(
                "cannot identify the discount curve: no curve group holds OIS quotes".into(),
            ))
        }
        _ => {
            return Err(Error::Config(
                "cannot identify the discount curve: several curve groups hold OIS quotes".into(),
            ))
        }
    };

    let sorted = |mut qs: Vec<&MarketQuote>| -> Vec<MarketQuote> {
        qs.sort_by_key(|q| q.pillar_date(anchor, conv));
        qs.into_iter().cloned().collect()
    };

    let discount_quotes = sorted(groups.remove(discount_id).unwrap());
    let discount = bootstrap_discount_curve(anchor, &discount_quotes, config)?;

    let mut set = CurveSet::new(discount);
    for (id, group) in groups {
        let tenor = group[0].tenor;
        if let Some(stray) = group.iter().find(|q| q.tenor != tenor) {
            return Err(Error::Config(format!(
                "curve group {id} mixes tenors {tenor} and {}",
                stray.tenor
            )));
        }
        let group = sorted(group);
        let curve = bootstrap_forward_curve(tenor, &group, set.discount(), config)?;
        set.insert_forward(curve)?;
    }
    set.ensure_overnight();
    Ok(set)
}

/// Par-rate residuals `model - quote`, in quote order. Deposit, FRA and
/// swap quotes project from the curve of their tenor; OIS quotes use the
/// discount curve alone; basis quotes compare the quote tenor against the
/// overnight leg.
pub fn reprice_residuals(
    curves: &CurveSet,
    quotes: &[MarketQuote],
    conventions: &Conventions,
) -> Result<Vec<f64>> {
    let anchor = curves.anchor();
    quotes
        .iter()
        .map(|q| {
            let model = match q.kind {
                QuoteKind::Ois => {
                    model_par_rate(q, anchor, curves.discount(), curves.forward(Tenor::days(1))?, conventions)?
                }
                QuoteKind::BasisSwap => {
                    let start = q.resolve_start(anchor, conventions);
                    let end = match q.maturity {
                        QuoteMaturity::Tenor(_) => q.pillar_date(anchor, conventions),
                        QuoteMaturity::On(d) => d,
                    };
                    let swap = conventions.basis_swap(1.0, start, end, q.tenor, Tenor::days(1))?;
                    crate::instruments::basis_spread(&swap, curves)?
                }
                _ => model_par_rate(
                    q,
                    anchor,
                    curves.discount(),
                    curves.forward(q.tenor)?,
                    conventions,
                )?,
            };
            Ok(model - q.quote)
        })
        .collect()
}
