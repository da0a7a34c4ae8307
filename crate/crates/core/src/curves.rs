//! Discount and tenor forward curves.
//!
//! Both curve kinds store pillar discount factors and interpolate
//! log-linearly in the discount factor against actual day offsets from the
//! anchor date. Forward curves hold *pseudo* discount factors: numbers
//! whose ratios reproduce the simply compounded forwards of one Libor
//! tenor. They are never used to discount cash flows; discounting always
//! goes through the discount curve.
//!
//! Beyond the last pillar the instantaneous forward of the final segment is
//! held flat. Queries before the anchor are errors; the anchor itself
//! discounts to exactly 1.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::temporal::{year_fraction, Date, DayCount, Tenor};

/// Interpolation scheme of a pillar curve. Only one scheme is supported;
/// the enum exists so curve files state it explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Interpolation {
    /// Linear in log discount factor against day offset.
    #[default]
    LogLinearDf,
}

impl Interpolation {
    /// Wire label used by curve JSON documents.
    pub fn label(self) -> &'static str {
        match self {
            Interpolation::LogLinearDf => "loglinear_df",
        }
    }

    pub fn from_label(s: &str) -> Result<Self> {
        match s {
            "loglinear_df" => Ok(Interpolation::LogLinearDf),
            _ => Err(Error::InvalidLabel { what: "interpolation", text: s.to_string() }),
        }
    }
}

/// Shared pillar machinery of both curve kinds.
#[derive(Debug, Clone, PartialEq)]
struct PillarCurve {
    anchor: Date,
    dates: Vec<Date>,
    dfs: Vec<f64>,
    /// Day offsets of `dates` from the anchor.
    xs: Vec<f64>,
    ln_dfs: Vec<f64>,
    interpolation: Interpolation,
}

impl PillarCurve {
    fn new(anchor: Date, pillars: &[(Date, f64)], interpolation: Interpolation) -> Result<Self> {
        let mut full: Vec<(Date, f64)> = Vec::with_capacity(pillars.len() + 1);
        match pillars.first() {
            None => full.push((anchor, 1.0)),
            Some(&(d, df)) if d == anchor => {
                if df != 1.0 {
                    return Err(Error::Curve(format!(
                        "anchor pillar {d} must discount to 1, got {df}"
                    )));
                }
                full.push((d, df));
            }
            Some(_) => full.push((anchor, 1.0)),
        }
        let tail = if pillars.first().map(|p| p.0) == Some(anchor) { &pillars[1..] } else { pillars };
        full.extend_from_slice(tail);

        for w in full.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::Curve(format!(
                    "pillar dates not strictly increasing at {}",
                    w[1].0
                )));
            }
        }
        for &(d, df) in &full {
            if !(df.is_finite() && df > 0.0) {
                return Err(Error::Curve(format!("pillar at {d} has non-positive df {df}")));
            }
        }
        if full[0].0 < anchor {
            return Err(Error::Curve(format!(
                "pillar at {} precedes anchor {anchor}",
                full[0].0
            )));
        }

        let dates: Vec<Date> = full.iter().map(|p| p.0).collect();
        let dfs: Vec<f64> = full.iter().map(|p| p.1).collect();
        let xs: Vec<f64> = dates.iter().map(|d| (*d - anchor).num_days() as f64).collect();
        let ln_dfs: Vec<f64> = dfs.iter().map(|df| df.ln()).collect();
        Ok(PillarCurve { anchor, dates, dfs, xs, ln_dfs, interpolation })
    }

    fn discount_factor(&self, t: Date) -> Result<f64> {
        if t < self.anchor {
            return Err(Error::BeforeAnchor { date: t, anchor: self.anchor });
        }
        match self.dates.binary_search(&t) {
            // pillar dates pass through bit-exactly
            Ok(i) => Ok(self.dfs[i]),
            Err(pos) => {
                let x = (t - self.anchor).num_days() as f64;
                let n = self.dates.len();
                let ln = if pos >= n {
                    // flat instantaneous forward beyond the last pillar
                    let slope = if n >= 2 {
                        (self.ln_dfs[n - 1] - self.ln_dfs[n - 2]) / (self.xs[n - 1] - self.xs[n - 2])
                    } else {
                        0.0
                    };
                    self.ln_dfs[n - 1] + slope * (x - self.xs[n - 1])
                } else {
                    let (x0, x1) = (self.xs[pos - 1], self.xs[pos]);
                    let (y0, y1) = (self.ln_dfs[pos - 1], self.ln_dfs[pos]);
                    y0 + (y1 - y0) * (x - x0) / (x1 - x0)
                };
                Ok(ln.exp())
            }
        }
    }
}

/// Operations shared by [`DiscountCurve`] and [`ForwardCurve`].
pub trait Curve {
    fn anchor(&self) -> Date;

    fn interpolation(&self) -> Interpolation;

    /// Pillar dates in increasing order, starting at the anchor.
    fn pillar_dates(&self) -> &[Date];

    /// Pillar discount factors aligned with [`Curve::pillar_dates`].
    fn pillar_dfs(&self) -> &[f64];

    /// Discount factor at `t`. Exactly 1 at the anchor and bit-exact at
    /// pillar dates.
    fn discount_factor(&self, t: Date) -> Result<f64>;

    /// Simply compounded forward rate over `[t1, t2]` accrued with
    /// `day_count`: `(df(t1) / df(t2) - 1) / tau`.
    fn forward_rate(&self, t1: Date, t2: Date, day_count: DayCount) -> Result<f64> {
        if t2 <= t1 {
            return Err(Error::DateOrder { first: t1, second: t2 });
        }
        let tau = year_fraction(t1, t2, day_count)?;
        if tau == 0.0 {
            return Err(Error::Curve(format!(
                "zero accrual between {t1} and {t2} under {day_count}"
            )));
        }
        let df1 = self.discount_factor(t1)?;
        let df2 = self.discount_factor(t2)?;
        Ok((df1 / df2 - 1.0) / tau)
    }

    /// Continuously compounded zero rate at `t`, ACT/365F.
    fn zero_rate(&self, t: Date) -> Result<f64> {
        if t <= self.anchor() {
            return Err(Error::Curve(format!(
                "zero rate requires a date after the anchor {}",
                self.anchor()
            )));
        }
        let tau = year_fraction(self.anchor(), t, DayCount::Act365Fixed)?;
        Ok(-self.discount_factor(t)?.ln() / tau)
    }
}

/// The discounting curve of a curve set.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscountCurve {
    curve: PillarCurve,
}

impl DiscountCurve {
    /// Builds a curve from `(date, df)` pillars. A pillar at the anchor
    /// must carry df 1 and is inserted when missing; dates must be strictly
    /// increasing and dfs positive.
    pub fn from_pillars(
        anchor: Date,
        pillars: &[(Date, f64)],
        interpolation: Interpolation,
    ) -> Result<Self> {
        Ok(DiscountCurve { curve: PillarCurve::new(anchor, pillars, interpolation)? })
    }

    /// Flat curve with continuously compounded ACT/365F zero rate `rate`,
    /// carrying a single pillar at `horizon`.
    pub fn flat(anchor: Date, rate: f64, horizon: Date) -> Result<Self> {
        let tau = year_fraction(anchor, horizon, DayCount::Act365Fixed)?;
        if tau == 0.0 {
            return Err(Error::Curve("flat curve horizon must follow the anchor".into()));
        }
        DiscountCurve::from_pillars(
            anchor,
            &[(horizon, (-rate * tau).exp())],
            Interpolation::LogLinearDf,
        )
    }
}

impl Curve for DiscountCurve {
    fn anchor(&self) -> Date {
        self.curve.anchor
    }

    fn interpolation(&self) -> Interpolation {
        self.curve.interpolation
    }

    fn pillar_dates(&self) -> &[Date] {
        &self.curve.dates
    }

    fn pillar_dfs(&self) -> &[f64] {
        &self.curve.dfs
    }

    fn discount_factor(&self, t: Date) -> Result<f64> {
        self.curve.discount_factor(t)
    }
}

/// Projection curve of one Libor tenor, stored as pseudo discount factors.
#[derive(Debug, Clone, PartialEq)]
pub struct ForwardCurve {
    tenor: Tenor,
    curve: PillarCurve,
}

impl ForwardCurve {
    /// Builds a tenor curve from pseudo-df pillars. `tenor` must be one of
    /// the supported index tenors: 1D, 1M, 3M, 6M, 12M.
    pub fn from_pillars(
        tenor: Tenor,
        anchor: Date,
        pillars: &[(Date, f64)],
        interpolation: Interpolation,
    ) -> Result<Self> {
        if !tenor.is_index_tenor() {
            return Err(Error::Curve(format!(
                "unsupported forward curve tenor {tenor}: expected 1D, 1M, 3M, 6M or 12M"
            )));
        }
        Ok(ForwardCurve { tenor, curve: PillarCurve::new(anchor, pillars, interpolation)? })
    }

    /// Flat pseudo-df curve, see [`DiscountCurve::flat`].
    pub fn flat(tenor: Tenor, anchor: Date, rate: f64, horizon: Date) -> Result<Self> {
        let tau = year_fraction(anchor, horizon, DayCount::Act365Fixed)?;
        if tau == 0.0 {
            return Err(Error::Curve("flat curve horizon must follow the anchor".into()));
        }
        ForwardCurve::from_pillars(
            tenor,
            anchor,
            &[(horizon, (-rate * tau).exp())],
            Interpolation::LogLinearDf,
        )
    }

    /// A tenor curve that reuses the pillars of `discount`, so its forwards
    /// coincide with the discount curve's own forwards. This is the usual
    /// stand-in for the overnight (1D) index when no separate 1D quotes
    /// exist.
    pub fn from_discount(tenor: Tenor, discount: &DiscountCurve) -> Result<Self> {
        if !tenor.is_index_tenor() {
            return Err(Error::Curve(format!(
                "unsupported forward curve tenor {tenor}: expected 1D, 1M, 3M, 6M or 12M"
            )));
        }
        Ok(ForwardCurve { tenor, curve: discount.curve.clone() })
    }

    pub fn tenor(&self) -> Tenor {
        self.tenor
    }
}

impl Curve for ForwardCurve {
    fn anchor(&self) -> Date {
        self.curve.anchor
    }

    fn interpolation(&self) -> Interpolation {
        self.curve.interpolation
    }

    fn pillar_dates(&self) -> &[Date] {
        &self.curve.dates
    }

    fn pillar_dfs(&self) -> &[f64] {
        &self.curve.dfs
    }

    fn discount_factor(&self, t: Date) -> Result<f64> {
        self.curve.discount_factor(t)
    }
}

/// One discount curve plus the tenor curves sharing its anchor.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSet {
    discount: DiscountCurve,
    forwards: BTreeMap<Tenor, ForwardCurve>,
}

impl CurveSet {
    pub fn new(discount: DiscountCurve) -> Self {
        CurveSet { discount, forwards: BTreeMap::new() }
    }

    pub fn anchor(&self) -> Date {
        self.discount.anchor()
    }

    pub fn discount(&self) -> &DiscountCurve {
        &self.discount
    }

    /// Adds a tenor curve. The anchor must match the discount curve and
    /// the tenor must not already be present.
    pub fn insert_forward(&mut self, forward: ForwardCurve) -> Result<()> {
        if forward.anchor() != self.anchor() {
            return Err(Error::Curve(format!(
                "forward curve anchor {} differs from discount anchor {}",
                forward.anchor(),
                self.anchor()
            )));
        }
        let tenor = forward.tenor();
        if self.forwards.contains_key(&tenor) {
            return Err(Error::Curve(format!("duplicate forward curve for tenor {tenor}")));
        }
        self.forwards.insert(tenor, forward);
        Ok(())
    }

    /// Builder form of [`CurveSet::insert_forward`].
    pub fn with_forward(mut self, forward: ForwardCurve) -> Result<Self> {
        self.insert_forward(forward)?;
        Ok(self)
    }

    /// When no 1D curve is present, installs one carrying the discount
    /// curve's pillars, so overnight forwards project off the discount
    /// curve itself.
    pub fn ensure_overnight(&mut self) {
        let od = Tenor::days(1);
        if !self.forwards.contains_key(&od) {
            let curve = ForwardCurve::from_discount(od, &self.discount)
                .expect("1D is an index tenor");
            self.forwards.insert(od, curve);
        }
    }

    pub fn has_forward(&self, tenor: Tenor) -> bool {
        self.forwards.contains_key(&tenor)
    }

    pub fn forward(&self, tenor: Tenor) -> Result<&ForwardCurve> {
        self.forwards.get(&tenor).ok_or_else(|| Error::MissingCurve(tenor.to_string()))
    }

    /// Tenor curves in increasing tenor order.
    pub fn forwards(&self) -> impl Iterator<Item = &ForwardCurve> {
        self.forwards.values()
    }

    pub fn tenors(&self) -> Vec<Tenor> {
        self.forwards.keys().copied().collect()
    }
}
