//! Reports over calibrated curve sets and fixing histories.
//!
//! The centerpiece is the replication-gap report: equal-maturity floating
//! legs on different index tenors, which coincide on a single curve and
//! fan out once each tenor carries its own forwards. Around it sit the
//! basis-spread term structure, bump-and-reprice delta ladders against
//! the calibration quotes, rolling fixing correlations, and a seeded
//! Monte-Carlo check that the simulated FRA rate stays centered on its
//! forward value.

use std::collections::{BTreeMap, BTreeSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::bootstrap::{build_curve_set, BootstrapConfig, MarketQuote};
use crate::curves::CurveSet;
use crate::error::{Error, Result};
use crate::instruments::{annuity, price_float_leg, price_trade, swap_rate, Conventions, Trade};
use crate::temporal::{Date, Tenor};

// ---------------------------------------------------------------------------
// Replication-gap report
// ---------------------------------------------------------------------------

/// One tenor's floating leg over the common horizon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectroscopyRow {
    pub tenor: Tenor,
    /// Number of coupon periods in the leg.
    pub coupons: usize,
    pub float_pv: f64,
    /// PV minus the reference row's PV.
    pub gap_pv: f64,
    /// The gap as a fixed-rate equivalent: gap divided by the annual
    /// annuity over the same horizon.
    pub gap_rate: f64,
}

/// Equal-maturity floating legs across tenors, gaps against the
/// overnight row.
#[derive(Debug, Clone)]
pub struct SpectroscopyReport {
    pub start: Date,
    pub maturity: Date,
    pub nominal: f64,
    /// Tenor of the row the gaps are measured against.
    pub reference: Tenor,
    /// Rows ascending in tenor.
    pub rows: Vec<SpectroscopyRow>,
}

/// Prices one floating leg per requested tenor over
/// `[spot, maturity]` and reports each PV's gap against the overnight
/// row (or the shortest requested tenor when 1D is not requested).
///
/// The horizon must be a whole number of periods for every tenor.
pub fn spectroscopy_report(
    curves: &CurveSet,
    maturity: Date,
    tenors: &[Tenor],
    nominal: f64,
    conventions: &Conventions,
) -> Result<SpectroscopyReport> {
    if tenors.is_empty() {
        return Err(Error::Config("no tenors requested".into()));
    }
    let mut sorted: Vec<Tenor> = tenors.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != tenors.len() {
        return Err(Error::Config("duplicate tenor in the request".into()));
    }
    let start = conventions.spot(curves.anchor());

    let mut rows = Vec::with_capacity(sorted.len());
    for &tenor in &sorted {
        ensure_whole_periods(start, maturity, tenor, conventions)?;
        let forward = curves.forward(tenor)?;
        let leg = conventions.float_leg(nominal, start, maturity, tenor)?;
        let float_pv = price_float_leg(&leg, curves.discount(), forward)?;
        rows.push(SpectroscopyRow {
            tenor,
            coupons: leg.schedule.len(),
            float_pv,
            gap_pv: 0.0,
            gap_rate: 0.0,
        });
    }

    let reference = if sorted.contains(&Tenor::days(1)) { Tenor::days(1) } else { sorted[0] };
    let reference_pv = rows
        .iter()
        .find(|r| r.tenor == reference)
        .map(|r| r.float_pv)
        .expect("reference tenor is one of the rows");
    let fixed = conventions.fixed_schedule(start, maturity)?;
    let rate_scale = nominal * annuity(&fixed, curves.discount())?;
    if rate_scale == 0.0 {
        return Err(Error::Instrument("degenerate fixed schedule: zero annuity".into()));
    }
    for row in &mut rows {
        row.gap_pv = row.float_pv - reference_pv;
        row.gap_rate = row.gap_pv / rate_scale;
    }
    Ok(SpectroscopyReport { start, maturity, nominal, reference, rows })
}

/// The replication picture only makes sense when the horizon is a whole
/// number of coupon periods, so ragged maturities are refused instead
/// of silently getting a stub. Day tenors step the business-day grid
/// and land on any business-day maturity.
fn ensure_whole_periods(
    start: Date,
    maturity: Date,
    tenor: Tenor,
    conventions: &Conventions,
) -> Result<()> {
    if tenor.unit() == crate::temporal::TenorUnit::Day {
        return Ok(());
    }
    for k in 1..=MAX_WHOLE_PERIODS {
        let grid = conventions.end_date(start, tenor.scaled(k));
        if grid == maturity {
            return Ok(());
        }
        if grid > maturity {
            break;
        }
    }
    Err(Error::Schedule(format!(
        "maturity {maturity} is not a whole number of {tenor} periods after {start}"
    )))
}

const MAX_WHOLE_PERIODS: u32 = 10_000;

// ---------------------------------------------------------------------------
// Basis-spread term structure
// ---------------------------------------------------------------------------

/// Basis spreads on a (pair, maturity) grid, in basis points.
#[derive(Debug, Clone)]
pub struct BasisSurface {
    pub maturities: Vec<Tenor>,
    pub pairs: Vec<(Tenor, Tenor)>,
    /// `values_bp[pair_index][maturity_index]`, in basis points.
    pub values_bp: Vec<Vec<f64>>,
}

/// The ten unordered index-tenor pairs, shorter tenor first.
pub fn standard_pairs() -> Vec<(Tenor, Tenor)> {
    let tenors = [Tenor::days(1), Tenor::months(1), Tenor::months(3), Tenor::months(6), Tenor::months(12)];
    let mut pairs = Vec::with_capacity(10);
    for (i, &x) in tenors.iter().enumerate() {
        for &y in &tenors[i + 1..] {
            pairs.push((x, y));
        }
    }
    pairs
}

/// Fair spreads `R_x - R_y` of the `(x, y)` basis swaps for every pair
/// and maturity, in basis points. Both swap rates share the annual fixed
/// schedule of the maturity, so the spread is exactly the difference of
/// the two fair swap rates.
pub fn basis_term_structure(
    curves: &CurveSet,
    pairs: &[(Tenor, Tenor)],
    maturities: &[Tenor],
    conventions: &Conventions,
) -> Result<BasisSurface> {
    if pairs.is_empty() || maturities.is_empty() {
        return Err(Error::Config("basis surface needs pairs and maturities".into()));
    }
    for w in maturities.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::Config(format!(
                "maturities out of order: {} then {}",
                w[0], w[1]
            )));
        }
    }
    let start = conventions.spot(curves.anchor());
    let tenors: BTreeSet<Tenor> = pairs.iter().flat_map(|&(x, y)| [x, y]).collect();

    let mut values_bp = vec![Vec::with_capacity(maturities.len()); pairs.len()];
    for &maturity in maturities {
        let end = conventions.end_date(start, maturity);
        let fixed = conventions.fixed_schedule(start, end)?;
        let mut rates: BTreeMap<Tenor, f64> = BTreeMap::new();
        for &tenor in &tenors {
            let leg = conventions.float_leg(1.0, start, end, tenor)?;
            rates.insert(tenor, swap_rate(&leg, &fixed, curves)?);
        }
        for (column, &(x, y)) in values_bp.iter_mut().zip(pairs) {
            column.push((rates[&x] - rates[&y]) * 1e4);
        }
    }
    Ok(BasisSurface { maturities: maturities.to_vec(), pairs: pairs.to_vec(), values_bp })
}

// ---------------------------------------------------------------------------
// Delta ladder
// ---------------------------------------------------------------------------

/// PV response of one bump scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct QuoteDelta {
    /// Quote label, or curve id for parallel aggregates.
    pub label: String,
    /// PV(bumped) - PV(base); for basis trades, spread change.
    pub delta: f64,
}

/// Bump-and-reprice sensitivities of one trade against its calibration
/// quote set.
#[derive(Debug, Clone)]
pub struct DeltaLadder {
    pub base_value: f64,
    pub bump: f64,
    /// One entry per quote, in input order.
    pub per_quote: Vec<QuoteDelta>,
    /// One entry per curve group: all of the group's quotes bumped
    /// together.
    pub per_curve: Vec<QuoteDelta>,
    /// All quotes bumped together.
    pub total: f64,
}

/// Reprices `trade` under single-quote, per-curve parallel and full
/// parallel bumps of `bump` (decimal rate) applied to `quotes`, each time
/// rebootstrapping the whole curve set.
pub fn delta_ladder(
    trade: &Trade,
    anchor: Date,
    quotes: &[MarketQuote],
    bump: f64,
    config: &BootstrapConfig,
) -> Result<DeltaLadder> {
    let base_set = build_curve_set(anchor, quotes, config)?;
    let base_value = price_trade(trade, &base_set)?;

    let value_with = |mask: &dyn Fn(usize, &MarketQuote) -> bool| -> Result<f64> {
        let bumped: Vec<MarketQuote> = quotes
            .iter()
            .enumerate()
            .map(|(i, q)| {
                let mut q = q.clone();
                if mask(i, &q) {
                    q.quote += bump;
                }
                q
            })
            .collect();
        let set = build_curve_set(anchor, &bumped, config)?;
        price_trade(trade, &set)
    };

    let mut per_quote = Vec::with_capacity(quotes.len());
    for (i, q) in quotes.iter().enumerate() {
        let value = value_with(&|k, _| k == i)?;
        per_quote.push(QuoteDelta { label: q.label(), delta: value - base_value });
    }

    let curve_ids: BTreeSet<&str> = quotes.iter().map(|q| q.curve_id.as_str()).collect();
    let mut per_curve = Vec::with_capacity(curve_ids.len());
    for id in curve_ids {
        let value = value_with(&|_, q| q.curve_id == id)?;
        per_curve.push(QuoteDelta { label: id.to_string(), delta: value - base_value });
    }

    let total = value_with(&|_, _| true)? - base_value;
    Ok(DeltaLadder { base_value, bump, per_quote, per_curve, total })
}

// ---------------------------------------------------------------------------
// Fixing series and rolling correlation
// ---------------------------------------------------------------------------

/// Dated rate observations with strictly increasing dates.
#[derive(Debug, Clone, PartialEq)]
pub struct FixingSeries {
    points: Vec<(Date, f64)>,
}

impl FixingSeries {
    pub fn new(points: Vec<(Date, f64)>) -> Result<Self> {
        for w in points.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::Config(format!(
                    "fixing dates out of order: {} then {}",
                    w[0].0, w[1].0
                )));
            }
        }
        Ok(FixingSeries { points })
    }

    pub fn points(&self) -> &[(Date, f64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// First differences, dated at the later observation.
    pub fn differenced(&self) -> FixingSeries {
        let points = self
            .points
            .windows(2)
            .map(|w| (w[1].0, w[1].1 - w[0].1))
            .collect();
        FixingSeries { points }
    }
}

/// Pearson correlation over every trailing window of the inner-joined
/// observations, dated at the window's last date. Windows where either
/// series is constant produce NaN.
pub fn rolling_correlation(
    a: &FixingSeries,
    b: &FixingSeries,
    window: usize,
) -> Result<FixingSeries> {
    if window < 2 {
        return Err(Error::Config(format!("correlation window must be >= 2, got {window}")));
    }
    let joined = inner_join(a, b);
    if joined.len() < window {
        return Err(Error::Config(format!(
            "{} shared observations cannot fill a window of {window}",
            joined.len()
        )));
    }
    let mut out = Vec::with_capacity(joined.len() - window + 1);
    for slice in joined.windows(window) {
        let date = slice[window - 1].0;
        out.push((date, pearson(slice)));
    }
    Ok(FixingSeries { points: out })
}

fn inner_join(a: &FixingSeries, b: &FixingSeries) -> Vec<(Date, f64, f64)> {
    let mut joined = Vec::with_capacity(a.len().min(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.points.len() && j < b.points.len() {
        let (da, va) = a.points[i];
        let (db, vb) = b.points[j];
        match da.cmp(&db) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                joined.push((da, va, vb));
                i += 1;
                j += 1;
            }
        }
    }
    joined
}

fn pearson(window: &[(Date, f64, f64)]) -> f64 {
    let n = window.len() as f64;
    let mean_x = window.iter().map(|p| p.1).sum::<f64>() / n;
    let mean_y = window.iter().map(|p| p.2).sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var_x = 0.0;
    let mut var_y = 0.0;
    for (_, x, y) in window {
        let dx = x - mean_x;
        let dy = y - mean_y;
        cov += dx * dy;
        var_x += dx * dx;
        var_y += dy * dy;
    }
    if var_x == 0.0 || var_y == 0.0 {
        return f64::NAN;
    }
    cov / (var_x * var_y).sqrt()
}

// ---------------------------------------------------------------------------
// FRA martingale check
// ---------------------------------------------------------------------------

/// Lognormal terminal-draw setup for the simulated FRA rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FraDynamicsConfig {
    /// Today's forward rate, the martingale target.
    pub initial_rate: f64,
    /// Annual lognormal volatility, >= 0.
    pub volatility: f64,
    /// Horizon in years, > 0.
    pub horizon: f64,
    /// Number of paths, >= 1.
    pub paths: u64,
    pub seed: u64,
}

/// Sample mean and standard error of the simulated terminal rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MartingaleEstimate {
    pub mean: f64,
    pub std_error: f64,
}

/// Draws `F(T) = F0 exp(-sigma^2 T / 2 + sigma sqrt(T) Z)` with a seeded
/// generator and reports the sample mean and its standard error. The
/// terminal distribution is sampled exactly, so the only deviation of the
/// mean from `F0` is Monte-Carlo noise. Fixed seeds reproduce bitwise.
pub fn simulate_fra_martingale(config: &FraDynamicsConfig) -> Result<MartingaleEstimate> {
    if config.volatility.is_nan() || config.volatility < 0.0 {
        return Err(Error::Config(format!(
            "volatility must be >= 0, got {}",
            config.volatility
        )));
    }
    if config.horizon.is_nan() || config.horizon <= 0.0 {
        return Err(Error::Config(format!("horizon must be > 0, got {}", config.horizon)));
    }
    if config.paths == 0 {
        return Err(Error::Config("need at least one path".into()));
    }

    let drift = -0.5 * config.volatility * config.volatility * config.horizon;
    let diffusion = config.volatility * config.horizon.sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    // Welford running moments
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for k in 0..config.paths {
        let z: f64 = StandardNormal.sample(&mut rng);
        let f = config.initial_rate * (drift + diffusion * z).exp();
        let delta = f - mean;
        mean += delta / (k + 1) as f64;
        m2 += delta * (f - mean);
    }
    let std_error = if config.paths > 1 {
        let n = config.paths as f64;
        (m2 / (n - 1.0)).sqrt() / n.sqrt()
    } else {
        0.0
    };
    Ok(MartingaleEstimate { mean, std_error })
}
