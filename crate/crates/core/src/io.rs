//! File formats: quote CSV, curve JSON, trade JSON, fixing CSV, and the
//! plot-ready CSV renderings of the analytics reports.
//!
//! The CSV readers are hand-rolled so every rejection can name its
//! 1-based line and offending column; the JSON documents go through
//! serde, whose errors already carry positions. Discount factors are
//! serialized with shortest-round-trip formatting, so written curves
//! reload bitwise.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::analytics::{
    BasisSurface, DeltaLadder, FixingSeries, MartingaleEstimate, SpectroscopyReport,
};
use crate::bootstrap::{MarketQuote, QuoteKind, QuoteMaturity, QuoteStart};
use crate::curves::{Curve, CurveSet, DiscountCurve, ForwardCurve, Interpolation};
use crate::error::{Error, Result};
use crate::instruments::{Conventions, SwapSide, Trade};
use crate::temporal::{Date, Tenor};

// ---------------------------------------------------------------------------
// Quote CSV
// ---------------------------------------------------------------------------

pub const QUOTE_HEADER: &str = "curve,kind,tenor,start,maturity,quote";

fn parse_err(line: usize, column: &'static str, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

/// Reads a file to a string, putting the path into the error message.
fn slurp(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

/// Writes a file, putting the path into the error message.
pub fn write_text_file(path: impl AsRef<Path>, text: &str) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, text)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

/// Splits one CSV record, requiring exactly `n` comma-separated fields.
fn fields(line: &str, number: usize, n: usize) -> Result<Vec<&str>> {
    let parts: Vec<&str> = line.split(',').map(str::trim).collect();
    if parts.len() != n {
        return Err(parse_err(
            number,
            "record",
            format!("expected {n} comma-separated fields, found {}", parts.len()),
        ));
    }
    Ok(parts)
}

/// Parses a quote file. The header must read exactly
/// `curve,kind,tenor,start,maturity,quote`; rates are decimals. Duplicate
/// (curve, maturity) rows are rejected.
pub fn parse_quotes(text: &str) -> Result<Vec<MarketQuote>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim() == QUOTE_HEADER => {}
        Some((_, header)) => {
            return Err(parse_err(
                1,
                "header",
                format!("expected {QUOTE_HEADER:?}, found {:?}", header.trim()),
            ))
        }
        None => return Err(parse_err(1, "header", "empty input")),
    }

    let mut quotes = Vec::new();
    let mut seen: BTreeSet<(String, String, String)> = BTreeSet::new();
    for (index, raw) in lines {
        let number = index + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let parts = fields(raw, number, 6)?;

        let curve_id = parts[0].to_string();
        if curve_id.is_empty() {
            return Err(parse_err(number, "curve", "curve id must not be empty"));
        }
        let kind: QuoteKind = parts[1]
            .parse()
            .map_err(|_| parse_err(number, "kind", format!("unknown quote kind {:?}", parts[1])))?;
        let tenor: Tenor = parts[2]
            .parse()
            .map_err(|_| parse_err(number, "tenor", format!("invalid tenor {:?}", parts[2])))?;
        let start = if parts[3].eq_ignore_ascii_case("spot") {
            QuoteStart::Spot
        } else {
            QuoteStart::On(parts[3].parse().map_err(|_| {
                parse_err(number, "start", format!("expected SPOT or a date, found {:?}", parts[3]))
            })?)
        };
        let maturity = if let Ok(date) = parts[4].parse::<Date>() {
            QuoteMaturity::On(date)
        } else if let Ok(t) = parts[4].parse::<Tenor>() {
            QuoteMaturity::Tenor(t)
        } else {
            return Err(parse_err(
                number,
                "maturity",
                format!("expected a tenor or a date, found {:?}", parts[4]),
            ));
        };
        let quote: f64 = parts[5]
            .parse()
            .map_err(|_| parse_err(number, "quote", format!("invalid decimal rate {:?}", parts[5])))?;
        if !quote.is_finite() {
            return Err(parse_err(number, "quote", "rate must be finite"));
        }

        // key includes the start so distinct FRAs with a shared tenor pass;
        // equal pillars from different starts still fail in the bootstrap
        if !seen.insert((curve_id.clone(), parts[3].to_string(), parts[4].to_string())) {
            return Err(parse_err(
                number,
                "maturity",
                format!(
                    "duplicate quote for curve {curve_id:?} starting {} at maturity {:?}",
                    parts[3], parts[4]
                ),
            ));
        }
        quotes.push(MarketQuote { curve_id, kind, tenor, start, maturity, quote });
    }
    Ok(quotes)
}

/// Renders quotes back to CSV. `parse_quotes` of the output reproduces
/// the input exactly.
pub fn write_quotes(quotes: &[MarketQuote]) -> String {
    let mut out = String::from(QUOTE_HEADER);
    out.push('\n');
    for q in quotes {
        let _ = writeln!(out, "{q}");
    }
    out
}

pub fn read_quotes_file(path: impl AsRef<Path>) -> Result<Vec<MarketQuote>> {
    parse_quotes(&slurp(path.as_ref())?)
}

pub fn write_quotes_file(path: impl AsRef<Path>, quotes: &[MarketQuote]) -> Result<()> {
    write_text_file(path, &write_quotes(quotes))
}

// ---------------------------------------------------------------------------
// Curve JSON
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
struct CurveDocument {
    anchor: Date,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tenor: Option<String>,
    interpolation: String,
    pillars: Vec<(Date, f64)>,
}

impl CurveDocument {
    fn from_discount(curve: &DiscountCurve) -> Self {
        CurveDocument {
            anchor: curve.anchor(),
            kind: "discount".into(),
            tenor: None,
            interpolation: curve.interpolation().label().into(),
            pillars: curve
                .pillar_dates()
                .iter()
                .copied()
                .zip(curve.pillar_dfs().iter().copied())
                .collect(),
        }
    }

    fn from_forward(curve: &ForwardCurve) -> Self {
        CurveDocument {
            anchor: curve.anchor(),
            kind: "forward".into(),
            tenor: Some(curve.tenor().to_string()),
            interpolation: curve.interpolation().label().into(),
            pillars: curve
                .pillar_dates()
                .iter()
                .copied()
                .zip(curve.pillar_dfs().iter().copied())
                .collect(),
        }
    }

    fn interpolation(&self) -> Result<Interpolation> {
        Interpolation::from_label(&self.interpolation)
    }
}

/// Serializes a curve set as a JSON array, discount curve first and
/// forward curves ascending in tenor.
pub fn write_curve_set(set: &CurveSet) -> Result<String> {
    let mut documents = vec![CurveDocument::from_discount(set.discount())];
    for tenor in set.tenors() {
        documents.push(CurveDocument::from_forward(set.forward(tenor)?));
    }
    Ok(serde_json::to_string_pretty(&documents)?)
}

/// Reads a curve-set JSON array: exactly one discount document, any
/// number of distinct forward documents sharing its anchor. A missing
/// overnight curve is installed as a copy of the discount pillars, as
/// after a bootstrap.
pub fn read_curve_set(text: &str) -> Result<CurveSet> {
    let documents: Vec<CurveDocument> = serde_json::from_str(text)?;
    let mut discount: Option<DiscountCurve> = None;
    let mut forwards: Vec<ForwardCurve> = Vec::new();
    for doc in &documents {
        match doc.kind.as_str() {
            "discount" => {
                if doc.tenor.is_some() {
                    return Err(Error::Curve("a discount document cannot carry a tenor".into()));
                }
                if discount.is_some() {
                    return Err(Error::Curve("more than one discount document".into()));
                }
                discount = Some(DiscountCurve::from_pillars(
                    doc.anchor,
                    &doc.pillars,
                    doc.interpolation()?,
                )?);
            }
            "forward" => {
                let label = doc
                    .tenor
                    .as_deref()
                    .ok_or_else(|| Error::Curve("a forward document needs a tenor".into()))?;
                forwards.push(ForwardCurve::from_pillars(
                    label.parse()?,
                    doc.anchor,
                    &doc.pillars,
                    doc.interpolation()?,
                )?);
            }
            other => {
                return Err(Error::Curve(format!(
                    "unknown curve kind {other:?}, expected \"discount\" or \"forward\""
                )))
            }
        }
    }
    let discount =
        discount.ok_or_else(|| Error::Curve("the file holds no discount document".into()))?;
    let mut set = CurveSet::new(discount);
    for curve in forwards {
        set.insert_forward(curve)?;
    }
    set.ensure_overnight();
    Ok(set)
}

pub fn read_curve_set_file(path: impl AsRef<Path>) -> Result<CurveSet> {
    read_curve_set(&slurp(path.as_ref())?)
}

pub fn write_curve_set_file(path: impl AsRef<Path>, set: &CurveSet) -> Result<()> {
    write_text_file(path, &write_curve_set(set)?)
}

// ---------------------------------------------------------------------------
// Trade JSON
// ---------------------------------------------------------------------------

/// A start or end written either as an ISO date, a tenor counted from
/// the resolution reference, or the literal "spot".
#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum When {
    Date(Date),
    Text(String),
}

impl When {
    fn resolve_start(&self, anchor: Date, conventions: &Conventions) -> Result<Date> {
        match self {
            When::Date(d) => Ok(*d),
            When::Text(s) if s.eq_ignore_ascii_case("spot") => Ok(conventions.spot(anchor)),
            When::Text(s) => Err(Error::InvalidLabel { what: "trade start", text: s.clone() }),
        }
    }

    fn resolve_end(&self, start: Date, conventions: &Conventions) -> Result<Date> {
        match self {
            When::Date(d) => Ok(*d),
            When::Text(s) => {
                let tenor: Tenor = s
                    .parse()
                    .map_err(|_| Error::InvalidLabel { what: "trade end", text: s.clone() })?;
                Ok(conventions.end_date(start, tenor))
            }
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum TradeDocument {
    Deposit { nominal: f64, start: When, maturity: When, rate: f64 },
    Swap { nominal: f64, start: When, end: When, rate: f64, tenor: String, side: String },
    Ois { nominal: f64, start: When, end: When, rate: f64, side: String },
    Basis { nominal: f64, start: When, end: When, tenor_x: String, tenor_y: String },
}

fn parse_side(side: &str) -> Result<SwapSide> {
    side.parse()
}

/// Builds a trade from its JSON description. Relative dates ("spot",
/// tenor strings) resolve against `anchor` under `conventions`.
pub fn read_trade(text: &str, anchor: Date, conventions: &Conventions) -> Result<Trade> {
    let doc: TradeDocument = serde_json::from_str(text)?;
    match doc {
        TradeDocument::Deposit { nominal, start, maturity, rate } => {
            let start = start.resolve_start(anchor, conventions)?;
            let maturity = maturity.resolve_end(start, conventions)?;
            let deposit = crate::instruments::Deposit::new(
                nominal,
                start,
                maturity,
                rate,
                conventions.float_day_count,
            )?;
            Ok(Trade::Deposit(deposit))
        }
        TradeDocument::Swap { nominal, start, end, rate, tenor, side } => {
            let start = start.resolve_start(anchor, conventions)?;
            let end = end.resolve_end(start, conventions)?;
            let swap = conventions.vanilla_swap(
                nominal,
                start,
                end,
                rate,
                tenor.parse()?,
                parse_side(&side)?,
            )?;
            Ok(Trade::Swap(swap))
        }
        TradeDocument::Ois { nominal, start, end, rate, side } => {
            let start = start.resolve_start(anchor, conventions)?;
            let end = end.resolve_end(start, conventions)?;
            Ok(Trade::Ois(conventions.ois_swap(nominal, start, end, rate, parse_side(&side)?)?))
        }
        TradeDocument::Basis { nominal, start, end, tenor_x, tenor_y } => {
            let start = start.resolve_start(anchor, conventions)?;
            let end = end.resolve_end(start, conventions)?;
            let swap =
                conventions.basis_swap(nominal, start, end, tenor_x.parse()?, tenor_y.parse()?)?;
            Ok(Trade::Basis(swap))
        }
    }
}

pub fn read_trade_file(
    path: impl AsRef<Path>,
    anchor: Date,
    conventions: &Conventions,
) -> Result<Trade> {
    read_trade(&slurp(path.as_ref())?, anchor, conventions)
}

// ---------------------------------------------------------------------------
// Fixing CSV
// ---------------------------------------------------------------------------

pub const FIXING_HEADER: &str = "date,rate";

/// Parses a `date,rate` file into a series; dates must strictly increase.
pub fn parse_fixings(text: &str) -> Result<FixingSeries> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim() == FIXING_HEADER => {}
        Some((_, header)) => {
            return Err(parse_err(
                1,
                "header",
                format!("expected {FIXING_HEADER:?}, found {:?}", header.trim()),
            ))
        }
        None => return Err(parse_err(1, "header", "empty input")),
    }
    let mut points = Vec::new();
    for (index, raw) in lines {
        let number = index + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let parts = fields(raw, number, 2)?;
        let date: Date = parts[0]
            .parse()
            .map_err(|_| parse_err(number, "date", format!("invalid date {:?}", parts[0])))?;
        let rate: f64 = parts[1]
            .parse()
            .map_err(|_| parse_err(number, "rate", format!("invalid decimal {:?}", parts[1])))?;
        if let Some(&(last, _)) = points.last() {
            if date <= last {
                return Err(parse_err(
                    number,
                    "date",
                    format!("dates must strictly increase: {last} then {date}"),
                ));
            }
        }
        points.push((date, rate));
    }
    FixingSeries::new(points)
}

/// Renders a series as `date,rate` CSV; NaN values print as `NaN`.
pub fn write_fixings(series: &FixingSeries) -> String {
    let mut out = String::from(FIXING_HEADER);
    out.push('\n');
    for (date, rate) in series.points() {
        let _ = writeln!(out, "{date},{rate}");
    }
    out
}

pub fn read_fixings_file(path: impl AsRef<Path>) -> Result<FixingSeries> {
    parse_fixings(&slurp(path.as_ref())?)
}

pub fn write_fixings_file(path: impl AsRef<Path>, series: &FixingSeries) -> Result<()> {
    write_text_file(path, &write_fixings(series))
}

/// Reads holiday dates, one ISO date per line; blank lines and `#`
/// comments are skipped.
pub fn read_holidays_file(path: impl AsRef<Path>) -> Result<Vec<Date>> {
    let text = slurp(path.as_ref())?;
    let mut days = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let date: Date = line.parse().map_err(|_| {
            parse_err(index + 1, "date", format!("invalid holiday date {line:?}"))
        })?;
        days.push(date);
    }
    Ok(days)
}

// ---------------------------------------------------------------------------
// Report rendering
// ---------------------------------------------------------------------------

/// `tenor,coupons,float_pv,gap_pv,gap_rate` rows ascending in tenor.
pub fn render_spectroscopy(report: &SpectroscopyReport) -> String {
    let mut out = String::from("tenor,coupons,float_pv,gap_pv,gap_rate\n");
    for row in &report.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            row.tenor, row.coupons, row.float_pv, row.gap_pv, row.gap_rate
        );
    }
    out
}

/// Matrix with maturities as rows and `x-y_bp` pair columns; values in
/// basis points as the suffix states.
pub fn render_basis(surface: &BasisSurface) -> String {
    let mut out = String::from("maturity");
    for (x, y) in &surface.pairs {
        let _ = write!(out, ",{x}-{y}_bp");
    }
    out.push('\n');
    for (m, maturity) in surface.maturities.iter().enumerate() {
        let _ = write!(out, "{maturity}");
        for column in &surface.values_bp {
            let _ = write!(out, ",{}", column[m]);
        }
        out.push('\n');
    }
    out
}

/// `scope,label,value` rows: the base measure, one row per quote, one
/// per curve, and the all-quotes total.
pub fn render_delta(ladder: &DeltaLadder, measure: &str) -> String {
    let mut out = String::from("scope,label,value\n");
    let _ = writeln!(out, "base,{measure},{}", ladder.base_value);
    for q in &ladder.per_quote {
        let _ = writeln!(out, "quote,{},{}", q.label, q.delta);
    }
    for c in &ladder.per_curve {
        let _ = writeln!(out, "curve,{},{}", c.label, c.delta);
    }
    let _ = writeln!(out, "total,all,{}", ladder.total);
    out
}

/// One line per (upper, lower) sublevel combination, all multiplets
/// under one header; the transition column tells them apart.
pub fn render_multiplets(multiplets: &[crate::zeeman::Multiplet]) -> String {
    let mut out =
        String::from("transition,mj_lower,mj_upper,delta_mj,observable,wavenumber_shift_per_m,wavelength_nm\n");
    for multiplet in multiplets {
        let name = format!("{}->{}", multiplet.upper, multiplet.lower);
        for line in &multiplet.lines {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                name,
                line.lower.m_j,
                line.upper.m_j,
                line.upper.m_j - line.lower.m_j,
                line.observable,
                line.wavenumber_shift,
                multiplet.shifted_wavelength(line) * 1e9
            );
        }
    }
    out
}

/// Single-multiplet table, see [`render_multiplets`].
pub fn render_multiplet(multiplet: &crate::zeeman::Multiplet) -> String {
    render_multiplets(std::slice::from_ref(multiplet))
}

/// `mean,std_error,target,distance_in_errors` single-row summary.
pub fn render_martingale(estimate: &MartingaleEstimate, target: f64) -> String {
    let distance = if estimate.std_error > 0.0 {
        (estimate.mean - target).abs() / estimate.std_error
    } else if estimate.mean == target {
        0.0
    } else {
        f64::INFINITY
    };
    format!(
        "mean,std_error,target,distance_in_errors\n{},{},{},{}\n",
        estimate.mean, estimate.std_error, target, distance
    )
}
