//! Crate-wide error type.
//!
//! Every fallible operation in this crate returns [`Result`]. Variants carry
//! enough context to render a single-line diagnostic; the CLI prints them
//! verbatim after an `error:` prefix.

use chrono::NaiveDate;
use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A calendar date that does not exist (e.g. 2011-02-30).
    #[error("invalid date {year:04}-{month:02}-{day:02}")]
    InvalidDate { year: i32, month: u32, day: u32 },

    /// Two dates supplied in the wrong order for the operation.
    #[error("dates out of order: {first} must be on or before {second}")]
    DateOrder { first: NaiveDate, second: NaiveDate },

    /// A tenor or day-count label that failed to parse.
    #[error("invalid {what}: {text:?}")]
    InvalidLabel { what: &'static str, text: String },

    /// Schedule construction failed.
    #[error("invalid schedule: {0}")]
    Schedule(String),

    /// Curve construction rejected the pillar set.
    #[error("invalid curve: {0}")]
    Curve(String),

    /// A date query below the curve anchor.
    #[error("date {date} precedes curve anchor {anchor}")]
    BeforeAnchor { date: NaiveDate, anchor: NaiveDate },

    /// Lookup of a tenor curve that the curve set does not hold.
    #[error("no forward curve for tenor {0}")]
    MissingCurve(String),

    /// A floating leg paired with a curve of a different tenor.
    #[error("tenor mismatch: leg indexes {leg} but curve carries {curve}")]
    TenorMismatch { leg: String, curve: String },

    /// Instrument validation failed (invariants on legs, dates, nominals).
    #[error("invalid instrument: {0}")]
    Instrument(String),

    /// Pricing a trade whose last cash flow is already in the past.
    #[error("instrument matured: final payment {maturity} is not after anchor {anchor}")]
    Matured { maturity: NaiveDate, anchor: NaiveDate },

    /// A quote the bootstrap cannot calibrate to.
    #[error("unsupported quote {quote}: {reason}")]
    UnsupportedQuote { quote: String, reason: String },

    /// Calibration quotes out of maturity order, or colliding pillars.
    #[error("quote ordering: {0}")]
    QuoteOrdering(String),

    /// Root search failure while solving one pillar.
    #[error("bootstrap failed on {quote}: {reason}")]
    Solver { quote: String, reason: String },

    /// Text input (CSV, JSON documents) that failed to parse.
    /// `line` is 1-based; `column` names the offending field.
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: &'static str,
        message: String,
    },

    /// Invalid configuration or argument values.
    #[error("{0}")]
    Config(String),

    /// Quantum-number or field errors in the spectroscopy module.
    #[error("{0}")]
    Physics(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
