//! Multi-curve interest-rate toolkit with a small atomic-physics sibling.
//!
//! The crate bootstraps a discount curve and per-tenor forward curves from
//! market quotes, prices linear rate instruments off the resulting curve
//! set, and derives tenor-basis reports, risk ladders and simple
//! statistical diagnostics. The [`zeeman`] module computes anomalous
//! Zeeman line splittings, whose multiplet structure mirrors how a single
//! yield curve splits into a family of tenor curves.
//!
//! Modules, bottom up:
//!
//! * [`temporal`]: dates, tenors, day counts, calendars, schedules
//! * [`curves`]: log-linear discount and pseudo-discount curves
//! * [`instruments`]: deposits, FRAs, swaps, OIS, tenor basis swaps
//! * [`bootstrap`]: sequential pillar calibration from quote sets
//! * [`analytics`]: tenor reports, basis surfaces, deltas, correlation, MC
//! * [`zeeman`]: anomalous Zeeman splitting of alkali doublets
//! * [`io`]: quote CSV, curve JSON, trade JSON, fixing CSV

pub mod analytics;
pub mod bootstrap;
pub mod curves;
pub mod error;
pub mod instruments;
pub mod io;
pub mod temporal;
pub mod zeeman;

pub use error::{Error, Result};
