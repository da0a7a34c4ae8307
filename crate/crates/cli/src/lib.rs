//! Command dispatch for the `multicurve` binary.
//!
//! Every subcommand reads files named on the command line, runs one
//! library operation and emits a plot-ready CSV or JSON document to
//! standard output or `--out`. Exit codes: 0 on success, 1 on a domain
//! error (one `error:` line on standard error), 2 on a usage error.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use multicurve::analytics::{
    basis_term_structure, delta_ladder, rolling_correlation, simulate_fra_martingale,
    spectroscopy_report, standard_pairs, FraDynamicsConfig,
};
use multicurve::bootstrap::{build_curve_set, reprice_residuals, BootstrapConfig};
use multicurve::error::{Error, Result};
use multicurve::instruments::{price_trade, Conventions};
use multicurve::io;
use multicurve::temporal::{Date, Tenor};
use multicurve::zeeman::{sodium_doublet, PlanckConvention};

#[derive(Parser)]
#[command(
    name = "multicurve",
    version,
    about = "Multi-curve bootstrapping, tenor-basis analytics and Zeeman line tables",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Calibrate a curve set from a quote CSV and emit it as JSON
    Bootstrap(BootstrapArgs),
    /// Price a trade JSON against a curve-set JSON
    Price(PriceArgs),
    /// Tenor-basis spread surface in basis points
    Basis(BasisArgs),
    /// Floating-leg replication report across index tenors
    Spectroscopy(SpectroscopyArgs),
    /// Bump-and-rebootstrap delta ladder for one trade
    Delta(DeltaArgs),
    /// Rolling Pearson correlation of two fixing series
    Corr(CorrArgs),
    /// Monte Carlo check that the simulated forward rate is driftless
    McMartingale(McMartingaleArgs),
    /// Anomalous Zeeman line tables for the sodium doublet
    Zeeman(ZeemanArgs),
}

/// Calendar and spot-lag settings shared by date-resolving commands.
#[derive(Args)]
struct MarketArgs {
    /// Business days from the anchor to the spot start
    #[arg(long, default_value_t = 2)]
    spot_lag: u32,
    /// Holiday list, one ISO date per line, # comments allowed
    #[arg(long, value_name = "FILE")]
    holidays: Option<PathBuf>,
}

impl MarketArgs {
    fn conventions(&self) -> Result<Conventions> {
        let mut conventions = Conventions { spot_lag: self.spot_lag, ..Conventions::default() };
        if let Some(path) = &self.holidays {
            conventions.calendar =
                multicurve::temporal::Calendar::with_holidays(io::read_holidays_file(path)?);
        }
        Ok(conventions)
    }
}

/// Root-solver settings shared by the calibrating commands.
#[derive(Args)]
struct SolverArgs {
    /// Bracket-width stopping tolerance on discount factors
    #[arg(long, default_value_t = 1e-12)]
    df_tolerance: f64,
    /// Iteration cap per pillar
    #[arg(long, default_value_t = 100)]
    max_iterations: u32,
}

#[derive(Args)]
struct BootstrapArgs {
    /// Valuation date the curves are anchored to
    #[arg(long)]
    anchor: Date,
    /// Quote CSV: curve,kind,tenor,start,maturity,quote
    #[arg(long, value_name = "FILE")]
    quotes: PathBuf,
    /// Also list post-fit repricing residuals on standard error
    #[arg(long)]
    residuals: bool,
    #[command(flatten)]
    market: MarketArgs,
    #[command(flatten)]
    solver: SolverArgs,
    /// Output file (default: standard output)
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PriceArgs {
    /// Curve-set JSON written by the bootstrap command
    #[arg(long, value_name = "FILE")]
    curves: PathBuf,
    /// Trade description JSON
    #[arg(long, value_name = "FILE")]
    trade: PathBuf,
    #[command(flatten)]
    market: MarketArgs,
    /// Output file (default: standard output)
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BasisArgs {
    /// Curve-set JSON written by the bootstrap command
    #[arg(long, value_name = "FILE")]
    curves: PathBuf,
    /// Swap maturities, ascending tenor list
    #[arg(long, value_delimiter = ',', default_value = "1Y,2Y,3Y,5Y,7Y,10Y,15Y,20Y,30Y")]
    maturities: Vec<Tenor>,
    /// Tenor pairs like 3M-6M (default: all ten index pairs)
    #[arg(long, value_delimiter = ',', value_parser = parse_pair)]
    pairs: Option<Vec<(Tenor, Tenor)>>,
    #[command(flatten)]
    market: MarketArgs,
    /// Output file (default: standard output)
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SpectroscopyArgs {
    /// Curve-set JSON written by the bootstrap command
    #[arg(long, value_name = "FILE")]
    curves: PathBuf,
    /// Horizon as a tenor from spot or an ISO date
    #[arg(long)]
    maturity: String,
    /// Leg nominal
    #[arg(long, default_value_t = 1e6)]
    nominal: f64,
    /// Index tenors to replicate with
    #[arg(long, value_delimiter = ',', default_value = "1D,1M,3M,6M,12M")]
    tenors: Vec<Tenor>,
    #[command(flatten)]
    market: MarketArgs,
    /// Output file (default: standard output)
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DeltaArgs {
    /// Valuation date the curves are anchored to
    #[arg(long)]
    anchor: Date,
    /// Quote CSV defining the calibration set to bump
    #[arg(long, value_name = "FILE")]
    quotes: PathBuf,
    /// Trade description JSON
    #[arg(long, value_name = "FILE")]
    trade: PathBuf,
    /// Symmetric quote bump, decimal (1e-4 is one basis point)
    #[arg(long, default_value_t = 1e-4)]
    bump: f64,
    #[command(flatten)]
    market: MarketArgs,
    #[command(flatten)]
    solver: SolverArgs,
    /// Output file (default: standard output)
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CorrArgs {
    /// First fixing CSV: date,rate
    #[arg(value_name = "SERIES_A")]
    series_a: PathBuf,
    /// Second fixing CSV: date,rate
    #[arg(value_name = "SERIES_B")]
    series_b: PathBuf,
    /// Trailing window length in joined observations
    #[arg(long, default_value_t = 252)]
    window: usize,
    /// Correlate day-over-day differences instead of levels
    #[arg(long)]
    diff: bool,
    /// Output file (default: standard output)
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct McMartingaleArgs {
    /// Initial forward rate, decimal
    #[arg(long, default_value_t = 0.03)]
    rate: f64,
    /// Lognormal volatility, absolute
    #[arg(long, default_value_t = 0.2)]
    vol: f64,
    /// Horizon in years
    #[arg(long, default_value_t = 1.0)]
    horizon: f64,
    /// Number of simulated paths
    #[arg(long, default_value_t = 100_000)]
    paths: u64,
    /// Random seed; equal seeds reproduce output bitwise
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Output file (default: standard output)
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ZeemanArgs {
    /// Magnetic field strength in tesla
    #[arg(long)]
    field: f64,
    /// Element whose doublet to split (only Na is tabulated)
    #[arg(long, default_value = "Na")]
    element: String,
    /// Divide shifts by hc instead of the reduced constant
    #[arg(long)]
    physical: bool,
    /// Output file (default: standard output)
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

fn parse_pair(s: &str) -> std::result::Result<(Tenor, Tenor), String> {
    let (x, y) = s
        .split_once('-')
        .ok_or_else(|| format!("expected a pair like 3M-6M, found {s:?}"))?;
    let parse = |t: &str| t.parse::<Tenor>().map_err(|e| e.to_string());
    Ok((parse(x)?, parse(y)?))
}

/// Runs the CLI on the given arguments and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            // --help and --version are successful exits, not usage errors
            let _ = err.print();
            return if err.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            1
        }
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Bootstrap(args) => cmd_bootstrap(args),
        Command::Price(args) => cmd_price(args),
        Command::Basis(args) => cmd_basis(args),
        Command::Spectroscopy(args) => cmd_spectroscopy(args),
        Command::Delta(args) => cmd_delta(args),
        Command::Corr(args) => cmd_corr(args),
        Command::McMartingale(args) => cmd_mc_martingale(args),
        Command::Zeeman(args) => cmd_zeeman(args),
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => io::write_text_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn bootstrap_config(market: &MarketArgs, solver: &SolverArgs) -> Result<BootstrapConfig> {
    Ok(BootstrapConfig {
        df_tolerance: solver.df_tolerance,
        max_iterations: solver.max_iterations,
        conventions: market.conventions()?,
        ..BootstrapConfig::default()
    })
}

fn cmd_bootstrap(args: BootstrapArgs) -> Result<()> {
    let quotes = io::read_quotes_file(&args.quotes)?;
    let config = bootstrap_config(&args.market, &args.solver)?;
    let curves = build_curve_set(args.anchor, &quotes, &config)?;
    if args.residuals {
        let residuals = reprice_residuals(&curves, &quotes, &config.conventions)?;
        for (quote, residual) in quotes.iter().zip(&residuals) {
            eprintln!("residual {}: {residual:e}", quote.label());
        }
    }
    emit(args.out.as_ref(), &io::write_curve_set(&curves)?)
}

fn cmd_price(args: PriceArgs) -> Result<()> {
    let curves = io::read_curve_set_file(&args.curves)?;
    let conventions = args.market.conventions()?;
    let trade = io::read_trade_file(&args.trade, curves.anchor(), &conventions)?;
    let value = price_trade(&trade, &curves)?;
    let text = format!("measure,value\n{},{}\n", trade.measure_name(), value);
    emit(args.out.as_ref(), &text)
}

fn cmd_basis(args: BasisArgs) -> Result<()> {
    let curves = io::read_curve_set_file(&args.curves)?;
    let conventions = args.market.conventions()?;
    let pairs = args.pairs.unwrap_or_else(standard_pairs);
    let surface = basis_term_structure(&curves, &pairs, &args.maturities, &conventions)?;
    emit(args.out.as_ref(), &io::render_basis(&surface))
}

fn cmd_spectroscopy(args: SpectroscopyArgs) -> Result<()> {
    let curves = io::read_curve_set_file(&args.curves)?;
    let conventions = args.market.conventions()?;
    let maturity = if let Ok(date) = args.maturity.parse::<Date>() {
        date
    } else if let Ok(tenor) = args.maturity.parse::<Tenor>() {
        conventions.end_date(conventions.spot(curves.anchor()), tenor)
    } else {
        return Err(Error::InvalidLabel { what: "maturity", text: args.maturity.clone() });
    };
    let report = spectroscopy_report(&curves, maturity, &args.tenors, args.nominal, &conventions)?;
    emit(args.out.as_ref(), &io::render_spectroscopy(&report))
}

fn cmd_delta(args: DeltaArgs) -> Result<()> {
    let quotes = io::read_quotes_file(&args.quotes)?;
    let config = bootstrap_config(&args.market, &args.solver)?;
    let trade = io::read_trade_file(&args.trade, args.anchor, &config.conventions)?;
    let ladder = delta_ladder(&trade, args.anchor, &quotes, args.bump, &config)?;
    emit(args.out.as_ref(), &io::render_delta(&ladder, trade.measure_name()))
}

fn cmd_corr(args: CorrArgs) -> Result<()> {
    let mut a = io::read_fixings_file(&args.series_a)?;
    let mut b = io::read_fixings_file(&args.series_b)?;
    if args.diff {
        a = a.differenced();
        b = b.differenced();
    }
    let series = rolling_correlation(&a, &b, args.window)?;
    emit(args.out.as_ref(), &io::write_fixings(&series))
}

fn cmd_mc_martingale(args: McMartingaleArgs) -> Result<()> {
    let config = FraDynamicsConfig {
        initial_rate: args.rate,
        volatility: args.vol,
        horizon: args.horizon,
        paths: args.paths,
        seed: args.seed,
    };
    let estimate = simulate_fra_martingale(&config)?;
    emit(args.out.as_ref(), &io::render_martingale(&estimate, args.rate))
}

fn cmd_zeeman(args: ZeemanArgs) -> Result<()> {
    if !args.element.eq_ignore_ascii_case("na") && !args.element.eq_ignore_ascii_case("sodium") {
        return Err(Error::Physics(format!(
            "no line table for element {:?}, only Na is tabulated",
            args.element
        )));
    }
    let convention =
        if args.physical { PlanckConvention::Photon } else { PlanckConvention::Reduced };
    let [d1, d2] = sodium_doublet(args.field, convention)?;
    emit(args.out.as_ref(), &io::render_multiplets(&[d1, d2]))
}
