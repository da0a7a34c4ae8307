//! A library consumer's day: calibrate the shipped EUR quote set, check
//! the fit, price and risk a trade, cross-check the reports against each
//! other and persist the curves.

use std::path::Path;

use multicurve::analytics::{basis_term_structure, delta_ladder, spectroscopy_report};
use multicurve::bootstrap::{build_curve_set, reprice_residuals, BootstrapConfig};
use multicurve::error::Error;
use multicurve::instruments::{price_trade, Trade};
use multicurve::io;
use multicurve::temporal::{date, Tenor};

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name).display().to_string()
}

#[test]
fn calibrate_price_risk_and_persist() {
    let anchor = date(2011, 6, 30).unwrap();
    let config = BootstrapConfig::default();
    let conventions = &config.conventions;

    let quotes = io::read_quotes_file(fixture("quotes_eur_synthetic.csv")).unwrap();
    assert_eq!(quotes.len(), 49);
    let curves = build_curve_set(anchor, &quotes, &config).unwrap();
    assert_eq!(curves.tenors().len(), 5, "all five index curves present");

    let residuals = reprice_residuals(&curves, &quotes, conventions).unwrap();
    let worst = residuals.iter().fold(0.0f64, |m, r| m.max(r.abs()));
    assert!(worst < 1e-10, "fit quality degraded: {worst:e}");

    // the shipped basis trade prices at the difference of the 2Y quotes
    let trade = io::read_trade_file(fixture("trade_basis_6m_vs_3m_2y.json"), anchor, conventions)
        .unwrap();
    let spread = price_trade(&trade, &curves).unwrap();
    assert!((spread - (0.0206 - 0.0190)).abs() < 1e-12, "2Y 6M-vs-3M spread {spread}");

    // spectroscopy gap rates and the basis surface are the same numbers:
    // gap_pv / (N * annuity) is exactly R_tenor - R_reference
    let start = conventions.spot(anchor);
    let maturity = conventions.end_date(start, Tenor::years(2));
    let tenors =
        [Tenor::days(1), Tenor::months(1), Tenor::months(3), Tenor::months(6), Tenor::months(12)];
    let report = spectroscopy_report(&curves, maturity, &tenors, 1e6, conventions).unwrap();
    assert_eq!(report.reference, Tenor::days(1));
    let pairs: Vec<(Tenor, Tenor)> =
        tenors[1..].iter().map(|&t| (Tenor::days(1), t)).collect();
    let surface =
        basis_term_structure(&curves, &pairs, &[Tenor::years(2)], conventions).unwrap();
    for (row, column) in report.rows[1..].iter().zip(&surface.values_bp) {
        let from_surface = -column[0] / 1e4;
        assert!(
            (row.gap_rate - from_surface).abs() < 1e-12,
            "{}: gap rate {} vs surface {}",
            row.tenor,
            row.gap_rate,
            from_surface
        );
    }

    // risk: the payer swap fixture loses value when its par quote drops
    let swap = io::read_trade_file(fixture("trade_swap_5y_payer.json"), anchor, conventions)
        .unwrap();
    let ladder = delta_ladder(&swap, anchor, &quotes, 1e-4, &config).unwrap();
    let five_year_delta = ladder
        .per_quote
        .iter()
        .find(|q| q.label.starts_with("EUR6M SWAP 6M 5Y"))
        .expect("own quote in the ladder")
        .delta;
    assert!(five_year_delta > 100.0, "payer gains when its par rate rises: {five_year_delta}");
    let sum: f64 = ladder.per_quote.iter().map(|q| q.delta).sum();
    assert!((sum - ladder.total).abs() <= 0.02 * ladder.total.abs());

    // persistence: reloaded curves price the trade to the same bits
    let json = io::write_curve_set(&curves).unwrap();
    let reloaded = io::read_curve_set(&json).unwrap();
    let again = price_trade(&swap, &reloaded).unwrap();
    let original = price_trade(&swap, &curves).unwrap();
    assert_eq!(original.to_bits(), again.to_bits());
}

#[test]
fn missing_curves_and_bad_requests_surface_as_errors() {
    let anchor = date(2011, 6, 30).unwrap();
    let config = BootstrapConfig::default();
    let conventions = &config.conventions;

    // a two-curve set has no 3M index to report on
    let text = "curve,kind,tenor,start,maturity,quote\n\
        OIS,DEPOSIT,1D,SPOT,1D,0.008\n\
        OIS,OIS,1D,SPOT,1Y,0.0200\n\
        EUR6M,DEPOSIT,6M,SPOT,6M,0.014\n";
    let quotes = io::parse_quotes(text).unwrap();
    let curves = build_curve_set(anchor, &quotes, &config).unwrap();
    let start = conventions.spot(anchor);
    let maturity = conventions.end_date(start, Tenor::years(1));
    match spectroscopy_report(&curves, maturity, &[Tenor::months(3)], 1e6, conventions) {
        Err(Error::MissingCurve { .. }) => {}
        other => panic!("expected a missing-curve error, got {other:?}"),
    }

    // a horizon that is not a whole number of coupon periods is refused
    let ragged = conventions.end_date(start, Tenor::months(7));
    assert!(matches!(
        spectroscopy_report(&curves, ragged, &[Tenor::months(6)], 1e6, conventions),
        Err(Error::Schedule(_))
    ));

    // pricing dies cleanly on a matured trade
    let matured = Trade::Deposit(
        multicurve::instruments::Deposit::new(
            1e6,
            date(2010, 1, 4).unwrap(),
            date(2010, 7, 5).unwrap(),
            0.01,
            conventions.float_day_count,
        )
        .unwrap(),
    );
    assert!(matches!(price_trade(&matured, &curves), Err(Error::Matured { .. })));
}
