use synalg::harness::{find_strictness_witness, recheck, run_suite_with, SuiteConfig};
use synalg::order::{check_involution, check_involution_with};
use synalg::{
    numerical_leq, run_suite, spectral_leq, Error, OrderTag, Result, SymMatrix, TolerancePolicy, VerificationReport,
    SUITES,
};

fn always(_: &SymMatrix, _: &SymMatrix, _: &TolerancePolicy) -> Result<bool> {
    Ok(true)
}

/// Reverses the spectral order.
fn reversed(a: &SymMatrix, b: &SymMatrix, tol: &TolerancePolicy) -> Result<bool> {
    spectral_leq(b, a, tol)
}

#[test]
fn every_suite_runs_clean_in_small_dimensions() {
    for suite in SUITES {
        for order in [OrderTag::Spectral, OrderTag::Synaptic] {
            for dim in [1, 2, 3] {
                let report = run_suite(suite, dim, 10, 3, order).unwrap();
                assert!(report.passed(), "{suite} {order} d{dim}: {:?}", report.failures);
                assert!(report.checks.values().any(|c| c.evaluated > 0), "{suite} evaluated nothing");
            }
        }
    }
}

#[test]
fn reports_are_reproducible() {
    for suite in ["lattice-laws", "kleene", "dyadic"] {
        let a = run_suite(suite, 3, 8, 42, OrderTag::Spectral).unwrap();
        let b = run_suite(suite, 3, 8, 42, OrderTag::Spectral).unwrap();
        assert_eq!(a.without_timing(), b.without_timing());
        let c = run_suite(suite, 3, 8, 43, OrderTag::Spectral).unwrap();
        assert_eq!(c.seed, 43);
    }
}

#[test]
fn bad_arguments_are_rejected() {
    assert!(matches!(run_suite("no-such-suite", 2, 1, 0, OrderTag::Spectral), Err(Error::UnknownSuite(_))));
    assert!(matches!(run_suite("kleene", 0, 1, 0, OrderTag::Spectral), Err(Error::InvalidArgument(_))));
}

/// Replaces the spectral order with one that holds for every pair. The suite
/// must report failures, and each recorded witness must fail again when
/// rechecked with the same broken comparator and pass with the real one.
#[test]
fn broken_comparator_is_caught_with_valid_witnesses() {
    let broken = SuiteConfig { spectral: always, ..SuiteConfig::default() };
    let report = run_suite_with("order-implication", 3, 20, 9, OrderTag::Spectral, &broken).unwrap();
    assert!(!report.passed());
    assert!(report.checks["positivity-bridge"].violations > 0);
    let bad_ctx = broken.ctx(OrderTag::Spectral);
    let good_ctx = SuiteConfig::default().ctx(OrderTag::Spectral);
    for failure in &report.failures {
        assert!(failure.error.is_none());
        assert!(recheck(&failure.check, &failure.witnesses, &bad_ctx).unwrap().is_fail());
        assert!(!recheck(&failure.check, &failure.witnesses, &good_ctx).unwrap().is_fail());
    }
}

#[test]
fn reversed_order_breaks_the_lattice_laws() {
    let broken = SuiteConfig { spectral: reversed, competitors: Some(5), ..SuiteConfig::default() };
    let report = run_suite_with("lattice-laws", 2, 5, 1, OrderTag::Spectral, &broken).unwrap();
    assert!(report.total_violations() > 0);
}

#[test]
fn report_survives_json() {
    let broken = SuiteConfig { spectral: always, ..SuiteConfig::default() };
    let report = run_suite_with("order-implication", 2, 10, 5, OrderTag::Spectral, &broken).unwrap();
    let text = serde_json::to_string(&report).unwrap();
    let back: VerificationReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, report);
}

#[test]
fn strictness_witness_is_genuine() {
    let tol = TolerancePolicy::default();
    let w = find_strictness_witness(7, 10_000, &tol).unwrap().expect("a witness within 10^4 pairs");
    assert!(numerical_leq(&w.a, &w.b, &tol).unwrap());
    assert!(!spectral_leq(&w.a, &w.b, &tol).unwrap());
}

#[test]
fn corrupted_involution_is_detected() {
    let tol = TolerancePolicy::default();
    let sample: Vec<(SymMatrix, SymMatrix)> = (0..5)
        .map(|k| {
            let mut g = synalg::harness::Generator::new(2, k, 3);
            (g.effect().into_matrix(), g.effect().into_matrix())
        })
        .collect();
    for order in [OrderTag::Synaptic, OrderTag::Spectral] {
        assert!(check_involution(&sample, order, &tol).unwrap().passed());
        let bad = |a: &SymMatrix| &SymMatrix::identity(a.dim()) - &a.scale(2.0);
        let report = check_involution_with(&sample, order, &tol, &bad).unwrap();
        assert!(report.checks["I1"].violations > 0);
    }
}
