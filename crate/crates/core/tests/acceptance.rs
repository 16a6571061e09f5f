//! Acceptance suite: one test per shipped guarantee, each printing a
//! pass/fail line with its worst residual. Tolerances are pinned here, not
//! taken from defaults.
//!
//! Run with `cargo test -p ergoswitch-core --test acceptance -- --nocapture`
//! to see the per-criterion lines.

use ergoswitch_core::verify::{self, CheckResult, VerifyConfig};

fn pinned() -> VerifyConfig {
    VerifyConfig {
        matrix_tol: 1e-12,
        value_tol: 1e-9,
        n_max: 5,
        seed: 7,
    }
}

fn report(criterion: &str, result: &CheckResult, runtime_limit: Option<f64>) {
    println!(
        "{criterion} [{}] {} max_residual={:.3e} elapsed={:.2}s — {}",
        result.name,
        if result.passed { "PASS" } else { "FAIL" },
        result.max_residual,
        result.seconds,
        result.detail,
    );
    assert!(result.passed, "{criterion} failed: {}", result.detail);
    if let Some(limit) = runtime_limit {
        assert!(
            result.seconds < limit,
            "{criterion} took {:.2}s, limit {limit}s",
            result.seconds
        );
    }
}

#[test]
fn criterion_01_two_switch_closed_form_grid() {
    let result = verify::check_two_switch_closed_form(&pinned());
    report("criterion-01", &result, Some(5.0));
}

#[test]
fn criterion_02_purified_state_fidelity() {
    let result = verify::check_purified_state_fidelity(&pinned());
    report("criterion-02", &result, None);
}

#[test]
fn criterion_03_product_temperature_bound() {
    let result = verify::check_product_temperature_bound(&pinned());
    report("criterion-03", &result, None);
}

#[test]
fn criterion_04_n_switch_scaling() {
    let result = verify::check_n_switch_scaling(&pinned());
    report("criterion-04", &result, Some(60.0));
}

#[test]
fn criterion_05_classical_correlation_bound() {
    let result = verify::check_classical_corr_bound(&pinned());
    report("criterion-05", &result, None);
}

#[test]
fn criterion_06_purification_optimum() {
    let result = verify::check_purification_optimum(&pinned());
    report("criterion-06", &result, None);
}

#[test]
fn criterion_07_coherent_closed_form() {
    let result = verify::check_coherent_closed_form(&pinned());
    report("criterion-07", &result, None);
}

#[test]
fn criterion_08_ergotropy_decomposition() {
    let result = verify::check_ergotropy_decomposition(&pinned());
    report("criterion-08", &result, None);
}

#[test]
fn criterion_09_passivity_baselines() {
    let result = verify::check_passivity_baselines(&pinned());
    report("criterion-09", &result, None);
}

// criterion 10 (byte-identical reruns of verify and seeded sweeps) lives in
// the CLI crate's acceptance suite, next to the binary it exercises.
