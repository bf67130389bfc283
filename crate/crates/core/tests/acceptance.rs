//! Acceptance suite: one test per release criterion, each printing a
//! single pass/fail line (visible with `cargo test --test acceptance --
//! --nocapture`). Tolerances are pinned in code next to each check.

use std::f64::consts::LN_2;
use std::time::Instant;

use num_complex::Complex64;
use rbn::channels::MonitoringStrength;
use rbn::linalg::ComplexMatrix;
use rbn::observables::{mub_partner, ProjectiveObservable};
use rbn::optimizer::{bilocal_suppression, local_suppression, max_context_rbn, OptimizerConfig};
use rbn::quantifiers::{binary_entropy, closed_form_werner_suppression, eta, shannon_entropy};
use rbn::states::{classical_classical_state, two_parameter_state, DensityMatrix};
use rbn::verify;

const SEED: u64 = 20240801;

fn eps(e: f64) -> MonitoringStrength {
    MonitoringStrength::new(e).unwrap()
}

fn assert_report(criterion: &str, report: &verify::PropertyReport) {
    println!(
        "criterion {criterion}: {} (suite {}, {} samples, max violation {:.3e}, tolerance {:.1e})",
        if report.passed { "PASS" } else { "FAIL" },
        report.name,
        report.samples,
        report.max_violation,
        report.tolerance
    );
    assert!(
        report.passed,
        "{criterion}: {} violated tolerance: {:.3e} > {:.3e}",
        report.name, report.max_violation, report.tolerance
    );
}

#[test]
fn criterion_01_werner_closed_form_match() {
    let start = Instant::now();
    let report = verify::werner_closed_form_match(11);

    // Spot values.
    let spot = closed_form_werner_suppression(1.0, 0.6);
    assert!((spot - 0.6109).abs() < 5e-5, "spot value drifted: {spot}");
    let singlet = two_parameter_state(0.5, 1.0).unwrap();
    let cfg = OptimizerConfig::default();
    let projective = local_suppression(&singlet, eps(1.0), &cfg).unwrap().value;
    assert!(
        (projective - LN_2).abs() < 1e-6,
        "Δ_B at β=1, ε=1 should be ln 2, got {projective}"
    );

    let elapsed = start.elapsed();
    println!(
        "criterion 01 werner closed-form (11x11): {} (max dev {:.3e} < 1e-4, β=1 ε=0.6 → {:.4}, β=1 ε=1 → ln 2; {:.1?})",
        if report.passed { "PASS" } else { "FAIL" },
        report.max_violation,
        spot,
        elapsed
    );
    assert!(
        report.passed,
        "11x11 grid deviation {:.3e}",
        report.max_violation
    );
    assert!(
        elapsed.as_secs_f64() < 60.0,
        "runtime target exceeded: {elapsed:?}"
    );
}

#[test]
fn criterion_02_pure_closed_form_match() {
    let report = verify::pure_closed_form_match(11);

    let cfg = OptimizerConfig::default();
    let mut worst_limit: f64 = 0.0;
    for &alpha in &[0.1, 0.3, 0.5, 0.8] {
        let rho = two_parameter_state(alpha, 1.0).unwrap();
        let at_zero = local_suppression(&rho, eps(0.0), &cfg).unwrap().value;
        let at_one = local_suppression(&rho, eps(1.0), &cfg).unwrap().value;
        worst_limit = worst_limit
            .max(at_zero.abs())
            .max((at_one - binary_entropy(alpha)).abs());
    }

    println!(
        "criterion 02 pure-state closed-form (11x11): {} (max dev {:.3e} < 1e-4, ε-limit dev {:.3e} < 1e-6)",
        if report.passed && worst_limit < 1e-6 { "PASS" } else { "FAIL" },
        report.max_violation,
        worst_limit
    );
    assert!(
        report.passed,
        "11x11 grid deviation {:.3e}",
        report.max_violation
    );
    assert!(worst_limit < 1e-6, "ε-limit deviation {worst_limit:.3e}");
}

#[test]
fn criterion_03_pure_state_total_quantifier() {
    let report = verify::pure_state_context_matches_entanglement(SEED, 50);
    assert_report("03 pure-state N = E over 50 random states", &report);
}

#[test]
fn criterion_04_theorem1_suite() {
    let nonneg = verify::theorem1_nonnegativity(SEED, 2000);
    assert_report(
        "04a theorem-1 nonnegativity (2000 tuples, 2x2/2x3/3x3)",
        &nonneg,
    );
    let equality = verify::theorem1_equality_cases(SEED, 500);
    assert_report("04b theorem-1 equality cases", &equality);
}

#[test]
fn criterion_05_monotonicity_suite() {
    let report = verify::irreality_monotonicity(SEED, 2000);
    assert_report("05 irreality monotonicity (2000 tuples)", &report);
}

#[test]
fn criterion_06_identity_and_telescoping() {
    let identities = verify::delta_identities(SEED, 500);
    assert_report("06a composition identities (500 tuples)", &identities);
    let telescoping = verify::delta_telescoping(SEED, 500);
    assert_report("06b telescoping sums (500 tuples, n ≤ 20)", &telescoping);
}

#[test]
fn criterion_07_suppression_chain_on_werner_family() {
    let cfg = OptimizerConfig::default();
    let mut worst_chain: f64 = 0.0;
    let mut worst_cross: f64 = 0.0;
    for i in 0..11 {
        let beta = i as f64 / 10.0;
        let rho = two_parameter_state(0.5, beta).unwrap();
        let n = max_context_rbn(&rho, &cfg).unwrap().value;
        for &e in &[0.1, 0.6] {
            let local = local_suppression(&rho, eps(e), &cfg).unwrap().value;
            let bilocal = bilocal_suppression(&rho, eps(e), eps(e), &cfg)
                .unwrap()
                .value;
            worst_chain = worst_chain
                .max(-bilocal)
                .max(bilocal - local)
                .max(local - n);
        }
        // At ε → 1 the local suppression exhausts the total quantifier,
        // whose value the closed form pins.
        let total = local_suppression(&rho, eps(1.0), &cfg).unwrap().value;
        worst_cross = worst_cross
            .max((total - closed_form_werner_suppression(beta, 1.0)).abs())
            .max((total - n).abs());
    }
    println!(
        "criterion 07 chain 0 ≤ Δεε ≤ Δ_B ≤ N on 11 β-points x ε ∈ {{0.1, 0.6}}: {} (worst slack {:.3e}, ε→1 cross-check {:.3e})",
        if worst_chain <= 1e-8 && worst_cross < 1e-4 { "PASS" } else { "FAIL" },
        worst_chain,
        worst_cross
    );
    assert!(worst_chain <= 1e-8, "chain violated by {worst_chain:.3e}");
    assert!(
        worst_cross < 1e-4,
        "ε→1 cross-check off by {worst_cross:.3e}"
    );
}

#[test]
fn criterion_08_bounds_at_argmax() {
    let cfg = OptimizerConfig::default();
    let mut worst_bound: f64 = 0.0;

    // Local and bilocal reports on the test families.
    let pure = two_parameter_state(0.3, 1.0).unwrap();
    for &e in &[0.1, 0.6] {
        let report = local_suppression(&pure, eps(e), &cfg).unwrap();
        worst_bound = worst_bound.max(report.bounds.max_violation(report.value));
    }
    for &beta in &[0.25, 0.5, 0.75, 1.0] {
        let rho = two_parameter_state(0.5, beta).unwrap();
        for &e in &[0.1, 0.6] {
            let bilocal = bilocal_suppression(&rho, eps(e), eps(e), &cfg).unwrap();
            worst_bound = worst_bound.max(bilocal.bounds.max_violation(bilocal.value));
        }
    }

    // The Werner family shows LB2 = LB1 and UB2 = N. The identity is exact
    // at the family's proven argmax (matching z axes), where the Γ term of
    // LB1 vanishes identically; the bounds are evaluated there, as in the
    // family's closed-form treatment. (At a numerically recovered argmax
    // the ~1e-9 residual axis mismatch is log-amplified by H(ετ) to ~1e-8,
    // which is optimizer parking noise, not bound structure.)
    let z =
        rbn::observables::qubit_observable(&rbn::observables::BlochAngles::new(0.0, 0.0).unwrap());
    let mut worst_caption: f64 = 0.0;
    for &beta in &[0.25, 0.5, 0.75, 1.0] {
        let rho = two_parameter_state(0.5, beta).unwrap();
        let n = max_context_rbn(&rho, &cfg).unwrap().value;
        for &e in &[0.1, 0.6] {
            let report = local_suppression(&rho, eps(e), &cfg).unwrap();
            worst_bound = worst_bound.max(report.bounds.max_violation(report.value));
            let bounds = rbn::quantifiers::local_bounds(&rho, eps(e), &z, &z).unwrap();
            let lb1 = bounds.lb1.unwrap();
            let lb2 = bounds.lb2.unwrap();
            let ub2 = bounds.ub2.unwrap();
            worst_caption = worst_caption.max((lb2 - lb1).abs()).max((ub2 - n).abs());
        }
    }

    println!(
        "criterion 08 argmax bounds: {} (worst bound violation {:.3e} ≤ 1e-8, LB2=LB1 & UB2=N within {:.3e})",
        if worst_bound <= 1e-8 && worst_caption <= 1e-8 { "PASS" } else { "FAIL" },
        worst_bound,
        worst_caption
    );
    assert!(worst_bound <= 1e-8, "bound violated by {worst_bound:.3e}");
    assert!(
        worst_caption <= 1e-8,
        "LB2=LB1 / UB2=N reproduction off by {worst_caption:.3e}"
    );
}

#[test]
fn criterion_09_hierarchy_states() {
    let cfg = OptimizerConfig::default();
    let computational: Vec<ComplexMatrix> = (0..2)
        .map(|k| {
            let mut v = vec![Complex64::ZERO; 2];
            v[k] = Complex64::ONE;
            ComplexMatrix::outer(&v)
        })
        .collect();
    let pointer = ProjectiveObservable::new(computational.clone(), vec![1.0, -1.0]).unwrap();
    let probe = mub_partner(&pointer).unwrap();

    let mut worst_eta: f64 = 0.0;
    let mut worst_n: f64 = 0.0;
    for probs in [vec![0.5, 0.5], vec![0.75, 0.25], vec![1.0, 0.0]] {
        let rho = classical_classical_state(&probs, &computational, &computational).unwrap();
        let h = shannon_entropy(&probs);
        let value = eta(&probe, &probe, &rho).unwrap();
        worst_eta = worst_eta.max((value - h).abs());
        let n = max_context_rbn(&rho, &cfg).unwrap().value;
        worst_n = worst_n.max(h - n);
    }
    println!(
        "criterion 09 hierarchy separator: {} (|η - H| ≤ {:.3e} < 1e-10, N ≥ H within {:.3e} ≤ 1e-6)",
        if worst_eta < 1e-10 && worst_n <= 1e-6 { "PASS" } else { "FAIL" },
        worst_eta,
        worst_n
    );
    assert!(worst_eta < 1e-10, "η ≠ H by {worst_eta:.3e}");
    assert!(worst_n <= 1e-6, "N < H by {worst_n:.3e}");
}

#[test]
fn criterion_10_channel_algebra() {
    let commutation = verify::monitor_dephase_commutation(SEED, 500);
    assert_report(
        "10a monitoring/dephasing commutation (500 tuples)",
        &commutation,
    );
    let closed_form = verify::iterated_monitoring_closed_form(SEED, 500);
    assert_report(
        "10b iterated-monitoring closed form (500 tuples)",
        &closed_form,
    );
    let tail = verify::monitoring_projective_tail(SEED, 500);
    assert_report("10c 200-step tail vs projective limit", &tail);
}

#[test]
fn criterion_11_gamma_bound() {
    let report = verify::gamma_bound_dominates(SEED, 500);
    assert_report("11 Γ dominates ΔR and stays under d√(ετ/e)", &report);
}

#[test]
fn criterion_05_monotonicity_rejects_invalid_strength() {
    // Guard shared by the suites: strengths outside [0, 1] are rejected at
    // the type boundary, so no suite can silently sample them.
    assert!(MonitoringStrength::new(1.5).is_err());
    assert!(MonitoringStrength::new(-0.2).is_err());
}

#[test]
fn acceptance_state_json_interface_roundtrip() {
    // The serialization surface used by the CLI for state input/output.
    let rho = two_parameter_state(0.3, 0.8).unwrap();
    let text = rho.to_json();
    assert!(text.contains("\"dA\"") && text.contains("\"re\""));
    let back = DensityMatrix::from_json(&text).unwrap();
    assert!(rho.matrix().max_abs_diff(back.matrix()) < 1e-15);
}
