//! Seeded, machine-checkable property suites covering every invariant of
//! the library: linear-algebra contracts, channel algebra, quantifier
//! theorems and identities, bound chains, and optimizer self-consistency.
//!
//! Each suite reports its worst measured violation against a pinned
//! tolerance; the CLI `verify` command runs them all and exits nonzero on
//! any failure. Sampling is deterministic per `(seed, sample index)` so
//! results do not depend on thread scheduling.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use std::f64::consts::PI;

use crate::channels::{dephase, monitor, monitor_iterated, MonitoringStrength};
use crate::linalg::{
    hermitian_eig, hermitian_eigenvalues, partial_trace, tensor_product, trace_distance,
    ComplexMatrix, Side,
};
use crate::observables::{
    from_hermitian, mub_partner, qubit_observable, BlochAngles, ProjectiveObservable,
    DEFAULT_DEGENERACY_TOL,
};
use crate::optimizer::{
    bilocal_suppression, local_suppression, local_suppression_on, max_context_rbn, qubit_grid_max,
    DeltaEngine, OptimizerConfig,
};
use crate::quantifiers::{
    closed_form_werner_suppression, delta, entanglement_entropy, eta, gamma_bound, irreality,
    reality_gain, relative_entropy, shannon_entropy, vn_entropy,
};
use crate::states::{
    classical_classical_state, product_state, random_pure_state, schmidt_decompose,
    two_parameter_pure, two_parameter_state, DensityMatrix, PureState,
};

/// Outcome of one property suite.
#[derive(Debug, Clone)]
pub struct PropertyReport {
    pub name: &'static str,
    pub samples: usize,
    pub max_violation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl PropertyReport {
    fn from_violation(name: &'static str, samples: usize, max_violation: f64, tol: f64) -> Self {
        Self {
            name,
            samples,
            max_violation,
            tolerance: tol,
            passed: max_violation <= tol,
        }
    }
}

/// Suite configuration: `samples` is the budget of the largest suites; the
/// smaller ones scale down from it.
#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub seed: u64,
    pub samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 7,
            samples: 2000,
        }
    }
}

/// Run every suite; the returned order is stable.
pub fn run_all(cfg: &VerifyConfig) -> Vec<PropertyReport> {
    let seed = cfg.seed;
    let big = cfg.samples.max(1);
    let half = (cfg.samples / 2).max(1);
    let mid = (cfg.samples / 4).max(1);
    vec![
        eigen_reconstruction(seed, half),
        partial_trace_product_roundtrip(seed, mid),
        trace_distance_metric(seed, mid),
        state_constructors_valid(seed, mid),
        schmidt_reduced_spectrum(seed, mid),
        observable_family_invariants(seed, mid),
        channel_trace_positivity(seed, mid),
        monitor_dephase_commutation(seed, mid),
        entropy_monotonicity(seed, mid),
        iterated_monitoring_closed_form(seed, mid),
        monitoring_projective_tail(seed, mid),
        theorem1_nonnegativity(seed, big),
        theorem1_equality_cases(seed, mid),
        irreality_monotonicity(seed, big),
        delta_identities(seed, mid),
        delta_telescoping(seed, mid),
        suppressed_sum_recovers_eta(seed, mid),
        reality_gain_sandwich(seed, mid),
        gamma_bound_dominates(seed, mid),
        eta_form_equivalence(seed, mid),
        relative_entropy_cross_validation(seed, 100.min(big)),
        hierarchy_identity(seed, mid),
        label_invariance(seed, mid),
        angle_pair_reduction(seed, mid),
        closed_form_rewrite(),
        optimizer_bounds_at_argmax(seed),
        optimizer_grid_oracle(seed),
        suppression_chain_ordering(),
        werner_eps_monotonicity(),
        local_suppression_side_symmetry(),
    ]
}

// ---------------------------------------------------------------------------
// Seeded samplers.
// ---------------------------------------------------------------------------

fn sample_rng(seed: u64, idx: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ idx.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn max_violation_over(samples: usize, f: impl Fn(u64) -> f64 + Sync + Send) -> f64 {
    (0..samples as u64)
        .into_par_iter()
        .map(f)
        .reduce(|| 0.0, f64::max)
}

fn rand_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
    let mut g = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            g[(i, j)] = Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
        }
    }
    g.hermitized()
}

fn rand_density(rng: &mut ChaCha8Rng, d_a: usize, d_b: usize, rank: usize) -> DensityMatrix {
    let n = d_a * d_b;
    let g: Vec<Vec<Complex64>> = (0..n)
        .map(|_| {
            (0..rank)
                .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect()
        })
        .collect();
    let mut matrix = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            matrix[(i, j)] = (0..rank).map(|k| g[i][k] * g[j][k].conj()).sum();
        }
    }
    let tr = matrix.trace().re;
    DensityMatrix::new(matrix.scaled(1.0 / tr), d_a, d_b).expect("Ginibre states are valid")
}

fn rand_single_density(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
    rand_density(rng, dim, 1, dim).matrix().clone()
}

fn rand_pure(rng: &mut ChaCha8Rng, d_a: usize, d_b: usize) -> PureState {
    let n = d_a * d_b;
    let mut amp: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let norm = amp.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut amp {
        *z /= norm;
    }
    PureState::new(amp, d_a, d_b).expect("normalized")
}

fn rand_observable(rng: &mut ChaCha8Rng, dim: usize) -> ProjectiveObservable {
    from_hermitian(&rand_hermitian(rng, dim), DEFAULT_DEGENERACY_TOL)
        .expect("random Hermitian operators have valid spectral families")
}

fn rand_eps(rng: &mut ChaCha8Rng) -> MonitoringStrength {
    MonitoringStrength::new(rng.random_range(0.0..=1.0)).expect("in range")
}

fn dims_for(idx: u64) -> (usize, usize) {
    match idx % 3 {
        0 => (2, 2),
        1 => (2, 3),
        _ => (3, 3),
    }
}

fn full(side_eps: f64) -> MonitoringStrength {
    MonitoringStrength::new(side_eps).expect("in range")
}

// ---------------------------------------------------------------------------
// Linear algebra.
// ---------------------------------------------------------------------------

/// `Σ λ_k v_k v_k†` rebuilds random Hermitian inputs (dims 2..=8) and the
/// eigenvector list stays orthonormal.
pub fn eigen_reconstruction(seed: u64, samples: usize) -> PropertyReport {
    let worst = max_violation_over(samples, |idx| {
        let mut rng = sample_rng(seed, idx);
        let dim = 2 + (idx % 7) as usize;
        let h = rand_hermitian(&mut rng, dim);
        let spec = hermitian_eig(&h).expect("Hermitian input");
        let mut rec = ComplexMatrix::zeros(dim);
        for (l, v) in spec.eigenvalues.iter().zip(&spec.eigenvectors) {
            rec = &rec + &ComplexMatrix::outer(v).scaled(*l);
        }
        let mut worst = rec.max_abs_diff(&h);
        for i in 0..dim {
            for j in 0..dim {
                let dot: Complex64 = spec.eigenvectors[i]
                    .iter()
                    .zip(&spec.eigenvectors[j])
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot.norm() - want).abs());
            }
        }
        worst
    });
    PropertyReport::from_violation("eigen_reconstruction", samples, worst, 1e-9)
}

/// Tracing one factor of `ρ_A ⊗ ρ_B` recovers the other factor.
pub fn partial_trace_product_roundtrip(seed: u64, samples: usize) -> PropertyReport {
    let worst = max_violation_over(samples, |idx| {
        let mut rng = sample_rng(seed, idx);
        let (d_a, d_b) = dims_for(idx);
        let rho_a = rand_single_density(&mut rng, d_a);
        let rho_b = rand_single_density(&mut rng, d_b);
        let joint = tensor_product(&rho_a, &rho_b);
        let back_a = partial_trace(&joint, d_a, d_b, Side::A).expect("dims match");
        let back_b = partial_trace(&joint, d_a, d_b, Side::B).expect("dims match");
        back_a.max_abs_diff(&rho_a).max(back_b.max_abs_diff(&rho_b))
    });
    PropertyReport::from_violation("partial_trace_product_roundtrip", samples, worst, 1e-12)
}

/// Nonnegativity, symmetry, identity, and the triangle inequality on
/// sampled triples.
pub fn trace_distance_metric(seed: u64, samples: usize) -> PropertyReport {
    let worst = max_violation_over(samples, |idx| {
        let mut rng = sample_rng(seed, idx);
        let dim = 2 + (idx % 3) as usize;
        let a = rand_single_density(&mut rng, dim);
        let b = rand_single_density(&mut rng, dim);
        let c = rand_single_density(&mut rng, dim);
        let t_ab = trace_distance(&a, &b).expect("same dims");
        let t_ba = trace_distance(&b, &a).expect("same dims");
        let t_ac = trace_distance(&a, &c).expect("same dims");
        let t_cb = trace_distance(&c, &b).expect("same dims");
        (-t_ab)
            .max((t_ab - t_ba).abs())
            .max(t_ab - t_ac - t_cb)
            .max(trace_distance(&a, &a).expect("same dims"))
    });
    PropertyReport::from_violation("trace_distance_metric", samples, worst, 1e-10)
}

// ---------------------------------------------------------------------------
// States and observables.
// ---------------------------------------------------------------------------

/// Every constructor output satisfies the density-matrix contract.
pub fn state_constructors_valid(seed: u64, samples: usize) -> PropertyReport {
    let worst = max_violation_over(samples, |idx| {
        let mut rng = sample_rng(seed, idx);
        let mut out: f64 = 0.0;
        let mut check = |rho: crate::error::Result<DensityMatrix>| match rho {
            Ok(rho) => {
                let eigs = hermitian_eigenvalues(rho.matrix()).expect("validated");
                let tr_dev = (rho.matrix().trace().re - 1.0).abs();
                out = out.max(tr_dev).max(-eigs.last().copied().unwrap_or(0.0));
            }
            Err(_) => out = f64::INFINITY,
        };
        check(two_parameter_state(
            rng.random_range(0.0..=1.0),
            rng.random_range(0.0..=1.0),
        ));
        let (d_a, d_b) = dims_for(idx);
        let rank = 1 + (idx % (d_a * d_b) as u64) as usize;
        check(Ok(rand_density(&mut rng, d_a, d_b, rank)));
        check(product_state(
            &rand_single_density(&mut rng, d_a),
            &rand_single_density(&mut rng, d_b),
        ));
        let d = d_a.min(d_b);
        let mut probs: Vec<f64> = (0..d).map(|_| rng.random_range(0.0..1.0)).collect();
        let total: f64 = probs.iter().sum();
        probs.iter_mut().for_each(|p| *p /= total);
        let family_a = rand_observable(&mut rng, d_a);
        let family_b = rand_observable(&mut rng, d_b);
        if family_a.is_nondegenerate() && family_b.is_nondegenerate() {
            check(classical_classical_state(
                &probs,
                &family_a.projectors()[..d],
                &family_b.projectors()[..d],
            ));
        }
        out
    });
    PropertyReport::from_violation("state_constructors_valid", samples, worst, 1e-10)
}

/// Schmidt coefficients equal the reduced-state spectrum and the
/// decomposition reconstructs the state.
pub fn schmidt_reduced_spectrum(seed: u64, samples: usize) -> PropertyReport {
    let worst = max_violation_over(samples, |idx| {
        let mut rng = sample_rng(seed, idx);
        let (d_a, d_b) = dims_for(idx);
        let psi = rand_pure(&mut rng, d_a, d_b);
        let form = schmidt_decompose(&psi).expect("valid pure state");
        let joint = ComplexMatrix::outer(psi.amplitudes());
        let reduced = partial_trace(&joint, d_a, d_b, Side::A).expect("dims");
        let eigs = hermitian_eigenvalues(&reduced).expect("Hermitian");
        let mut worst: f64 = 0.0;
        for (c, l) in form.coefficients.iter().zip(&eigs) {
            worst = worst.max((c - l.max(0.0)).abs());
        }
        let rec = form.reconstruct();
        let overlap: Complex64 = rec
            .iter()
            .zip(psi.amplitudes())
            .map(|(a, b)| a.conj() * b)
            .sum();
        worst.max(1.0 - overlap.norm_sqr())
    });
    PropertyReport::from_violation("schmidt_reduced_spectrum", samples, worst, 1e-9)
}

/// Spectral families validate and the DFT partner is unbiased:
/// `|d·Tr(A_j F_k) - 1|` stays at rounding level.
pub fn observable_family_invariants(seed: u64, samples: usize) -> PropertyReport {
    let worst = max_violation_over(samples, |idx| {
        let mut rng = sample_rng(seed, idx);
        let dim = 2 + (idx % 3) as usize;
        let obs = rand_observable(&mut rng, dim);
        if !obs.is_nondegenerate() {
            return 0.0;
        }
        let partner = match mub_partner(&obs) {
            Ok(p) => p,
            Err(_) => return f64::INFINITY,
        };
        let mut worst: f64 = 0.0;
        for p in obs.projectors() {
            for f in partner.projectors() {
                worst = worst.max(((p * f).trace().re * dim as f64 - 1.0).abs());
            }
        }
        worst
    });
    PropertyReport::from_violation("observable_family_invariants", samples, worst, 1e-10)
}

// ---------------------------------------------------------------------------
// Channels.
// ---------------------------------------------------------------------------

/// Channel outputs stay unit-trace and positive.
pub fn channel_trace_positivity(seed: u64, samples: usize) -> PropertyReport {
    let worst = max_violation_over(samples, |idx| {
        let mut rng = sample_rng(seed, idx);
        let (d_a, d_b) = dims_for(idx);
        let rho = rand_density(&mut rng, d_a, d_b, d_a * d_b);
        let side = if idx % 2 == 0 { Side::A } else { Side::B };
        let dim = if side == Side::A { d_a } else { d_b };
        let obs = rand_observable(&mut rng, dim);
        let eps = rand_eps(&mut rng);
        let out = match monitor(&rho, &obs, eps, side) {
            Ok(out) => out,
            Err(_) => return f64::INFINITY,
        };
        let eigs = hermitian_eigenvalues(out.matrix()).expect("validated");
        (out.matrix().trace().re - 1.0)
            .abs()
            .max(-eigs.last().copied().unwrap_or(0.0))
    });
    PropertyReport::from_violation("channel_trace_positivity", samples, worst, 1e-10)
}

/// `M^ε Φ = Φ M^ε = Φ` entrywise.
pub fn monitor_dephase_commutation(seed: u64, samples: usize) -> PropertyReport {
    let worst = max_violation_over(samples, |idx| {
        let mut rng = sample_rng(seed, idx);
        let (d_a, d_b) = dims_for(idx);
        let rho = rand_density(&mut rng, d_a, d_b, d_a * d_b);
        let side = if idx % 2 == 0 { Side::A } else { Side::B };
        let dim = if side == Side::A { d_a } else { d_b };
        let obs = rand_observable(&mut rng, dim);
        let eps = rand_eps(&mut rng);
        let phi = dephase(&rho, &obs, side).expect("dims");
        let m_phi = monitor(&phi, &obs, eps, side).expect("dims");
        let phi_m =
            dephase(&monitor(&rho, &obs, eps, side).expect("dims"), &obs, side).expect("dims");
        m_phi
            .matrix()
            .max_abs_diff(phi.matrix())
            .max(phi_m.matrix().max_abs_diff(phi.matrix()))
    });
    PropertyReport::from_violation("monitor_dephase_commutation", samples, worst, 1e-12)
}

/// `S(Φ(ρ)) ≥ S([M^ε]^n(ρ)) ≥ S(ρ)`.
pub fn entropy_monotonicity(seed: u64, samples: usize) -> PropertyReport {
    let worst = max_violation_over(samples, |idx| {
        let mut rng = sample_rng(seed, idx);
        let (d_a, d_b) = dims_for(idx);
        let rho = rand_density(&mut rng, d_a, d_b, 1 + (idx % 4) as usize);
        let side = if idx % 2 == 0 { Side::A } else { Side::B };
        let dim = if side == Side::A { d_a } else { d_b };
        let obs = rand_observable(&mut rng, dim);
        let eps = rand_eps(&mut rng);
        let n = (idx % 6) as u32;
        let monitored = monitor_iterated(&rho, &obs, eps, side, n).expect("dims");
        let dephased = dephase(&rho, &obs, side).expect("dims");
        let s_rho = vn_entropy(&rho).expect("valid");
        let s_mon = vn_entropy(&monitored).expect("valid");
        let s_phi = vn_entropy(&dephased).expect("valid");
        (s_mon - s_phi).max(s_rho - s_mon)
    });
    PropertyReport::from_violation("entropy_monotonicity", samples, worst, 1e-10)
}

/// The closed-form `n`-step monitoring equals `n` applications.
pub fn iterated_monitoring_closed_form(seed: u64, samples: usize) -> PropertyReport {
    let worst = max_violation_over(samples, |idx| {
        let mut rng = sample_rng(seed, idx);
        let (d_a, d_b) = dims_for(idx);
        let rho = rand_density(&mut rng, d_a, d_b, d_a * d_b);
        let side = if idx % 2 == 0 { Side::A } else { Side::B };
        let dim = if side == Side::A { d_a } else { d_b };
        let obs = rand_observable(&mut rng, dim);
        let eps = rand_eps(&mut rng);
        let n = (idx % 9) as u32;
        let closed = monitor_iterated(&rho, &obs, eps, side, n).expect("dims");
        let mut repeated = rho;
        for _ in 0..n {
            repeated = monitor(&repeated, &obs, eps, side).expect("dims");
        }
        closed.matrix().max_abs_diff(repeated.matrix())
    });
    PropertyReport::from_violation("iterated_monitoring_closed_form", samples, worst, 1e-12)
}

/// 200 monitorings at ε ≥ 0.1 are indistinguishable from the projective
/// limit.
pub fn monitoring_projective_tail(seed: u64, samples: usize) -> PropertyReport {
    let worst = max_violation_over(samples, |idx| {
        let mut rng = sample_rng(seed, idx);
        let (d_a, d_b) = dims_for(idx);
        let rho = rand_density(&mut rng, d_a, d_b, d_a * d_b);
        let side = if idx % 2 == 0 { Side::A } else { Side::B };
        let dim = if side == Side::A { d_a } else { d_b };
        let obs = rand_observable(&mut rng, dim);
        let eps = MonitoringStrength::new(rng.random_range(0.1..=1.0)).expect("in range");
        let tail = monitor_iterated(&rho, &obs, eps, side, 200).expect("dims");
        let dephased = dephase(&rho, &obs, side).expect("dims");
        tail.matrix().max_abs_diff(dephased.matrix())
    });
    PropertyReport::from_violation("monitoring_projective_tail", samples, worst, 1e-8)
}

// ---------------------------------------------------------------------------
// Quantifier theorems and identities.
// ---------------------------------------------------------------------------

/// δ is nonnegative for arbitrary states, observables, and strengths.
pub fn theorem1_nonnegativity(seed: u64, samples: usize) -> PropertyReport {
    let worst = max_violation_over(samples, |idx| {
        let mut rng = sample_rng(seed, idx);
        let (d_a, d_b) = dims_for(idx);
        let rank = 1 + (idx % (d_a * d_b) as u64) as usize;
        let rho = rand_density(&mut rng, d_a, d_b, rank);
        let obs_a = rand_observable(&mut rng, d_a);
        let obs_b = rand_observable(&mut rng, d_b);
        let value = delta(&obs_a, &obs_b, &rho, rand_eps(&mut rng), rand_eps(&mut rng))
            .expect("valid inputs");
        -value
    });
    PropertyReport::from_violation("theorem1_nonnegativity", samples, worst, 1e-10)
}

/// δ vanishes on product states and on states with preestablished reality.
pub fn theorem1_equality_cases(seed: u64, samples: usize) -> PropertyReport {
    let worst = max_violation_over(samples, |idx| {
        let mut rng = sample_rng(seed, idx);
        let (d_a, d_b) = dims_for(idx);
        let obs_a = rand_observable(&mut rng, d_a);
        let obs_b = rand_observable(&mut rng, d_b);
        let eps_a = rand_eps(&mut rng);
        let eps_b = rand_eps(&mut rng);

        let product = product_state(
            &rand_single_density(&mut rng, d_a),
            &rand_single_density(&mut rng, d_b),
        )
        .expect("valid marginals");
        let v1 = delta(&obs_a, &obs_b, &product, eps_a, eps_b).expect("valid");

        let rho = rand_density(&mut rng, d_a, d_b, d_a * d_b);
        let reality = if idx % 2 == 0 {
            dephase(&rho, &obs_a, Side::A).expect("dims")
        } else {
            dephase(&rho, &obs_b, Side::B).expect("dims")
        };
        let v2 = delta(&obs_a, &obs_b, &reality, eps_a, eps_b).expect("valid");
        v1.abs().max(v2.abs())
    });
    PropertyReport::from_violation("theorem1_equality_cases", samples, worst, 1e-10)
}

/// Monitoring the observable itself, or anything at the remote site, never
/// increases its irreality. (Same-side monitoring of an *incompatible*
/// observable can increase it: dephasing |0⟩⟨0| along a tilted axis
/// manufactures σ_z coherence, so that case is excluded by the theorem.)
pub fn irreality_monotonicity(seed: u64, samples: usize) -> PropertyReport {
    let worst = max_violation_over(samples, |idx| {
        let mut rng = sample_rng(seed, idx);
        let (d_a, d_b) = dims_for(idx);
        let rho = rand_density(&mut rng, d_a, d_b, 1 + (idx % 4) as usize);
        let obs_a = rand_observable(&mut rng, d_a);
        let (probe, side) = if idx % 2 == 0 {
            (obs_a.clone(), Side::A)
        } else {
            (rand_observable(&mut rng, d_b), Side::B)
        };
        let monitored = monitor(&rho, &probe, rand_eps(&mut rng), side).expect("dims");
        let before = irreality(&obs_a, &rho, Side::A).expect("valid");
        let after = irreality(&obs_a, &monitored, Side::A).expect("valid");
        after - before
    });
    PropertyReport::from_violation("irreality_monotonicity", samples, worst, 1e-10)
}

/// `δ^{εε'}(ρ) = δ^{ε1}(ρ) - δ^{ε1}(M_B^{ε'}ρ) = δ^{1ε'}(ρ) - δ^{1ε'}(M_A^ε ρ)`.
pub fn delta_identities(seed: u64, samples: usize) -> PropertyReport {
    let worst = max_violation_over(samples, |idx| {
        let mut rng = sample_rng(seed, idx);
        let (d_a, d_b) = dims_for(idx);
        let rho = rand_density(&mut rng, d_a, d_b, d_a * d_b);
        let obs_a = rand_observable(&mut rng, d_a);
        let obs_b = rand_observable(&mut rng, d_b);
        let eps_a = rand_eps(&mut rng);
        let eps_b = rand_eps(&mut rng);
        let one = full(1.0);

        let lhs = delta(&obs_a, &obs_b, &rho, eps_a, eps_b).expect("valid");

        let m_b = monitor(&rho, &obs_b, eps_b, Side::B).expect("dims");
        let via_b = delta(&obs_a, &obs_b, &rho, eps_a, one).expect("valid")
            - delta(&obs_a, &obs_b, &m_b, eps_a, one).expect("valid");

        let m_a = monitor(&rho, &obs_a, eps_a, Side::A).expect("dims");
        let via_a = delta(&obs_a, &obs_b, &rho, one, eps_b).expect("valid")
            - delta(&obs_a, &obs_b, &m_a, one, eps_b).expect("valid");

        (lhs - via_b).abs().max((lhs - via_a).abs())
    });
    PropertyReport::from_violation("delta_identities", samples, worst, 1e-12)
}

/// `Σ_{k=0}^n δ^{1ε}([M_B^ε]^k ρ) = δ^{1ε_n}(ρ)` with
/// `ε_n = 1-(1-ε)^{n+1}`.
pub fn delta_telescoping(seed: u64, samples: usize) -> PropertyReport {
    let worst = max_violation_over(samples, |idx| {
        let mut rng = sample_rng(seed, idx);
        let (d_a, d_b) = if idx % 2 == 0 { (2, 2) } else { (2, 3) };
        let rho = rand_density(&mut rng, d_a, d_b, d_a * d_b);
        let obs_a = rand_observable(&mut rng, d_a);
        let obs_b = rand_observable(&mut rng, d_b);
        let e = rng.random_range(0.05..0.95);
        let eps = full(e);
        let one = full(1.0);
        let n = (idx % 21) as u32;

        let mut sum = 0.0;
        let mut state = rho.clone();
        for _ in 0..=n {
            sum += delta(&obs_a, &obs_b, &state, one, eps).expect("valid");
            state = monitor(&state, &obs_b, eps, Side::B).expect("dims");
        }
        let eps_n = full(1.0 - (1.0 - e).powi(n as i32 + 1));
        let direct = delta(&obs_a, &obs_b, &rho, one, eps_n).expect("valid");
        (sum - direct).abs()
    });
    PropertyReport::from_violation("delta_telescoping", samples, worst, 1e-10)
}

/// The summed suppression approaches the total context quantifier η as the
/// monitoring order grows.
pub fn suppressed_sum_recovers_eta(seed: u64, samples: usize) -> PropertyReport {
    let worst = max_violation_over(samples, |idx| {
        let mut rng = sample_rng(seed, idx);
        let (d_a, d_b) = dims_for(idx);
        let rho = rand_density(&mut rng, d_a, d_b, d_a * d_b);
        let obs_a = rand_observable(&mut rng, d_a);
        let obs_b = rand_observable(&mut rng, d_b);
        let e: f64 = rng.random_range(0.3..0.95);
        let eps_n = full(1.0 - (1.0 - e).powi(61));
        let tail = delta(&obs_a, &obs_b, &rho, full(1.0), eps_n).expect("valid");
        let total = eta(&obs_a, &obs_b, &rho).expect("valid");
        (tail - total).abs()
    });
    PropertyReport::from_violation("suppressed_sum_recovers_eta", samples, worst, 1e-7)
}

/// `ε·I(O|ρ) ≤ ΔR_O^ε(ρ) ≤ min(I(O|ρ), Γ_O^ε(ρ))`.
pub fn reality_gain_sandwich(seed: u64, samples: usize) -> PropertyReport {
    let worst = max_violation_over(samples, |idx| {
        let mut rng = sample_rng(seed, idx);
        let (d_a, d_b) = dims_for(idx);
        let rho = rand_density(&mut rng, d_a, d_b, 1 + (idx % 4) as usize);
        let side = if idx % 2 == 0 { Side::A } else { Side::B };
        let dim = if side == Side::A { d_a } else { d_b };
        let obs = rand_observable(&mut rng, dim);
        let eps = rand_eps(&mut rng);
        let gain = reality_gain(&obs, &rho, eps, side).expect("valid");
        let irr = irreality(&obs, &rho, side).expect("valid");
        let gamma = gamma_bound(&obs, &rho, eps, side).expect("valid");
        (eps.value() * irr - gain).max(gain - irr).max(gain - gamma)
    });
    PropertyReport::from_violation("reality_gain_sandwich", samples, worst, 1e-10)
}

/// Γ dominates the reality gain and respects its own `d·√(ετ/e)` ceiling.
pub fn gamma_bound_dominates(seed: u64, samples: usize) -> PropertyReport {
    let worst = max_violation_over(samples, |idx| {
        let mut rng = sample_rng(seed, idx);
        let (d_a, d_b) = dims_for(idx);
        let rho = rand_density(&mut rng, d_a, d_b, 1 + (idx % 4) as usize);
        let side = if idx % 2 == 0 { Side::A } else { Side::B };
        let dim = if side == Side::A { d_a } else { d_b };
        let obs = rand_observable(&mut rng, dim);
        let eps = rand_eps(&mut rng);
        let gain = reality_gain(&obs, &rho, eps, side).expect("valid");
        let gamma = gamma_bound(&obs, &rho, eps, side).expect("valid");
        let dephased = dephase(&rho, &obs, side).expect("dims");
        let tau = trace_distance(dephased.matrix(), rho.matrix()).expect("dims");
        let mut worst = gain - gamma;
        if tau > 1e-6 && eps.value() > 0.0 {
            let d = rho.dim() as f64;
            let ceiling = d * (eps.value() * tau / std::f64::consts::E).sqrt();
            worst = worst.max(gamma - ceiling);
        }
        worst
    });
    PropertyReport::from_violation("gamma_bound_dominates", samples, worst, 1e-10)
}

/// The symmetric four-entropy form of η equals the irreality-difference
/// form on either side; η is nonnegative.
pub fn eta_form_equivalence(seed: u64, samples: usize) -> PropertyReport {
    let worst = max_violation_over(samples, |idx| {
        let mut rng = sample_rng(seed, idx);
        let (d_a, d_b) = dims_for(idx);
        let rho = rand_density(&mut rng, d_a, d_b, d_a * d_b);
        let obs_a = rand_observable(&mut rng, d_a);
        let obs_b = rand_observable(&mut rng, d_b);

        let sym = eta(&obs_a, &obs_b, &rho).expect("valid");
        let phi_b = dephase(&rho, &obs_b, Side::B).expect("dims");
        let diff_a = irreality(&obs_a, &rho, Side::A).expect("valid")
            - irreality(&obs_a, &phi_b, Side::A).expect("valid");
        let phi_a = dephase(&rho, &obs_a, Side::A).expect("dims");
        let diff_b = irreality(&obs_b, &rho, Side::B).expect("valid")
            - irreality(&obs_b, &phi_a, Side::B).expect("valid");

        (sym - diff_a).abs().max((sym - diff_b).abs()).max(-sym)
    });
    PropertyReport::from_violation("eta_form_equivalence", samples, worst, 1e-12)
}

/// `S(ρ||Φ_O(ρ))` computed spectrally agrees with the irreality entropy
/// difference.
pub fn relative_entropy_cross_validation(seed: u64, samples: usize) -> PropertyReport {
    let worst = max_violation_over(samples, |idx| {
        let mut rng = sample_rng(seed, idx);
        let (d_a, d_b) = dims_for(idx);
        let rho = rand_density(&mut rng, d_a, d_b, d_a * d_b);
        let side = if idx % 2 == 0 { Side::A } else { Side::B };
        let dim = if side == Side::A { d_a } else { d_b };
        let obs = rand_observable(&mut rng, dim);
        let dephased = dephase(&rho, &obs, side).expect("dims");
        let divergence = relative_entropy(&rho, &dephased).expect("support holds");
        let irr = irreality(&obs, &rho, side).expect("valid");
        (divergence - irr).abs()
    });
    PropertyReport::from_violation("relative_entropy_cross_validation", samples, worst, 1e-9)
}

/// For classical-classical states probed with DFT partners, η equals the
/// Shannon entropy of the mixing distribution.
pub fn hierarchy_identity(seed: u64, samples: usize) -> PropertyReport {
    let worst = max_violation_over(samples, |idx| {
        let mut rng = sample_rng(seed, idx);
        let d = 2 + (idx % 2) as usize;
        let mut probs: Vec<f64> = (0..d).map(|_| rng.random_range(0.0..1.0)).collect();
        let total: f64 = probs.iter().sum();
        probs.iter_mut().for_each(|p| *p /= total);

        let labels: Vec<f64> = (0..d).map(|k| (d - k) as f64).collect();
        let computational: Vec<ComplexMatrix> = (0..d)
            .map(|k| {
                let mut v = vec![Complex64::ZERO; d];
                v[k] = Complex64::ONE;
                ComplexMatrix::outer(&v)
            })
            .collect();
        let pointer =
            ProjectiveObservable::new(computational.clone(), labels).expect("valid family");
        let rho_cc =
            classical_classical_state(&probs, &computational, &computational).expect("valid");
        let probe = mub_partner(&pointer).expect("nondegenerate");
        let value = eta(&probe, &probe, &rho_cc).expect("valid");
        (value - shannon_entropy(&probs)).abs()
    });
    PropertyReport::from_violation("hierarchy_identity", samples, worst, 1e-10)
}

/// Relabeling observables changes no quantifier, bitwise.
pub fn label_invariance(seed: u64, samples: usize) -> PropertyReport {
    let worst = max_violation_over(samples, |idx| {
        let mut rng = sample_rng(seed, idx);
        let (d_a, d_b) = dims_for(idx);
        let rho = rand_density(&mut rng, d_a, d_b, d_a * d_b);
        let obs_a = rand_observable(&mut rng, d_a);
        let obs_b = rand_observable(&mut rng, d_b);
        let relabel = |obs: &ProjectiveObservable| {
            let labels: Vec<f64> = (0..obs.labels().len())
                .map(|k| 2.5 * (k as f64 + 1.0))
                .collect();
            obs.relabeled(labels).expect("distinct labels")
        };
        let eps_a = rand_eps(&mut rng);
        let eps_b = rand_eps(&mut rng);
        let before = delta(&obs_a, &obs_b, &rho, eps_a, eps_b).expect("valid");
        let after = delta(&relabel(&obs_a), &relabel(&obs_b), &rho, eps_a, eps_b).expect("valid");
        let eta_before = eta(&obs_a, &obs_b, &rho).expect("valid");
        let eta_after = eta(&relabel(&obs_a), &relabel(&obs_b), &rho).expect("valid");
        (before - after).abs().max((eta_before - eta_after).abs())
    });
    PropertyReport::from_violation("label_invariance", samples, worst, 0.0)
}

/// `(θ, φ)` and `(π-θ, φ+π)` parameterize the same observable, so the φ
/// lattice may be halved.
pub fn angle_pair_reduction(seed: u64, samples: usize) -> PropertyReport {
    let worst = max_violation_over(samples, |idx| {
        let mut rng = sample_rng(seed, idx);
        let rho = rand_density(&mut rng, 2, 2, 1 + (idx % 4) as usize);
        let engine = DeltaEngine::new(&rho, 1.0, rng.random_range(0.0..=1.0)).expect("valid state");
        let t = rng.random_range(0.0..PI);
        let p = rng.random_range(0.0..2.0 * PI);
        let fixed = qubit_observable(&BlochAngles::new(1.2, 0.4).unwrap());
        let basis_fixed: Vec<Vec<Complex64>> = fixed.eigenbasis().expect("nondegenerate");
        let direct = engine.delta(&qubit_bases(t, p), &basis_fixed);
        let folded = engine.delta(&qubit_bases(PI - t, p + PI), &basis_fixed);
        (direct - folded).abs()
    });
    PropertyReport::from_violation("angle_pair_reduction", samples, worst, 1e-12)
}

fn qubit_bases(theta: f64, phi: f64) -> Vec<Vec<Complex64>> {
    let (plus, minus) = crate::observables::qubit_basis_vectors(theta, phi);
    vec![plus.to_vec(), minus.to_vec()]
}

/// The shipped stable rewrite of the pure-family closed form agrees with
/// the literal arctanh expression on interior points.
pub fn closed_form_rewrite() -> PropertyReport {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for i in 1..20 {
        for j in 1..=20 {
            let alpha = i as f64 / 20.0;
            let e = j as f64 / 20.0;
            let lam = e * alpha * (2.0 - e) * (1.0 - alpha);
            if lam < 1e-12 {
                continue;
            }
            let x = (1.0 - 4.0 * lam).max(0.0).sqrt();
            let literal = -lam.sqrt().ln() - x * x.atanh();
            let stable = crate::quantifiers::closed_form_pure_suppression(alpha, e);
            worst = worst.max((stable - literal).abs());
            count += 1;
        }
    }
    PropertyReport::from_violation("closed_form_rewrite", count, worst, 1e-12)
}

// ---------------------------------------------------------------------------
// Optimizer-level suites.
// ---------------------------------------------------------------------------

/// Every optimized value sits inside its own argmax-evaluated bounds.
pub fn optimizer_bounds_at_argmax(seed: u64) -> PropertyReport {
    let cfg = OptimizerConfig::default();
    let mut worst: f64 = 0.0;
    let mut samples = 0;

    let mut check_local = |rho: &DensityMatrix, e: f64| {
        let report = local_suppression(rho, full(e), &cfg).expect("optimizable");
        worst = worst.max(report.bounds.max_violation(report.value));
        samples += 1;
    };
    for beta in [0.5, 1.0] {
        let rho = two_parameter_state(0.5, beta).expect("in range");
        for e in [0.1, 0.6] {
            check_local(&rho, e);
        }
    }
    let pure = DensityMatrix::from_pure(&two_parameter_pure(0.3).expect("in range"));
    check_local(&pure, 0.6);
    let mut rng = sample_rng(seed, 1);
    let random = rand_density(&mut rng, 2, 2, 3);
    check_local(&random, 0.45);

    for (rho, e) in [
        (two_parameter_state(0.5, 1.0).expect("in range"), 0.6),
        (rand_density(&mut rng, 2, 2, 4), 0.3),
    ] {
        let report = bilocal_suppression(&rho, full(e), full(e), &cfg).expect("optimizable");
        worst = worst.max(report.bounds.max_violation(report.value));
        samples += 1;
    }

    PropertyReport::from_violation(
        "optimizer_bounds_at_argmax",
        samples,
        worst,
        1e-8 + cfg.objective_tol,
    )
}

/// Seeded grid + refinement never loses to an exhaustive dense lattice.
pub fn optimizer_grid_oracle(seed: u64) -> PropertyReport {
    let cfg = OptimizerConfig::default();
    let mut rng = sample_rng(seed, 3);
    let cases = [
        (two_parameter_state(0.5, 0.9).expect("in range"), 1.0, 0.55),
        (rand_density(&mut rng, 2, 2, 4), 1.0, 1.0),
        (
            DensityMatrix::from_pure(&rand_pure(&mut rng, 2, 2)),
            0.5,
            0.5,
        ),
    ];
    let mut worst: f64 = 0.0;
    for (rho, eps_a, eps_b) in &cases {
        let dense = qubit_grid_max(rho, *eps_a, *eps_b, 48, 24).expect("valid state");
        let refined = if *eps_a == 1.0 {
            local_suppression(rho, full(*eps_b), &cfg).expect("optimizable")
        } else {
            bilocal_suppression(rho, full(*eps_a), full(*eps_b), &cfg).expect("optimizable")
        };
        worst = worst.max(dense - refined.value);
    }
    PropertyReport::from_violation("optimizer_grid_oracle", cases.len(), worst, 1e-5)
}

/// `0 ≤ Δ^{εε} ≤ Δ_B^ε ≤ N` on the two-parameter family.
pub fn suppression_chain_ordering() -> PropertyReport {
    let cfg = OptimizerConfig::default();
    let mut worst: f64 = 0.0;
    let mut samples = 0;
    for beta in [0.5, 1.0] {
        let rho = two_parameter_state(0.5, beta).expect("in range");
        let n = max_context_rbn(&rho, &cfg).expect("optimizable").value;
        for e in [0.1, 0.6] {
            let local = local_suppression(&rho, full(e), &cfg)
                .expect("optimizable")
                .value;
            let bilocal = bilocal_suppression(&rho, full(e), full(e), &cfg)
                .expect("optimizable")
                .value;
            worst = worst.max(-bilocal).max(bilocal - local).max(local - n);
            samples += 1;
        }
    }
    PropertyReport::from_violation("suppression_chain_ordering", samples, worst, 1e-8)
}

/// Local suppression grows with the monitoring strength on the Werner
/// family (empirical check of the closed-form structure, not a theorem).
pub fn werner_eps_monotonicity() -> PropertyReport {
    let cfg = OptimizerConfig::default();
    let mut worst: f64 = 0.0;
    let mut samples = 0;
    for beta in [0.3, 0.7, 1.0] {
        let rho = two_parameter_state(0.5, beta).expect("in range");
        let values: Vec<f64> = [0.1, 0.3, 0.5, 0.7, 0.9]
            .iter()
            .map(|&e| {
                local_suppression(&rho, full(e), &cfg)
                    .expect("optimizable")
                    .value
            })
            .collect();
        for w in values.windows(2) {
            worst = worst.max(w[0] - w[1]);
            samples += 1;
        }
    }
    PropertyReport::from_violation("werner_eps_monotonicity", samples, worst, 1e-8)
}

/// The two-parameter family shows the same suppression whichever side is
/// monitored.
pub fn local_suppression_side_symmetry() -> PropertyReport {
    let cfg = OptimizerConfig::default();
    let mut worst: f64 = 0.0;
    let mut samples = 0;
    let mut check = |rho: &DensityMatrix, e: f64| {
        let b_side = local_suppression_on(rho, full(e), Side::B, &cfg).expect("optimizable");
        let a_side = local_suppression_on(rho, full(e), Side::A, &cfg).expect("optimizable");
        worst = worst.max((a_side.value - b_side.value).abs());
        samples += 1;
    };
    for beta in [0.6, 1.0] {
        check(&two_parameter_state(0.5, beta).expect("in range"), 0.6);
    }
    for alpha in [0.3, 0.7] {
        check(
            &DensityMatrix::from_pure(&two_parameter_pure(alpha).expect("in range")),
            0.35,
        );
    }
    PropertyReport::from_violation("local_suppression_side_symmetry", samples, worst, 1e-6)
}

// ---------------------------------------------------------------------------
// Closed-form sweeps shared with the acceptance suite.
// ---------------------------------------------------------------------------

/// Optimized pure-state context quantifier equals the entanglement entropy.
pub fn pure_state_context_matches_entanglement(seed: u64, samples: usize) -> PropertyReport {
    let cfg = OptimizerConfig::default();
    let worst = (0..samples as u64)
        .into_par_iter()
        .map(|idx| {
            let psi = random_pure_state(2, 2, seed.wrapping_add(idx));
            let rho = DensityMatrix::from_pure(&psi);
            let n = max_context_rbn(&rho, &cfg).expect("optimizable").value;
            let e = entanglement_entropy(&psi).expect("valid");
            (n - e).abs()
        })
        .reduce(|| 0.0, f64::max);
    PropertyReport::from_violation(
        "pure_state_context_matches_entanglement",
        samples,
        worst,
        1e-5,
    )
}

/// Local suppression matches the Werner closed form on an n×n (β, ε) grid.
pub fn werner_closed_form_match(points: usize) -> PropertyReport {
    let worst = closed_form_sweep(points, |beta, e| {
        let rho = two_parameter_state(0.5, beta).expect("in range");
        let got = local_suppression(&rho, full(e), &OptimizerConfig::default())
            .expect("optimizable")
            .value;
        (got - closed_form_werner_suppression(beta, e)).abs()
    });
    PropertyReport::from_violation("werner_closed_form_match", points * points, worst, 1e-4)
}

/// Local suppression matches the pure-family closed form on an n×n (α, ε)
/// grid.
pub fn pure_closed_form_match(points: usize) -> PropertyReport {
    let worst = closed_form_sweep(points, |alpha, e| {
        let rho = two_parameter_state(alpha, 1.0).expect("in range");
        let got = local_suppression(&rho, full(e), &OptimizerConfig::default())
            .expect("optimizable")
            .value;
        (got - crate::quantifiers::closed_form_pure_suppression(alpha, e)).abs()
    });
    PropertyReport::from_violation("pure_closed_form_match", points * points, worst, 1e-4)
}

fn closed_form_sweep(points: usize, f: impl Fn(f64, f64) -> f64 + Sync) -> f64 {
    let n = points.max(2);
    let coords: Vec<(f64, f64)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (i as f64 / (n - 1) as f64, j as f64 / (n - 1) as f64))
        .collect();
    coords
        .par_iter()
        .map(|&(x, e)| f(x, e))
        .reduce(|| 0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_run_passes_at_reduced_samples() {
        let cfg = VerifyConfig {
            seed: 11,
            samples: 48,
        };
        for report in run_all(&cfg) {
            assert!(
                report.passed,
                "{} violated: {:.3e} > {:.3e}",
                report.name, report.max_violation, report.tolerance
            );
        }
    }
}
