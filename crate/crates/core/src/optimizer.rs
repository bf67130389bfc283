//! Derivative-free maximization over observable pairs: the total context
//! quantifier `N(ρ) = max η`, the local suppression `Δ_B^ε = max δ^{1ε}`,
//! and the bilocal suppression `Δ^{εε'} = max δ^{εε'}`.
//!
//! Qubit pairs are seeded deterministically on a Bloch-angle lattice and
//! refined with a Nelder-Mead simplex from the best `k` cells; larger
//! dimensions use a seeded multistart over Givens-rotation angles
//! (best-effort). The objective is evaluated through the block structure of
//! locally dephased states, which avoids a full eigensolve wherever one
//! side is projective; tests pin this path against the plain
//! channel-then-entropy route.

use num_complex::Complex64;
use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channels::MonitoringStrength;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, ComplexMatrix, Side};
use crate::observables::{qubit_basis_vectors, BlochAngles, ProjectiveObservable};
use crate::quantifiers::{
    bilocal_bounds_asymmetric, entropy_from_eigenvalues, local_bounds_monitored, BoundsReport,
};
use crate::states::DensityMatrix;

/// Search configuration; the defaults satisfy every closed-form comparison
/// in this crate's test suite with two orders of magnitude to spare.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig {
    /// θ points per side on `[0, π]`.
    pub grid_theta: usize,
    /// φ points per side on `[0, π)`; the lattice covers all projector
    /// pairs because `(θ, φ)` and `(π-θ, φ+π)` define the same observable.
    pub grid_phi: usize,
    /// Number of best grid cells refined by the simplex.
    pub refine_starts: usize,
    /// Simplex objective spread at termination.
    pub objective_tol: f64,
    /// Simplex parameter spread at termination.
    pub param_tol: f64,
    /// Simplex iteration budget per start.
    pub max_iterations: usize,
    /// Random starts per side pair when a side has dimension > 2.
    pub multistart: usize,
    /// Seed for the multistart sampler (unused for qubit pairs).
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            grid_theta: 24,
            grid_phi: 12,
            refine_starts: 5,
            objective_tol: 1e-13,
            param_tol: 1e-9,
            max_iterations: 500,
            multistart: 12,
            seed: 0,
        }
    }
}

/// Measurement-basis parameters of an optimizer argmax.
#[derive(Debug, Clone, PartialEq)]
pub enum PairParams {
    /// Bloch angles per side; labels are fixed to ±1, which loses no
    /// generality because every quantifier depends only on the projectors.
    Qubit {
        theta_a: f64,
        phi_a: f64,
        theta_b: f64,
        phi_b: f64,
    },
    /// Givens-rotation angles per side, `d(d-1)/2` interleaved `(θ, φ)`
    /// pairs each.
    Rotations { side_a: Vec<f64>, side_b: Vec<f64> },
}

impl PairParams {
    /// Rebuild the argmax observables.
    pub fn observables(
        &self,
        d_a: usize,
        d_b: usize,
    ) -> Result<(ProjectiveObservable, ProjectiveObservable)> {
        match self {
            PairParams::Qubit {
                theta_a,
                phi_a,
                theta_b,
                phi_b,
            } => {
                let a = crate::observables::qubit_observable(&BlochAngles::new(*theta_a, *phi_a)?);
                let b = crate::observables::qubit_observable(&BlochAngles::new(*theta_b, *phi_b)?);
                Ok((a, b))
            }
            PairParams::Rotations { side_a, side_b } => {
                let basis_a = unitary_columns(d_a, side_a);
                let basis_b = unitary_columns(d_b, side_b);
                let labels = |d: usize| (0..d).map(|k| (d - 1 - k) as f64).collect::<Vec<_>>();
                Ok((
                    ProjectiveObservable::from_basis(&basis_a, labels(d_a))?,
                    ProjectiveObservable::from_basis(&basis_b, labels(d_b))?,
                ))
            }
        }
    }
}

/// Result of one maximization: the optimum, its parameters, the analytic
/// bounds evaluated at the argmax, and search diagnostics.
#[derive(Debug, Clone)]
pub struct SuppressionReport {
    pub value: f64,
    pub argmax: PairParams,
    pub bounds: BoundsReport,
    pub evaluations: u64,
    pub converged: bool,
}

/// `N(ρ) = max_{A,B} η_AB(ρ)`.
pub fn max_context_rbn(rho: &DensityMatrix, cfg: &OptimizerConfig) -> Result<SuppressionReport> {
    let mut report = maximize(rho, 1.0, 1.0, cfg)?;
    let (a, b) = report.argmax.observables(rho.d_a(), rho.d_b())?;
    let full = MonitoringStrength::new(1.0)?;
    report.bounds =
        local_bounds_monitored(rho, full, &a, &b, Side::B)?.with_trivial_ub(report.value);
    debug_assert!(report.bounds.max_violation(report.value) <= 1e-8 + cfg.objective_tol);
    Ok(report)
}

/// `Δ_B^ε(ρ) = max_{A,B} δ_AB^{1ε}(ρ)`: suppression under a monitoring of
/// strength ε on side B.
pub fn local_suppression(
    rho: &DensityMatrix,
    eps: MonitoringStrength,
    cfg: &OptimizerConfig,
) -> Result<SuppressionReport> {
    local_suppression_on(rho, eps, Side::B, cfg)
}

/// Local suppression with the monitored side chosen explicitly; the two
/// sides are computed independently (nothing forces `Δ_A^ε = Δ_B^ε`).
pub fn local_suppression_on(
    rho: &DensityMatrix,
    eps: MonitoringStrength,
    monitored: Side,
    cfg: &OptimizerConfig,
) -> Result<SuppressionReport> {
    let (eps_a, eps_b) = match monitored {
        Side::A => (eps.value(), 1.0),
        Side::B => (1.0, eps.value()),
    };
    let mut report = maximize(rho, eps_a, eps_b, cfg)?;
    let (a, b) = report.argmax.observables(rho.d_a(), rho.d_b())?;
    report.bounds = local_bounds_monitored(rho, eps, &a, &b, monitored)?;
    debug_assert!(report.bounds.max_violation(report.value) <= 1e-8 + cfg.objective_tol);
    Ok(report)
}

/// `Δ^{εε'}(ρ) = max_{A,B} δ_AB^{εε'}(ρ)`: suppression under independent
/// monitorings of both sides.
pub fn bilocal_suppression(
    rho: &DensityMatrix,
    eps_a: MonitoringStrength,
    eps_b: MonitoringStrength,
    cfg: &OptimizerConfig,
) -> Result<SuppressionReport> {
    let mut report = maximize(rho, eps_a.value(), eps_b.value(), cfg)?;
    let (a, b) = report.argmax.observables(rho.d_a(), rho.d_b())?;
    let (lb, ub) = bilocal_bounds_asymmetric(rho, eps_a, eps_b, &a, &b)?;
    report.bounds = BoundsReport {
        lb1_bi: Some(lb),
        ub1_bi: Some(ub),
        ..BoundsReport::empty()
    };
    debug_assert!(report.bounds.max_violation(report.value) <= 1e-8 + cfg.objective_tol);
    Ok(report)
}

// ---------------------------------------------------------------------------
// Objective evaluation through dephased block structure.
// ---------------------------------------------------------------------------

/// Objective context: the state, its entropy, and the two monitoring
/// strengths (1.0 on a side means that side is dephased projectively).
pub(crate) struct DeltaEngine<'a> {
    rho: &'a ComplexMatrix,
    d_a: usize,
    d_b: usize,
    eps_a: f64,
    eps_b: f64,
    s_rho: f64,
}

impl<'a> DeltaEngine<'a> {
    pub(crate) fn new(rho: &'a DensityMatrix, eps_a: f64, eps_b: f64) -> Result<Self> {
        let eigs = hermitian_eigenvalues(rho.matrix())?;
        Ok(Self {
            rho: rho.matrix(),
            d_a: rho.d_a(),
            d_b: rho.d_b(),
            eps_a,
            eps_b,
            s_rho: entropy_from_eigenvalues(&eigs),
        })
    }

    /// `δ^{ε_A ε_B}` for rank-1 measurement bases on each side.
    pub(crate) fn delta(&self, basis_a: &[Vec<Complex64>], basis_b: &[Vec<Complex64>]) -> f64 {
        let m_b = self.monitored_b(basis_b);
        let s_m_b = self.entropy_monitored(basis_b, Side::B, self.eps_b, Some(&m_b));
        let s_m_a = self.entropy_monitored(basis_a, Side::A, self.eps_a, None);
        let s_joint = self.joint_entropy(&m_b, basis_a, basis_b);
        s_m_a + s_m_b - s_joint - self.s_rho
    }

    /// `M_B^{ε_B}(ρ)` as a raw matrix.
    fn monitored_b(&self, basis_b: &[Vec<Complex64>]) -> ComplexMatrix {
        let phi = self.dephase_via_blocks(self.rho, basis_b, Side::B);
        if self.eps_b == 1.0 {
            phi
        } else {
            &self.rho.scaled(1.0 - self.eps_b) + &phi.scaled(self.eps_b)
        }
    }

    /// `S(M^ε(ρ))` for one side of the input state.
    fn entropy_monitored(
        &self,
        basis: &[Vec<Complex64>],
        side: Side,
        eps: f64,
        precomputed: Option<&ComplexMatrix>,
    ) -> f64 {
        if eps == 1.0 {
            // S(Φ(ρ)) is the sum of the block entropies.
            return self.dephased_entropy(self.rho, basis, side);
        }
        match precomputed {
            Some(m) => entropy_small(m),
            None => {
                let phi = self.dephase_via_blocks(self.rho, basis, side);
                let m = &self.rho.scaled(1.0 - eps) + &phi.scaled(eps);
                entropy_small(&m)
            }
        }
    }

    /// `S(M_A^{ε_A}(m_b))` where `m_b = M_B^{ε_B}(ρ)`.
    fn joint_entropy(
        &self,
        m_b: &ComplexMatrix,
        basis_a: &[Vec<Complex64>],
        basis_b: &[Vec<Complex64>],
    ) -> f64 {
        if self.eps_a == 1.0 {
            return self.dephased_entropy(m_b, basis_a, Side::A);
        }
        let phi_a = self.dephase_via_blocks(m_b, basis_a, Side::A);
        let joint = &m_b.scaled(1.0 - self.eps_a) + &phi_a.scaled(self.eps_a);
        if self.eps_b == 1.0 {
            // joint is Φ_B-invariant, so its spectrum is the union of the
            // B-block spectra.
            self.dephased_entropy(&joint, basis_b, Side::B)
        } else {
            entropy_small(&joint)
        }
    }

    /// Block `⟨u| x |u⟩` on the complementary factor.
    fn block(&self, x: &ComplexMatrix, u: &[Complex64], side: Side) -> ComplexMatrix {
        let (d_a, d_b) = (self.d_a, self.d_b);
        match side {
            Side::A => {
                let mut out = ComplexMatrix::zeros(d_b);
                for k in 0..d_b {
                    for l in 0..d_b {
                        let mut acc = Complex64::ZERO;
                        for i in 0..d_a {
                            for j in 0..d_a {
                                acc += u[i].conj() * x[(i * d_b + k, j * d_b + l)] * u[j];
                            }
                        }
                        out[(k, l)] = acc;
                    }
                }
                out
            }
            Side::B => {
                let mut out = ComplexMatrix::zeros(d_a);
                for i in 0..d_a {
                    for j in 0..d_a {
                        let mut acc = Complex64::ZERO;
                        for k in 0..d_b {
                            for l in 0..d_b {
                                acc += u[k].conj() * x[(i * d_b + k, j * d_b + l)] * u[l];
                            }
                        }
                        out[(i, j)] = acc;
                    }
                }
                out
            }
        }
    }

    /// `Φ(x)` for a rank-1 basis on one side, assembled from blocks.
    fn dephase_via_blocks(
        &self,
        x: &ComplexMatrix,
        basis: &[Vec<Complex64>],
        side: Side,
    ) -> ComplexMatrix {
        let (d_a, d_b) = (self.d_a, self.d_b);
        let mut out = ComplexMatrix::zeros(d_a * d_b);
        for u in basis {
            let block = self.block(x, u, side);
            match side {
                Side::A => {
                    for i in 0..d_a {
                        for j in 0..d_a {
                            let w = u[i] * u[j].conj();
                            if w == Complex64::ZERO {
                                continue;
                            }
                            for k in 0..d_b {
                                for l in 0..d_b {
                                    out[(i * d_b + k, j * d_b + l)] += w * block[(k, l)];
                                }
                            }
                        }
                    }
                }
                Side::B => {
                    for k in 0..d_b {
                        for l in 0..d_b {
                            let w = u[k] * u[l].conj();
                            if w == Complex64::ZERO {
                                continue;
                            }
                            for i in 0..d_a {
                                for j in 0..d_a {
                                    out[(i * d_b + k, j * d_b + l)] += w * block[(i, j)];
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    fn dephased_entropy(&self, x: &ComplexMatrix, basis: &[Vec<Complex64>], side: Side) -> f64 {
        basis
            .iter()
            .map(|u| entropy_small(&self.block(x, u, side)))
            .sum()
    }
}

/// Entropy of a small Hermitian PSD matrix: closed form through dim 2,
/// Jacobi above.
fn entropy_small(m: &ComplexMatrix) -> f64 {
    match m.dim() {
        1 => entropy_from_eigenvalues(&[m[(0, 0)].re]),
        2 => {
            let a = m[(0, 0)].re;
            let d = m[(1, 1)].re;
            let off = (m[(0, 1)] + m[(1, 0)].conj()) * 0.5;
            let mean = 0.5 * (a + d);
            let disc = (0.25 * (a - d) * (a - d) + off.norm_sqr()).sqrt();
            entropy_from_eigenvalues(&[mean + disc, mean - disc])
        }
        _ => {
            let eigs = hermitian_eigenvalues(m).expect("blocks of Hermitian states are Hermitian");
            entropy_from_eigenvalues(&eigs)
        }
    }
}

// ---------------------------------------------------------------------------
// Search drivers.
// ---------------------------------------------------------------------------

fn maximize(
    rho: &DensityMatrix,
    eps_a: f64,
    eps_b: f64,
    cfg: &OptimizerConfig,
) -> Result<SuppressionReport> {
    for (name, e) in [("eps_a", eps_a), ("eps_b", eps_b)] {
        if !(0.0..=1.0).contains(&e) {
            return Err(Error::OutOfRange {
                name,
                value: e,
                lo: 0.0,
                hi: 1.0,
            });
        }
    }
    let engine = DeltaEngine::new(rho, eps_a, eps_b)?;
    if rho.d_a() == 2 && rho.d_b() == 2 {
        maximize_qubit(&engine, cfg)
    } else {
        maximize_generic(&engine, cfg)
    }
}

fn lattice(cfg: &OptimizerConfig) -> (Vec<f64>, Vec<f64>) {
    let n_theta = cfg.grid_theta.max(1);
    let thetas = if n_theta == 1 {
        vec![0.0]
    } else {
        (0..n_theta)
            .map(|i| PI * i as f64 / (n_theta - 1) as f64)
            .collect()
    };
    let n_phi = cfg.grid_phi.max(1);
    let phis = (0..n_phi).map(|j| PI * j as f64 / n_phi as f64).collect();
    (thetas, phis)
}

fn qubit_basis(theta: f64, phi: f64) -> Vec<Vec<Complex64>> {
    let (plus, minus) = qubit_basis_vectors(theta, phi);
    vec![plus.to_vec(), minus.to_vec()]
}

struct SideCache {
    basis: Vec<Vec<Complex64>>,
    s_marginal: f64,
    monitored: Option<ComplexMatrix>,
}

/// Cell values over the full angle lattice, row-major in
/// `(θ_a, φ_a, θ_b, φ_b)`; one-side quantities are cached per lattice
/// point.
fn evaluate_qubit_grid(engine: &DeltaEngine, angles: &[(f64, f64)]) -> Vec<(f64, usize)> {
    let a_cache: Vec<SideCache> = angles
        .iter()
        .map(|&(t, p)| {
            let basis = qubit_basis(t, p);
            let s_marginal = engine.entropy_monitored(&basis, Side::A, engine.eps_a, None);
            SideCache {
                basis,
                s_marginal,
                monitored: None,
            }
        })
        .collect();
    let b_cache: Vec<SideCache> = angles
        .iter()
        .map(|&(t, p)| {
            let basis = qubit_basis(t, p);
            let m_b = engine.monitored_b(&basis);
            let s_marginal = engine.entropy_monitored(&basis, Side::B, engine.eps_b, Some(&m_b));
            SideCache {
                basis,
                s_marginal,
                monitored: Some(m_b),
            }
        })
        .collect();

    let mut cells: Vec<(f64, usize)> = Vec::with_capacity(angles.len() * angles.len());
    for (ia, a) in a_cache.iter().enumerate() {
        for (ib, b) in b_cache.iter().enumerate() {
            let m_b = b.monitored.as_ref().expect("cached");
            let s_joint = engine.joint_entropy(m_b, &a.basis, &b.basis);
            let value = a.s_marginal + b.s_marginal - s_joint - engine.s_rho;
            cells.push((value, ia * angles.len() + ib));
        }
    }
    cells
}

/// Exhaustive lattice maximum, used as the brute-force oracle against the
/// seeded-and-refined search.
pub(crate) fn qubit_grid_max(
    rho: &DensityMatrix,
    eps_a: f64,
    eps_b: f64,
    n_theta: usize,
    n_phi: usize,
) -> Result<f64> {
    let engine = DeltaEngine::new(rho, eps_a, eps_b)?;
    let cfg = OptimizerConfig {
        grid_theta: n_theta,
        grid_phi: n_phi,
        ..OptimizerConfig::default()
    };
    let (thetas, phis) = lattice(&cfg);
    let angles: Vec<(f64, f64)> = thetas
        .iter()
        .flat_map(|&t| phis.iter().map(move |&p| (t, p)))
        .collect();
    Ok(evaluate_qubit_grid(&engine, &angles)
        .into_iter()
        .map(|(v, _)| v)
        .fold(f64::NEG_INFINITY, f64::max))
}

fn maximize_qubit(engine: &DeltaEngine, cfg: &OptimizerConfig) -> Result<SuppressionReport> {
    let (thetas, phis) = lattice(cfg);
    let angles: Vec<(f64, f64)> = thetas
        .iter()
        .flat_map(|&t| phis.iter().map(move |&p| (t, p)))
        .collect();

    let mut cells = evaluate_qubit_grid(engine, &angles);
    let mut evaluations = cells.len() as u64;
    cells.sort_unstable_by(|x, y| y.0.partial_cmp(&x.0).unwrap().then(x.1.cmp(&y.1)));

    let objective = |p: &[f64]| {
        let basis_a = qubit_basis(p[0], p[1]);
        let basis_b = qubit_basis(p[2], p[3]);
        engine.delta(&basis_a, &basis_b)
    };

    let theta_step = if thetas.len() > 1 {
        thetas[1] - thetas[0]
    } else {
        PI / 4.0
    };
    let phi_step = phis.get(1).copied().unwrap_or(PI / 4.0);
    let steps = [
        theta_step / 2.0,
        phi_step / 2.0,
        theta_step / 2.0,
        phi_step / 2.0,
    ];

    let mut best: Option<(f64, Vec<f64>, bool)> = None;
    for &(value, idx) in cells.iter().take(cfg.refine_starts.max(1)) {
        let (ia, ib) = (idx / angles.len(), idx % angles.len());
        let x0 = [angles[ia].0, angles[ia].1, angles[ib].0, angles[ib].1];
        let run = nelder_mead_with_restarts(&objective, &x0, &steps, cfg);
        evaluations += run.evaluations;
        debug_assert!(run.value >= value, "refinement starts at the seed cell");
        let params = normalize_qubit_params(&run.x);
        let candidate = (run.value, params, run.converged);
        best = Some(match best {
            None => candidate,
            Some(cur) => pick_candidate(cur, candidate),
        });
    }

    let (value, params, converged) = best.expect("at least one refinement start");
    Ok(SuppressionReport {
        value: value.max(0.0),
        argmax: PairParams::Qubit {
            theta_a: params[0],
            phi_a: params[1],
            theta_b: params[2],
            phi_b: params[3],
        },
        bounds: BoundsReport::empty(),
        evaluations,
        converged,
    })
}

fn pick_candidate(cur: (f64, Vec<f64>, bool), new: (f64, Vec<f64>, bool)) -> (f64, Vec<f64>, bool) {
    if new.0 > cur.0 {
        return new;
    }
    if new.0 == cur.0 {
        let lex = new
            .1
            .iter()
            .zip(&cur.1)
            .find_map(|(a, b)| {
                let ord = a.total_cmp(b);
                ord.is_ne().then_some(ord)
            })
            .unwrap_or(std::cmp::Ordering::Equal);
        if lex.is_lt() {
            return new;
        }
    }
    cur
}

fn normalize_qubit_params(x: &[f64]) -> Vec<f64> {
    let (ta, pa) = normalize_angle_pair(x[0], x[1]);
    let (tb, pb) = normalize_angle_pair(x[2], x[3]);
    vec![ta, pa, tb, pb]
}

/// Fold angles into `θ ∈ [0, π]`, `φ ∈ [0, 2π)` using the projector-pair
/// symmetries `(θ+2π, φ) ~ (θ, φ)` and `(2π-θ, φ+π) ~ (θ, φ)`.
fn normalize_angle_pair(theta: f64, phi: f64) -> (f64, f64) {
    let two_pi = 2.0 * PI;
    let mut t = theta.rem_euclid(two_pi);
    let mut p = phi;
    if t > PI {
        t = two_pi - t;
        p += PI;
    }
    let mut p = p.rem_euclid(two_pi);
    if p >= two_pi {
        p = 0.0;
    }
    (t, p)
}

fn maximize_generic(engine: &DeltaEngine, cfg: &OptimizerConfig) -> Result<SuppressionReport> {
    let pa = engine.d_a * (engine.d_a - 1);
    let pb = engine.d_b * (engine.d_b - 1);
    let objective = |p: &[f64]| {
        let basis_a = unitary_columns(engine.d_a, &p[..pa]);
        let basis_b = unitary_columns(engine.d_b, &p[pa..]);
        engine.delta(&basis_a, &basis_b)
    };

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut starts: Vec<Vec<f64>> = vec![vec![0.0; pa + pb]];
    for _ in 0..cfg.multistart {
        let p: Vec<f64> = (0..pa + pb)
            .map(|k| {
                if k % 2 == 0 {
                    rng.random_range(0.0..PI)
                } else {
                    rng.random_range(0.0..2.0 * PI)
                }
            })
            .collect();
        starts.push(p);
    }

    let steps = vec![PI / 6.0; pa + pb];
    let mut evaluations = 0;
    let mut best: Option<(f64, Vec<f64>, bool)> = None;
    for x0 in &starts {
        let run = nelder_mead_with_restarts(&objective, x0, &steps, cfg);
        evaluations += run.evaluations;
        let candidate = (run.value, run.x, run.converged);
        best = Some(match best {
            None => candidate,
            Some(cur) => pick_candidate(cur, candidate),
        });
    }

    let (value, params, converged) = best.expect("at least one start");
    Ok(SuppressionReport {
        value: value.max(0.0),
        argmax: PairParams::Rotations {
            side_a: params[..pa].to_vec(),
            side_b: params[pa..].to_vec(),
        },
        bounds: BoundsReport::empty(),
        evaluations,
        converged,
    })
}

/// Columns of the unitary `Π G(i,j,θ,φ)` over index pairs in lexicographic
/// order; params are interleaved `(θ, φ)` per pair.
fn unitary_columns(d: usize, params: &[f64]) -> Vec<Vec<Complex64>> {
    let mut u = ComplexMatrix::identity(d);
    let mut slot = 0;
    for i in 0..d {
        for j in (i + 1)..d {
            let theta = params[slot];
            let phi = params[slot + 1];
            slot += 2;
            let (s, c) = theta.sin_cos();
            let phase = Complex64::new(phi.cos(), phi.sin());
            let gii = Complex64::new(c, 0.0);
            let gij = -phase * s;
            let gji = phase.conj() * s;
            // u ← u · G, touching columns i and j only.
            for row in 0..d {
                let x = u[(row, i)];
                let y = u[(row, j)];
                u[(row, i)] = x * gii + y * gji;
                u[(row, j)] = x * gij + y * gii;
            }
        }
    }
    (0..d)
        .map(|k| (0..d).map(|row| u[(row, k)]).collect())
        .collect()
}

// ---------------------------------------------------------------------------
// Nelder-Mead simplex (maximization).
// ---------------------------------------------------------------------------

struct NmResult {
    value: f64,
    x: Vec<f64>,
    evaluations: u64,
    converged: bool,
}

/// Simplex search with two deterministic restarts at shrinking scales.
///
/// A single simplex can collapse degenerately on flat ridges (all vertices
/// coincide while still a few 1e-5 off the maximizer transversally);
/// re-spanning a fresh simplex at the collapse point recovers the lost
/// directions and polishes the argmax.
fn nelder_mead_with_restarts<F: Fn(&[f64]) -> f64>(
    f: &F,
    x0: &[f64],
    steps: &[f64],
    cfg: &OptimizerConfig,
) -> NmResult {
    let mut best = nelder_mead_max(f, x0, steps, cfg);
    let mut evaluations = best.evaluations;
    for scale in [1.0 / 32.0, 1.0 / 1024.0] {
        let scaled: Vec<f64> = steps.iter().map(|s| s * scale).collect();
        let next = nelder_mead_max(f, &best.x, &scaled, cfg);
        evaluations += next.evaluations;
        if next.value > best.value {
            best = next;
        }
    }
    best.evaluations = evaluations;
    best
}

fn nelder_mead_max<F: Fn(&[f64]) -> f64>(
    f: &F,
    x0: &[f64],
    steps: &[f64],
    cfg: &OptimizerConfig,
) -> NmResult {
    let n = x0.len();
    let mut evaluations = 0u64;
    let mut eval = |x: &[f64]| {
        evaluations += 1;
        -f(x)
    };

    let mut simplex: Vec<(f64, Vec<f64>)> = Vec::with_capacity(n + 1);
    let g0 = eval(x0);
    simplex.push((g0, x0.to_vec()));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += steps[i];
        let g = eval(&x);
        simplex.push((g, x));
    }

    let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);
    let mut converged = false;
    for _ in 0..cfg.max_iterations {
        simplex.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

        let f_spread = simplex[n].0 - simplex[0].0;
        let x_spread = (0..n)
            .map(|k| {
                simplex
                    .iter()
                    .map(|(_, x)| (x[k] - simplex[0].1[k]).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if f_spread <= cfg.objective_tol && x_spread <= cfg.param_tol {
            converged = true;
            break;
        }

        let centroid: Vec<f64> = (0..n)
            .map(|k| simplex[..n].iter().map(|(_, x)| x[k]).sum::<f64>() / n as f64)
            .collect();
        let worst = simplex[n].clone();

        let reflect: Vec<f64> = (0..n)
            .map(|k| centroid[k] + alpha * (centroid[k] - worst.1[k]))
            .collect();
        let g_reflect = eval(&reflect);

        if g_reflect < simplex[0].0 {
            let expand: Vec<f64> = (0..n)
                .map(|k| centroid[k] + gamma * (reflect[k] - centroid[k]))
                .collect();
            let g_expand = eval(&expand);
            simplex[n] = if g_expand < g_reflect {
                (g_expand, expand)
            } else {
                (g_reflect, reflect)
            };
            continue;
        }
        if g_reflect < simplex[n - 1].0 {
            simplex[n] = (g_reflect, reflect);
            continue;
        }

        let (toward, g_toward) = if g_reflect < worst.0 {
            (reflect.clone(), g_reflect)
        } else {
            (worst.1.clone(), worst.0)
        };
        let contract: Vec<f64> = (0..n)
            .map(|k| centroid[k] + rho * (toward[k] - centroid[k]))
            .collect();
        let g_contract = eval(&contract);
        if g_contract < g_toward {
            simplex[n] = (g_contract, contract);
            continue;
        }

        for i in 1..=n {
            let shrunk: Vec<f64> = (0..n)
                .map(|k| simplex[0].1[k] + sigma * (simplex[i].1[k] - simplex[0].1[k]))
                .collect();
            let g = eval(&shrunk);
            simplex[i] = (g, shrunk);
        }
    }

    simplex.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    NmResult {
        value: -simplex[0].0,
        x: simplex[0].1.clone(),
        evaluations,
        converged,
    }
}
