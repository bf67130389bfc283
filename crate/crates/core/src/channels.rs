//! Unrevealed-measurement channels: the dephasing map
//! `Φ_O(ρ) = Σ_a O_a ρ O_a` applied to either side (or the joint space) of a
//! bipartite state, and the monitoring map
//! `M_O^ε(ρ) = (1-ε)ρ + εΦ_O(ρ)` interpolating between no measurement and
//! the projective limit.

use crate::error::{Error, Result};
use crate::linalg::{tensor_product, ComplexMatrix, Side};
use crate::observables::ProjectiveObservable;
use crate::states::DensityMatrix;

/// Where a channel's observable acts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Side(Side),
    /// Observable on the joint space `H_A ⊗ H_B`.
    Global,
}

impl From<Side> for Scope {
    fn from(side: Side) -> Self {
        Scope::Side(side)
    }
}

/// Monitoring intensity `ε ∈ [0, 1]`; the endpoints are the identity map
/// and the projective (dephasing) limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonitoringStrength(f64);

impl MonitoringStrength {
    pub fn new(eps: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&eps) {
            return Err(Error::OutOfRange {
                name: "eps",
                value: eps,
                lo: 0.0,
                hi: 1.0,
            });
        }
        Ok(Self(eps))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

fn expected_dim(rho: &DensityMatrix, scope: Scope) -> usize {
    match scope {
        Scope::Side(Side::A) => rho.d_a(),
        Scope::Side(Side::B) => rho.d_b(),
        Scope::Global => rho.dim(),
    }
}

/// Embed a one-side operator into the joint space.
fn lift(op: &ComplexMatrix, rho: &DensityMatrix, scope: Scope) -> ComplexMatrix {
    match scope {
        Scope::Side(Side::A) => tensor_product(op, &ComplexMatrix::identity(rho.d_b())),
        Scope::Side(Side::B) => tensor_product(&ComplexMatrix::identity(rho.d_a()), op),
        Scope::Global => op.clone(),
    }
}

/// Dephasing map `Σ_a (A_a ⊗ 𝟙) ρ (A_a ⊗ 𝟙)` (mirrored for side B; bare
/// sandwich for a global observable). Idempotent and trace preserving.
pub fn dephase(
    rho: &DensityMatrix,
    obs: &ProjectiveObservable,
    scope: impl Into<Scope>,
) -> Result<DensityMatrix> {
    let scope = scope.into();
    let matrix = dephase_matrix(rho, obs, scope)?;
    DensityMatrix::new(matrix, rho.d_a(), rho.d_b())
}

pub(crate) fn dephase_matrix(
    rho: &DensityMatrix,
    obs: &ProjectiveObservable,
    scope: Scope,
) -> Result<ComplexMatrix> {
    let expected = expected_dim(rho, scope);
    if obs.dim() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            got: obs.dim(),
        });
    }
    let mut out = ComplexMatrix::zeros(rho.dim());
    for p in obs.projectors() {
        let lifted = lift(p, rho, scope);
        out = &out + &(&(&lifted * rho.matrix()) * &lifted);
    }
    Ok(out)
}

/// Monitoring map `M_O^ε(ρ) = (1-ε)ρ + εΦ_O(ρ)`.
pub fn monitor(
    rho: &DensityMatrix,
    obs: &ProjectiveObservable,
    eps: MonitoringStrength,
    side: Side,
) -> Result<DensityMatrix> {
    let e = eps.value();
    let dephased = dephase_matrix(rho, obs, side.into())?;
    let matrix = &rho.matrix().scaled(1.0 - e) + &dephased.scaled(e);
    DensityMatrix::new(matrix, rho.d_a(), rho.d_b())
}

/// `n` successive monitorings, evaluated in closed form:
/// `(1-ε)^n ρ + [1-(1-ε)^n] Φ_O(ρ)`.
pub fn monitor_iterated(
    rho: &DensityMatrix,
    obs: &ProjectiveObservable,
    eps: MonitoringStrength,
    side: Side,
    n: u32,
) -> Result<DensityMatrix> {
    let w = (1.0 - eps.value()).powi(n as i32);
    let dephased = dephase_matrix(rho, obs, side.into())?;
    let matrix = &rho.matrix().scaled(w) + &dephased.scaled(1.0 - w);
    DensityMatrix::new(matrix, rho.d_a(), rho.d_b())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::observables::{qubit_observable, BlochAngles};
    use crate::states::{random_density, two_parameter_state, DensityMatrix};
    use num_complex::Complex64;

    fn sigma_z() -> ProjectiveObservable {
        qubit_observable(&BlochAngles::new(0.0, 0.0).unwrap())
    }

    fn plus_state() -> DensityMatrix {
        let inv = 1.0 / 2f64.sqrt();
        let m = ComplexMatrix::outer(&[Complex64::new(inv, 0.0), Complex64::new(inv, 0.0)]);
        DensityMatrix::new(m, 2, 1).unwrap()
    }

    fn eps(e: f64) -> MonitoringStrength {
        MonitoringStrength::new(e).unwrap()
    }

    #[test]
    fn strength_validation() {
        assert!(MonitoringStrength::new(-0.1).is_err());
        assert!(MonitoringStrength::new(1.5).is_err());
        assert!(MonitoringStrength::new(0.0).is_ok());
        assert!(MonitoringStrength::new(1.0).is_ok());
    }

    #[test]
    fn dephase_is_idempotent() {
        let rho = random_density(2, 2, 4, 3).unwrap();
        let once = dephase(&rho, &sigma_z(), Side::A).unwrap();
        let twice = dephase(&once, &sigma_z(), Side::A).unwrap();
        assert!(once.matrix().max_abs_diff(twice.matrix()) < 1e-12);
        assert!((once.matrix().trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dephase_kills_coherence() {
        let out = dephase(&plus_state(), &sigma_z(), Side::A).unwrap();
        assert!(
            out.matrix()
                .max_abs_diff(&ComplexMatrix::identity(2).scaled(0.5))
                < 1e-15
        );
    }

    #[test]
    fn dephase_singlet_on_a() {
        let singlet = two_parameter_state(0.5, 1.0).unwrap();
        let out = dephase(&singlet, &sigma_z(), Side::A).unwrap();
        let want = ComplexMatrix::from_real_diag(&[0.0, 0.5, 0.5, 0.0]);
        assert!(out.matrix().max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn dephase_sides_commute() {
        let rho = random_density(2, 2, 4, 9).unwrap();
        let a = qubit_observable(&BlochAngles::new(1.1, 0.7).unwrap());
        let b = qubit_observable(&BlochAngles::new(2.0, 4.1).unwrap());
        let ab = dephase(&dephase(&rho, &b, Side::B).unwrap(), &a, Side::A).unwrap();
        let ba = dephase(&dephase(&rho, &a, Side::A).unwrap(), &b, Side::B).unwrap();
        assert!(ab.matrix().max_abs_diff(ba.matrix()) < 1e-14);
    }

    #[test]
    fn dephase_global_observable() {
        let rho = random_density(2, 2, 4, 5).unwrap();
        let labels: Vec<f64> = (0..4).map(|k| k as f64).collect();
        let projectors = (0..4)
            .map(|k| {
                let mut v = vec![Complex64::ZERO; 4];
                v[k] = Complex64::ONE;
                ComplexMatrix::outer(&v)
            })
            .collect();
        let obs = ProjectiveObservable::new(projectors, labels).unwrap();
        let out = dephase(&rho, &obs, Scope::Global).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert!(out.matrix()[(i, j)].norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn dephase_rejects_wrong_side_dimension() {
        let rho = random_density(2, 3, 2, 1).unwrap();
        assert!(dephase(&rho, &sigma_z(), Side::B).is_err());
    }

    #[test]
    fn monitor_limits() {
        let rho = random_density(2, 2, 3, 21).unwrap();
        let none = monitor(&rho, &sigma_z(), eps(0.0), Side::A).unwrap();
        assert_eq!(rho.matrix().max_abs_diff(none.matrix()), 0.0);

        let full = monitor(&rho, &sigma_z(), eps(1.0), Side::A).unwrap();
        let dephased = dephase(&rho, &sigma_z(), Side::A).unwrap();
        assert_eq!(full.matrix().max_abs_diff(dephased.matrix()), 0.0);
    }

    #[test]
    fn monitor_half_strength_example() {
        let out = monitor(&plus_state(), &sigma_z(), eps(0.5), Side::A).unwrap();
        let want = ComplexMatrix::from_rows(vec![
            vec![Complex64::new(0.5, 0.0), Complex64::new(0.25, 0.0)],
            vec![Complex64::new(0.25, 0.0), Complex64::new(0.5, 0.0)],
        ])
        .unwrap();
        assert!(out.matrix().max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn monitor_commutes_with_dephasing() {
        let rho = random_density(2, 2, 4, 33).unwrap();
        let obs = qubit_observable(&BlochAngles::new(0.9, 1.3).unwrap());
        let phi = dephase(&rho, &obs, Side::B).unwrap();
        let m_phi = monitor(&phi, &obs, eps(0.37), Side::B).unwrap();
        let phi_m = dephase(
            &monitor(&rho, &obs, eps(0.37), Side::B).unwrap(),
            &obs,
            Side::B,
        )
        .unwrap();
        assert!(m_phi.matrix().max_abs_diff(phi.matrix()) < 1e-12);
        assert!(phi_m.matrix().max_abs_diff(phi.matrix()) < 1e-12);
    }

    #[test]
    fn iterated_monitoring_matches_repeated_application() {
        let rho = random_density(2, 2, 4, 8).unwrap();
        let obs = qubit_observable(&BlochAngles::new(0.4, 2.2).unwrap());
        let e = eps(0.3);

        let closed = monitor_iterated(&rho, &obs, e, Side::B, 5).unwrap();
        let mut repeated = rho.clone();
        for _ in 0..5 {
            repeated = monitor(&repeated, &obs, e, Side::B).unwrap();
        }
        assert!(closed.matrix().max_abs_diff(repeated.matrix()) < 1e-12);

        let zero = monitor_iterated(&rho, &obs, e, Side::B, 0).unwrap();
        assert_eq!(zero.matrix().max_abs_diff(rho.matrix()), 0.0);

        let one = monitor_iterated(&rho, &obs, e, Side::B, 1).unwrap();
        let single = monitor(&rho, &obs, e, Side::B).unwrap();
        assert!(one.matrix().max_abs_diff(single.matrix()) < 1e-15);
    }

    #[test]
    fn iterated_monitoring_converges_to_dephasing() {
        let rho = random_density(2, 2, 4, 13).unwrap();
        let obs = qubit_observable(&BlochAngles::new(1.8, 0.2).unwrap());
        let tail = monitor_iterated(&rho, &obs, eps(0.1), Side::A, 200).unwrap();
        let dephased = dephase(&rho, &obs, Side::A).unwrap();
        assert!(tail.matrix().max_abs_diff(dephased.matrix()) < 1e-8);
    }
}
