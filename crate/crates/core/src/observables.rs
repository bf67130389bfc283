//! Projective observables: Bloch-angle qubit measurements, spectral
//! projectors of Hermitian operators, mutually unbiased (DFT) partners, and
//! Schmidt observables of pure states.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, ComplexMatrix, HERMITICITY_TOL};
use crate::states::{complete_orthonormal_basis, fix_phase, schmidt_decompose, PureState};

/// Default eigenvalue-gap threshold for clustering degenerate spectra:
/// one order above the eigensolver noise floor.
pub const DEFAULT_DEGENERACY_TOL: f64 = 1e-9;

/// Complete set of orthogonal projectors with distinct real eigenvalue
/// labels.
#[derive(Debug, Clone)]
pub struct ProjectiveObservable {
    projectors: Vec<ComplexMatrix>,
    labels: Vec<f64>,
}

impl ProjectiveObservable {
    /// Validate orthogonality (`A_a A_a' = δ_aa' A_a`), completeness
    /// (`Σ A_a = 𝟙`), and label distinctness.
    pub fn new(projectors: Vec<ComplexMatrix>, labels: Vec<f64>) -> Result<Self> {
        if projectors.is_empty() || projectors.len() != labels.len() {
            return Err(Error::DimensionMismatch {
                expected: projectors.len(),
                got: labels.len(),
            });
        }
        let dim = projectors[0].dim();
        let zeros = ComplexMatrix::zeros(dim);
        for (i, p) in projectors.iter().enumerate() {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.dim(),
                });
            }
            let dev = p.hermiticity_deviation();
            if dev > HERMITICITY_TOL {
                return Err(Error::NotHermitian(dev));
            }
            for (j, q) in projectors.iter().enumerate() {
                let product = p * q;
                let want = if i == j { p.clone() } else { zeros.clone() };
                let dev = product.max_abs_diff(&want);
                if dev > HERMITICITY_TOL {
                    return Err(Error::NotOrthogonal(dev));
                }
            }
        }
        let mut sum = zeros;
        for p in &projectors {
            sum = &sum + p;
        }
        let dev = sum.max_abs_diff(&ComplexMatrix::identity(dim));
        if dev > HERMITICITY_TOL {
            return Err(Error::NotComplete(dev));
        }
        for (i, a) in labels.iter().enumerate() {
            if labels[i + 1..].contains(a) {
                return Err(Error::DuplicateLabels);
            }
        }
        Ok(Self { projectors, labels })
    }

    /// Observable from an orthonormal basis: one rank-1 projector per
    /// vector.
    pub fn from_basis(basis: &[Vec<Complex64>], labels: Vec<f64>) -> Result<Self> {
        let projectors = basis.iter().map(|v| ComplexMatrix::outer(v)).collect();
        Self::new(projectors, labels)
    }

    pub fn dim(&self) -> usize {
        self.projectors[0].dim()
    }

    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.projectors
    }

    pub fn labels(&self) -> &[f64] {
        &self.labels
    }

    /// All projectors rank 1?
    pub fn is_nondegenerate(&self) -> bool {
        self.projectors
            .iter()
            .all(|p| (p.trace().re - 1.0).abs() <= HERMITICITY_TOL)
    }

    /// Same projectors, new labels. Every quantifier depends only on the
    /// projectors, so this must never change a computed value.
    pub fn relabeled(&self, labels: Vec<f64>) -> Result<Self> {
        Self::new(self.projectors.clone(), labels)
    }

    /// Unit eigenvectors of a nondegenerate observable, ordered by
    /// descending label and phase-fixed.
    pub fn eigenbasis(&self) -> Result<Vec<Vec<Complex64>>> {
        if !self.is_nondegenerate() {
            return Err(Error::DegenerateObservable);
        }
        let mut order: Vec<usize> = (0..self.labels.len()).collect();
        order.sort_by(|&i, &j| self.labels[j].partial_cmp(&self.labels[i]).unwrap());
        Ok(order
            .iter()
            .map(|&k| rank1_vector(&self.projectors[k]))
            .collect())
    }
}

/// Polar/azimuthal angles of a qubit measurement axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochAngles {
    pub theta: f64,
    pub phi: f64,
}

impl BlochAngles {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::OutOfRange {
                name: "theta",
                value: theta,
                lo: 0.0,
                hi: PI,
            });
        }
        if !(0.0..2.0 * PI).contains(&phi) {
            return Err(Error::OutOfRange {
                name: "phi",
                value: phi,
                lo: 0.0,
                hi: 2.0 * PI,
            });
        }
        Ok(Self { theta, phi })
    }
}

/// Eigenvectors of the Bloch-axis observable:
/// `|+⟩ = cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩` and
/// `|-⟩ = -sin(θ/2)|0⟩ + e^{iφ} cos(θ/2)|1⟩`.
///
/// Accepts arbitrary real angles (trigonometry is periodic); range checking
/// belongs to [`BlochAngles`].
pub(crate) fn qubit_basis_vectors(theta: f64, phi: f64) -> ([Complex64; 2], [Complex64; 2]) {
    let (half_sin, half_cos) = (theta / 2.0).sin_cos();
    let phase = Complex64::new(phi.cos(), phi.sin());
    let plus = [Complex64::new(half_cos, 0.0), phase * half_sin];
    let minus = [Complex64::new(-half_sin, 0.0), phase * half_cos];
    (plus, minus)
}

/// Qubit observable with projectors `|±⟩⟨±|` and labels `(+1, -1)`.
pub fn qubit_observable(angles: &BlochAngles) -> ProjectiveObservable {
    let (plus, minus) = qubit_basis_vectors(angles.theta, angles.phi);
    ProjectiveObservable::new(
        vec![ComplexMatrix::outer(&plus), ComplexMatrix::outer(&minus)],
        vec![1.0, -1.0],
    )
    .expect("Bloch projectors form a complete orthogonal pair")
}

/// Spectral observable of a Hermitian operator, with eigenvalues closer
/// than `degeneracy_tol` merged into a single (possibly rank > 1)
/// projector labeled by the cluster mean.
pub fn from_hermitian(h: &ComplexMatrix, degeneracy_tol: f64) -> Result<ProjectiveObservable> {
    let spec = hermitian_eig(h)?;
    let mut projectors = Vec::new();
    let mut labels = Vec::new();

    let mut start = 0;
    while start < spec.eigenvalues.len() {
        let mut end = start + 1;
        while end < spec.eigenvalues.len()
            && (spec.eigenvalues[end - 1] - spec.eigenvalues[end]).abs() < degeneracy_tol
        {
            end += 1;
        }
        let mut projector = ComplexMatrix::zeros(h.dim());
        for v in &spec.eigenvectors[start..end] {
            projector = &projector + &ComplexMatrix::outer(v);
        }
        projectors.push(projector);
        labels.push(spec.eigenvalues[start..end].iter().sum::<f64>() / (end - start) as f64);
        start = end;
    }
    ProjectiveObservable::new(projectors, labels)
}

/// Partner observable whose eigenbasis is the discrete Fourier transform of
/// the input's eigenbasis, hence mutually unbiased with it:
/// `|⟨e_j|f_k⟩|² = 1/d` for all pairs.
pub fn mub_partner(obs: &ProjectiveObservable) -> Result<ProjectiveObservable> {
    let basis = obs.eigenbasis()?;
    let d = obs.dim();
    let scale = 1.0 / (d as f64).sqrt();
    let fourier: Vec<Vec<Complex64>> = (0..d)
        .map(|k| {
            let mut f = vec![Complex64::ZERO; d];
            for (j, e) in basis.iter().enumerate() {
                let arg = 2.0 * PI * (j * k) as f64 / d as f64;
                let w = Complex64::new(arg.cos(), arg.sin()) * scale;
                for (fi, ei) in f.iter_mut().zip(e) {
                    *fi += w * ei;
                }
            }
            f
        })
        .collect();

    let mut labels = obs.labels().to_vec();
    labels.sort_by(|a, b| b.partial_cmp(a).unwrap());
    ProjectiveObservable::from_basis(&fourier, labels)
}

/// Observables diagonal in the Schmidt bases of a pure state.
pub fn schmidt_observables(
    psi: &PureState,
) -> Result<(ProjectiveObservable, ProjectiveObservable)> {
    let form = schmidt_decompose(psi)?;
    let labels = |d: usize| (0..d).map(|k| (d - 1 - k) as f64).collect::<Vec<_>>();
    let obs_a = ProjectiveObservable::from_basis(&form.basis_a, labels(psi.d_a()))?;
    let obs_b = ProjectiveObservable::from_basis(&form.basis_b, labels(psi.d_b()))?;
    Ok((obs_a, obs_b))
}

/// Unit vector of a rank-1 projector, phase-fixed.
fn rank1_vector(p: &ComplexMatrix) -> Vec<Complex64> {
    let dim = p.dim();
    let lead = (0..dim)
        .max_by(|&i, &j| p[(i, i)].re.partial_cmp(&p[(j, j)].re).unwrap())
        .expect("dim >= 1");
    let norm = p[(lead, lead)].re.max(0.0).sqrt();
    let column: Vec<Complex64> = (0..dim).map(|i| p[(i, lead)] / norm).collect();
    fix_phase(&column)
}

/// Orthonormal completion re-exported for observable construction on
/// subspaces (used by tests and the CLI).
pub fn orthonormal_completion(partial: &[Vec<Complex64>], dim: usize) -> Vec<Vec<Complex64>> {
    let mut vectors = partial.to_vec();
    complete_orthonormal_basis(&mut vectors, dim);
    vectors
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::two_parameter_pure;

    fn matches_projector_set(obs: &ProjectiveObservable, want: &[ComplexMatrix]) -> bool {
        obs.projectors().len() == want.len()
            && want
                .iter()
                .all(|w| obs.projectors().iter().any(|p| p.max_abs_diff(w) < 1e-12))
    }

    fn computational(dim: usize) -> Vec<ComplexMatrix> {
        (0..dim)
            .map(|k| {
                let mut v = vec![Complex64::ZERO; dim];
                v[k] = Complex64::ONE;
                ComplexMatrix::outer(&v)
            })
            .collect()
    }

    #[test]
    fn qubit_axes() {
        let z = qubit_observable(&BlochAngles::new(0.0, 0.0).unwrap());
        assert!(matches_projector_set(&z, &computational(2)));

        let inv = 1.0 / 2f64.sqrt();
        let plus = ComplexMatrix::outer(&[Complex64::new(inv, 0.0), Complex64::new(inv, 0.0)]);
        let minus = ComplexMatrix::outer(&[Complex64::new(inv, 0.0), Complex64::new(-inv, 0.0)]);
        let x = qubit_observable(&BlochAngles::new(PI / 2.0, 0.0).unwrap());
        assert!(matches_projector_set(&x, &[plus, minus]));

        let up = ComplexMatrix::outer(&[Complex64::new(inv, 0.0), Complex64::new(0.0, inv)]);
        let down = ComplexMatrix::outer(&[Complex64::new(inv, 0.0), Complex64::new(0.0, -inv)]);
        let y = qubit_observable(&BlochAngles::new(PI / 2.0, PI / 2.0).unwrap());
        assert!(matches_projector_set(&y, &[up, down]));
    }

    #[test]
    fn bloch_angles_ranges() {
        assert!(BlochAngles::new(-0.1, 0.0).is_err());
        assert!(BlochAngles::new(0.0, 2.0 * PI).is_err());
        assert!(BlochAngles::new(PI, 0.0).is_ok());
    }

    #[test]
    fn from_hermitian_nondegenerate() {
        let sigma_z = ComplexMatrix::from_real_diag(&[1.0, -1.0]);
        let obs = from_hermitian(&sigma_z, DEFAULT_DEGENERACY_TOL).unwrap();
        assert_eq!(obs.projectors().len(), 2);
        assert_eq!(obs.labels(), &[1.0, -1.0]);
        assert!(obs.is_nondegenerate());
    }

    #[test]
    fn from_hermitian_full_degeneracy() {
        let obs = from_hermitian(&ComplexMatrix::identity(3), DEFAULT_DEGENERACY_TOL).unwrap();
        assert_eq!(obs.projectors().len(), 1);
        assert!((obs.projectors()[0].trace().re - 3.0).abs() < 1e-12);
        assert!((obs.labels()[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn from_hermitian_clusters_near_degenerate_pair() {
        let h = ComplexMatrix::from_real_diag(&[1.0, 1.0 + 1e-12, 2.0]);
        let obs = from_hermitian(&h, DEFAULT_DEGENERACY_TOL).unwrap();
        assert_eq!(obs.projectors().len(), 2);
        let ranks: Vec<i64> = obs
            .projectors()
            .iter()
            .map(|p| p.trace().re.round() as i64)
            .collect();
        assert!(ranks.contains(&2) && ranks.contains(&1));
    }

    #[test]
    fn from_hermitian_rejects_non_hermitian() {
        let mut m = ComplexMatrix::zeros(2);
        m[(0, 1)] = Complex64::ONE;
        assert!(from_hermitian(&m, DEFAULT_DEGENERACY_TOL).is_err());
    }

    #[test]
    fn mub_partner_of_sigma_z_is_sigma_x() {
        let z = qubit_observable(&BlochAngles::new(0.0, 0.0).unwrap());
        let partner = mub_partner(&z).unwrap();
        let inv = 1.0 / 2f64.sqrt();
        let plus = ComplexMatrix::outer(&[Complex64::new(inv, 0.0), Complex64::new(inv, 0.0)]);
        let minus = ComplexMatrix::outer(&[Complex64::new(inv, 0.0), Complex64::new(-inv, 0.0)]);
        assert!(matches_projector_set(&partner, &[plus, minus]));
    }

    #[test]
    fn mub_partner_is_unbiased() {
        for dim in [2usize, 3] {
            let labels: Vec<f64> = (0..dim).map(|k| k as f64).collect();
            let obs = ProjectiveObservable::new(computational(dim), labels).unwrap();
            let partner = mub_partner(&obs).unwrap();
            for p in obs.projectors() {
                for f in partner.projectors() {
                    let overlap = (p * f).trace().re;
                    assert!((overlap * dim as f64 - 1.0).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn mub_partner_rejects_degenerate() {
        let obs = ProjectiveObservable::new(vec![ComplexMatrix::identity(2)], vec![1.0]).unwrap();
        assert!(matches!(
            mub_partner(&obs),
            Err(Error::DegenerateObservable)
        ));
    }

    #[test]
    fn schmidt_observables_of_named_states() {
        let singlet = two_parameter_pure(0.5).unwrap();
        let (a, b) = schmidt_observables(&singlet).unwrap();
        assert!(matches_projector_set(&a, &computational(2)));
        assert!(matches_projector_set(&b, &computational(2)));

        let skewed = two_parameter_pure(0.3).unwrap();
        let (a, b) = schmidt_observables(&skewed).unwrap();
        assert!(matches_projector_set(&a, &computational(2)));
        assert!(matches_projector_set(&b, &computational(2)));
    }

    #[test]
    fn observable_validation_rejects_incomplete_family() {
        let proj = computational(2);
        assert!(matches!(
            ProjectiveObservable::new(vec![proj[0].clone()], vec![1.0]),
            Err(Error::NotComplete(_))
        ));
        assert!(
            ProjectiveObservable::new(vec![proj[0].clone(), proj[0].clone()], vec![1.0, -1.0])
                .is_err()
        );
    }

    #[test]
    fn observable_validation_rejects_duplicate_labels() {
        let proj = computational(2);
        assert!(matches!(
            ProjectiveObservable::new(proj, vec![1.0, 1.0]),
            Err(Error::DuplicateLabels)
        ));
    }
}
