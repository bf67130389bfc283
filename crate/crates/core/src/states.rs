//! Bipartite density matrices: validation, the named state families, random
//! (Ginibre) states for property suites, and Schmidt decomposition.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eig, hermitian_eigenvalues, partial_trace, tensor_product, ComplexMatrix, Side,
    HERMITICITY_TOL,
};

/// Max admissible deviation of the trace from 1.
pub const TRACE_TOL: f64 = 1e-10;

/// Eigenvalues of a density matrix in `[EIGENVALUE_FLOOR, 0)` are treated as
/// numerical zeros; anything below is an invalid state.
pub const EIGENVALUE_FLOOR: f64 = -1e-10;

/// Max admissible deviation of a pure-state norm from 1.
pub const NORM_TOL: f64 = 1e-12;

/// Eigenvalue threshold below which a Schmidt coefficient counts as zero.
const SCHMIDT_ZERO_TOL: f64 = 1e-12;

/// Positive unit-trace operator with an explicit bipartition `(d_a, d_b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    d_a: usize,
    d_b: usize,
}

impl DensityMatrix {
    /// Validate and wrap: Hermitian within 1e-10, trace 1 within 1e-10, all
    /// eigenvalues above [`EIGENVALUE_FLOOR`], and `dim = d_a * d_b`.
    pub fn new(matrix: ComplexMatrix, d_a: usize, d_b: usize) -> Result<Self> {
        if matrix.dim() != d_a * d_b {
            return Err(Error::DimensionMismatch {
                expected: d_a * d_b,
                got: matrix.dim(),
            });
        }
        validate_density_like(&matrix)?;
        Ok(Self { matrix, d_a, d_b })
    }

    /// Projector onto a pure state.
    pub fn from_pure(psi: &PureState) -> Self {
        Self {
            matrix: ComplexMatrix::outer(&psi.amplitudes),
            d_a: psi.d_a,
            d_b: psi.d_b,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn d_a(&self) -> usize {
        self.d_a
    }

    pub fn d_b(&self) -> usize {
        self.d_b
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Reduced state of one side.
    pub fn marginal(&self, side: Side) -> ComplexMatrix {
        partial_trace(&self.matrix, self.d_a, self.d_b, side)
            .expect("bipartition is validated at construction")
    }

    /// Serialize to the `{dA, dB, re, im}` JSON schema.
    pub fn to_json(&self) -> String {
        let n = self.dim();
        let row = |i: usize, f: fn(&Complex64) -> f64| -> Vec<f64> {
            (0..n).map(|j| f(&self.matrix[(i, j)])).collect()
        };
        let schema = StateJson {
            d_a: self.d_a,
            d_b: self.d_b,
            re: (0..n).map(|i| row(i, |z| z.re)).collect(),
            im: (0..n).map(|i| row(i, |z| z.im)).collect(),
        };
        serde_json::to_string_pretty(&schema).expect("schema is serializable")
    }

    /// Parse and fully validate a state from the `{dA, dB, re, im}` schema.
    pub fn from_json(text: &str) -> Result<Self> {
        let schema: StateJson =
            serde_json::from_str(text).map_err(|e| Error::Deserialize(e.to_string()))?;
        let n = schema.d_a * schema.d_b;
        if schema.re.len() != n || schema.im.len() != n {
            return Err(Error::Deserialize(format!(
                "expected {n} rows, got re: {}, im: {}",
                schema.re.len(),
                schema.im.len()
            )));
        }
        let mut m = ComplexMatrix::zeros(n);
        for i in 0..n {
            if schema.re[i].len() != n || schema.im[i].len() != n {
                return Err(Error::Deserialize(format!("row {i} is not length {n}")));
            }
            for j in 0..n {
                m[(i, j)] = Complex64::new(schema.re[i][j], schema.im[i][j]);
            }
        }
        Self::new(m, schema.d_a, schema.d_b)
    }
}

#[derive(Serialize, Deserialize)]
struct StateJson {
    #[serde(rename = "dA")]
    d_a: usize,
    #[serde(rename = "dB")]
    d_b: usize,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

fn validate_density_like(matrix: &ComplexMatrix) -> Result<()> {
    let dev = matrix.hermiticity_deviation();
    if dev > HERMITICITY_TOL {
        return Err(Error::NotHermitian(dev));
    }
    let tr = matrix.trace();
    let tr_dev = ((tr.re - 1.0).powi(2) + tr.im.powi(2)).sqrt();
    if tr_dev > TRACE_TOL {
        return Err(Error::NonUnitTrace(tr_dev));
    }
    let eigs = hermitian_eigenvalues(matrix)?;
    let min = eigs.last().copied().unwrap_or(0.0);
    if min < EIGENVALUE_FLOOR {
        return Err(Error::NotPositiveSemidefinite(min));
    }
    Ok(())
}

/// Normalized vector on a bipartite space.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
    d_a: usize,
    d_b: usize,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>, d_a: usize, d_b: usize) -> Result<Self> {
        if amplitudes.len() != d_a * d_b {
            return Err(Error::DimensionMismatch {
                expected: d_a * d_b,
                got: amplitudes.len(),
            });
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized((norm - 1.0).abs()));
        }
        Ok(Self {
            amplitudes,
            d_a,
            d_b,
        })
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn d_a(&self) -> usize {
        self.d_a
    }

    pub fn d_b(&self) -> usize {
        self.d_b
    }
}

/// Schmidt data of a pure state: nonnegative coefficients summing to 1
/// (descending) plus full orthonormal bases on each side.
#[derive(Debug, Clone)]
pub struct SchmidtForm {
    pub coefficients: Vec<f64>,
    pub basis_a: Vec<Vec<Complex64>>,
    pub basis_b: Vec<Vec<Complex64>>,
}

impl SchmidtForm {
    /// `Σ √λ_k |u_k⟩|v_k⟩` over the stored coefficient list.
    pub fn reconstruct(&self) -> Vec<Complex64> {
        let d_a = self.basis_a[0].len();
        let d_b = self.basis_b[0].len();
        let mut psi = vec![Complex64::ZERO; d_a * d_b];
        for (k, &l) in self.coefficients.iter().enumerate() {
            let w = l.max(0.0).sqrt();
            for i in 0..d_a {
                for j in 0..d_b {
                    psi[i * d_b + j] += w * self.basis_a[k][i] * self.basis_b[k][j];
                }
            }
        }
        psi
    }
}

/// Two-qubit family `(1-β)·𝟙/4 + β|ψ_α⟩⟨ψ_α|` with
/// `|ψ_α⟩ = √α|01⟩ - √(1-α)|10⟩`.
pub fn two_parameter_state(alpha: f64, beta: f64) -> Result<DensityMatrix> {
    check_unit_interval("alpha", alpha)?;
    check_unit_interval("beta", beta)?;
    let psi = two_parameter_pure(alpha)?;
    let projector = ComplexMatrix::outer(psi.amplitudes());
    let matrix = &ComplexMatrix::identity(4).scaled((1.0 - beta) / 4.0) + &projector.scaled(beta);
    DensityMatrix::new(matrix, 2, 2)
}

/// The pure member `|ψ_α⟩` of the two-parameter family.
pub fn two_parameter_pure(alpha: f64) -> Result<PureState> {
    check_unit_interval("alpha", alpha)?;
    let amplitudes = vec![
        Complex64::ZERO,
        Complex64::new(alpha.sqrt(), 0.0),
        Complex64::new(-(1.0 - alpha).sqrt(), 0.0),
        Complex64::ZERO,
    ];
    PureState::new(amplitudes, 2, 2)
}

/// `Σ_λ p_λ A'_λ ⊗ B'_λ` for rank-1 orthogonal projector families.
pub fn classical_classical_state(
    probs: &[f64],
    proj_a: &[ComplexMatrix],
    proj_b: &[ComplexMatrix],
) -> Result<DensityMatrix> {
    if probs.is_empty() || probs.len() != proj_a.len() || probs.len() != proj_b.len() {
        return Err(Error::InvalidProbabilities(f64::NAN));
    }
    if let Some(&p) = probs.iter().find(|&&p| p < 0.0) {
        return Err(Error::InvalidProbabilities(p));
    }
    let sum: f64 = probs.iter().sum();
    if (sum - 1.0).abs() > TRACE_TOL {
        return Err(Error::InvalidProbabilities((sum - 1.0).abs()));
    }
    validate_rank1_family(proj_a, probs.len())?;
    validate_rank1_family(proj_b, probs.len())?;

    let d_a = proj_a[0].dim();
    let d_b = proj_b[0].dim();
    let mut matrix = ComplexMatrix::zeros(d_a * d_b);
    for ((p, a), b) in probs.iter().zip(proj_a).zip(proj_b) {
        matrix = &matrix + &tensor_product(a, b).scaled(*p);
    }
    DensityMatrix::new(matrix, d_a, d_b)
}

fn validate_rank1_family(projectors: &[ComplexMatrix], len: usize) -> Result<()> {
    let dim = projectors[0].dim();
    if len > dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: len,
        });
    }
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
        let idem = (&(p * p) - p).max_abs_diff(&ComplexMatrix::zeros(dim));
        if idem > HERMITICITY_TOL {
            return Err(Error::NotOrthogonal(idem));
        }
        let rank_dev = (p.trace().re - 1.0).abs();
        if rank_dev > HERMITICITY_TOL {
            return Err(Error::NotOrthogonal(rank_dev));
        }
        for q in projectors.iter().skip(i + 1) {
            let cross = (p * q).max_abs_diff(&ComplexMatrix::zeros(dim));
            if cross > HERMITICITY_TOL {
                return Err(Error::NotOrthogonal(cross));
            }
        }
    }
    Ok(())
}

/// Tensor product of two validated single-system density matrices.
pub fn product_state(rho_a: &ComplexMatrix, rho_b: &ComplexMatrix) -> Result<DensityMatrix> {
    validate_density_like(rho_a)?;
    validate_density_like(rho_b)?;
    DensityMatrix::new(tensor_product(rho_a, rho_b), rho_a.dim(), rho_b.dim())
}

/// Seeded Ginibre state `GG†/Tr(GG†)` of the requested rank; deterministic
/// per seed.
pub fn random_density(d_a: usize, d_b: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    let n = d_a * d_b;
    if rank < 1 || rank > n {
        return Err(Error::OutOfRange {
            name: "rank",
            value: rank as f64,
            lo: 1.0,
            hi: n as f64,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // G is n x rank; entries drawn row-major, re before im.
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
    DensityMatrix::new(matrix.scaled(1.0 / tr), d_a, d_b)
}

/// Seeded Haar-like random pure state (normalized complex Gaussian vector).
pub fn random_pure_state(d_a: usize, d_b: usize, seed: u64) -> PureState {
    let n = d_a * d_b;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut amplitudes: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut amplitudes {
        *z /= norm;
    }
    PureState::new(amplitudes, d_a, d_b).expect("normalized by construction")
}

/// Schmidt decomposition via the reduced-state eigenproblem.
///
/// Phase convention: the first nonzero amplitude of every A-side basis
/// vector is real positive; B-side partners absorb the conjugate phase so
/// the reconstruction is unchanged.
pub fn schmidt_decompose(psi: &PureState) -> Result<SchmidtForm> {
    let (d_a, d_b) = (psi.d_a, psi.d_b);
    let joint = ComplexMatrix::outer(&psi.amplitudes);
    let reduced_a = partial_trace(&joint, d_a, d_b, Side::A)?;
    let spec = hermitian_eig(&reduced_a)?;

    let r = d_a.min(d_b);
    let coefficients: Vec<f64> = spec.eigenvalues[..r]
        .iter()
        .map(|&l| if l < 0.0 { 0.0 } else { l })
        .collect();

    let basis_a: Vec<Vec<Complex64>> = spec.eigenvectors.iter().map(|v| fix_phase(v)).collect();

    let mut basis_b: Vec<Vec<Complex64>> = Vec::with_capacity(d_b);
    for (k, &l) in coefficients.iter().enumerate() {
        if l > SCHMIDT_ZERO_TOL {
            let w = 1.0 / l.sqrt();
            let v: Vec<Complex64> = (0..d_b)
                .map(|j| {
                    (0..d_a)
                        .map(|i| basis_a[k][i].conj() * psi.amplitudes[i * d_b + j])
                        .sum::<Complex64>()
                        * w
                })
                .collect();
            basis_b.push(v);
        }
    }
    complete_orthonormal_basis(&mut basis_b, d_b);

    Ok(SchmidtForm {
        coefficients,
        basis_a,
        basis_b,
    })
}

/// Rotate a vector's global phase so its first significant entry is real
/// positive.
pub(crate) fn fix_phase(v: &[Complex64]) -> Vec<Complex64> {
    let lead = v.iter().find(|z| z.norm() > 1e-8);
    match lead {
        Some(z) => {
            let phase = z.conj() / z.norm();
            v.iter().map(|x| x * phase).collect()
        }
        None => v.to_vec(),
    }
}

/// Extend a partial orthonormal list to a full basis of dimension `dim`
/// (Gram-Schmidt over the computational basis, deterministic).
pub(crate) fn complete_orthonormal_basis(vectors: &mut Vec<Vec<Complex64>>, dim: usize) {
    let mut candidate = 0;
    while vectors.len() < dim {
        assert!(candidate < dim, "basis completion exhausted candidates");
        let mut w = vec![Complex64::ZERO; dim];
        w[candidate] = Complex64::ONE;
        candidate += 1;
        // Two Gram-Schmidt passes keep orthogonality at machine precision.
        for _ in 0..2 {
            for v in vectors.iter() {
                let overlap: Complex64 = v.iter().zip(&w).map(|(a, b)| a.conj() * b).sum();
                for (wi, vi) in w.iter_mut().zip(v) {
                    *wi -= overlap * vi;
                }
            }
        }
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 0.1 {
            continue;
        }
        for z in &mut w {
            *z /= norm;
        }
        vectors.push(fix_phase(&w));
    }
}

fn check_unit_interval(name: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::OutOfRange {
            name,
            value,
            lo: 0.0,
            hi: 1.0,
        });
    }
    Ok(())
}
