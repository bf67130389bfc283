//! Dense complex linear algebra for small Hermitian problems.
//!
//! Everything downstream (channels, entropies, bounds) runs on operators of
//! dimension ≤ ~16, so the solver here favors simplicity and unconditional
//! convergence over asymptotic speed: Hermitian eigendecomposition is done
//! with cyclic Jacobi rotations.

use num_complex::Complex64;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use crate::error::{Error, Result};

/// Max admissible entrywise deviation of a matrix from its adjoint.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Jacobi sweep target: off-diagonal Frobenius norm below `1e-14 * dim`
/// (relative to the input magnitude).
const JACOBI_EPS: f64 = 1e-14;

const MAX_SWEEPS: usize = 100;

/// Tensor factor of a bipartite space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be >= 1");
        Self {
            dim,
            entries: vec![Complex64::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    /// Build from nested rows; rejects non-square input.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = rows.len();
        for r in &rows {
            if r.len() != dim {
                return Err(Error::NotSquare {
                    rows: dim,
                    cols: r.len(),
                });
            }
        }
        Ok(Self {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Computational-basis projector `|k⟩⟨k|`.
    pub fn basis_projector(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index out of range");
        let mut m = Self::zeros(dim);
        m[(index, index)] = Complex64::ONE;
        m
    }

    /// Rank-1 projector |v⟩⟨v| (input need not be normalized).
    pub fn outer(v: &[Complex64]) -> Self {
        let dim = v.len();
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[(i, j)] = self[(j, i)].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    /// Max entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Max entrywise modulus of `self - self†`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Hermitian part `(m + m†)/2`.
    pub(crate) fn hermitized(&self) -> Self {
        let adj = self.adjoint();
        let mut m = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[(i, j)] = (self[(i, j)] + adj[(i, j)]) * 0.5;
            }
        }
        m
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

/// Eigendecomposition of a Hermitian matrix: real eigenvalues in descending
/// order with matching orthonormal eigenvectors (columns).
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<Vec<Complex64>>,
}

/// Kronecker product: entry `((i*dim_b + k), (j*dim_b + l)) = a_ij * b_kl`.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (da, db) = (a.dim(), b.dim());
    let mut out = ComplexMatrix::zeros(da * db);
    for i in 0..da {
        for j in 0..da {
            let aij = a[(i, j)];
            if aij == Complex64::ZERO {
                continue;
            }
            for k in 0..db {
                for l in 0..db {
                    out[(i * db + k, j * db + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Trace out one tensor factor of a `d_a * d_b` dimensional operator,
/// keeping the other.
pub fn partial_trace(
    m: &ComplexMatrix,
    d_a: usize,
    d_b: usize,
    keep: Side,
) -> Result<ComplexMatrix> {
    if m.dim() != d_a * d_b {
        return Err(Error::DimensionMismatch {
            expected: d_a * d_b,
            got: m.dim(),
        });
    }
    match keep {
        Side::A => {
            let mut out = ComplexMatrix::zeros(d_a);
            for i in 0..d_a {
                for j in 0..d_a {
                    out[(i, j)] = (0..d_b).map(|k| m[(i * d_b + k, j * d_b + k)]).sum();
                }
            }
            Ok(out)
        }
        Side::B => {
            let mut out = ComplexMatrix::zeros(d_b);
            for k in 0..d_b {
                for l in 0..d_b {
                    out[(k, l)] = (0..d_a).map(|i| m[(i * d_b + k, i * d_b + l)]).sum();
                }
            }
            Ok(out)
        }
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Rejects inputs whose hermiticity deviation exceeds [`HERMITICITY_TOL`];
/// sweeps run until the off-diagonal Frobenius norm drops below
/// `1e-14 * dim` (scaled by the input magnitude).
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<Spectrum> {
    let (vals, vecs) = jacobi(h, true)?;
    Ok(Spectrum {
        eigenvalues: vals,
        eigenvectors: vecs.expect("vectors requested"),
    })
}

/// Eigenvalues only (descending); skips eigenvector accumulation.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(jacobi(h, false)?.0)
}

type JacobiOutput = (Vec<f64>, Option<Vec<Vec<Complex64>>>);

fn jacobi(h: &ComplexMatrix, with_vectors: bool) -> Result<JacobiOutput> {
    let dev = h.hermiticity_deviation();
    if dev > HERMITICITY_TOL {
        return Err(Error::NotHermitian(dev));
    }
    let n = h.dim();
    let mut a = h.hermitized();
    let mut v = if with_vectors {
        Some(ComplexMatrix::identity(n))
    } else {
        None
    };

    let threshold = JACOBI_EPS * n as f64 * a.frobenius_norm().max(1.0);
    let skip_floor = threshold * 1e-3 / n as f64;

    let mut converged = n == 1 || off_diagonal_norm(&a) < threshold;
    let mut sweeps = 0;
    while !converged {
        for p in 0..n {
            for q in (p + 1)..n {
                let r = a[(p, q)].norm();
                if r <= skip_floor {
                    continue;
                }
                // Unitary 2x2 rotation U = diag(1, e^{-iφ}) · [[c, s], [-s, c]]
                // chosen to annihilate a_pq under a ← U† a U.
                let phase = a[(p, q)] / r;
                let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let sp = s * phase.conj();

                // Columns p, q of a (right-multiplication by U).
                for i in 0..n {
                    let x = a[(i, p)];
                    let y = a[(i, q)];
                    a[(i, p)] = c * x - sp * y;
                    a[(i, q)] = s * x + c * phase.conj() * y;
                }
                // Rows p, q of a (left-multiplication by U†).
                for j in 0..n {
                    let x = a[(p, j)];
                    let y = a[(q, j)];
                    a[(p, j)] = c * x - s * phase * y;
                    a[(q, j)] = s * x + c * phase * y;
                }
                a[(p, q)] = Complex64::ZERO;
                a[(q, p)] = Complex64::ZERO;
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;

                if let Some(v) = v.as_mut() {
                    for i in 0..n {
                        let x = v[(i, p)];
                        let y = v[(i, q)];
                        v[(i, p)] = c * x - sp * y;
                        v[(i, q)] = s * x + c * phase.conj() * y;
                    }
                }
            }
        }
        sweeps += 1;
        let off = off_diagonal_norm(&a);
        converged = off < threshold;
        if !converged && sweeps >= MAX_SWEEPS {
            return Err(Error::EigenNoConvergence { sweeps, off });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.partial_cmp(&a[(i, i)].re).unwrap());

    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let eigenvectors = v.map(|v| {
        order
            .iter()
            .map(|&col| (0..n).map(|row| v[(row, col)]).collect())
            .collect()
    });
    Ok((eigenvalues, eigenvectors))
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Trace distance `T(a, b) = ½ Σ |λ_k(a - b)|` between Hermitian operators.
pub fn trace_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    let diff = a - b;
    let eigs = hermitian_eigenvalues(&diff)?;
    Ok(0.5 * eigs.iter().map(|l| l.abs()).sum::<f64>())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    pub(crate) fn sigma_x() -> ComplexMatrix {
        ComplexMatrix::from_rows(vec![
            vec![Complex64::ZERO, Complex64::ONE],
            vec![Complex64::ONE, Complex64::ZERO],
        ])
        .unwrap()
    }

    fn singlet_projector() -> ComplexMatrix {
        let inv = 1.0 / 2f64.sqrt();
        let v = [Complex64::ZERO, c(inv, 0.0), c(-inv, 0.0), Complex64::ZERO];
        ComplexMatrix::outer(&v)
    }

    #[test]
    fn tensor_identities() {
        let got = tensor_product(&ComplexMatrix::identity(2), &ComplexMatrix::identity(2));
        assert_eq!(got.max_abs_diff(&ComplexMatrix::identity(4)), 0.0);
    }

    #[test]
    fn tensor_basis_projectors() {
        let a = ComplexMatrix::from_real_diag(&[1.0, 0.0]);
        let b = ComplexMatrix::from_real_diag(&[0.0, 1.0]);
        let want = ComplexMatrix::from_real_diag(&[0.0, 1.0, 0.0, 0.0]);
        assert_eq!(tensor_product(&a, &b).max_abs_diff(&want), 0.0);
    }

    #[test]
    fn tensor_block_placement() {
        let p0 = ComplexMatrix::from_real_diag(&[1.0, 0.0]);
        let got = tensor_product(&p0, &sigma_x());
        let mut want = ComplexMatrix::zeros(4);
        want[(0, 1)] = Complex64::ONE;
        want[(1, 0)] = Complex64::ONE;
        assert_eq!(got.max_abs_diff(&want), 0.0);
    }

    #[test]
    fn partial_trace_of_product_state() {
        let rho_a = ComplexMatrix::from_real_diag(&[0.7, 0.3]);
        let rho_b = ComplexMatrix::from_real_diag(&[0.25, 0.75]);
        let joint = tensor_product(&rho_a, &rho_b);
        let got_a = partial_trace(&joint, 2, 2, Side::A).unwrap();
        let got_b = partial_trace(&joint, 2, 2, Side::B).unwrap();
        assert!(got_a.max_abs_diff(&rho_a) < 1e-15);
        assert!(got_b.max_abs_diff(&rho_b) < 1e-15);
    }

    #[test]
    fn partial_trace_of_bell_state() {
        let inv = 1.0 / 2f64.sqrt();
        let phi_plus = [c(inv, 0.0), Complex64::ZERO, Complex64::ZERO, c(inv, 0.0)];
        let rho = ComplexMatrix::outer(&phi_plus);
        let reduced = partial_trace(&rho, 2, 2, Side::A).unwrap();
        assert!(reduced.max_abs_diff(&ComplexMatrix::identity(2).scaled(0.5)) < 1e-15);
    }

    #[test]
    fn partial_trace_maximally_mixed() {
        let rho = ComplexMatrix::identity(4).scaled(0.25);
        let reduced = partial_trace(&rho, 2, 2, Side::B).unwrap();
        assert!(reduced.max_abs_diff(&ComplexMatrix::identity(2).scaled(0.5)) < 1e-15);
    }

    #[test]
    fn partial_trace_rejects_dimension_mismatch() {
        let rho = ComplexMatrix::identity(3);
        assert!(partial_trace(&rho, 2, 2, Side::A).is_err());
    }

    #[test]
    fn eig_diagonal_sorted_descending() {
        let h = ComplexMatrix::from_real_diag(&[3.0, 1.0, 2.0]);
        let spec = hermitian_eig(&h).unwrap();
        assert_eq!(spec.eigenvalues, vec![3.0, 2.0, 1.0]);
    }

    #[test]
    fn eig_sigma_x() {
        let spec = hermitian_eig(&sigma_x()).unwrap();
        assert!((spec.eigenvalues[0] - 1.0).abs() < 1e-12);
        assert!((spec.eigenvalues[1] + 1.0).abs() < 1e-12);
        // Eigenvectors match |±⟩ up to phase.
        let inv = 1.0 / 2f64.sqrt();
        let overlap_plus =
            (spec.eigenvectors[0][0].conj() * inv + spec.eigenvectors[0][1].conj() * inv).norm();
        let overlap_minus =
            (spec.eigenvectors[1][0].conj() * inv - spec.eigenvectors[1][1].conj() * inv).norm();
        assert!((overlap_plus - 1.0).abs() < 1e-12);
        assert!((overlap_minus - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eig_pure_state_spectrum() {
        let spec = hermitian_eig(&singlet_projector()).unwrap();
        assert!((spec.eigenvalues[0] - 1.0).abs() < 1e-12);
        for &l in &spec.eigenvalues[1..] {
            assert!(l.abs() < 1e-12);
        }
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let mut m = ComplexMatrix::zeros(2);
        m[(0, 1)] = c(1.0, 0.0);
        match hermitian_eig(&m) {
            Err(Error::NotHermitian(dev)) => assert!((dev - 1.0).abs() < 1e-12),
            other => panic!("expected NotHermitian, got {other:?}"),
        }
    }

    #[test]
    fn eig_reconstructs_dense_hermitian() {
        let h = ComplexMatrix::from_rows(vec![
            vec![c(1.0, 0.0), c(0.3, 0.4), c(-0.2, 0.1)],
            vec![c(0.3, -0.4), c(-0.5, 0.0), c(0.0, 0.7)],
            vec![c(-0.2, -0.1), c(0.0, -0.7), c(2.0, 0.0)],
        ])
        .unwrap();
        let spec = hermitian_eig(&h).unwrap();
        let mut rec = ComplexMatrix::zeros(3);
        for (l, v) in spec.eigenvalues.iter().zip(&spec.eigenvectors) {
            let proj = ComplexMatrix::outer(v);
            rec = &rec + &proj.scaled(*l);
        }
        assert!(rec.max_abs_diff(&h) < 1e-12);
        // Orthonormality of the eigenvector list.
        for i in 0..3 {
            for j in 0..3 {
                let dot: Complex64 = spec.eigenvectors[i]
                    .iter()
                    .zip(&spec.eigenvectors[j])
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((dot.norm() - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn trace_distance_of_identical_states_is_zero() {
        let rho = singlet_projector();
        assert!(trace_distance(&rho, &rho).unwrap() < 1e-15);
    }

    #[test]
    fn trace_distance_orthogonal_pure_states() {
        let p0 = ComplexMatrix::from_real_diag(&[1.0, 0.0]);
        let p1 = ComplexMatrix::from_real_diag(&[0.0, 1.0]);
        assert!((trace_distance(&p0, &p1).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn trace_distance_mixed_vs_pure() {
        let mixed = ComplexMatrix::identity(2).scaled(0.5);
        let p0 = ComplexMatrix::from_real_diag(&[1.0, 0.0]);
        assert!((trace_distance(&mixed, &p0).unwrap() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn trace_distance_rejects_dimension_mismatch() {
        let a = ComplexMatrix::identity(2);
        let b = ComplexMatrix::identity(3);
        assert!(trace_distance(&a, &b).is_err());
    }
}
