//! Dense complex matrices, a cyclic Jacobi Hermitian eigensolver, and
//! tolerance-based rank decisions.
//!
//! Matrices are stored row-major. The eigensolver is deliberately
//! self-contained (no LAPACK binding): the spectra handled by this crate are
//! small (dimension ≲ 20) and the cyclic Jacobi method is simple, strictly
//! deterministic, and accurate to a few ulps of the Frobenius norm, which the
//! unit tests pin down explicitly.

use crate::{tol, Complex64, Error, Result};

/// Maximum number of Jacobi sweeps before the solver gives up.
///
/// Cyclic Jacobi converges quadratically; for the dimensions used here
/// (≤ 20) convergence takes well under ten sweeps, so hitting this limit
/// indicates non-finite input rather than slow convergence.
const MAX_JACOBI_SWEEPS: usize = 64;

/// Dense complex matrix in row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    /// Identity matrix of size `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Builds a matrix entry by entry from `f(row, col)`.
    pub fn from_fn<F: FnMut(usize, usize) -> Complex64>(
        rows: usize,
        cols: usize,
        mut f: F,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Wraps row-major data as a matrix.
    ///
    /// Errors with [`Error::DimensionMismatch`] if `data.len() != rows * cols`.
    pub fn from_data(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Row-major entry slice.
    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    /// Entry at `(row, col)`.
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.cols + col]
    }

    /// Overwrites the entry at `(row, col)`.
    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.cols + col] = value;
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    /// Transpose without conjugation.
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r))
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| self.get(r, c).conj())
    }

    /// Entrywise sum. Errors with [`Error::DimensionMismatch`] on shape
    /// disagreement.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.require_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Entrywise difference. Errors with [`Error::DimensionMismatch`] on
    /// shape disagreement.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.require_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Multiplies every entry by a real scalar.
    pub fn scale(&self, factor: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * factor).collect(),
        }
    }

    /// Matrix product `self * other`. Errors with
    /// [`Error::DimensionMismatch`] if the inner dimensions disagree.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c) + a * other.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product. Errors with [`Error::DimensionMismatch`] if
    /// the vector length does not match the column count.
    pub fn mul_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows];
        for r in 0..self.rows {
            let mut acc = Complex64::new(0.0, 0.0);
            for c in 0..self.cols {
                acc += self.get(r, c) * v[c];
            }
            out[r] = acc;
        }
        Ok(out)
    }

    /// Sum of diagonal entries. Errors with [`Error::NonSquare`] if the
    /// matrix is not square.
    pub fn trace(&self) -> Result<Complex64> {
        self.require_square()?;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..self.rows {
            acc += self.get(i, i);
        }
        Ok(acc)
    }

    /// Frobenius norm.
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise absolute difference to `other`. Errors with
    /// [`Error::DimensionMismatch`] on shape disagreement.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.require_same_shape(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Largest entrywise deviation from Hermitian symmetry,
    /// `max |A[r][c] - conj(A[c][r])|`. Errors with [`Error::NonSquare`].
    pub fn hermiticity_violation(&self) -> Result<f64> {
        self.require_square()?;
        let mut worst: f64 = 0.0;
        for r in 0..self.rows {
            for c in 0..self.cols {
                worst = worst.max((self.get(r, c) - self.get(c, r).conj()).norm());
            }
        }
        Ok(worst)
    }

    /// Hermitian part `(A + A^*) / 2`; caller must ensure the matrix is
    /// square.
    pub fn symmetrized(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| {
            (self.get(r, c) + self.get(c, r).conj()) * 0.5
        })
    }

    /// Errors with [`Error::NonSquare`] unless `rows == cols`.
    pub fn require_square(&self) -> Result<()> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(())
    }

    /// Errors with [`Error::NonFiniteEntry`] if any entry is NaN or
    /// infinite.
    pub fn require_finite(&self) -> Result<()> {
        for r in 0..self.rows {
            for c in 0..self.cols {
                let z = self.get(r, c);
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFiniteEntry { row: r, col: c });
                }
            }
        }
        Ok(())
    }

    /// Errors with [`Error::NotHermitian`] if the Hermiticity violation
    /// exceeds `tolerance`.
    pub fn require_hermitian(&self, tolerance: f64) -> Result<()> {
        let violation = self.hermiticity_violation()?;
        if violation > tolerance {
            return Err(Error::NotHermitian { violation });
        }
        Ok(())
    }

    fn require_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                got: other.rows * other.cols,
            });
        }
        Ok(())
    }

    /// Root sum of squares of the off-diagonal entries.
    fn off_diagonal_norm(&self) -> f64 {
        let mut acc = 0.0;
        for r in 0..self.rows {
            for c in 0..self.cols {
                if r != c {
                    acc += self.get(r, c).norm_sqr();
                }
            }
        }
        acc.sqrt()
    }
}

/// Result of a Hermitian eigendecomposition.
///
/// Eigenvalues are real and sorted ascending; `eigenvectors` holds the
/// corresponding orthonormal eigenvectors as columns, in the same order.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Eigenvalues in ascending order.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as matrix columns, aligned with
    /// `eigenvalues`.
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// Copies the `k`-th eigenvector (ascending eigenvalue order) out of the
    /// column matrix.
    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        let n = self.eigenvectors.rows();
        (0..n).map(|r| self.eigenvectors.get(r, k)).collect()
    }

    /// Rebuilds `U diag(λ) U^*`; useful for reconstruction checks.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.eigenvectors.rows();
        ComplexMatrix::from_fn(n, n, |r, c| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, &lambda) in self.eigenvalues.iter().enumerate() {
                acc += self.eigenvectors.get(r, k) * lambda * self.eigenvectors.get(c, k).conj();
            }
            acc
        })
    }
}

/// Full eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// The input must be square, finite, and Hermitian within
/// [`tol::HERMITICITY`] (entrywise); it is symmetrized exactly before
/// iteration, so the returned eigenvalues are real by construction. The
/// reconstruction `U diag(λ) U^*` matches the symmetrized input to a few
/// ulps of its Frobenius norm — well within the `1e-10` relative bound the
/// tests enforce.
pub fn hermitian_eigen(a: &ComplexMatrix) -> Result<EigenDecomposition> {
    a.require_square()?;
    a.require_finite()?;
    a.require_hermitian(tol::HERMITICITY)?;

    let n = a.rows();
    let mut m = a.symmetrized();
    let mut u = ComplexMatrix::identity(n);
    let stop = 1e-14 * m.frobenius_norm().max(f64::MIN_POSITIVE);

    for _sweep in 0..MAX_JACOBI_SWEEPS {
        if m.off_diagonal_norm() <= stop {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m.get(p, q);
                let abs = apq.norm();
                if abs == 0.0 {
                    continue;
                }
                // Factor out the phase so the (p,q) block becomes real
                // symmetric, then apply the classical Jacobi rotation that
                // annihilates the real off-diagonal entry.
                let phase = apq / abs;
                let phase_conj = phase.conj();
                let app = m.get(p, p).re;
                let aqq = m.get(q, q).re;
                let tau = (aqq - app) / (2.0 * abs);
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // M <- M U with U the phase-adjusted plane rotation.
                for r in 0..n {
                    let mrp = m.get(r, p);
                    let mrq = m.get(r, q);
                    m.set(r, p, mrp * c + mrq * (phase_conj * s));
                    m.set(r, q, mrp * (-s) + mrq * (phase_conj * c));
                }
                // M <- U^* M.
                for r in 0..n {
                    let mpr = m.get(p, r);
                    let mqr = m.get(q, r);
                    m.set(p, r, mpr * c + mqr * (phase * s));
                    m.set(q, r, mpr * (-s) + mqr * (phase * c));
                }
                // The rotation annihilates the (p,q) pair and keeps the
                // diagonal real; clamp away rounding residue.
                m.set(p, q, Complex64::new(0.0, 0.0));
                m.set(q, p, Complex64::new(0.0, 0.0));
                m.set(p, p, Complex64::new(m.get(p, p).re, 0.0));
                m.set(q, q, Complex64::new(m.get(q, q).re, 0.0));

                // Accumulate the eigenvector matrix: U_total <- U_total U.
                for r in 0..n {
                    let urp = u.get(r, p);
                    let urq = u.get(r, q);
                    u.set(r, p, urp * c + urq * (phase_conj * s));
                    u.set(r, q, urp * (-s) + urq * (phase_conj * c));
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        m.get(i, i)
            .re
            .partial_cmp(&m.get(j, j).re)
            .expect("eigenvalues of a finite Hermitian matrix are finite")
    });
    let eigenvalues = order.iter().map(|&i| m.get(i, i).re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |r, c| u.get(r, order[c]));
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// Outcome of a positive semi-definiteness check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsdCheck {
    /// Whether the smallest eigenvalue is at least `-tolerance`.
    pub is_psd: bool,
    /// The smallest eigenvalue, always reported as evidence.
    pub min_eigenvalue: f64,
}

/// Checks positive semi-definiteness of a Hermitian matrix.
///
/// Returns `is_psd = true` iff the minimum eigenvalue is at least
/// `-tolerance`; the minimum eigenvalue is always reported. Errors with
/// [`Error::NotHermitian`] (and the other [`hermitian_eigen`] errors) on
/// invalid input.
pub fn is_psd(a: &ComplexMatrix, tolerance: f64) -> Result<PsdCheck> {
    let eig = hermitian_eigen(a)?;
    let min_eigenvalue = eig.eigenvalues.first().copied().unwrap_or(0.0);
    Ok(PsdCheck {
        is_psd: min_eigenvalue >= -tolerance,
        min_eigenvalue,
    })
}

/// Numerical rank of a Hermitian positive semi-definite matrix: the number
/// of eigenvalues exceeding `rel_tol` times the largest eigenvalue.
///
/// Returns 0 when the largest eigenvalue is not positive (in particular for
/// the zero matrix). Small negative eigenvalues from rounding are counted as
/// zero automatically since they never exceed a positive threshold.
pub fn rank_with_tolerance(a: &ComplexMatrix, rel_tol: f64) -> Result<usize> {
    let eig = hermitian_eigen(a)?;
    let lambda_max = eig.eigenvalues.last().copied().unwrap_or(0.0);
    if lambda_max <= 0.0 {
        return Ok(0);
    }
    Ok(eig
        .eigenvalues
        .iter()
        .filter(|&&l| l > rel_tol * lambda_max)
        .count())
}

/// Inner product `⟨a, b⟩`, conjugate-linear in the first argument. Errors
/// with [`Error::DimensionMismatch`] if the lengths differ.
pub fn vec_inner(a: &[Complex64], b: &[Complex64]) -> Result<Complex64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    Ok(a.iter()
        .zip(b)
        .map(|(x, y)| x.conj() * y)
        .sum::<Complex64>())
}

/// Euclidean norm of a complex vector.
pub fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Returns `v / ‖v‖`. Errors with [`Error::ZeroVector`] when the norm is
/// numerically zero.
pub fn vec_normalized(v: &[Complex64]) -> Result<Vec<Complex64>> {
    let norm = vec_norm(v);
    if norm <= 1e-300 {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|z| z / norm).collect())
}

/// Gram matrix `G[i][j] = ⟨v_i, v_j⟩` of a family of equal-length vectors.
fn gram_matrix(vectors: &[Vec<Complex64>]) -> Result<ComplexMatrix> {
    let k = vectors.len();
    let dim = vectors[0].len();
    for v in vectors {
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: v.len(),
            });
        }
    }
    let mut g = ComplexMatrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let inner = vec_inner(&vectors[i], &vectors[j])?;
            g.set(i, j, inner);
            g.set(j, i, inner.conj());
        }
    }
    Ok(g)
}

/// Numerical rank of a vector family: the number of Gram-matrix eigenvalues
/// exceeding `rel_tol` times the largest one. Returns 0 for an empty family.
pub fn family_rank(vectors: &[Vec<Complex64>], rel_tol: f64) -> Result<usize> {
    if vectors.is_empty() {
        return Ok(0);
    }
    rank_with_tolerance(&gram_matrix(vectors)?, rel_tol)
}

/// Orthonormal basis of the span of a vector family.
///
/// The family is reduced through its Gram matrix: eigenvectors of the Gram
/// matrix with eigenvalue above `rel_tol` times the largest produce the
/// basis (dominant directions first), so the returned length equals
/// [`family_rank`] at the same tolerance. A final modified Gram–Schmidt pass
/// tightens orthonormality to working precision. Duplicated or linearly
/// dependent inputs are collapsed rather than rejected; an all-zero family
/// yields an empty basis.
pub fn orthonormal_family(
    vectors: &[Vec<Complex64>],
    rel_tol: f64,
) -> Result<Vec<Vec<Complex64>>> {
    if vectors.is_empty() {
        return Ok(Vec::new());
    }
    let dim = vectors[0].len();
    let eig = hermitian_eigen(&gram_matrix(vectors)?)?;
    let lambda_max = eig.eigenvalues.last().copied().unwrap_or(0.0);
    if lambda_max <= 0.0 {
        return Ok(Vec::new());
    }

    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    for k in (0..eig.eigenvalues.len()).rev() {
        let lambda = eig.eigenvalues[k];
        if lambda <= rel_tol * lambda_max {
            break;
        }
        let weights = eig.eigenvector(k);
        let mut u = vec![Complex64::new(0.0, 0.0); dim];
        for (j, v) in vectors.iter().enumerate() {
            let w = weights[j];
            for (ur, vr) in u.iter_mut().zip(v) {
                *ur += w * vr;
            }
        }
        let inv = 1.0 / lambda.sqrt();
        for z in &mut u {
            *z *= inv;
        }
        basis.push(u);
    }

    // One modified Gram–Schmidt sweep to polish orthonormality.
    for i in 0..basis.len() {
        for j in 0..i {
            let proj = vec_inner(&basis[j], &basis[i])?;
            let prev = basis[j].clone();
            for (zi, zj) in basis[i].iter_mut().zip(&prev) {
                *zi -= proj * zj;
            }
        }
        basis[i] = vec_normalized(&basis[i])?;
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
        let raw = ComplexMatrix::from_fn(n, n, |_, _| {
            c(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() * 2.0 - 1.0)
        });
        raw.symmetrized()
    }

    #[test]
    fn identity_eigen_is_trivial() {
        let eig = hermitian_eigen(&ComplexMatrix::identity(4)).unwrap();
        for l in &eig.eigenvalues {
            assert!((l - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn diagonal_matrix_sorted_ascending() {
        let mut m = ComplexMatrix::zeros(3, 3);
        m.set(0, 0, c(2.0, 0.0));
        m.set(1, 1, c(-1.0, 0.0));
        m.set(2, 2, c(0.5, 0.0));
        let eig = hermitian_eigen(&m).unwrap();
        assert_eq!(eig.eigenvalues, vec![-1.0, 0.5, 2.0]);
    }

    #[test]
    fn pauli_y_eigenpairs() {
        let mut m = ComplexMatrix::zeros(2, 2);
        m.set(0, 1, c(0.0, 1.0));
        m.set(1, 0, c(0.0, -1.0));
        let eig = hermitian_eigen(&m).unwrap();
        assert!((eig.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-14);
        let v = eig.eigenvector(1);
        let mv = m.mul_vec(&v).unwrap();
        for (a, b) in mv.iter().zip(&v) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn random_hermitian_reconstruction_and_orthonormality() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..40 {
            let n = 2 + trial % 11;
            let m = random_hermitian(n, &mut rng);
            let eig = hermitian_eigen(&m).unwrap();
            let rec = eig.reconstruct();
            let err = rec.max_abs_diff(&m).unwrap();
            assert!(
                err <= 1e-10 * m.frobenius_norm().max(1.0),
                "reconstruction error {err:.3e} at n={n}"
            );
            // Columns orthonormal.
            let u = &eig.eigenvectors;
            let gram = u.adjoint().matmul(u).unwrap();
            let dev = gram.max_abs_diff(&ComplexMatrix::identity(n)).unwrap();
            assert!(dev < 1e-12, "orthonormality defect {dev:.3e}");
            // Ascending order.
            for w in eig.eigenvalues.windows(2) {
                assert!(w[0] <= w[1]);
            }
        }
    }

    #[test]
    fn eigen_rejects_non_hermitian() {
        let mut m = ComplexMatrix::zeros(2, 2);
        m.set(0, 1, c(1.0, 0.0));
        let err = hermitian_eigen(&m).unwrap_err();
        assert!(matches!(err, Error::NotHermitian { .. }));
    }

    #[test]
    fn eigen_rejects_non_square_and_non_finite() {
        let m = ComplexMatrix::zeros(2, 3);
        assert!(matches!(
            hermitian_eigen(&m),
            Err(Error::NonSquare { rows: 2, cols: 3 })
        ));
        let mut m = ComplexMatrix::zeros(2, 2);
        m.set(0, 0, c(f64::NAN, 0.0));
        assert!(matches!(
            hermitian_eigen(&m),
            Err(Error::NonFiniteEntry { row: 0, col: 0 })
        ));
    }

    #[test]
    fn rank_of_zero_matrix_is_zero() {
        let m = ComplexMatrix::zeros(5, 5);
        assert_eq!(rank_with_tolerance(&m, tol::RANK_REL).unwrap(), 0);
    }

    #[test]
    fn rank_of_projectors() {
        // Rank-one projector onto a non-axis vector.
        let v = vec_normalized(&[c(1.0, 0.5), c(-0.25, 1.0), c(0.0, -2.0)]).unwrap();
        let p = ComplexMatrix::from_fn(3, 3, |r, cidx| v[r] * v[cidx].conj());
        assert_eq!(rank_with_tolerance(&p, tol::RANK_REL).unwrap(), 1);
        assert_eq!(
            rank_with_tolerance(&ComplexMatrix::identity(6), tol::RANK_REL).unwrap(),
            6
        );
    }

    #[test]
    fn psd_check_reports_min_eigenvalue() {
        let mut m = ComplexMatrix::zeros(2, 2);
        m.set(0, 0, c(1.0, 0.0));
        m.set(1, 1, c(-0.5, 0.0));
        let check = is_psd(&m, tol::PSD).unwrap();
        assert!(!check.is_psd);
        assert!((check.min_eigenvalue + 0.5).abs() < 1e-12);
        let check = is_psd(&ComplexMatrix::identity(3), tol::PSD).unwrap();
        assert!(check.is_psd);
    }

    #[test]
    fn orthonormal_family_collapses_duplicates() {
        let e1 = vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let e2 = vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)];
        let fam = vec![e1.clone(), e1.clone(), e2.clone()];
        let basis = orthonormal_family(&fam, tol::RANK_REL).unwrap();
        assert_eq!(basis.len(), 2);
        assert_eq!(family_rank(&fam, tol::RANK_REL).unwrap(), 2);
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                let inner = vec_inner(&basis[i], &basis[j]).unwrap();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((inner - c(expect, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn orthonormal_family_spans_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let dim = 6;
        let fam: Vec<Vec<Complex64>> = (0..4)
            .map(|_| {
                (0..dim)
                    .map(|_| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
                    .collect()
            })
            .collect();
        let basis = orthonormal_family(&fam, tol::RANK_REL).unwrap();
        assert_eq!(basis.len(), 4);
        // Every input vector reproduced by its basis expansion.
        for v in &fam {
            let mut residual = v.clone();
            for b in &basis {
                let coeff = vec_inner(b, v).unwrap();
                for (rz, bz) in residual.iter_mut().zip(b) {
                    *rz -= coeff * bz;
                }
            }
            assert!(vec_norm(&residual) < 1e-10);
        }
    }

    #[test]
    fn orthonormal_family_of_zero_vectors_is_empty() {
        let fam = vec![vec![c(0.0, 0.0); 3]; 2];
        assert!(orthonormal_family(&fam, tol::RANK_REL).unwrap().is_empty());
        assert_eq!(family_rank(&fam, tol::RANK_REL).unwrap(), 0);
    }

    #[test]
    fn matmul_and_adjoint_consistency() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = ComplexMatrix::from_fn(3, 4, |_, _| {
            c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
        });
        let aa = a.adjoint().matmul(&a).unwrap();
        // A^* A is Hermitian PSD.
        assert!(aa.hermiticity_violation().unwrap() < 1e-14);
        let check = is_psd(&aa, tol::PSD).unwrap();
        assert!(check.is_psd);
    }
}
