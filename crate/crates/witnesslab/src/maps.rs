//! Linear maps between matrix algebras in Kraus and Choi form, and the
//! trace pairing between bipartite operators and maps.
//!
//! A map `φ : M_m → M_n` is represented by its Choi matrix
//! `C(φ) = Σ_{i,j ∈ [m]} φ(E_ij) ⊗ E_ij`, a bipartite operator with A-side
//! dimension `n` and B-side dimension `m`. Kraus terms use matrices
//! `V ∈ M_{m×n}`: a plain term contributes `X ↦ V^* X V` and a transposed
//! term contributes `X ↦ V^* X^t V`. The Choi matrix of a single plain term
//! is the rank-one matrix `u u^*` with `u[k·m + i] = conj(V[i, k])`, and
//! transposing the Kraus action applies the B-side partial transpose to the
//! Choi matrix — the unit tests pin both identities down.

use crate::bipartite::{support_subspace, BipartiteOperator, ProductVector, PtSide, Subspace};
use crate::matrix::{is_psd, ComplexMatrix};
use crate::{tol, Complex64, Error, Result};

/// How a Kraus matrix acts in its term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KrausKind {
    /// `X ↦ V^* X V` — a completely positive contribution.
    Plain,
    /// `X ↦ V^* X^t V` — a completely copositive contribution.
    Transposed,
}

/// One Kraus term of a map `M_m → M_n`: an `m × n` matrix plus its kind.
#[derive(Debug, Clone)]
pub struct KrausTerm {
    /// The Kraus matrix `V ∈ M_{m×n}`.
    pub matrix: ComplexMatrix,
    /// Plain (CP) or transposed (CCP) action.
    pub kind: KrausKind,
}

impl KrausTerm {
    /// Plain term `X ↦ V^* X V`.
    pub fn plain(matrix: ComplexMatrix) -> Self {
        Self {
            matrix,
            kind: KrausKind::Plain,
        }
    }

    /// Transposed term `X ↦ V^* X^t V`.
    pub fn transposed(matrix: ComplexMatrix) -> Self {
        Self {
            matrix,
            kind: KrausKind::Transposed,
        }
    }
}

/// Which positivity class a support computation should assume.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapClass {
    /// The Choi matrix itself must be PSD.
    CompletelyPositive,
    /// The B-side partial transpose of the Choi matrix must be PSD.
    CompletelyCopositive,
}

/// A Hermiticity-preserving linear map `M_m → M_n` stored by its Choi
/// matrix.
#[derive(Debug, Clone)]
pub struct LinearMapRep {
    dim_in: usize,
    dim_out: usize,
    choi: BipartiteOperator,
}

impl LinearMapRep {
    /// Wraps a Choi matrix with A-side dimension `dim_out` and B-side
    /// dimension `dim_in`.
    ///
    /// The Choi matrix must be Hermitian within [`tol::HERMITICITY`]
    /// (equivalently: the map must be Hermiticity-preserving); errors with
    /// [`Error::NotHermitian`] otherwise and with
    /// [`Error::DimensionMismatch`] if the factor dimensions disagree.
    pub fn from_choi(dim_in: usize, dim_out: usize, choi: BipartiteOperator) -> Result<Self> {
        if choi.dim_a() != dim_out || choi.dim_b() != dim_in {
            return Err(Error::DimensionMismatch {
                expected: dim_out * dim_in,
                got: choi.total_dim(),
            });
        }
        choi.matrix().require_hermitian(tol::HERMITICITY)?;
        Ok(Self {
            dim_in,
            dim_out,
            choi,
        })
    }

    /// Input dimension `m` (the map eats `m × m` matrices).
    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    /// Output dimension `n` (the map produces `n × n` matrices).
    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    /// The Choi matrix.
    pub fn choi(&self) -> &BipartiteOperator {
        &self.choi
    }

    /// Applies the map: `φ(X)[k, l] = Σ_{i,j} X[i, j] · C[(k,i), (l,j)]`.
    ///
    /// Errors with [`Error::NonSquare`] / [`Error::DimensionMismatch`] if
    /// `X` is not `m × m`.
    pub fn apply(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        x.require_square()?;
        if x.rows() != self.dim_in {
            return Err(Error::DimensionMismatch {
                expected: self.dim_in,
                got: x.rows(),
            });
        }
        let m = self.dim_in;
        let out = ComplexMatrix::from_fn(self.dim_out, self.dim_out, |k, l| {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..m {
                for j in 0..m {
                    let xij = x.get(i, j);
                    if xij != Complex64::new(0.0, 0.0) {
                        acc += xij * self.choi.get(k, i, l, j);
                    }
                }
            }
            acc
        });
        Ok(out)
    }
}

/// Builds the Choi representation of a sum of Kraus terms.
///
/// All terms must share the same `m × n` shape; errors with
/// [`Error::EmptyTermList`] for an empty slice and
/// [`Error::DimensionMismatch`] on shape disagreement.
pub fn choi_of(terms: &[KrausTerm]) -> Result<LinearMapRep> {
    let first = terms.first().ok_or(Error::EmptyTermList)?;
    let (m, n) = (first.matrix.rows(), first.matrix.cols());
    if m == 0 || n == 0 {
        return Err(Error::BadDimension(
            "Kraus matrices must be non-empty".into(),
        ));
    }
    for term in terms {
        if term.matrix.rows() != m || term.matrix.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: m * n,
                got: term.matrix.rows() * term.matrix.cols(),
            });
        }
        term.matrix.require_finite()?;
    }

    let mut choi = ComplexMatrix::zeros(n * m, n * m);
    for term in terms {
        let v = &term.matrix;
        for k in 0..n {
            for i in 0..m {
                let row = k * m + i;
                for l in 0..n {
                    for j in 0..m {
                        let col = l * m + j;
                        let contribution = match term.kind {
                            // C[(k,i),(l,j)] += conj(V[i,k]) V[j,l]
                            KrausKind::Plain => v.get(i, k).conj() * v.get(j, l),
                            // B-side partial transpose of the plain formula.
                            KrausKind::Transposed => v.get(j, k).conj() * v.get(i, l),
                        };
                        let cur = choi.get(row, col) + contribution;
                        choi.set(row, col, cur);
                    }
                }
            }
        }
    }
    LinearMapRep::from_choi(m, n, BipartiteOperator::new(n, m, choi)?)
}

/// Trace pairing `⟨A, φ⟩ = Σ_{i,j ∈ [m]} tr(φ(E_ij) · (A^(ij))^t)` between
/// a bipartite operator `A` on `C^n ⊗ C^m` and a map `φ : M_m → M_n`, where
/// `A^(ij)[k, l] = A[(k,i), (l,j)]`.
///
/// Evaluated by the matrix-unit expansion above (not through a closed-form
/// shortcut); real whenever both `A` and the Choi matrix are Hermitian.
/// Errors with [`Error::DimensionMismatch`] if `A`'s factor dimensions do
/// not match `(n, m)`.
pub fn pairing(a: &BipartiteOperator, map: &LinearMapRep) -> Result<Complex64> {
    if a.dim_a() != map.dim_out() || a.dim_b() != map.dim_in() {
        return Err(Error::DimensionMismatch {
            expected: map.dim_out() * map.dim_in(),
            got: a.total_dim(),
        });
    }
    let m = map.dim_in();
    let n = map.dim_out();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..m {
        for j in 0..m {
            let mut unit = ComplexMatrix::zeros(m, m);
            unit.set(i, j, Complex64::new(1.0, 0.0));
            let phi_unit = map.apply(&unit)?;
            // tr(φ(E_ij) · (A^(ij))^t) = Σ_{k,l} φ(E_ij)[k,l] · A[(k,i),(l,j)]
            for k in 0..n {
                for l in 0..n {
                    acc += phi_unit.get(k, l) * a.get(k, i, l, j);
                }
            }
        }
    }
    Ok(acc)
}

/// Independent evaluation of the same pairing through the Choi matrix:
/// `Σ_{p,q} C[p,q] · A[p,q] = tr(A^t C)`.
///
/// Kept as a separate code path for cross-validation of [`pairing`].
pub fn pairing_via_choi(a: &BipartiteOperator, map: &LinearMapRep) -> Result<Complex64> {
    if a.dim_a() != map.dim_out() || a.dim_b() != map.dim_in() {
        return Err(Error::DimensionMismatch {
            expected: map.dim_out() * map.dim_in(),
            got: a.total_dim(),
        });
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (ca, cb) in a.matrix().data().iter().zip(map.choi().matrix().data()) {
        acc += ca * cb;
    }
    Ok(acc)
}

/// Closed-form value of the pairing against the rank-one projector onto a
/// product vector `x ⊗ y`:
///
/// * plain term `V`: `|y^* V x̄|²`,
/// * transposed term `V`: `|y^t V x̄|²`,
///
/// summed over terms. An independent cross-validation path for [`pairing`]
/// with `A = (x⊗y)(x⊗y)^*`, never used as the primary evaluator.
///
/// Errors with [`Error::EmptyTermList`] / [`Error::DimensionMismatch`] on
/// malformed input.
pub fn rank_one_pairing(terms: &[KrausTerm], p: &ProductVector) -> Result<f64> {
    let first = terms.first().ok_or(Error::EmptyTermList)?;
    let (m, n) = (first.matrix.rows(), first.matrix.cols());
    if p.dim_a() != n || p.dim_b() != m {
        return Err(Error::DimensionMismatch {
            expected: n * m,
            got: p.dim_a() * p.dim_b(),
        });
    }
    let mut acc = 0.0;
    for term in terms {
        if term.matrix.rows() != m || term.matrix.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: m * n,
                got: term.matrix.rows() * term.matrix.cols(),
            });
        }
        let mut amp = Complex64::new(0.0, 0.0);
        for i in 0..m {
            for k in 0..n {
                let yi = match term.kind {
                    KrausKind::Plain => p.y()[i].conj(),
                    KrausKind::Transposed => p.y()[i],
                };
                amp += yi * term.matrix.get(i, k) * p.x()[k].conj();
            }
        }
        acc += amp.norm_sqr();
    }
    Ok(acc)
}

/// Support of a map assumed completely positive (class
/// [`MapClass::CompletelyPositive`]) or completely copositive
/// ([`MapClass::CompletelyCopositive`]): the range of the Choi matrix,
/// respectively of its B-side partial transpose, at the default rank
/// tolerance.
///
/// Errors with [`Error::NotPsd`] if the CP check fails and
/// [`Error::NotPsdAfterPt`] if the CCP check fails.
pub fn support_of(map: &LinearMapRep, class: MapClass) -> Result<Subspace> {
    match class {
        MapClass::CompletelyPositive => {
            let check = is_psd(map.choi().matrix(), tol::PSD)?;
            if !check.is_psd {
                return Err(Error::NotPsd {
                    min_eigenvalue: check.min_eigenvalue,
                });
            }
            support_subspace(map.choi(), tol::RANK_REL)
        }
        MapClass::CompletelyCopositive => {
            let pt = map.choi().partial_transpose(PtSide::B);
            let check = is_psd(pt.matrix(), tol::PSD)?;
            if !check.is_psd {
                return Err(Error::NotPsdAfterPt {
                    min_eigenvalue: check.min_eigenvalue,
                });
            }
            support_subspace(&pt, tol::RANK_REL)
        }
    }
}
