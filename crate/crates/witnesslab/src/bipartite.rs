//! Operators and vectors on a bipartite tensor-product space.
//!
//! Throughout the crate the underlying space is `C^n ⊗ C^m` with the A side
//! of dimension `n` listed first. Composite indices are row-major with the A
//! index major: the product basis vector `e_i ⊗ e_j` sits at flat position
//! `i * m + j`. All partial operations (transpose, conjugation) default to
//! acting on the B side; the A side is available everywhere through
//! [`PtSide`].

use serde::{Deserialize, Serialize};

use crate::matrix::{
    hermitian_eigen, orthonormal_family, vec_inner, vec_norm, vec_normalized, ComplexMatrix,
};
use crate::{tol, Complex64, Error, Result};

/// Which tensor factor a partial operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PtSide {
    /// The first factor (dimension `n`).
    A,
    /// The second factor (dimension `m`); the crate-wide default.
    #[default]
    B,
}

/// A square operator on `C^n ⊗ C^m` carrying its factor dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteOperator {
    dim_a: usize,
    dim_b: usize,
    mat: ComplexMatrix,
}

impl BipartiteOperator {
    /// Wraps a square matrix of side `dim_a * dim_b`.
    ///
    /// Errors with [`Error::BadDimension`] if either dimension is zero, with
    /// [`Error::NonSquare`] for a rectangular matrix, and with
    /// [`Error::DimensionMismatch`] if the side does not equal
    /// `dim_a * dim_b`.
    pub fn new(dim_a: usize, dim_b: usize, mat: ComplexMatrix) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 {
            return Err(Error::BadDimension(format!(
                "factor dimensions must be positive (got {dim_a}x{dim_b})"
            )));
        }
        mat.require_square()?;
        if mat.rows() != dim_a * dim_b {
            return Err(Error::DimensionMismatch {
                expected: dim_a * dim_b,
                got: mat.rows(),
            });
        }
        Ok(Self { dim_a, dim_b, mat })
    }

    /// Builds an operator entry by entry from
    /// `f(i, j, k, l) = ⟨e_i ⊗ e_j| X |e_k ⊗ e_l⟩`.
    pub fn from_fn<F: FnMut(usize, usize, usize, usize) -> Complex64>(
        dim_a: usize,
        dim_b: usize,
        mut f: F,
    ) -> Result<Self> {
        let mat = ComplexMatrix::from_fn(dim_a * dim_b, dim_a * dim_b, |row, col| {
            f(row / dim_b, row % dim_b, col / dim_b, col % dim_b)
        });
        Self::new(dim_a, dim_b, mat)
    }

    /// Identity operator on `C^dim_a ⊗ C^dim_b`.
    pub fn identity(dim_a: usize, dim_b: usize) -> Result<Self> {
        Self::new(dim_a, dim_b, ComplexMatrix::identity(dim_a * dim_b))
    }

    /// Dimension of the A factor.
    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    /// Dimension of the B factor.
    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    /// Total dimension `dim_a * dim_b`.
    pub fn total_dim(&self) -> usize {
        self.dim_a * self.dim_b
    }

    /// The underlying matrix.
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    /// Entry `⟨e_i ⊗ e_j| X |e_k ⊗ e_l⟩`.
    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> Complex64 {
        self.mat.get(i * self.dim_b + j, k * self.dim_b + l)
    }

    /// Partial transpose on the chosen factor.
    ///
    /// On the B side the entry map is
    /// `((i,j),(k,l)) -> ((i,l),(k,j))`; on the A side it is
    /// `((i,j),(k,l)) -> ((k,j),(i,l))`. Either map is an involution and
    /// preserves Hermiticity.
    pub fn partial_transpose(&self, side: PtSide) -> Self {
        let mat = match side {
            PtSide::B => ComplexMatrix::from_fn(self.total_dim(), self.total_dim(), |row, col| {
                let (i, j) = (row / self.dim_b, row % self.dim_b);
                let (k, l) = (col / self.dim_b, col % self.dim_b);
                self.get(i, l, k, j)
            }),
            PtSide::A => ComplexMatrix::from_fn(self.total_dim(), self.total_dim(), |row, col| {
                let (i, j) = (row / self.dim_b, row % self.dim_b);
                let (k, l) = (col / self.dim_b, col % self.dim_b);
                self.get(k, j, i, l)
            }),
        };
        Self {
            dim_a: self.dim_a,
            dim_b: self.dim_b,
            mat,
        }
    }

    /// Entrywise sum; factor dimensions must agree.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.require_same_dims(other)?;
        Ok(Self {
            dim_a: self.dim_a,
            dim_b: self.dim_b,
            mat: self.mat.add(&other.mat)?,
        })
    }

    /// Entrywise difference; factor dimensions must agree.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.require_same_dims(other)?;
        Ok(Self {
            dim_a: self.dim_a,
            dim_b: self.dim_b,
            mat: self.mat.sub(&other.mat)?,
        })
    }

    /// Multiplies every entry by a real scalar.
    pub fn scale(&self, factor: f64) -> Self {
        Self {
            dim_a: self.dim_a,
            dim_b: self.dim_b,
            mat: self.mat.scale(factor),
        }
    }

    fn require_same_dims(&self, other: &Self) -> Result<()> {
        if self.dim_a != other.dim_a || self.dim_b != other.dim_b {
            return Err(Error::DimensionMismatch {
                expected: self.total_dim(),
                got: other.total_dim(),
            });
        }
        Ok(())
    }
}

/// Serialization-friendly complex vector: separate real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexVectorData {
    /// Real parts.
    pub re: Vec<f64>,
    /// Imaginary parts, aligned with `re`.
    pub im: Vec<f64>,
}

impl ComplexVectorData {
    /// Splits a complex vector into real and imaginary parts.
    pub fn from_slice(v: &[Complex64]) -> Self {
        Self {
            re: v.iter().map(|z| z.re).collect(),
            im: v.iter().map(|z| z.im).collect(),
        }
    }

    /// Reassembles the complex vector. Errors with
    /// [`Error::DimensionMismatch`] if the part lengths differ.
    pub fn to_vec(&self) -> Result<Vec<Complex64>> {
        if self.re.len() != self.im.len() {
            return Err(Error::DimensionMismatch {
                expected: self.re.len(),
                got: self.im.len(),
            });
        }
        Ok(self
            .re
            .iter()
            .zip(&self.im)
            .map(|(&re, &im)| Complex64::new(re, im))
            .collect())
    }
}

/// Serialization-friendly form of a [`ProductVector`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductVectorData {
    /// A-side factor.
    pub x: ComplexVectorData,
    /// B-side factor.
    pub y: ComplexVectorData,
}

/// A normalized product vector `x ⊗ y` with both factors stored unit-norm.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductVector {
    x: Vec<Complex64>,
    y: Vec<Complex64>,
}

impl ProductVector {
    /// Normalizes and stores the two factors.
    ///
    /// Errors with [`Error::ZeroVector`] if either factor has numerically
    /// zero norm and with [`Error::NonFiniteEntry`] on NaN or infinite
    /// entries.
    pub fn new(x: &[Complex64], y: &[Complex64]) -> Result<Self> {
        for (idx, z) in x.iter().chain(y.iter()).enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFiniteEntry { row: idx, col: 0 });
            }
        }
        Ok(Self {
            x: vec_normalized(x)?,
            y: vec_normalized(y)?,
        })
    }

    /// Unit-norm A-side factor.
    pub fn x(&self) -> &[Complex64] {
        &self.x
    }

    /// Unit-norm B-side factor.
    pub fn y(&self) -> &[Complex64] {
        &self.y
    }

    /// A-side dimension.
    pub fn dim_a(&self) -> usize {
        self.x.len()
    }

    /// B-side dimension.
    pub fn dim_b(&self) -> usize {
        self.y.len()
    }

    /// Flattens to the ambient space: `(x ⊗ y)[i * m + j] = x[i] * y[j]`.
    /// The result is unit-norm because both factors are.
    pub fn embed(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.x.len() * self.y.len());
        for xi in &self.x {
            for yj in &self.y {
                out.push(xi * yj);
            }
        }
        out
    }

    /// Conjugates the chosen factor, producing `x ⊗ ȳ` (B side, the
    /// default elsewhere) or `x̄ ⊗ y` (A side). An involution.
    pub fn partial_conjugate(&self, side: PtSide) -> Self {
        match side {
            PtSide::B => Self {
                x: self.x.clone(),
                y: self.y.iter().map(|z| z.conj()).collect(),
            },
            PtSide::A => Self {
                x: self.x.iter().map(|z| z.conj()).collect(),
                y: self.y.clone(),
            },
        }
    }

    /// Converts to the serialization-friendly form.
    pub fn to_data(&self) -> ProductVectorData {
        ProductVectorData {
            x: ComplexVectorData::from_slice(&self.x),
            y: ComplexVectorData::from_slice(&self.y),
        }
    }

    /// Rebuilds from the serialization-friendly form (re-normalizing).
    pub fn from_data(data: &ProductVectorData) -> Result<Self> {
        Self::new(&data.x.to_vec()?, &data.y.to_vec()?)
    }
}

/// Quadratic form `⟨x ⊗ y| H |x ⊗ y⟩` of a Hermitian bipartite operator on
/// a product vector; real by Hermiticity.
///
/// Errors with [`Error::NotHermitian`] if `H` is not Hermitian within
/// [`tol::HERMITICITY`] and with [`Error::DimensionMismatch`] if the factor
/// dimensions disagree.
pub fn product_overlap(p: &ProductVector, h: &BipartiteOperator) -> Result<f64> {
    if p.dim_a() != h.dim_a() || p.dim_b() != h.dim_b() {
        return Err(Error::DimensionMismatch {
            expected: h.total_dim(),
            got: p.dim_a() * p.dim_b(),
        });
    }
    h.matrix().require_hermitian(tol::HERMITICITY)?;
    let v = p.embed();
    let hv = h.matrix().mul_vec(&v)?;
    Ok(vec_inner(&v, &hv)?.re)
}

/// A linear subspace of `C^d` stored as an orthonormal basis together with
/// its orthogonal projector.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Complex64>>,
    projector: ComplexMatrix,
}

impl Subspace {
    /// Span of a (possibly redundant) family of vectors in `C^ambient_dim`.
    ///
    /// The basis is produced by [`orthonormal_family`] at the given relative
    /// rank tolerance, so linearly dependent inputs collapse and the
    /// subspace dimension equals the family's numerical rank. An all-zero
    /// family yields the zero subspace.
    pub fn from_span(ambient_dim: usize, vectors: &[Vec<Complex64>], rel_tol: f64) -> Result<Self> {
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    got: v.len(),
                });
            }
        }
        let basis = orthonormal_family(vectors, rel_tol)?;
        let projector = projector_from_basis(ambient_dim, &basis);
        Ok(Self {
            ambient_dim,
            basis,
            projector,
        })
    }

    /// Subspace with a basis already known to be orthonormal (checked).
    ///
    /// Errors with [`Error::InvalidConfig`] if the family deviates from
    /// orthonormality by more than `1e-10` in any pairwise inner product.
    pub fn from_orthonormal_basis(ambient_dim: usize, basis: Vec<Vec<Complex64>>) -> Result<Self> {
        for v in &basis {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    got: v.len(),
                });
            }
        }
        for i in 0..basis.len() {
            for j in i..basis.len() {
                let inner = vec_inner(&basis[i], &basis[j])?;
                let expect = if i == j { 1.0 } else { 0.0 };
                if (inner - Complex64::new(expect, 0.0)).norm() > 1e-10 {
                    return Err(Error::InvalidConfig(format!(
                        "basis is not orthonormal (pair ({i}, {j}))"
                    )));
                }
            }
        }
        let projector = projector_from_basis(ambient_dim, &basis);
        Ok(Self {
            ambient_dim,
            basis,
            projector,
        })
    }

    /// Dimension of the ambient space.
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Subspace dimension (basis length).
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Orthonormal basis vectors.
    pub fn basis(&self) -> &[Vec<Complex64>] {
        &self.basis
    }

    /// Orthogonal projector onto the subspace.
    pub fn projector(&self) -> &ComplexMatrix {
        &self.projector
    }

    /// Distance `‖(I - P)v‖` of a vector from the subspace.
    pub fn residual(&self, v: &[Complex64]) -> Result<f64> {
        let pv = self.projector.mul_vec(v)?;
        let diff: Vec<Complex64> = v.iter().zip(&pv).map(|(a, b)| a - b).collect();
        Ok(vec_norm(&diff))
    }

    /// Orthogonal complement, with dimension `ambient_dim - dim`.
    ///
    /// The complement basis comes from the eigenvectors of the projector
    /// with eigenvalue below 1/2; its projector is formed as `I - P`
    /// directly so that complementing twice reproduces the original
    /// projector to working precision.
    pub fn orthogonal_complement(&self) -> Result<Self> {
        let eig = hermitian_eigen(&self.projector)?;
        let mut basis = Vec::new();
        for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
            if lambda < 0.5 {
                basis.push(eig.eigenvector(k));
            }
        }
        let projector = ComplexMatrix::identity(self.ambient_dim).sub(&self.projector)?;
        Ok(Self {
            ambient_dim: self.ambient_dim,
            basis,
            projector,
        })
    }

    /// Frobenius distance between the two projectors; the crate treats
    /// subspaces with distance at most [`tol::SUBSPACE_EQ`] as equal.
    pub fn projector_distance(&self, other: &Self) -> Result<f64> {
        Ok(self.projector.sub(&other.projector)?.frobenius_norm())
    }
}

fn projector_from_basis(ambient_dim: usize, basis: &[Vec<Complex64>]) -> ComplexMatrix {
    let mut p = ComplexMatrix::zeros(ambient_dim, ambient_dim);
    for u in basis {
        for r in 0..ambient_dim {
            for c in 0..ambient_dim {
                let v = p.get(r, c) + u[r] * u[c].conj();
                p.set(r, c, v);
            }
        }
    }
    p
}

/// Range (support) of a Hermitian positive semi-definite operator as a
/// subspace: the span of eigenvectors with eigenvalue above `rel_tol` times
/// the largest. The dimension equals
/// [`rank_with_tolerance`](crate::matrix::rank_with_tolerance) at the same
/// tolerance.
pub fn support_subspace(op: &BipartiteOperator, rel_tol: f64) -> Result<Subspace> {
    let eig = hermitian_eigen(op.matrix())?;
    let lambda_max = eig.eigenvalues.last().copied().unwrap_or(0.0);
    let mut basis = Vec::new();
    if lambda_max > 0.0 {
        for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
            if lambda > rel_tol * lambda_max {
                basis.push(eig.eigenvector(k));
            }
        }
    }
    Subspace::from_orthonormal_basis(op.total_dim(), basis)
}
