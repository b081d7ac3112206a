//! On-disk JSON formats for bipartite operators and subspaces.
//!
//! Both formats carry explicit local dimensions and store complex data as
//! separate real/imaginary arrays, so files are diffable and language
//! neutral. Serialization uses shortest-roundtrip decimal floats, so a
//! write/read cycle reproduces every entry bit-exactly.

use serde::{Deserialize, Serialize};
use witnesslab::{BipartiteOperator, Complex64, ComplexMatrix, Subspace};

use crate::CliError;

/// The only accepted composite-index convention: the pair `(i, j)` with
/// `i` on the A side maps to flat index `i * dim_b + j`.
pub const INDEX_CONVENTION: &str = "row-major-a-major";

/// A dense complex matrix on a bipartite space.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixFile {
    /// A-side local dimension.
    pub dim_a: usize,
    /// B-side local dimension.
    pub dim_b: usize,
    /// Must equal [`INDEX_CONVENTION`]; files without an explicit
    /// convention are rejected rather than guessed at.
    pub index_convention: String,
    /// Real parts, row-major, side `dim_a * dim_b`.
    pub re: Vec<Vec<f64>>,
    /// Imaginary parts, same shape as `re`.
    pub im: Vec<Vec<f64>>,
}

fn check_grid(name: &str, grid: &[Vec<f64>], side: usize) -> Result<(), CliError> {
    if grid.len() != side {
        return Err(CliError::Format(format!(
            "{name} must have {side} rows, found {}",
            grid.len()
        )));
    }
    for (r, row) in grid.iter().enumerate() {
        if row.len() != side {
            return Err(CliError::Format(format!(
                "{name} row {r} must have {side} entries, found {}",
                row.len()
            )));
        }
    }
    Ok(())
}

impl MatrixFile {
    /// Captures an operator in file form.
    pub fn from_operator(op: &BipartiteOperator) -> Self {
        let side = op.total_dim();
        let mut re = vec![vec![0.0; side]; side];
        let mut im = vec![vec![0.0; side]; side];
        for (r, row) in re.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                let z = op.matrix().get(r, c);
                *entry = z.re;
                im[r][c] = z.im;
            }
        }
        MatrixFile {
            dim_a: op.dim_a(),
            dim_b: op.dim_b(),
            index_convention: INDEX_CONVENTION.to_string(),
            re,
            im,
        }
    }

    /// Validates the declared shape and convention, then builds the
    /// operator. All failures here are format errors.
    pub fn to_operator(&self) -> Result<BipartiteOperator, CliError> {
        if self.dim_a == 0 || self.dim_b == 0 {
            return Err(CliError::Format(
                "dim_a and dim_b must both be at least 1".into(),
            ));
        }
        if self.index_convention != INDEX_CONVENTION {
            return Err(CliError::Format(format!(
                "unsupported index_convention {:?} (expected {INDEX_CONVENTION:?})",
                self.index_convention
            )));
        }
        let side = self.dim_a * self.dim_b;
        check_grid("re", &self.re, side)?;
        check_grid("im", &self.im, side)?;
        let mat = ComplexMatrix::from_fn(side, side, |r, c| {
            Complex64::new(self.re[r][c], self.im[r][c])
        });
        BipartiteOperator::new(self.dim_a, self.dim_b, mat).map_err(CliError::from)
    }
}

/// One complex vector as parallel real/imaginary arrays.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VectorEntry {
    /// Real parts.
    pub re: Vec<f64>,
    /// Imaginary parts, same length as `re`.
    pub im: Vec<f64>,
}

/// A subspace given by a (not necessarily orthonormal) spanning list.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubspaceFile {
    /// A-side local dimension.
    pub dim_a: usize,
    /// B-side local dimension.
    pub dim_b: usize,
    /// Spanning vectors of length `dim_a * dim_b`; must be non-empty.
    pub vectors: Vec<VectorEntry>,
}

impl SubspaceFile {
    /// Captures a list of flat vectors in file form.
    pub fn from_vectors(dim_a: usize, dim_b: usize, vectors: &[Vec<Complex64>]) -> Self {
        SubspaceFile {
            dim_a,
            dim_b,
            vectors: vectors
                .iter()
                .map(|v| VectorEntry {
                    re: v.iter().map(|z| z.re).collect(),
                    im: v.iter().map(|z| z.im).collect(),
                })
                .collect(),
        }
    }

    /// Validates shapes and builds the spanned subspace plus the local
    /// dimensions `(dim_a, dim_b)`.
    pub fn to_subspace(&self, rank_tol: f64) -> Result<(Subspace, (usize, usize)), CliError> {
        if self.dim_a == 0 || self.dim_b == 0 {
            return Err(CliError::Format(
                "dim_a and dim_b must both be at least 1".into(),
            ));
        }
        if self.vectors.is_empty() {
            return Err(CliError::Format("vector list must not be empty".into()));
        }
        let ambient = self.dim_a * self.dim_b;
        let mut span: Vec<Vec<Complex64>> = Vec::with_capacity(self.vectors.len());
        for (idx, v) in self.vectors.iter().enumerate() {
            if v.re.len() != ambient || v.im.len() != ambient {
                return Err(CliError::Format(format!(
                    "vector {idx} must have {ambient} entries, found re: {}, im: {}",
                    v.re.len(),
                    v.im.len()
                )));
            }
            span.push(
                v.re.iter()
                    .zip(&v.im)
                    .map(|(&re, &im)| Complex64::new(re, im))
                    .collect(),
            );
        }
        let subspace = Subspace::from_span(ambient, &span, rank_tol)?;
        Ok((subspace, (self.dim_a, self.dim_b)))
    }
}

/// Reads and parses a JSON file of type `T`; both I/O and syntax problems
/// are format errors.
pub fn read_json<T: for<'de> Deserialize<'de>>(path: &std::path::Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Format(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Format(format!("cannot parse {}: {e}", path.display())))
}
