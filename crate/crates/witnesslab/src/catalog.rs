//! Built-in one-parameter family of 3⊗3 operators used as ground truth.
//!
//! For `λ > 0`, `λ ≠ 1`, `μ = 1/λ`, the family consists of
//!
//! * `A0(λ)` — a PSD, partial-transpose-symmetric 9×9 matrix of rank 4,
//! * `A1 = |ψ⟩⟨ψ|` with `ψ = |00⟩ + |11⟩ + |22⟩`,
//! * the segment `A_t = (1 - t)·A0 + t·A1` for `t ∈ [0, 1]`,
//!
//! together with the 4-dimensional subspace `E` spanned by
//! `|00⟩+|11⟩+|22⟩`, `λ|01⟩+μ|10⟩`, `λ|12⟩+μ|21⟩`, `λ|20⟩+μ|02⟩`.
//! `E` is completely entangled, equals the range of `A0` (and of every
//! interior `A_t`), and `A0` is exactly invariant under partial
//! transposition — the combination that makes the family's witnesses
//! `A_t^τ` decisive test cases for the optimality conditions: condition (B)
//! holds for them while the non-face certificate and an explicit
//! subtraction both go through.

use crate::bipartite::{BipartiteOperator, Subspace};
use crate::matrix::ComplexMatrix;
use crate::{tol, Complex64, Error, Result};

/// The family record: parameters, the three operators, and the subspace
/// basis.
#[derive(Debug, Clone)]
pub struct PaperFamily {
    /// Family parameter `λ > 0`, `λ ≠ 1`.
    pub lambda: f64,
    /// `μ = 1/λ`.
    pub mu: f64,
    /// Segment position `t ∈ [0, 1]`.
    pub t_seg: f64,
    /// The PSD, PT-symmetric endpoint.
    pub a0: BipartiteOperator,
    /// The rank-one endpoint `|ψ⟩⟨ψ|`.
    pub a1: BipartiteOperator,
    /// The segment point `(1 - t)·A0 + t·A1`.
    pub at: BipartiteOperator,
    /// The four spanning vectors of `E`, unnormalized as displayed.
    pub e_basis: [Vec<Complex64>; 4],
}

fn require_lambda(lambda: f64) -> Result<()> {
    if !(lambda > 0.0 && lambda.is_finite()) || lambda == 1.0 {
        return Err(Error::InvalidLambda(lambda));
    }
    Ok(())
}

/// The four spanning vectors of `E(λ)` in `C^9`, unnormalized:
/// `|00⟩+|11⟩+|22⟩`, `λ|01⟩+μ|10⟩`, `λ|12⟩+μ|21⟩`, `λ|20⟩+μ|02⟩`
/// (flat index `(i, j) ↦ 3i + j`).
fn e_vectors(lambda: f64) -> [Vec<Complex64>; 4] {
    let mu = 1.0 / lambda;
    let mut v = [(); 4].map(|_| vec![Complex64::new(0.0, 0.0); 9]);
    for idx in [0, 4, 8] {
        v[0][idx] = Complex64::new(1.0, 0.0);
    }
    v[1][1] = Complex64::new(lambda, 0.0); // |01⟩
    v[1][3] = Complex64::new(mu, 0.0); // |10⟩
    v[2][5] = Complex64::new(lambda, 0.0); // |12⟩
    v[2][7] = Complex64::new(mu, 0.0); // |21⟩
    v[3][6] = Complex64::new(lambda, 0.0); // |20⟩
    v[3][2] = Complex64::new(mu, 0.0); // |02⟩
    v
}

/// Builds `A0(λ)`: diagonal `(1, λ², μ², μ², 1, λ², λ², μ², 1)`, ones at
/// all nine intersections of rows/columns `{0, 4, 8}`, and symmetric ones
/// pairing the index pairs `(1,3)`, `(5,7)`, `(2,6)`.
///
/// Errors with [`Error::InvalidLambda`] unless `λ > 0` and `λ ≠ 1`.
pub fn build_a0(lambda: f64) -> Result<BipartiteOperator> {
    require_lambda(lambda)?;
    let l2 = lambda * lambda;
    let m2 = 1.0 / l2;
    let mut mat = ComplexMatrix::zeros(9, 9);
    let diag = [1.0, l2, m2, m2, 1.0, l2, l2, m2, 1.0];
    for (i, &d) in diag.iter().enumerate() {
        mat.set(i, i, Complex64::new(d, 0.0));
    }
    for &r in &[0usize, 4, 8] {
        for &c in &[0usize, 4, 8] {
            if r != c {
                mat.set(r, c, Complex64::new(1.0, 0.0));
            }
        }
    }
    for &(r, c) in &[(1usize, 3usize), (5, 7), (2, 6)] {
        mat.set(r, c, Complex64::new(1.0, 0.0));
        mat.set(c, r, Complex64::new(1.0, 0.0));
    }
    BipartiteOperator::new(3, 3, mat)
}

/// Builds `A1 = |ψ⟩⟨ψ|` with `ψ = |00⟩ + |11⟩ + |22⟩` (ones at the nine
/// intersections of rows/columns `{0, 4, 8}`).
pub fn build_a1() -> BipartiteOperator {
    let mut mat = ComplexMatrix::zeros(9, 9);
    for &r in &[0usize, 4, 8] {
        for &c in &[0usize, 4, 8] {
            mat.set(r, c, Complex64::new(1.0, 0.0));
        }
    }
    BipartiteOperator::new(3, 3, mat).expect("9x9 matrix matches 3x3 factors")
}

/// Builds the subspace `E(λ)` spanned by the four displayed vectors.
///
/// Errors with [`Error::InvalidLambda`] unless `λ > 0` and `λ ≠ 1`.
pub fn build_e(lambda: f64) -> Result<Subspace> {
    require_lambda(lambda)?;
    Subspace::from_span(9, &e_vectors(lambda), tol::RANK_REL)
}

/// Assembles the family record at segment position `t_seg`.
///
/// Errors with [`Error::InvalidLambda`] / [`Error::TOutOfRange`] on bad
/// parameters; `t_seg = 0` and `t_seg = 1` give the endpoints exactly.
pub fn build_segment(lambda: f64, t_seg: f64) -> Result<PaperFamily> {
    require_lambda(lambda)?;
    if !(0.0..=1.0).contains(&t_seg) || !t_seg.is_finite() {
        return Err(Error::TOutOfRange(t_seg));
    }
    let a0 = build_a0(lambda)?;
    let a1 = build_a1();
    let at = a0.scale(1.0 - t_seg).add(&a1.scale(t_seg))?;
    Ok(PaperFamily {
        lambda,
        mu: 1.0 / lambda,
        t_seg,
        a0,
        a1,
        at,
        e_basis: e_vectors(lambda),
    })
}
