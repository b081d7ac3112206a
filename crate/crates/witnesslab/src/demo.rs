//! End-to-end walkthrough of the catalog family: builds `A_0`, `E`, and
//! `A_t`, then re-verifies the whole argument chain numerically — `A_0` is
//! PSD, invariant under partial transpose, supported exactly on the
//! completely entangled subspace `E`, the witness `A_t^τ` passes the
//! range/PT face checks, and an explicit non-optimality certificate is
//! produced by subtracting a multiple of `A_0`.
//!
//! Each step yields a named PASS/FAIL record so the CLI can print one line
//! per step and callers can assert on the aggregate.

use crate::bipartite::{support_subspace, PtSide};
use crate::catalog::build_segment;
use crate::conditions::{certify_non_face, certify_non_optimal, Verdict};
use crate::matrix::{hermitian_eigen, rank_with_tolerance};
use crate::seesaw::{is_completely_entangled, CesVerdict, SeesawConfig};
use crate::{tol, Error, Result};

/// One verification step of the walkthrough.
#[derive(Debug, Clone)]
pub struct DemoStep {
    /// Stable machine-readable step name.
    pub name: &'static str,
    /// Whether the step's check succeeded.
    pub passed: bool,
    /// Human-readable measurement backing the verdict.
    pub detail: String,
}

/// Full walkthrough outcome.
#[derive(Debug, Clone)]
pub struct PaperDemoReport {
    /// Family parameter λ.
    pub lambda: f64,
    /// Segment position t ∈ (0, 1).
    pub t_seg: f64,
    /// The seven steps in execution order.
    pub steps: Vec<DemoStep>,
    /// True iff every step passed.
    pub all_passed: bool,
}

/// Tolerance for the partial-transpose symmetry of `A_0` (entrywise).
const PT_SYMMETRY_DEMO: f64 = 1e-12;
/// `A_0` eigenvalues may dip this far below zero and still count as PSD.
const PSD_DEMO: f64 = 1e-10;
/// The entanglement verdict must leave at least this much overlap headroom.
const OVERLAP_HEADROOM: f64 = 1e-3;

/// Runs the seven-step walkthrough for the family at (λ, t).
///
/// Preconditions: λ finite, positive, ≠ 1 ([`Error::InvalidLambda`]) and
/// t strictly inside (0, 1) ([`Error::TOutOfRange`]; the endpoints are
/// excluded because the non-optimality subtraction `(1-t)/t` needs t > 0
/// and the segment construction degenerates at t = 1).
pub fn run_paper_demo(lambda: f64, t_seg: f64, cfg: &SeesawConfig) -> Result<PaperDemoReport> {
    if !(t_seg > 0.0 && t_seg < 1.0) {
        return Err(Error::TOutOfRange(t_seg));
    }
    let family = build_segment(lambda, t_seg)?;
    let dims = (3usize, 3usize);
    let mut steps = Vec::with_capacity(7);

    // 1. A_0 is positive semi-definite.
    let eig = hermitian_eigen(family.a0.matrix())?;
    let min_eig = eig.eigenvalues[0];
    steps.push(DemoStep {
        name: "a0-psd",
        passed: min_eig >= -PSD_DEMO,
        detail: format!("min eigenvalue {min_eig:.3e}"),
    });

    // 2. A_0 equals its own partial transpose.
    let pt_dev = family
        .a0
        .partial_transpose(PtSide::B)
        .matrix()
        .max_abs_diff(family.a0.matrix())?;
    steps.push(DemoStep {
        name: "a0-pt-symmetric",
        passed: pt_dev <= PT_SYMMETRY_DEMO,
        detail: format!("max entrywise deviation {pt_dev:.3e}"),
    });

    // 3. A_0 has rank 4.
    let rank = rank_with_tolerance(family.a0.matrix(), tol::RANK_REL)?;
    steps.push(DemoStep {
        name: "a0-rank",
        passed: rank == 4,
        detail: format!("rank {rank} (expected 4)"),
    });

    // 4. The range of A_0 is exactly the span E.
    let support = support_subspace(&family.a0, tol::RANK_REL)?;
    let e = crate::bipartite::Subspace::from_span(9, &family.e_basis, tol::RANK_REL)?;
    let dist = support.projector_distance(&e)?;
    steps.push(DemoStep {
        name: "a0-range-equals-e",
        passed: dist <= tol::SUBSPACE_EQ,
        detail: format!("projector distance {dist:.3e}"),
    });

    // 5. E is completely entangled, with clear headroom below overlap 1.
    let (ces_pass, ces_detail) = match is_completely_entangled(&e, dims, cfg, tol::GAP)? {
        CesVerdict::Entangled { max_overlap } => (
            max_overlap < 1.0 - OVERLAP_HEADROOM,
            format!("entangled, max product overlap {max_overlap:.6}"),
        ),
        CesVerdict::HasProductVector { overlap, .. } => {
            (false, format!("product vector found, overlap {overlap:.6}"))
        }
        CesVerdict::Inconclusive { max_overlap } => {
            (false, format!("inconclusive, max overlap {max_overlap:.6}"))
        }
    };
    steps.push(DemoStep {
        name: "e-completely-entangled",
        passed: ces_pass,
        detail: ces_detail,
    });

    // 6. A_0 witnesses that the face condition fails on E.
    let face = certify_non_face(&e, &family.a0, tol::RANK_REL)?;
    steps.push(DemoStep {
        name: "non-face-certificate",
        passed: face.verdict == Verdict::Fails,
        detail: format!("verdict {}; {}", face.verdict, face.notes),
    });

    // 7. The witness A_t^τ is certifiably non-optimal: subtracting
    //    t' = (1-t)/t times A_0 leaves a block-positive operator.
    let witness = family.at.partial_transpose(PtSide::B);
    let t_sub = (1.0 - t_seg) / t_seg;
    let opt = certify_non_optimal(&witness, &family.a0, t_sub, cfg)?;
    let opt_detail = match opt.evidence.min_value {
        Some(v) => format!(
            "verdict {}; subtraction t = {t_sub:.6}, min product value {v:.3e}",
            opt.verdict
        ),
        None => format!("verdict {}; subtraction t = {t_sub:.6}", opt.verdict),
    };
    steps.push(DemoStep {
        name: "non-optimality-certificate",
        passed: opt.verdict == Verdict::Fails,
        detail: opt_detail,
    });

    let all_passed = steps.iter().all(|s| s.passed);
    Ok(PaperDemoReport {
        lambda,
        t_seg,
        steps,
        all_passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_parameters_pass_every_step() {
        let report = run_paper_demo(2.0, 0.5, &SeesawConfig::default()).unwrap();
        assert_eq!(report.steps.len(), 7);
        for step in &report.steps {
            assert!(step.passed, "step {} failed: {}", step.name, step.detail);
        }
        assert!(report.all_passed);
    }

    #[test]
    fn step_names_are_stable() {
        let report = run_paper_demo(2.0, 0.5, &SeesawConfig::default()).unwrap();
        let names: Vec<&str> = report.steps.iter().map(|s| s.name).collect();
        assert_eq!(
            names,
            [
                "a0-psd",
                "a0-pt-symmetric",
                "a0-rank",
                "a0-range-equals-e",
                "e-completely-entangled",
                "non-face-certificate",
                "non-optimality-certificate",
            ]
        );
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        let cfg = SeesawConfig::default();
        assert!(matches!(
            run_paper_demo(1.0, 0.5, &cfg),
            Err(Error::InvalidLambda(_))
        ));
        assert!(matches!(
            run_paper_demo(2.0, 0.0, &cfg),
            Err(Error::TOutOfRange(_))
        ));
        assert!(matches!(
            run_paper_demo(2.0, 1.0, &cfg),
            Err(Error::TOutOfRange(_))
        ));
    }
}
