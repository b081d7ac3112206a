//! Machine- and human-readable reports for the subcommands.
//!
//! The JSON forms are schema-stable: field names and order come from the
//! struct declarations below (plus `ConditionReport` from the library),
//! contain no timestamps or environment data, and therefore serialize
//! byte-identically for identical inputs and seeds.

use serde::Serialize;
use witnesslab::{ConditionReport, ProductVector, ProductVectorData};

/// PSD gate summary for the analyzed operator.
#[derive(Debug, Clone, Serialize)]
pub struct PsdSummary {
    /// Whether the operator passed the PSD gate.
    pub is_psd: bool,
    /// Smallest eigenvalue found.
    pub min_eigenvalue: f64,
}

/// Full `analyze` output.
#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    /// A-side local dimension.
    pub dim_a: usize,
    /// B-side local dimension.
    pub dim_b: usize,
    /// Which side the partial transpose acted on (`"a"` or `"b"`).
    pub pt_side: String,
    /// PSD gate result for the input operator.
    pub psd: PsdSummary,
    /// Dimension of the input operator's range.
    pub support_dim: usize,
    /// Condition reports in pipeline order: B, C, A, then the
    /// non-optimality search.
    pub reports: Vec<ConditionReport>,
}

/// One condition report as a text line.
pub fn condition_line(report: &ConditionReport) -> String {
    let heuristic = if report.heuristic_flag {
        " (heuristic)"
    } else {
        ""
    };
    format!(
        "{}: {}{} — {}",
        report.condition_id, report.verdict, heuristic, report.notes
    )
}

impl AnalyzeReport {
    /// Human-readable rendering, one fact per line.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "operator: {}x{} on C^{} ⊗ C^{}, partial transpose on side {}\n",
            self.dim_a * self.dim_b,
            self.dim_a * self.dim_b,
            self.dim_a,
            self.dim_b,
            self.pt_side
        ));
        out.push_str(&format!(
            "psd: {} (min eigenvalue {:.3e})\n",
            if self.psd.is_psd { "yes" } else { "no" },
            self.psd.min_eigenvalue
        ));
        out.push_str(&format!("support dimension: {}\n", self.support_dim));
        for report in &self.reports {
            out.push_str(&condition_line(report));
            out.push('\n');
        }
        out
    }
}

/// Full `subspace` output.
#[derive(Debug, Clone, Serialize)]
pub struct SubspaceReport {
    /// A-side local dimension.
    pub dim_a: usize,
    /// B-side local dimension.
    pub dim_b: usize,
    /// Dimension of the spanned subspace.
    pub subspace_dim: usize,
    /// Which check ran (`"ces"` or `"product"`).
    pub check: String,
    /// Verdict string: `"entangled"`, `"product-found"`, or
    /// `"inconclusive"`.
    pub verdict: String,
    /// Best product overlap with the subspace projector.
    pub max_overlap: f64,
    /// The certified product vector, when one was found.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<ProductVectorData>,
    /// Membership residual of the certificate.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
}

fn side_string(v: &[witnesslab::Complex64]) -> String {
    let parts: Vec<String> = v
        .iter()
        .map(|z| format!("{:+.6}{:+.6}i", z.re, z.im))
        .collect();
    format!("[{}]", parts.join(", "))
}

/// Text form of a product-vector certificate.
pub fn certificate_lines(data: &ProductVectorData) -> String {
    match ProductVector::from_data(data) {
        Ok(pv) => format!(
            "  x: {}\n  y: {}\n",
            side_string(pv.x()),
            side_string(pv.y())
        ),
        Err(_) => "  (certificate factors unavailable)\n".to_string(),
    }
}

impl SubspaceReport {
    /// Human-readable rendering.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "subspace: dimension {} in C^{} ⊗ C^{}\n",
            self.subspace_dim, self.dim_a, self.dim_b
        ));
        match self.verdict.as_str() {
            "product-found" => {
                out.push_str(&format!(
                    "verdict: product vector found (overlap {:.12}, residual {:.3e})\n",
                    self.max_overlap,
                    self.residual.unwrap_or(f64::NAN)
                ));
                if let Some(cert) = &self.certificate {
                    out.push_str(&certificate_lines(cert));
                }
            }
            "entangled" => {
                out.push_str(&format!(
                    "verdict: entangled (heuristic) — max product overlap {:.12}\n",
                    self.max_overlap
                ));
            }
            _ => {
                out.push_str(&format!(
                    "verdict: inconclusive — max product overlap {:.12}\n",
                    self.max_overlap
                ));
            }
        }
        out
    }
}
