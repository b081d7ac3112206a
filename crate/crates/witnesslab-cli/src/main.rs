//! Command-line front end: analyzes operator files as witnesses, replays
//! the built-in walkthrough, tests subspaces for product vectors, and runs
//! randomized subspace experiments.
//!
//! Exit codes: 0 success, 2 parse/format problem, 3 precondition violated
//! by otherwise well-formed input, 4 internal numeric failure (including a
//! failing walkthrough step). Every randomized command takes a seed and
//! defaults it to 0, so runs are reproducible by default.

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use witnesslab::{
    analyze_witness, hermitian_eigen, is_completely_entangled, run_experiment, run_paper_demo,
    search_non_optimality, tol, CesVerdict, ExperimentSpec, PtSide, SeesawConfig,
};

use witnesslab_cli::io::{read_json, MatrixFile, SubspaceFile};
use witnesslab_cli::report::{AnalyzeReport, PsdSummary, SubspaceReport};
use witnesslab_cli::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PtSideArg {
    /// Partial transpose on the A factor.
    A,
    /// Partial transpose on the B factor.
    B,
}

impl PtSideArg {
    fn to_side(self) -> PtSide {
        match self {
            PtSideArg::A => PtSide::A,
            PtSideArg::B => PtSide::B,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            PtSideArg::A => "a",
            PtSideArg::B => "b",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckArg {
    /// Report whether the subspace looks completely entangled.
    Ces,
    /// Look for a certified product vector inside the subspace.
    Product,
}

#[derive(Parser)]
#[command(
    name = "witnesslab",
    version,
    about = "Certificate-driven analysis of decomposable entanglement witnesses"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a PSD operator file Q and report conditions for W = Q^τ.
    Analyze {
        /// Path to a matrix file (JSON).
        path: PathBuf,
        /// Side the partial transpose acts on.
        #[arg(long, value_enum, default_value_t = PtSideArg::B)]
        pt_side: PtSideArg,
        /// Random restarts per product-vector search.
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        /// Master seed for all searches.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Relative eigenvalue cutoff for rank/support decisions.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Emit the report as JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Replay the built-in witness-family walkthrough step by step.
    PaperDemo {
        /// Family parameter λ (> 0, ≠ 1).
        #[arg(long, default_value_t = 2.0)]
        lambda: f64,
        /// Segment position t ∈ (0, 1).
        #[arg(long, default_value_t = 0.5)]
        t: f64,
        /// Master seed for the entanglement search.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Test a subspace file for complete entanglement or product vectors.
    Subspace {
        /// Path to a subspace file (JSON).
        path: PathBuf,
        /// Which question to answer.
        #[arg(long, value_enum)]
        check: CheckArg,
        /// Random restarts for the search.
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        /// Master seed for the search.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Emit the report as JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Sample random subspaces and tally entanglement verdicts.
    RandomCes {
        /// A-side local dimension.
        #[arg(long)]
        m: usize,
        /// B-side local dimension.
        #[arg(long)]
        n: usize,
        /// Subspace dimension per trial.
        #[arg(long)]
        k: usize,
        /// Number of independent trials.
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Master seed; per-trial seeds derive from it.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write one CSV row per trial to this path.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn search_config(restarts: usize, seed: u64) -> SeesawConfig {
    SeesawConfig {
        restarts,
        seed,
        ..SeesawConfig::default()
    }
}

fn to_json(value: &impl serde::Serialize) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Internal(format!("serialization failed: {e}")))
}

fn cmd_analyze(
    path: &PathBuf,
    pt_side: PtSideArg,
    restarts: usize,
    seed: u64,
    rank_tol: f64,
    json: bool,
) -> Result<(), CliError> {
    let file: MatrixFile = read_json(path)?;
    let q = file.to_operator()?;
    let cfg = search_config(restarts, seed);
    let eig = hermitian_eigen(q.matrix())?;
    let min_eigenvalue = eig.eigenvalues.first().copied().unwrap_or(0.0);
    let analysis = analyze_witness(&q, pt_side.to_side(), rank_tol, &cfg)?;
    let non_optimality = search_non_optimality(&analysis.witness, &cfg)?;
    let mut reports = analysis.reports.clone();
    reports.push(non_optimality);
    let report = AnalyzeReport {
        dim_a: q.dim_a(),
        dim_b: q.dim_b(),
        pt_side: pt_side.as_str().to_string(),
        psd: PsdSummary {
            is_psd: true,
            min_eigenvalue,
        },
        support_dim: analysis.support.dim(),
        reports,
    };
    if json {
        println!("{}", to_json(&report)?);
    } else {
        print!("{}", report.render_text());
    }
    Ok(())
}

fn cmd_paper_demo(lambda: f64, t: f64, seed: u64) -> Result<(), CliError> {
    let cfg = SeesawConfig {
        seed,
        ..SeesawConfig::default()
    };
    let demo = run_paper_demo(lambda, t, &cfg)?;
    for step in &demo.steps {
        let tag = if step.passed { "PASS" } else { "FAIL" };
        println!("{tag} {} — {}", step.name, step.detail);
    }
    if demo.all_passed {
        println!(
            "all {} steps passed (lambda = {lambda}, t = {t})",
            demo.steps.len()
        );
        Ok(())
    } else {
        Err(CliError::Internal(
            "one or more walkthrough steps failed".into(),
        ))
    }
}

fn cmd_subspace(
    path: &PathBuf,
    check: CheckArg,
    restarts: usize,
    seed: u64,
    json: bool,
) -> Result<(), CliError> {
    let file: SubspaceFile = read_json(path)?;
    let (subspace, dims) = file.to_subspace(tol::RANK_REL)?;
    let cfg = search_config(restarts, seed);
    let verdict = is_completely_entangled(&subspace, dims, &cfg, tol::GAP)?;
    let (verdict_str, max_overlap, certificate, residual) = match verdict {
        CesVerdict::Entangled { max_overlap } => ("entangled", max_overlap, None, None),
        CesVerdict::HasProductVector {
            certificate,
            overlap,
            residual,
        } => (
            "product-found",
            overlap,
            Some(certificate.to_data()),
            Some(residual),
        ),
        CesVerdict::Inconclusive { max_overlap } => ("inconclusive", max_overlap, None, None),
    };
    let report = SubspaceReport {
        dim_a: dims.0,
        dim_b: dims.1,
        subspace_dim: subspace.dim(),
        check: match check {
            CheckArg::Ces => "ces".to_string(),
            CheckArg::Product => "product".to_string(),
        },
        verdict: verdict_str.to_string(),
        max_overlap,
        certificate,
        residual,
    };
    if json {
        println!("{}", to_json(&report)?);
    } else {
        print!("{}", report.render_text());
        if check == CheckArg::Product && report.certificate.is_none() {
            println!("no certified product vector found");
        }
    }
    Ok(())
}

fn cmd_random_ces(
    m: usize,
    n: usize,
    k: usize,
    trials: usize,
    seed: u64,
    csv: Option<&PathBuf>,
) -> Result<(), CliError> {
    if m * n > 20 {
        return Err(CliError::Precondition(format!(
            "m*n = {} exceeds the supported bound 20",
            m * n
        )));
    }
    let spec = ExperimentSpec {
        m,
        n,
        k,
        trials,
        seed,
        cfg: SeesawConfig::default(),
    };
    let result = run_experiment(&spec)?;
    if let Some(path) = csv {
        std::fs::write(path, result.to_csv())
            .map_err(|e| CliError::Internal(format!("cannot write {}: {e}", path.display())))?;
    }
    println!("{}", result.summary());
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Analyze {
            path,
            pt_side,
            restarts,
            seed,
            tol,
            json,
        } => cmd_analyze(path, *pt_side, *restarts, *seed, *tol, *json),
        Command::PaperDemo { lambda, t, seed } => cmd_paper_demo(*lambda, *t, *seed),
        Command::Subspace {
            path,
            check,
            restarts,
            seed,
            json,
        } => cmd_subspace(path, *check, *restarts, *seed, *json),
        Command::RandomCes {
            m,
            n,
            k,
            trials,
            seed,
            csv,
        } => cmd_random_ces(*m, *n, *k, *trials, *seed, csv.as_ref()),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {}", err.message());
        std::process::exit(err.exit_code());
    }
}
