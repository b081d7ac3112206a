//! Multistart alternating-eigenvector search over product vectors.
//!
//! For a Hermitian bipartite operator `H` the quadratic form
//! `f(x, y) = ⟨x⊗y| H |x⊗y⟩` restricted to unit product vectors is
//! extremized by alternation: freezing `y` turns `f` into the quadratic
//! form of the contracted `n × n` matrix `H_y`, whose extremal eigenvector
//! is the optimal `x`, and symmetrically for `x`. Each half-step is
//! exactly optimal for its block, so the objective is monotone along the
//! iteration and converges to a local extremum. Global coverage comes from
//! many independent restarts, each with its own RNG stream derived from the
//! configured seed, merged in restart order — which makes every outcome a
//! deterministic, execution-order-independent function of `(H, config)`.
//!
//! Verdicts produced here are heuristic on the "no product vector found" /
//! "presumed non-negative" side (a finite search can miss), while every
//! *found* vector is re-evaluated from scratch and reported with its
//! residual, making it certificate-grade.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bipartite::{product_overlap, BipartiteOperator, ProductVector, Subspace};
use crate::exec;
use crate::matrix::{hermitian_eigen, vec_inner, vec_normalized, ComplexMatrix};
use crate::{tol, Complex64, Error, Result};

/// Iteration cap for certificate polishing and oracle refinement.
const POLISH_ITERS: usize = 50;

/// Convergence threshold used when polishing a candidate certificate.
const POLISH_CONV_TOL: f64 = 1e-16;

/// Configuration of the multistart search.
#[derive(Debug, Clone, PartialEq)]
pub struct SeesawConfig {
    /// Number of independent restarts (≥ 1).
    pub restarts: usize,
    /// Maximum alternating iterations per restart (≥ 1).
    pub max_iters: usize,
    /// Stop a restart when the objective changes by at most this much
    /// across one full iteration (must be positive).
    pub conv_tol: f64,
    /// Master seed; restart `r` uses RNG stream `r` of this seed.
    pub seed: u64,
    /// Two product vectors with embedded overlap above `1 - dedup_tol` are
    /// treated as the same vector (must be positive).
    pub dedup_tol: f64,
}

impl Default for SeesawConfig {
    fn default() -> Self {
        Self {
            restarts: 64,
            max_iters: 500,
            conv_tol: 1e-12,
            seed: 0,
            dedup_tol: tol::DEDUP,
        }
    }
}

impl SeesawConfig {
    /// Same defaults, different seed.
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    /// Checks the documented field constraints, erroring with
    /// [`Error::InvalidConfig`].
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::InvalidConfig("restarts must be at least 1".into()));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidConfig("max_iters must be at least 1".into()));
        }
        if !(self.conv_tol > 0.0 && self.conv_tol.is_finite()) {
            return Err(Error::InvalidConfig(
                "conv_tol must be positive and finite".into(),
            ));
        }
        if !(self.dedup_tol > 0.0 && self.dedup_tol.is_finite()) {
            return Err(Error::InvalidConfig(
                "dedup_tol must be positive and finite".into(),
            ));
        }
        Ok(())
    }
}

/// Whether the search maximizes or minimizes the product overlap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremizeMode {
    /// Seek the largest `⟨x⊗y| H |x⊗y⟩`.
    Maximize,
    /// Seek the smallest `⟨x⊗y| H |x⊗y⟩`.
    Minimize,
}

/// Result of a multistart search.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    /// Best objective value over all restarts, re-evaluated from the final
    /// vector (never a stale iterate value).
    pub best_value: f64,
    /// The vector achieving `best_value`.
    pub best_vector: ProductVector,
    /// `(value, vector)` for every restart, in restart order.
    pub all_local_optima: Vec<(f64, ProductVector)>,
    /// Iterations spent by each restart, in restart order.
    pub iterations_used: Vec<usize>,
}

/// Verdict of a complete-entanglement test on a subspace.
#[derive(Debug, Clone)]
pub enum CesVerdict {
    /// No product vector found; the best overlap stayed below `1 - gap`.
    /// Heuristic: a finite search can miss.
    Entangled {
        /// Largest product overlap with the subspace projector found.
        max_overlap: f64,
    },
    /// A product vector inside the subspace was found and certified.
    HasProductVector {
        /// The certified vector.
        certificate: ProductVector,
        /// Its re-evaluated projector overlap.
        overlap: f64,
        /// Its distance `‖(I - P) v‖` from the subspace.
        residual: f64,
    },
    /// The best overlap landed in the gap between the two thresholds, or a
    /// near-hit failed certification.
    Inconclusive {
        /// Largest product overlap found.
        max_overlap: f64,
    },
}

/// Verdict of a block-positivity check.
#[derive(Debug, Clone)]
pub enum BlockPositivity {
    /// A product vector with a certifiably negative overlap was found.
    Violated {
        /// The certifying vector.
        certificate: ProductVector,
        /// Its re-evaluated overlap (below the violation threshold).
        value: f64,
    },
    /// No violation found. Heuristic: reports the smallest overlap seen.
    PresumedNonneg {
        /// Smallest product overlap encountered.
        min_found: f64,
    },
}

/// `(H_y)[i, k] = Σ_{j,l} conj(y[j]) H[(i,j),(k,l)] y[l]` — the `n × n`
/// matrix whose quadratic form in `x` equals `⟨x⊗y| H |x⊗y⟩`.
fn contract_b(h: &BipartiteOperator, y: &[Complex64]) -> ComplexMatrix {
    let (n, m) = (h.dim_a(), h.dim_b());
    ComplexMatrix::from_fn(n, n, |i, k| {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..m {
            let yj = y[j].conj();
            for l in 0..m {
                acc += yj * h.get(i, j, k, l) * y[l];
            }
        }
        acc
    })
}

/// `(H_x)[j, l] = Σ_{i,k} conj(x[i]) H[(i,j),(k,l)] x[k]` — the `m × m`
/// twin of [`contract_b`].
fn contract_a(h: &BipartiteOperator, x: &[Complex64]) -> ComplexMatrix {
    let (n, m) = (h.dim_a(), h.dim_b());
    ComplexMatrix::from_fn(m, m, |j, l| {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..n {
            let xi = x[i].conj();
            for k in 0..n {
                acc += xi * h.get(i, j, k, l) * x[k];
            }
        }
        acc
    })
}

/// Unit vector with isotropic complex Gaussian direction (Box–Muller from
/// the given RNG).
fn random_unit_vector(rng: &mut ChaCha8Rng, dim: usize) -> Result<Vec<Complex64>> {
    let v: Vec<Complex64> = (0..dim)
        .map(|_| {
            let u1: f64 = rng.gen();
            let u2: f64 = rng.gen();
            // 1 - u1 ∈ (0, 1] keeps the logarithm finite.
            let radius = (-2.0 * (1.0 - u1).ln()).sqrt();
            Complex64::from_polar(radius, std::f64::consts::TAU * u2)
        })
        .collect();
    vec_normalized(&v)
}

struct AlternateResult {
    x: Vec<Complex64>,
    y: Vec<Complex64>,
    iterations: usize,
}

/// Runs the alternating eigenvector iteration from a given starting pair.
///
/// `slack` is the monotonicity allowance used by the debug assertion; each
/// half-step is exactly optimal for its block, so the objective can only
/// drift by rounding.
fn alternate(
    h: &BipartiteOperator,
    mut x: Vec<Complex64>,
    mut y: Vec<Complex64>,
    mode: ExtremizeMode,
    max_iters: usize,
    conv_tol: f64,
    slack: f64,
) -> Result<AlternateResult> {
    let pick = |len: usize| match mode {
        ExtremizeMode::Maximize => len - 1,
        ExtremizeMode::Minimize => 0,
    };
    let mut value = match mode {
        ExtremizeMode::Maximize => f64::NEG_INFINITY,
        ExtremizeMode::Minimize => f64::INFINITY,
    };
    let mut iterations = 0;
    for _ in 0..max_iters {
        iterations += 1;
        let eig_x = hermitian_eigen(&contract_b(h, &y).symmetrized())?;
        x = eig_x.eigenvector(pick(x.len()));
        let eig_y = hermitian_eigen(&contract_a(h, &x).symmetrized())?;
        let ky = pick(y.len());
        y = eig_y.eigenvector(ky);
        let new_value = eig_y.eigenvalues[ky];
        if value.is_finite() {
            match mode {
                ExtremizeMode::Maximize => debug_assert!(
                    new_value >= value - slack,
                    "objective decreased: {value} -> {new_value}"
                ),
                ExtremizeMode::Minimize => debug_assert!(
                    new_value <= value + slack,
                    "objective increased: {value} -> {new_value}"
                ),
            }
            if (new_value - value).abs() <= conv_tol {
                break;
            }
        }
        value = new_value;
    }
    Ok(AlternateResult { x, y, iterations })
}

fn extremize_impl(
    h: &BipartiteOperator,
    mode: ExtremizeMode,
    cfg: &SeesawConfig,
    use_configured_parallelism: bool,
) -> Result<SearchOutcome> {
    cfg.validate()?;
    h.matrix().require_finite()?;
    h.matrix().require_hermitian(tol::HERMITICITY)?;
    let (n, m) = (h.dim_a(), h.dim_b());
    let slack = 1e-9 * (1.0 + h.matrix().frobenius_norm());

    let run_restart = |r: usize| -> Result<(f64, ProductVector, usize)> {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(r as u64);
        let x = random_unit_vector(&mut rng, n)?;
        let y = random_unit_vector(&mut rng, m)?;
        let out = alternate(h, x, y, mode, cfg.max_iters, cfg.conv_tol, slack)?;
        let pv = ProductVector::new(&out.x, &out.y)?;
        // Re-evaluate from the final vector so the reported value is never
        // a stale iterate.
        let refreshed = product_overlap(&pv, h)?;
        Ok((refreshed, pv, out.iterations))
    };

    let results = if use_configured_parallelism {
        exec::run_indexed(cfg.restarts, run_restart)
    } else {
        exec::run_indexed_seq(cfg.restarts, run_restart)
    };

    let mut all_local_optima = Vec::with_capacity(cfg.restarts);
    let mut iterations_used = Vec::with_capacity(cfg.restarts);
    let mut best: Option<(f64, ProductVector)> = None;
    for res in results {
        let (value, pv, iters) = res?;
        let improves = match (&best, mode) {
            (None, _) => true,
            (Some((b, _)), ExtremizeMode::Maximize) => value > *b,
            (Some((b, _)), ExtremizeMode::Minimize) => value < *b,
        };
        if improves {
            best = Some((value, pv.clone()));
        }
        all_local_optima.push((value, pv));
        iterations_used.push(iters);
    }
    let (best_value, best_vector) = best.expect("restarts >= 1 guarantees a result");
    Ok(SearchOutcome {
        best_value,
        best_vector,
        all_local_optima,
        iterations_used,
    })
}

/// Multistart search for the extremal product overlap of a Hermitian
/// bipartite operator.
///
/// Uses the configured parallelism (worker pool when the `parallel` feature
/// is on, subject to the `WITNESSLAB_THREADS` cap); results are identical
/// to [`seesaw_extremize_seq`] bit for bit.
///
/// Errors with [`Error::NotHermitian`] / [`Error::NonFiniteEntry`] on
/// invalid operators and [`Error::InvalidConfig`] on invalid configuration.
pub fn seesaw_extremize(
    h: &BipartiteOperator,
    mode: ExtremizeMode,
    cfg: &SeesawConfig,
) -> Result<SearchOutcome> {
    extremize_impl(h, mode, cfg, true)
}

/// Single-threaded variant of [`seesaw_extremize`] producing bit-identical
/// results; useful for benchmarking the parallel speedup and for callers
/// that must not touch the worker pool.
pub fn seesaw_extremize_seq(
    h: &BipartiteOperator,
    mode: ExtremizeMode,
    cfg: &SeesawConfig,
) -> Result<SearchOutcome> {
    extremize_impl(h, mode, cfg, false)
}

/// Extra alternating iterations from an already-good vector, driving it to
/// a local extremum at working precision. Returns the re-evaluated overlap
/// and the polished vector.
fn polish(
    h: &BipartiteOperator,
    pv: &ProductVector,
    mode: ExtremizeMode,
) -> Result<(f64, ProductVector)> {
    let slack = 1e-9 * (1.0 + h.matrix().frobenius_norm());
    let out = alternate(
        h,
        pv.x().to_vec(),
        pv.y().to_vec(),
        mode,
        POLISH_ITERS,
        POLISH_CONV_TOL,
        slack,
    )?;
    let polished = ProductVector::new(&out.x, &out.y)?;
    let refreshed = product_overlap(&polished, h)?;
    Ok((refreshed, polished))
}

/// Decides whether a subspace of `C^n ⊗ C^m` contains any product vector.
///
/// Maximizes the projector overlap over product vectors. A best overlap
/// below `1 - gap` yields the (heuristic) `Entangled` verdict; above that,
/// every qualifying restart is polished and certified against the
/// membership residual bound [`tol::CERT_RESIDUAL`], and the first success
/// is returned as `HasProductVector`. When no attempt certifies, the
/// verdict is `Inconclusive` — which also covers the known hard case of a
/// product direction meeting the subspace tangentially, where local
/// iterations stall at small but uncertifiable residuals.
///
/// `gap` must exceed [`tol::PRODUCT_HIT`] so a certified hit can never sit
/// inside the `Entangled` band. Errors with [`Error::DimensionMismatch`]
/// if the subspace does not live in `C^(n·m)`.
pub fn is_completely_entangled(
    e: &Subspace,
    dims: (usize, usize),
    cfg: &SeesawConfig,
    gap: f64,
) -> Result<CesVerdict> {
    let (n, m) = dims;
    if e.ambient_dim() != n * m {
        return Err(Error::DimensionMismatch {
            expected: n * m,
            got: e.ambient_dim(),
        });
    }
    if !(gap > tol::PRODUCT_HIT && gap.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "gap must be finite and exceed {:e}",
            tol::PRODUCT_HIT
        )));
    }
    let p_op = BipartiteOperator::new(n, m, e.projector().clone())?;
    let outcome = seesaw_extremize(&p_op, ExtremizeMode::Maximize, cfg)?;
    if outcome.best_value < 1.0 - gap {
        return Ok(CesVerdict::Entangled {
            max_overlap: outcome.best_value,
        });
    }
    // Above the gap, attempt certification from every qualifying restart,
    // best first — one may have landed on an exact product even when the
    // best-valued iterate stalled short of the residual bound. The
    // residual is the sole acceptance criterion, so failed attempts
    // degrade gracefully to Inconclusive.
    let mut order: Vec<usize> = (0..outcome.all_local_optima.len())
        .filter(|&i| outcome.all_local_optima[i].0 >= 1.0 - gap)
        .collect();
    order.sort_by(|&a, &b| {
        outcome.all_local_optima[b]
            .0
            .total_cmp(&outcome.all_local_optima[a].0)
    });
    let mut max_overlap = outcome.best_value;
    for i in order {
        let (overlap, certificate) =
            polish(&p_op, &outcome.all_local_optima[i].1, ExtremizeMode::Maximize)?;
        max_overlap = max_overlap.max(overlap);
        let residual = e.residual(&certificate.embed())?;
        if residual <= tol::CERT_RESIDUAL {
            return Ok(CesVerdict::HasProductVector {
                certificate,
                overlap,
                residual,
            });
        }
    }
    Ok(CesVerdict::Inconclusive { max_overlap })
}

/// Collects the distinct certified product vectors found inside a subspace.
///
/// Every local optimum with overlap above `1 - `[`tol::GAP`] is polished;
/// vectors passing the [`tol::CERT_RESIDUAL`] membership bound are kept
/// and deduplicated by embedded overlap (`cfg.dedup_tol`), in restart
/// order — so the list is deterministic for fixed `(E, cfg)`.
///
/// The list is *not* claimed exhaustive: it contains whatever the restarts
/// reached, which for a generic subspace with finitely many product
/// directions saturates quickly.
pub fn enumerate_product_vectors(
    e: &Subspace,
    dims: (usize, usize),
    cfg: &SeesawConfig,
) -> Result<Vec<ProductVector>> {
    let (n, m) = dims;
    if e.ambient_dim() != n * m {
        return Err(Error::DimensionMismatch {
            expected: n * m,
            got: e.ambient_dim(),
        });
    }
    let p_op = BipartiteOperator::new(n, m, e.projector().clone())?;
    let outcome = seesaw_extremize(&p_op, ExtremizeMode::Maximize, cfg)?;
    let mut found: Vec<ProductVector> = Vec::new();
    for (value, pv) in &outcome.all_local_optima {
        if *value <= 1.0 - tol::GAP {
            continue;
        }
        let (_, polished) = polish(&p_op, pv, ExtremizeMode::Maximize)?;
        if e.residual(&polished.embed())? > tol::CERT_RESIDUAL {
            continue;
        }
        let embedded = polished.embed();
        let mut duplicate = false;
        for kept in &found {
            let overlap = vec_inner(&kept.embed(), &embedded)?.norm();
            if overlap >= 1.0 - cfg.dedup_tol {
                duplicate = true;
                break;
            }
        }
        if !duplicate {
            found.push(polished);
        }
    }
    Ok(found)
}

/// Checks block positivity (non-negativity on all product vectors) of a
/// Hermitian bipartite operator.
///
/// Minimizes the product overlap; a polished value below
/// `-`[`tol::BLOCK_VIOLATION`] is returned as a violation certificate,
/// otherwise the smallest value seen is reported as heuristic evidence of
/// non-negativity.
pub fn block_positivity(h: &BipartiteOperator, cfg: &SeesawConfig) -> Result<BlockPositivity> {
    let outcome = seesaw_extremize(h, ExtremizeMode::Minimize, cfg)?;
    let (value, certificate) = polish(h, &outcome.best_vector, ExtremizeMode::Minimize)?;
    if value < -tol::BLOCK_VIOLATION {
        return Ok(BlockPositivity::Violated { certificate, value });
    }
    Ok(BlockPositivity::PresumedNonneg {
        min_found: value.min(outcome.best_value),
    })
}

/// Brute-force sampling oracle for the extremal product overlap: draws
/// `num_samples` seeded product vectors (sample `i` uses RNG stream `i`),
/// refines each with at most [`POLISH_ITERS`] alternating iterations, and
/// returns the extremal re-evaluated overlap.
///
/// Exists to cross-validate [`seesaw_extremize`] through an independent
/// (much more expensive) route.
pub fn sample_oracle(
    h: &BipartiteOperator,
    mode: ExtremizeMode,
    num_samples: usize,
    seed: u64,
) -> Result<f64> {
    if num_samples == 0 {
        return Err(Error::InvalidConfig(
            "num_samples must be at least 1".into(),
        ));
    }
    h.matrix().require_finite()?;
    h.matrix().require_hermitian(tol::HERMITICITY)?;
    let (n, m) = (h.dim_a(), h.dim_b());
    let slack = 1e-9 * (1.0 + h.matrix().frobenius_norm());

    let one_sample = |i: usize| -> Result<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let x = random_unit_vector(&mut rng, n)?;
        let y = random_unit_vector(&mut rng, m)?;
        let out = alternate(h, x, y, mode, POLISH_ITERS, 1e-12, slack)?;
        let pv = ProductVector::new(&out.x, &out.y)?;
        product_overlap(&pv, h)
    };

    let results = exec::run_indexed(num_samples, one_sample);
    let mut extremum = match mode {
        ExtremizeMode::Maximize => f64::NEG_INFINITY,
        ExtremizeMode::Minimize => f64::INFINITY,
    };
    for res in results {
        let value = res?;
        extremum = match mode {
            ExtremizeMode::Maximize => extremum.max(value),
            ExtremizeMode::Minimize => extremum.min(value),
        };
    }
    Ok(extremum)
}
