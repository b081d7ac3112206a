//! Randomized subspace studies: how often is a Haar-random k-dimensional
//! subspace of `C^m ⊗ C^n` completely entangled, and what about its
//! orthogonal complement?
//!
//! The dimension background: completely entangled subspaces exist up to
//! dimension `(m-1)(n-1)`, so `k` above that bound *forces* a product
//! vector, while in the window
//! `mn - (m-1)(n-1) ≤ k ≤ (m-1)(n-1)` a generic subspace and its
//! complement can both be completely entangled. The experiments gather
//! seeded evidence for those statements; genericity is never asserted as a
//! hard invariant, and the pass-rate thresholds used by downstream tests
//! are test budgets, not mathematical claims.

use crate::bipartite::Subspace;
use crate::exec::{derive_seed, run_indexed, run_indexed_seq};
use crate::seesaw::{is_completely_entangled, CesVerdict, SeesawConfig};
use crate::{tol, Complex64, Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Parameters of one experiment.
#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    /// A-side local dimension.
    pub m: usize,
    /// B-side local dimension.
    pub n: usize,
    /// Subspace dimension, `0 < k ≤ m·n`.
    pub k: usize,
    /// Number of independent trials (≥ 1).
    pub trials: usize,
    /// Master seed; trial seeds are derived from it.
    pub seed: u64,
    /// Search configuration used for every trial (its `seed` field is
    /// overridden per trial).
    pub cfg: SeesawConfig,
}

impl ExperimentSpec {
    /// Checks the documented constraints.
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 || self.k > self.m * self.n {
            return Err(Error::BadDimension(format!(
                "subspace dimension k = {} must satisfy 0 < k <= {}",
                self.k,
                self.m * self.n
            )));
        }
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        self.cfg.validate()
    }
}

/// Per-trial verdict vocabulary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrialVerdict {
    /// No product vector found (heuristic complete-entanglement verdict).
    Ces,
    /// A certified product vector was found inside the subspace.
    ProductFound,
    /// The search could not decide.
    Inconclusive,
}

impl TrialVerdict {
    /// The stable string used in CSV output.
    pub fn as_str(self) -> &'static str {
        match self {
            TrialVerdict::Ces => "ces",
            TrialVerdict::ProductFound => "product-found",
            TrialVerdict::Inconclusive => "inconclusive",
        }
    }
}

/// One trial: verdicts and best overlaps for the subspace and its
/// complement.
#[derive(Debug, Clone)]
pub struct TrialRecord {
    /// Trial index in `0..trials`.
    pub trial_index: usize,
    /// Verdict for the sampled subspace `E`.
    pub verdict_e: TrialVerdict,
    /// Best product overlap found against `E`'s projector.
    pub max_overlap_e: f64,
    /// Verdict for the complement `E^⊥`.
    pub verdict_e_perp: TrialVerdict,
    /// Best product overlap found against `E^⊥`'s projector.
    pub max_overlap_e_perp: f64,
}

/// Aggregated counts for one side of the trials.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VerdictCounts {
    /// Trials with the heuristic complete-entanglement verdict.
    pub ces: usize,
    /// Trials with a certified product vector.
    pub product_found: usize,
    /// Undecided trials.
    pub inconclusive: usize,
}

impl VerdictCounts {
    fn add(&mut self, v: TrialVerdict) {
        match v {
            TrialVerdict::Ces => self.ces += 1,
            TrialVerdict::ProductFound => self.product_found += 1,
            TrialVerdict::Inconclusive => self.inconclusive += 1,
        }
    }

    /// Total across the three verdicts.
    pub fn total(&self) -> usize {
        self.ces + self.product_found + self.inconclusive
    }
}

/// Full experiment outcome.
#[derive(Debug, Clone)]
pub struct ExperimentResult {
    /// The spec that produced this result.
    pub spec_summary: (usize, usize, usize, usize, u64),
    /// Per-trial records in trial order.
    pub trials: Vec<TrialRecord>,
    /// Aggregate counts for the subspaces.
    pub counts_e: VerdictCounts,
    /// Aggregate counts for the complements.
    pub counts_e_perp: VerdictCounts,
    /// Number of trials where both `E` and `E^⊥` got the CES verdict.
    pub both_ces: usize,
}

impl ExperimentResult {
    /// CSV rendering: a fixed header plus one row per trial.
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("trial_index,verdict_E,max_overlap_E,verdict_Eperp,max_overlap_Eperp\n");
        for t in &self.trials {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                t.trial_index,
                t.verdict_e.as_str(),
                t.max_overlap_e,
                t.verdict_e_perp.as_str(),
                t.max_overlap_e_perp
            ));
        }
        out
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        let (m, n, k, trials, seed) = self.spec_summary;
        format!(
            "{m}x{n} k={k} trials={trials} seed={seed}: E {{ces: {}, product-found: {}, \
             inconclusive: {}}}, Eperp {{ces: {}, product-found: {}, inconclusive: {}}}, \
             both-ces: {}",
            self.counts_e.ces,
            self.counts_e.product_found,
            self.counts_e.inconclusive,
            self.counts_e_perp.ces,
            self.counts_e_perp.product_found,
            self.counts_e_perp.inconclusive,
            self.both_ces
        )
    }
}

/// Haar-random `k`-dimensional subspace of `C^ambient`: the span of `k`
/// seeded complex-Gaussian vectors (unitarily invariant by construction;
/// same seed, same subspace).
///
/// Errors with [`Error::BadDimension`] unless `0 < k ≤ ambient`.
pub fn random_subspace(ambient: usize, k: usize, seed: u64) -> Result<Subspace> {
    if k == 0 || k > ambient {
        return Err(Error::BadDimension(format!(
            "subspace dimension k = {k} must satisfy 0 < k <= {ambient}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let columns: Vec<Vec<Complex64>> = (0..k)
        .map(|_| {
            (0..ambient)
                .map(|_| {
                    let u1: f64 = rng.gen();
                    let u2: f64 = rng.gen();
                    let radius = (-2.0 * (1.0 - u1).ln()).sqrt();
                    Complex64::from_polar(radius, std::f64::consts::TAU * u2)
                })
                .collect()
        })
        .collect();
    Subspace::from_span(ambient, &columns, tol::RANK_REL)
}

fn to_trial_verdict(v: &CesVerdict) -> (TrialVerdict, f64) {
    match v {
        CesVerdict::Entangled { max_overlap } => (TrialVerdict::Ces, *max_overlap),
        CesVerdict::HasProductVector { overlap, .. } => (TrialVerdict::ProductFound, *overlap),
        CesVerdict::Inconclusive { max_overlap } => (TrialVerdict::Inconclusive, *max_overlap),
    }
}

fn experiment_impl(spec: &ExperimentSpec, use_configured_parallelism: bool) -> Result<ExperimentResult> {
    spec.validate()?;
    let ambient = spec.m * spec.n;
    let dims = (spec.m, spec.n);

    let one_trial = |i: usize| -> Result<TrialRecord> {
        // Independent channels for the subspace sample and the search.
        let subspace_seed = derive_seed(spec.seed, 2 * i as u64);
        let search_seed = derive_seed(spec.seed, 2 * i as u64 + 1);
        let e = random_subspace(ambient, spec.k, subspace_seed)?;
        let cfg = SeesawConfig {
            seed: search_seed,
            ..spec.cfg.clone()
        };
        let (verdict_e, max_overlap_e) =
            to_trial_verdict(&is_completely_entangled(&e, dims, &cfg, tol::GAP)?);
        let complement = e.orthogonal_complement()?;
        let (verdict_e_perp, max_overlap_e_perp) =
            to_trial_verdict(&is_completely_entangled(&complement, dims, &cfg, tol::GAP)?);
        Ok(TrialRecord {
            trial_index: i,
            verdict_e,
            max_overlap_e,
            verdict_e_perp,
            max_overlap_e_perp,
        })
    };

    let results = if use_configured_parallelism {
        run_indexed(spec.trials, one_trial)
    } else {
        run_indexed_seq(spec.trials, one_trial)
    };

    let mut trials = Vec::with_capacity(spec.trials);
    let mut counts_e = VerdictCounts::default();
    let mut counts_e_perp = VerdictCounts::default();
    let mut both_ces = 0usize;
    for res in results {
        let record = res?;
        counts_e.add(record.verdict_e);
        counts_e_perp.add(record.verdict_e_perp);
        if record.verdict_e == TrialVerdict::Ces && record.verdict_e_perp == TrialVerdict::Ces {
            both_ces += 1;
        }
        trials.push(record);
    }
    Ok(ExperimentResult {
        spec_summary: (spec.m, spec.n, spec.k, spec.trials, spec.seed),
        trials,
        counts_e,
        counts_e_perp,
        both_ces,
    })
}

/// Runs the experiment: per trial, samples a subspace from a derived seed
/// and tests it and its complement with [`is_completely_entangled`].
///
/// Deterministic given the spec (trials run on the worker pool but merge
/// in trial order).
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentResult> {
    experiment_impl(spec, true)
}

/// Single-threaded variant of [`run_experiment`] with bit-identical
/// results; exposed for benchmarking the two execution paths.
pub fn run_experiment_seq(spec: &ExperimentSpec) -> Result<ExperimentResult> {
    experiment_impl(spec, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::vec_inner;

    fn quick_cfg() -> SeesawConfig {
        SeesawConfig {
            restarts: 24,
            ..SeesawConfig::default()
        }
    }

    #[test]
    fn random_subspace_is_deterministic_and_orthonormal() {
        let a = random_subspace(6, 3, 42).unwrap();
        let b = random_subspace(6, 3, 42).unwrap();
        assert_eq!(a.dim(), 3);
        assert!(a.projector_distance(&b).unwrap() == 0.0);
        let c = random_subspace(6, 3, 43).unwrap();
        assert!(a.projector_distance(&c).unwrap() > 1e-3);
        for i in 0..3 {
            for j in 0..3 {
                let inner = vec_inner(&a.basis()[i], &a.basis()[j]).unwrap();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((inner - Complex64::new(expect, 0.0)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn random_subspace_full_and_invalid() {
        let full = random_subspace(4, 4, 0).unwrap();
        assert_eq!(full.dim(), 4);
        assert!(matches!(
            random_subspace(4, 0, 0),
            Err(Error::BadDimension(_))
        ));
        assert!(matches!(
            random_subspace(4, 5, 0),
            Err(Error::BadDimension(_))
        ));
    }

    #[test]
    fn oversized_subspaces_always_contain_products() {
        // k = 5 > (3-1)(3-1) = 4 forces a product vector in C^3 ⊗ C^3.
        let spec = ExperimentSpec {
            m: 3,
            n: 3,
            k: 5,
            trials: 10,
            seed: 7,
            cfg: quick_cfg(),
        };
        let result = run_experiment(&spec).unwrap();
        assert_eq!(result.counts_e.product_found, 10);
        assert_eq!(result.counts_e.total(), 10);
        // Complements have dimension 4 and are generically entangled.
        assert!(result.counts_e_perp.ces >= 8);
    }

    #[test]
    fn results_are_deterministic_and_match_sequential() {
        let spec = ExperimentSpec {
            m: 2,
            n: 2,
            k: 2,
            trials: 6,
            seed: 3,
            cfg: quick_cfg(),
        };
        let a = run_experiment(&spec).unwrap();
        let b = run_experiment(&spec).unwrap();
        let s = run_experiment_seq(&spec).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
        assert_eq!(a.to_csv(), s.to_csv());
        for (x, y) in a.trials.iter().zip(&s.trials) {
            assert_eq!(x.max_overlap_e.to_bits(), y.max_overlap_e.to_bits());
            assert_eq!(
                x.max_overlap_e_perp.to_bits(),
                y.max_overlap_e_perp.to_bits()
            );
        }
    }

    #[test]
    fn counts_sum_to_trials() {
        let spec = ExperimentSpec {
            m: 2,
            n: 3,
            k: 2,
            trials: 8,
            seed: 11,
            cfg: quick_cfg(),
        };
        let result = run_experiment(&spec).unwrap();
        assert_eq!(result.counts_e.total(), 8);
        assert_eq!(result.counts_e_perp.total(), 8);
        assert_eq!(result.trials.len(), 8);
        // CSV has a header plus one line per trial.
        assert_eq!(result.to_csv().lines().count(), 9);
    }

    #[test]
    fn spec_validation() {
        let mut spec = ExperimentSpec {
            m: 3,
            n: 3,
            k: 10,
            trials: 1,
            seed: 0,
            cfg: quick_cfg(),
        };
        assert!(matches!(spec.validate(), Err(Error::BadDimension(_))));
        spec.k = 4;
        spec.trials = 0;
        assert!(matches!(spec.validate(), Err(Error::InvalidConfig(_))));
    }
}
