//! Randomised verification of every bound over seeded instances.
//!
//! Trial `i` draws everything from `derive_seed(master, i)`, so a trial can
//! be replayed alone and serial and parallel runs agree exactly.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{check_instance, BoundReport, Violation};
use crate::entropy::{ConjugatePair, RenyiOrder};
use crate::error::Result;
use crate::sampling::{derive_seed, random_density_matrix, random_povm, SampleConfig};

/// Alphas whose conjugate pairs are checked against the coupled bound.
pub const PAIR_ALPHAS: [f64; 6] = [0.6, 0.75, 1.0, 1.5, 2.0, 4.0];
/// Orders checked against the single-measurement and uncoupled bounds.
pub const SINGLE_ORDERS: [f64; 6] = [0.3, 0.5, 1.0, 2.0, 3.0, 10.0];
/// Rank-one instances must satisfy `|max norm - f| <= SATURATION_TOL`.
pub const SATURATION_TOL: f64 = 1e-9;
/// Margin for counting one bound as strictly above the other.
const STRICT_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct FuzzConfig {
    pub seed: u64,
    pub trials: usize,
    pub dims: RangeInclusive<usize>,
    pub outcomes: RangeInclusive<usize>,
    /// Force every POVM to have rank-one elements. Otherwise each trial
    /// flips a coin.
    pub rank_one: bool,
    pub jobs: usize,
}

impl FuzzConfig {
    pub fn new(seed: u64, trials: usize, dims: RangeInclusive<usize>) -> Self {
        Self {
            seed,
            trials,
            dims,
            outcomes: 2..=5,
            rank_one: false,
            jobs: 1,
        }
    }

    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.trials == 0 {
            return Err("trials must be at least 1".into());
        }
        if self.dims.is_empty() || *self.dims.start() == 0 {
            return Err(format!("invalid dims range {:?}", self.dims));
        }
        if self.outcomes.is_empty() || *self.outcomes.start() == 0 {
            return Err(format!("invalid outcomes range {:?}", self.outcomes));
        }
        if self.jobs == 0 {
            return Err("jobs must be at least 1".into());
        }
        Ok(())
    }
}

/// How one trial was drawn.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrialSpec {
    pub index: usize,
    pub seed: u64,
    pub dim: usize,
    pub outcomes_m: usize,
    pub outcomes_n: usize,
    pub state_rank: usize,
    pub rank_one: bool,
}

impl TrialSpec {
    pub fn draw(config: &FuzzConfig, index: usize) -> Self {
        let seed = derive_seed(config.seed, index as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dim = rng.random_range(config.dims.clone());
        let rank_one = config.rank_one || rng.random_bool(0.5);
        let mut outcomes_m = rng.random_range(config.outcomes.clone());
        let mut outcomes_n = rng.random_range(config.outcomes.clone());
        if rank_one {
            outcomes_m = outcomes_m.max(dim);
            outcomes_n = outcomes_n.max(dim);
        }
        let state_rank = rng.random_range(1..=dim);
        Self {
            index,
            seed,
            dim,
            outcomes_m,
            outcomes_n,
            state_rank,
            rank_one,
        }
    }

    fn sample_config(&self, salt: u64, outcomes: usize) -> SampleConfig {
        SampleConfig::new(derive_seed(self.seed, salt), self.dim, outcomes)
            .rank_one(self.rank_one)
            .with_state_rank(self.state_rank)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialOutcome {
    pub spec: TrialSpec,
    pub relation1_bound: f64,
    pub uncoupled_bound: f64,
    /// `|max ||M_i^(1/2) N_j^(1/2)|| - f|`, rank-one trials only.
    pub saturation_gap: Option<f64>,
    pub violations: Vec<Violation>,
    #[serde(skip)]
    pub report: BoundReport,
}

impl TrialOutcome {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn pairs() -> Vec<ConjugatePair> {
    PAIR_ALPHAS
        .iter()
        .map(|&a| ConjugatePair::from_alpha(a).expect("alpha above 1/2"))
        .collect()
}

fn orders() -> Vec<RenyiOrder> {
    SINGLE_ORDERS
        .iter()
        .map(|&a| RenyiOrder::new(a).expect("positive order"))
        .collect()
}

/// Draws and checks one trial.
pub fn run_trial(config: &FuzzConfig, index: usize) -> Result<TrialOutcome> {
    let spec = TrialSpec::draw(config, index);
    let m = random_povm(&spec.sample_config(1, spec.outcomes_m))?;
    let n = random_povm(&spec.sample_config(2, spec.outcomes_n))?;
    let rho = random_density_matrix(&spec.sample_config(3, 0))?;
    let report = check_instance(&m, Some(&n), &rho, &pairs(), &orders())?;

    let pair = report.pair.as_ref().expect("two measurements");
    let f = pair.f.expect("pairs supplied");
    let relation1_bound = pair.relation1_bound.expect("pairs supplied");
    let mut violations = report.violations.clone();
    let saturation_gap = spec.rank_one.then(|| (pair.max_root_product_norm - f).abs());
    if let Some(gap) = saturation_gap {
        if gap > SATURATION_TOL {
            violations.push(Violation {
                bound: "rank_one_saturation".into(),
                slack: -gap,
            });
        }
    }
    Ok(TrialOutcome {
        spec,
        relation1_bound,
        uncoupled_bound: pair.uncoupled_bound,
        saturation_gap,
        violations,
        report,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FailedTrial {
    pub index: usize,
    pub seed: u64,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialError {
    pub index: usize,
    pub seed: u64,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FuzzSummary {
    pub master_seed: u64,
    pub trials: usize,
    pub pure_states: usize,
    pub mixed_states: usize,
    pub rank_one_trials: usize,
    /// Trials with at least one violation.
    pub violations: usize,
    pub failed: Vec<FailedTrial>,
    pub errors: Vec<TrialError>,
    /// Smallest slack seen per bound family.
    pub min_slack: BTreeMap<String, f64>,
    pub max_saturation_gap: Option<f64>,
    /// Trials where the coupled bound strictly beats the uncoupled one.
    pub relation1_above_uncoupled: usize,
    /// Trials where the uncoupled bound strictly beats the coupled one.
    pub uncoupled_above_relation1: usize,
}

impl FuzzSummary {
    pub fn is_clean(&self) -> bool {
        self.violations == 0 && self.errors.is_empty()
    }
}

fn record(min: &mut BTreeMap<String, f64>, key: &str, value: f64) {
    let e = min.entry(key.to_string()).or_insert(f64::INFINITY);
    *e = e.min(value);
}

fn fold_slacks(min: &mut BTreeMap<String, f64>, r: &BoundReport) {
    for m in &r.measurements {
        record(min, "relation2", m.relation2_slack);
        record(min, "state_independent_single", m.state_independent_single_slack);
        record(min, "single_dominance", m.dominance_slack);
    }
    if let Some(p) = &r.pair {
        record(min, "uncoupled", p.uncoupled_slack);
        if let Some(s) = p.norm_ordering_slack {
            record(min, "norm_ordering", s);
        }
        if let Some(s) = p.dominance_slack {
            record(min, "pair_dominance", s);
        }
        for e in &p.coupled {
            record(min, "relation1", e.relation1_slack);
            record(min, "uncoupled", e.uncoupled_slack);
            record(min, "state_independent_pair", e.state_independent_pair_slack);
        }
    }
}

/// Runs all trials, in parallel when `jobs > 1`, and reduces the results
/// in trial order.
pub fn run_fuzz(config: &FuzzConfig) -> std::result::Result<FuzzSummary, String> {
    config.validate()?;
    let results: Vec<Result<TrialOutcome>> = if config.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .map_err(|e| e.to_string())?;
        pool.install(|| {
            (0..config.trials)
                .into_par_iter()
                .map(|i| run_trial(config, i))
                .collect()
        })
    } else {
        (0..config.trials).map(|i| run_trial(config, i)).collect()
    };

    let mut summary = FuzzSummary {
        master_seed: config.seed,
        trials: config.trials,
        pure_states: 0,
        mixed_states: 0,
        rank_one_trials: 0,
        violations: 0,
        failed: Vec::new(),
        errors: Vec::new(),
        min_slack: BTreeMap::new(),
        max_saturation_gap: None,
        relation1_above_uncoupled: 0,
        uncoupled_above_relation1: 0,
    };
    for (index, res) in results.into_iter().enumerate() {
        let outcome = match res {
            Ok(o) => o,
            Err(e) => {
                summary.errors.push(TrialError {
                    index,
                    seed: derive_seed(config.seed, index as u64),
                    error: e.to_string(),
                });
                continue;
            }
        };
        if outcome.spec.state_rank == 1 {
            summary.pure_states += 1;
        } else {
            summary.mixed_states += 1;
        }
        if let Some(gap) = outcome.saturation_gap {
            summary.rank_one_trials += 1;
            summary.max_saturation_gap = Some(summary.max_saturation_gap.unwrap_or(0.0).max(gap));
        }
        fold_slacks(&mut summary.min_slack, &outcome.report);
        if outcome.relation1_bound > outcome.uncoupled_bound + STRICT_MARGIN {
            summary.relation1_above_uncoupled += 1;
        }
        if outcome.uncoupled_bound > outcome.relation1_bound + STRICT_MARGIN {
            summary.uncoupled_above_relation1 += 1;
        }
        if !outcome.is_ok() {
            summary.violations += 1;
            summary.failed.push(FailedTrial {
                index,
                seed: outcome.spec.seed,
                violations: outcome.violations,
            });
        }
    }
    Ok(summary)
}
