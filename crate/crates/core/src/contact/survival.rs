use rayon::prelude::*;
use serde::Serialize;

use super::{simulate, ContactConfig, ContactTrajectory, GraphicalConstruction, RunSpec};
use crate::error::{invalid, Result};
use crate::graph::Graph;
use crate::rng::derive_seed;
use crate::stats::{wilson_interval, Z_95};

/// Finite-horizon survival estimate with a Wilson 95% interval, plus the same
/// estimate at `t_max / 2` as a horizon-sensitivity check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurvivalEstimate {
    pub lambda: f64,
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub trials: u64,
    pub t_max: f64,
    pub seed: u64,
    pub survivors: u64,
    pub p_half: f64,
    /// False when the `t_max / 2` and `t_max` intervals are disjoint.
    pub converged: bool,
}

pub const SURVIVAL_CSV_HEADER: &str = "lambda,p_hat,ci_low,ci_high,trials,t_max,seed";

impl SurvivalEstimate {
    pub fn from_counts(lambda: f64, survivors: u64, survivors_half: u64, trials: u64, t_max: f64, seed: u64) -> Self {
        let (ci_low, ci_high) = wilson_interval(survivors, trials, Z_95);
        let (half_low, half_high) = wilson_interval(survivors_half, trials, Z_95);
        let p_hat = survivors as f64 / trials as f64;
        Self {
            lambda,
            p_hat,
            ci_low: ci_low.min(p_hat),
            ci_high: ci_high.max(p_hat),
            trials,
            t_max,
            seed,
            survivors,
            p_half: survivors_half as f64 / trials as f64,
            converged: half_low <= ci_high && ci_low <= half_high,
        }
    }

    fn from_trajectories<'a>(lambda: f64, runs: impl Iterator<Item = &'a ContactTrajectory>, t_max: f64, seed: u64) -> Self {
        let (mut alive, mut half, mut trials) = (0, 0, 0);
        for r in runs {
            trials += 1;
            alive += r.survived() as u64;
            half += r.alive_at_half as u64;
        }
        Self::from_counts(lambda, alive, half, trials, t_max, seed)
    }

    pub fn contains(&self, p: f64) -> bool {
        self.ci_low <= p && p <= self.ci_high
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.lambda, self.p_hat, self.ci_low, self.ci_high, self.trials, self.t_max, self.seed
        )
    }
}

fn check_trials(trials: u64) -> Result<()> {
    if trials == 0 {
        return Err(invalid("trials", "must be at least 1"));
    }
    Ok(())
}

/// Independent Gillespie runs from `{origin}`; trial `i` is seeded by
/// `derive_seed(seed, i)`.
pub fn survival_probability<G: Graph + Sync + ?Sized>(
    g: &G,
    lambda: f64,
    origin: usize,
    t_max: f64,
    trials: u64,
    seed: u64,
) -> Result<SurvivalEstimate> {
    check_trials(trials)?;
    let runs: Vec<ContactTrajectory> = (0..trials)
        .into_par_iter()
        .map(|i| simulate(g, &ContactConfig::new(lambda, t_max, vec![origin], derive_seed(seed, i))))
        .collect::<Result<_>>()?;
    Ok(SurvivalEstimate::from_trajectories(lambda, runs.iter(), t_max, seed))
}

/// Survival curve over `lambdas` with every trial's runs sharing one
/// graphical construction at `λ_ref = max λ`; the estimates are then
/// monotone in `λ` by construction.
pub fn coupled_survival<G: Graph + Sync + ?Sized>(
    g: &G,
    lambdas: &[f64],
    origin: usize,
    t_max: f64,
    trials: u64,
    seed: u64,
) -> Result<Vec<SurvivalEstimate>> {
    coupled_survival_at(g, lambdas, lambdas.iter().copied().fold(0.0, f64::max), origin, t_max, trials, seed)
}

pub(crate) fn coupled_survival_at<G: Graph + Sync + ?Sized>(
    g: &G,
    lambdas: &[f64],
    lambda_ref: f64,
    origin: usize,
    t_max: f64,
    trials: u64,
    seed: u64,
) -> Result<Vec<SurvivalEstimate>> {
    check_trials(trials)?;
    let specs: Vec<RunSpec> = lambdas
        .iter()
        .map(|&lambda| RunSpec {
            lambda,
            initial: vec![origin],
        })
        .collect();
    let runs: Vec<Vec<ContactTrajectory>> = (0..trials)
        .into_par_iter()
        .map(|i| GraphicalConstruction::new(g, derive_seed(seed, i), lambda_ref, t_max)?.run(&specs))
        .collect::<Result<_>>()?;
    Ok(lambdas
        .iter()
        .enumerate()
        .map(|(k, &lambda)| SurvivalEstimate::from_trajectories(lambda, runs.iter().map(|r| &r[k]), t_max, seed))
        .collect())
}
