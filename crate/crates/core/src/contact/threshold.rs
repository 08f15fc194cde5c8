use serde::Serialize;

use super::survival::{coupled_survival_at, SurvivalEstimate};
use crate::error::{invalid, Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdOptions {
    pub origin: usize,
    pub t_max: f64,
    /// Survival level in (0, 1) to locate.
    pub target: f64,
    pub trials: u64,
    pub bracket: (f64, f64),
    pub seed: u64,
    /// Stop once the bracket is narrower than this.
    pub resolution: f64,
    /// Stop at the first probe whose interval contains the target.
    pub stop_when_ambiguous: bool,
}

impl ThresholdOptions {
    pub fn new(origin: usize, t_max: f64, target: f64, trials: u64, bracket: (f64, f64), seed: u64) -> Self {
        Self {
            origin,
            t_max,
            target,
            trials,
            bracket,
            seed,
            resolution: 0.01,
            stop_when_ambiguous: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdEstimate {
    pub lambda_hat: f64,
    pub bracket: (f64, f64),
    /// The last probe's interval contained the target.
    pub ambiguous: bool,
    pub probes: Vec<SurvivalEstimate>,
}

/// Bisection for the `λ` at which finite-horizon survival from `origin`
/// crosses `target`. Every probe reuses the same per-trial graphical
/// constructions at `λ_ref = λ_hi`, so the empirical curve is monotone.
pub fn estimate_threshold<G: Graph + Sync + ?Sized>(g: &G, opts: &ThresholdOptions) -> Result<ThresholdEstimate> {
    let (mut lo, mut hi) = opts.bracket;
    if !(opts.target > 0.0 && opts.target < 1.0) {
        return Err(invalid("target", "must lie in (0, 1)"));
    }
    if !(lo >= 0.0 && lo < hi && hi.is_finite()) {
        return Err(Error::InvalidBracket(format!("need 0 <= lo < hi, got ({lo}, {hi})")));
    }
    if !(opts.resolution > 0.0) {
        return Err(invalid("resolution", "must be positive"));
    }
    let lambda_ref = hi;
    let probe = |lambda: f64| -> Result<SurvivalEstimate> {
        Ok(coupled_survival_at(g, &[lambda], lambda_ref, opts.origin, opts.t_max, opts.trials, opts.seed)?.remove(0))
    };
    let at_lo = probe(lo)?;
    let at_hi = probe(hi)?;
    if at_lo.p_hat >= opts.target || at_hi.p_hat <= opts.target {
        return Err(Error::InvalidBracket(format!(
            "survival {} at {lo} and {} at {hi} do not straddle {}",
            at_lo.p_hat, at_hi.p_hat, opts.target
        )));
    }
    let mut probes = vec![at_lo, at_hi];
    let mut ambiguous = false;
    while hi - lo >= opts.resolution {
        let mid = 0.5 * (lo + hi);
        let est = probe(mid)?;
        ambiguous = est.contains(opts.target);
        let above = est.p_hat > opts.target;
        probes.push(est);
        if ambiguous && opts.stop_when_ambiguous {
            return Ok(ThresholdEstimate {
                lambda_hat: mid,
                bracket: (lo, hi),
                ambiguous,
                probes,
            });
        }
        if above {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(ThresholdEstimate {
        lambda_hat: 0.5 * (lo + hi),
        bracket: (lo, hi),
        ambiguous,
        probes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimpleGraph;

    #[test]
    fn edgeless_graph_has_no_valid_bracket() {
        let g = SimpleGraph::empty(5);
        let r = estimate_threshold(&g, &ThresholdOptions::new(0, 10.0, 0.5, 200, (0.0, 5.0), 1));
        assert!(matches!(r, Err(Error::InvalidBracket(_))));
    }

    #[test]
    fn complete_graph_threshold_is_consistent() {
        let g = SimpleGraph::complete(20);
        let mut opts = ThresholdOptions::new(0, 100.0, 0.5, 400, (0.0, 1.0), 2);
        opts.stop_when_ambiguous = false;
        let est = estimate_threshold(&g, &opts).unwrap();
        assert!(est.lambda_hat > 0.0 && est.lambda_hat < 1.0);
        assert!(est.bracket.1 - est.bracket.0 < 0.01);
        let check = coupled_survival_at(&g, &[est.lambda_hat - 0.1, est.lambda_hat + 0.1], 1.0, 0, 100.0, 400, 99).unwrap();
        assert!(check[1].p_hat > check[0].p_hat);
    }
}
