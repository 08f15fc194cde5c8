use rayon::prelude::*;

use super::product::{cut_probability_lower_bound, cut_probability_product};
use super::report::{proportion, Cell, CellStatus, Report};
use super::series::degree_constant_upper;
use crate::cmp::{projection_report, DegreeWeightSpec, Exponent};
use crate::cut::{BlockSampler, GluedGraph};
use crate::error::{invalid, Error, Result};
use crate::rng::{derive_seed, EdgeCouplingStream};

fn check_trials(trials: u64) -> Result<()> {
    if trials == 0 {
        return Err(invalid("trials", "must be at least 1"));
    }
    Ok(())
}

fn stream(seed: u64, trial: u64) -> EdgeCouplingStream {
    EdgeCouplingStream::new(derive_seed(seed, trial))
}

/// Stopping indices and increments of independently sampled blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockStatistics {
    pub s: f64,
    pub seed: u64,
    /// `(T, [ε_1, …, ε_T])` per block.
    pub samples: Vec<(usize, Vec<u64>)>,
}

pub fn sample_block_statistics(s: f64, trials: u64, seed: u64) -> Result<BlockStatistics> {
    check_trials(trials)?;
    let sampler = BlockSampler::new(s)?;
    let samples = (0..trials)
        .into_par_iter()
        .map(|t| {
            let b = sampler.sample(&stream(seed, t))?;
            Ok((b.stopping_index(), b.epsilons().to_vec()))
        })
        .collect::<Result<_>>()?;
    Ok(BlockStatistics { s, seed, samples })
}

impl BlockStatistics {
    fn trials(&self) -> u64 {
        self.samples.len() as u64
    }

    /// `P(T ≥ i) ≤ (1 - e^{2/(2-s)})^{i-1}` for `i = 1..=i_max`.
    pub fn t_tail_report(&self, i_max: u64) -> Report {
        let r = 1.0 - cut_probability_lower_bound(self.s);
        let cells = (1..=i_max)
            .map(|i| {
                let hits = self.samples.iter().filter(|(t, _)| *t as u64 >= i).count() as u64;
                Cell::upper(Some(i), None, hits, self.trials(), r.powi(i as i32 - 1))
            })
            .collect();
        Report {
            check: "t-tail".into(),
            s: self.s,
            seed: self.seed,
            trials: self.trials(),
            cells,
        }
    }

    /// `P(ε_i > ℓ | T ≥ i) ≤ ℓ^{2-s}/(s-2)` for `i = 1..=i_max`, `ℓ = 1..=ell_max`.
    pub fn epsilon_tail_report(&self, i_max: u64, ell_max: u64) -> Report {
        let mut cells = Vec::new();
        for i in 1..=i_max {
            let given: Vec<u64> = self
                .samples
                .iter()
                .filter(|(t, _)| *t as u64 >= i)
                .map(|(_, eps)| eps[i as usize - 1])
                .collect();
            for ell in 1..=ell_max {
                let hits = given.iter().filter(|&&e| e > ell).count() as u64;
                let bound = (ell as f64).powf(2.0 - self.s) / (self.s - 2.0);
                cells.push(Cell::upper(Some(i), Some(ell), hits, given.len() as u64, bound));
            }
        }
        Report {
            check: "epsilon-tail".into(),
            s: self.s,
            seed: self.seed,
            trials: self.trials(),
            cells,
        }
    }
}

pub fn verify_t_tail(s: f64, trials: u64, seed: u64) -> Result<Report> {
    Ok(sample_block_statistics(s, trials, seed)?.t_tail_report(8))
}

pub fn verify_epsilon_tail(s: f64, trials: u64, seed: u64) -> Result<Report> {
    Ok(sample_block_statistics(s, trials, seed)?.epsilon_tail_report(4, 10))
}

/// Frequency of "0 is a cut-point" in `[-half_width, half_width]` against the
/// product over the same distances and against `e^{2/(2-s)}`.
pub fn verify_cut_point(s: f64, half_width: i64, trials: u64, seed: u64) -> Result<Report> {
    check_trials(trials)?;
    if half_width < 1 {
        return Err(invalid("half_width", "must be at least 1"));
    }
    let product = cut_probability_product(s, 2 * half_width as u64)?;
    let w = half_width;
    let probs: Vec<f64> = (0..=2 * w).map(|d| (d as f64).powf(-s)).collect();
    let hits: u64 = (0..trials)
        .into_par_iter()
        .map(|t| {
            let st = stream(seed, t);
            for d in 2..=2 * w {
                for i in (1 - d).max(-w)..=(-1).min(w - d) {
                    if st.uniform(i, i + d) < probs[d as usize] {
                        return 0;
                    }
                }
            }
            1
        })
        .sum();
    let (p_hat, sigma) = proportion(hits, trials);
    // distances beyond the half-width fit fewer than d - 1 straddling pairs in
    // the window, so the window probability sits slightly above the product
    let excess: f64 = (w + 1..=2 * w)
        .map(|d| ((d - 1) - (2 * w + 1 - d)) as f64 * -(-probs[d as usize]).ln_1p())
        .sum();
    let window_gap = product.value * excess.exp_m1();
    let within = (p_hat - product.value).abs() <= 3.0 * sigma + product.tail_bound + window_gap;
    let above = p_hat >= product.lower_bound - 3.0 * sigma;
    let status = |ok: bool| if ok { CellStatus::Pass } else { CellStatus::Fail };
    let cell = |bound: f64, ok: bool| Cell {
        label: None,
        param_i: None,
        param_ell: None,
        empirical: p_hat,
        bound,
        sigma,
        samples: trials,
        status: status(ok),
    };
    Ok(Report {
        check: "cutpoint".into(),
        s,
        seed,
        trials,
        cells: vec![
            cell(product.value, within).labelled("product"),
            cell(product.lower_bound, above).labelled("lower_bound"),
        ],
    })
}

/// `Σ_{j≥k} C^j / j!`.
fn poisson_like_tail(c: f64, k: u64) -> f64 {
    let mut term = (0..k).fold(1.0, |t, j| t * c / (j + 1) as f64);
    let mut sum = 0.0;
    let mut j = k;
    loop {
        sum += term;
        j += 1;
        term *= c / j as f64;
        if term < sum * 1e-18 && c / (j as f64) < 0.5 {
            return sum;
        }
    }
}

/// Empirical `P(Y ≥ k)` for the degree `Y` of 0 in `[-half_width, half_width]`
/// against `Σ_{j≥k} C^j/j!`. The compared bound is net of `2W^{1-s}/(s-1)`,
/// which dominates the probability that an edge leaves the window.
pub fn degree_tail_check(s: f64, trials: u64, k_max: u64, seed: u64) -> Result<Report> {
    degree_tail_check_in(s, trials, k_max, seed, 1000)
}

pub fn degree_tail_check_in(s: f64, trials: u64, k_max: u64, seed: u64, half_width: i64) -> Result<Report> {
    check_trials(trials)?;
    if !(s > 1.0) {
        return Err(Error::NotLocallyFinite(s));
    }
    if half_width < 1 {
        return Err(invalid("half_width", "must be at least 1"));
    }
    let c = degree_constant_upper(s)?;
    let w = half_width;
    let probs: Vec<f64> = (0..=w).map(|d| (d as f64).powf(-s)).collect();
    let degrees: Vec<u64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let st = stream(seed, t);
            let mut deg = 2u64;
            for d in 2..=w {
                deg += u64::from(st.uniform(-d, 0) < probs[d as usize]);
                deg += u64::from(st.uniform(0, d) < probs[d as usize]);
            }
            deg
        })
        .collect();
    let outside = 2.0 * (w as f64).powf(1.0 - s) / (s - 1.0);
    let cells = (0..=k_max)
        .map(|k| {
            let hits = degrees.iter().filter(|&&y| y >= k).count() as u64;
            let mut cell = Cell::upper(Some(k), None, hits, trials, poisson_like_tail(c, k) - outside);
            // Below the truncated mass the window cannot resolve the bound.
            if cell.bound <= 0.0 {
                cell.status = CellStatus::Inconclusive;
            }
            cell
        })
        .collect();
    Ok(Report {
        check: "degree-tail".into(),
        s,
        seed,
        trials,
        cells,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionOptions {
    pub blocks: usize,
    pub delta: f64,
    pub alpha: Exponent,
}

impl Default for ProjectionOptions {
    fn default() -> Self {
        Self {
            blocks: 20,
            delta: 4.0,
            alpha: Exponent::ratio(5, 2).expect("5/2 is a valid exponent"),
        }
    }
}

/// Fraction of glued graphs on which every glued merge projects onto the
/// block line; passes only at 100%.
pub fn verify_projection(s: f64, trials: u64, seed: u64, opts: ProjectionOptions) -> Result<Report> {
    check_trials(trials)?;
    if opts.blocks == 0 {
        return Err(invalid("blocks", "must be at least 1"));
    }
    let sampler = BlockSampler::new(s)?;
    let spec = DegreeWeightSpec::new(opts.delta);
    let held: u64 = (0..trials)
        .into_par_iter()
        .map(|t| {
            let gg = GluedGraph::sample(&sampler, opts.blocks, derive_seed(seed, t))?;
            Ok(u64::from(projection_report(&gg, spec, opts.alpha)?.holds))
        })
        .collect::<Result<Vec<u64>>>()?
        .into_iter()
        .sum();
    let (empirical, _) = proportion(held, trials);
    Ok(Report {
        check: "projection".into(),
        s,
        seed,
        trials,
        cells: vec![Cell {
            label: None,
            param_i: Some(opts.blocks as u64),
            param_ell: None,
            empirical,
            bound: 1.0,
            sigma: 0.0,
            samples: trials,
            status: if held == trials { CellStatus::Pass } else { CellStatus::Fail },
        }],
    })
}
