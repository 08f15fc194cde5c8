use crate::error::{Error, Result};
use crate::graph::expected_degree;
use crate::logq::LogQuantity;
use crate::Log2;

/// Truncation used for the degree constant `C = 2 Σ_{d≥1} d^{-s}`.
pub const DEGREE_TRUNCATION: u64 = 10_000;

/// Stop summing once the remaining tail is this many binary orders below the sum.
pub(crate) const SERIES_CUTOFF_BITS: f64 = 80.0;

/// Upper bound on `C`: the truncated sum plus its integral tail bound.
pub fn degree_constant_upper(s: f64) -> Result<f64> {
    let t = expected_degree(s, DEGREE_TRUNCATION)?;
    Ok(t.value + t.tail_bound)
}

/// `log2 Σ 2^{t_i}`, shifted by the largest term.
pub fn log2_sum(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    let s: f64 = terms.iter().map(|&t| (t - max).exp2()).sum();
    max + s.log2()
}

/// Positive series whose term ratios `ρ_k` are nonincreasing from some point
/// on: sums terms until `ρ_k < 1` and the ratio-test tail
/// `t_k ρ_k / (1 - ρ_k)` is 80 bits below the running sum, then adds that
/// tail. `log2_term(k)` and `log2_ratio(k)` give `log2 t_k` and
/// `log2 (t_{k+1} / t_k)`.
pub(crate) fn ratio_tail_sum(
    start: u64,
    max_terms: u64,
    mut log2_term: impl FnMut(u64) -> f64,
    mut log2_ratio: impl FnMut(u64) -> f64,
) -> Option<Log2> {
    let mut terms = Vec::new();
    let mut running = f64::NEG_INFINITY;
    for k in start..start.saturating_add(max_terms) {
        let t = log2_term(k);
        terms.push(t);
        running = log2_sum(&[running, t]);
        let r = log2_ratio(k);
        if r < 0.0 {
            let rho = r.exp2();
            let tail = t + r - (-rho).ln_1p() / std::f64::consts::LN_2;
            if tail <= running - SERIES_CUTOFF_BITS {
                terms.push(tail);
                return Some(LogQuantity::from_log2(log2_sum(&terms)));
            }
        }
    }
    None
}

/// Running `log2 k!` table on demand.
pub(crate) struct Log2Factorial {
    table: Vec<f64>,
}

impl Log2Factorial {
    pub fn new() -> Self {
        Self { table: vec![0.0] }
    }

    pub fn get(&mut self, k: u64) -> f64 {
        while self.table.len() as u64 <= k {
            let j = self.table.len() as f64;
            let prev = *self.table.last().unwrap();
            self.table.push(prev + j.log2());
        }
        self.table[k as usize]
    }
}

/// `f(△) = Σ_{k ≥ △-2} C^k (k+2)^{100} / k!` with `C` the certified upper
/// bound on the degree constant; the result is an upper bound.
pub fn f_delta(s: f64, delta: u64) -> Result<Log2> {
    let c = degree_constant_upper(s)?;
    f_delta_with(c, delta)
}

pub(crate) fn f_delta_with(c: f64, delta: u64) -> Result<Log2> {
    let log2_c = c.log2();
    let mut fact = Log2Factorial::new();
    let start = delta.saturating_sub(2);
    ratio_tail_sum(
        start,
        50_000_000,
        |k| k as f64 * log2_c + 100.0 * ((k + 2) as f64).log2() - fact.get(k),
        |k| log2_c + 100.0 * ((k + 3) as f64 / (k + 2) as f64).log2() - ((k + 1) as f64).log2(),
    )
    .ok_or_else(|| Error::InvalidParameter {
        name: "s",
        reason: format!("degree series did not settle for C = {c}"),
    })
}
