use serde::Serialize;

use crate::error::{Error, Result};

/// Truncated product `Π_{d=2}^{N} (1 - d^{-s})^{d-1}`: the probability that
/// no edge straddles 0 when only distances up to `N` are kept.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CutProduct {
    pub s: f64,
    pub truncation: u64,
    pub value: f64,
    /// The untruncated product lies in `[value - tail_bound, value]`.
    pub tail_bound: f64,
    /// `e^{2/(2-s)}`.
    pub lower_bound: f64,
}

pub fn cut_probability_lower_bound(s: f64) -> f64 {
    (2.0 / (2.0 - s)).exp()
}

pub fn cut_probability_product(s: f64, truncation: u64) -> Result<CutProduct> {
    if !(s > 2.0) || !s.is_finite() {
        return Err(Error::NoCutPoints(s));
    }
    if truncation < 2 {
        return Err(crate::error::invalid("truncation", "must be at least 2"));
    }
    let log: f64 = (2..=truncation)
        .rev()
        .map(|d| {
            let d = d as f64;
            (d - 1.0) * (-d.powf(-s)).ln_1p()
        })
        .sum();
    let value = log.exp();
    // Σ_{d>N} (d-1) d^{-s} ≤ ∫_N^∞ x^{1-s} dx, and -ln(1-x) ≤ 2x on [0, 1/2]
    let n = truncation as f64;
    let omitted = n.powf(2.0 - s) / (s - 2.0);
    Ok(CutProduct {
        s,
        truncation,
        value,
        tail_bound: value * -(-2.0 * omitted).exp_m1(),
        lower_bound: cut_probability_lower_bound(s),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_s_at_most_two() {
        assert!(cut_probability_product(2.0, 10).is_err());
        assert!(cut_probability_product(3.0, 1).is_err());
    }

    #[test]
    fn dominates_lower_bound_and_tends_to_one() {
        for s in [2.2, 2.5, 3.0, 4.0, 6.0, 10.0] {
            let p = cut_probability_product(s, 1000).unwrap();
            assert!(p.value - p.tail_bound >= p.lower_bound, "s = {s}");
        }
        assert!(cut_probability_product(60.0, 100).unwrap().value > 1.0 - 1e-15);
    }

    #[test]
    fn small_truncation_by_hand() {
        // (1 - 1/16) (1 - 1/81)^2
        let p = cut_probability_product(4.0, 3).unwrap();
        assert!((p.value - (15.0 / 16.0) * (80.0f64 / 81.0).powi(2)).abs() < 1e-15);
    }
}
