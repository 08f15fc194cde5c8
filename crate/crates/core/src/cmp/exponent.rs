use serde::Serialize;

use crate::error::{Error, Result};

const MAX_DENOMINATOR: u32 = 64;

/// Expansion exponent `α ≥ 1`.
///
/// When `α` is a ratio `num/den` with a small denominator the ratio is kept,
/// and integer weights are compared against distances as `d^den` vs `w^num`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Exponent {
    value: f64,
    ratio: Option<(u32, u32)>,
}

impl Exponent {
    pub fn new(value: f64) -> Result<Self> {
        if !(value >= 1.0) || !value.is_finite() {
            return Err(Error::InvalidAlpha(value));
        }
        let ratio = (1..=MAX_DENOMINATOR).find_map(|den| {
            let num = value * den as f64;
            (num.fract() == 0.0 && num <= u32::MAX as f64).then_some((num as u32, den))
        });
        Ok(Self { value, ratio })
    }

    pub fn ratio(num: u32, den: u32) -> Result<Self> {
        if den == 0 || num < den {
            return Err(Error::InvalidAlpha(num as f64 / den.max(1) as f64));
        }
        let g = gcd(num, den);
        Ok(Self {
            value: num as f64 / den as f64,
            ratio: Some((num / g, den / g)),
        })
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    /// `(num, den)` in lowest terms, when `α` is a small-denominator rational.
    pub fn as_ratio(&self) -> Option<(u32, u32)> {
        self.ratio
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
