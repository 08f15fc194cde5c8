use std::fmt::Debug;
use std::ops::Add;

use num_bigint::BigUint;
use num_traits::{Float, Zero};

use super::Exponent;

/// Scalar usable as a vertex weight.
pub trait Weight: Copy + PartialOrd + Debug + Send + Sync + Zero + Add<Output = Self> + 'static {
    /// `distance > w^α`.
    fn separated(distance: u64, w: Self, alpha: &Exponent) -> bool;

    /// `⌊w^α⌋`, saturating at `u64::MAX`: the largest distance at which two
    /// clusters of minimum weight `w` still violate admissibility.
    fn reach(w: Self, alpha: &Exponent) -> u64;

    /// Nonnegative and not NaN.
    fn is_valid(self) -> bool;

    fn to_f64(self) -> f64;
}

impl Weight for u64 {
    fn separated(distance: u64, w: Self, alpha: &Exponent) -> bool {
        if w == 0 {
            return true;
        }
        match alpha.as_ratio() {
            Some((num, den)) => BigUint::from(distance).pow(den) > BigUint::from(w).pow(num),
            None => distance as f64 > (w as f64).powf(alpha.value()),
        }
    }

    fn reach(w: Self, alpha: &Exponent) -> u64 {
        match alpha.as_ratio() {
            Some((num, den)) => integer_root_floor(w, num, den),
            None => float_floor((w as f64).powf(alpha.value())),
        }
    }

    fn is_valid(self) -> bool {
        true
    }

    fn to_f64(self) -> f64 {
        self as f64
    }
}

macro_rules! float_weight {
    ($t:ty) => {
        impl Weight for $t {
            fn separated(distance: u64, w: Self, alpha: &Exponent) -> bool {
                distance as f64 > Float::powf(w as f64, alpha.value())
            }

            fn reach(w: Self, alpha: &Exponent) -> u64 {
                float_floor(Float::powf(w as f64, alpha.value()))
            }

            fn is_valid(self) -> bool {
                self >= 0.0
            }

            fn to_f64(self) -> f64 {
                self as f64
            }
        }
    };
}

float_weight!(f32);
float_weight!(f64);

fn float_floor(x: f64) -> u64 {
    if x >= u64::MAX as f64 {
        u64::MAX
    } else {
        x.floor() as u64
    }
}

/// Largest `r` with `r^den ≤ w^num`, saturating at `u64::MAX`.
fn integer_root_floor(w: u64, num: u32, den: u32) -> u64 {
    if w <= 1 {
        return w;
    }
    let target = BigUint::from(w).pow(num);
    let fits = |r: u64| BigUint::from(r).pow(den) <= target;
    if fits(u64::MAX) {
        return u64::MAX;
    }
    let est = ((w as f64).ln() * num as f64 / den as f64).exp();
    let mut r = float_floor(est).min(u64::MAX - 1);
    while r > 0 && !fits(r) {
        r -= 1;
    }
    while fits(r + 1) {
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_ties_are_strict() {
        let one = Exponent::new(1.0).unwrap();
        assert!(!u64::separated(2, 2, &one));
        assert!(u64::separated(3, 2, &one));
        let five_halves = Exponent::ratio(5, 2).unwrap();
        // 4^{5/2} = 32 exactly
        assert!(!u64::separated(32, 4, &five_halves));
        assert!(u64::separated(33, 4, &five_halves));
        assert_eq!(u64::reach(4, &five_halves), 32);
        // 2^{5/2} = 5.65...
        assert_eq!(u64::reach(2, &five_halves), 5);
        assert_eq!(u64::reach(0, &five_halves), 0);
        assert!(u64::separated(1, 0, &five_halves));
    }

    #[test]
    fn reach_agrees_with_separated() {
        for alpha in [Exponent::new(1.0).unwrap(), Exponent::ratio(5, 2).unwrap(), Exponent::new(1.7).unwrap()] {
            for w in 0u64..60 {
                let r = u64::reach(w, &alpha);
                assert!(!u64::separated(r, w, &alpha) || r == 0);
                assert!(u64::separated(r + 1, w, &alpha));
            }
        }
    }

    #[test]
    fn saturates_for_huge_weights() {
        let a = Exponent::new(3.0).unwrap();
        assert_eq!(u64::reach(u64::MAX / 2, &a), u64::MAX);
        assert_eq!(f64::reach(1e300, &a), u64::MAX);
    }

    #[test]
    fn float_weights() {
        let one = Exponent::new(1.0).unwrap();
        assert!(!f64::separated(2, 2.0, &one));
        assert!(f64::separated(3, 2.5, &one));
        assert_eq!(f32::reach(2.5, &one), 2);
        assert!(!(-1.0f64).is_valid());
        assert!(!f64::NAN.is_valid());
    }
}
