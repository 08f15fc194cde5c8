//! Nonnegative reals stored as base-2 logarithms.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Div, Mul};

use num_traits::Float;
use serde::{Serialize, Serializer};

/// A nonnegative quantity `2^log2`, or exact zero.
#[derive(Clone, Copy, PartialEq)]
pub struct LogQuantity<F: Float> {
    log2: F,
    zero: bool,
}

fn ln2<F: Float>() -> F {
    F::from(std::f64::consts::LN_2).unwrap()
}

impl<F: Float> LogQuantity<F> {
    pub fn zero() -> Self {
        Self { log2: F::neg_infinity(), zero: true }
    }

    pub fn one() -> Self {
        Self::from_log2(F::zero())
    }

    pub fn from_log2(log2: F) -> Self {
        assert!(!log2.is_nan(), "log2 value is NaN");
        if log2 == F::neg_infinity() {
            return Self::zero();
        }
        Self { log2, zero: false }
    }

    pub fn from_ln(ln: F) -> Self {
        Self::from_log2(ln / ln2())
    }

    /// Panics on negative or NaN input.
    pub fn from_value(x: F) -> Self {
        assert!(x >= F::zero(), "negative value {:?}", x.to_f64());
        if x == F::zero() {
            Self::zero()
        } else {
            Self::from_log2(x.log2())
        }
    }

    /// `2^k` for an integer exponent, exact in the log domain.
    pub fn pow2(k: F) -> Self {
        Self::from_log2(k)
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    /// `-inf` for zero.
    pub fn log2(&self) -> F {
        self.log2
    }

    pub fn ln(&self) -> F {
        self.log2 * ln2()
    }

    /// Linear value; underflows to 0 or overflows to infinity outside the
    /// range of `F`.
    pub fn value(&self) -> F {
        if self.zero {
            F::zero()
        } else {
            self.log2.exp2()
        }
    }

    pub fn powf(&self, e: F) -> Self {
        if self.zero {
            return if e == F::zero() { Self::one() } else { Self::zero() };
        }
        Self::from_log2(self.log2 * e)
    }

    pub fn powi(&self, e: i32) -> Self {
        self.powf(F::from(e).unwrap())
    }

    /// Log-sum: `log2(2^a + 2^b) = max + log2(1 + 2^{-|a-b|})`.
    pub fn add(&self, other: &Self) -> Self {
        if self.zero {
            return *other;
        }
        if other.zero {
            return *self;
        }
        let (hi, lo) = if self.log2 >= other.log2 { (self.log2, other.log2) } else { (other.log2, self.log2) };
        let gap = lo - hi;
        Self::from_log2(hi + gap.exp2().ln_1p() / ln2())
    }

    /// `self - other`, or `None` when the result would be negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        if other.zero {
            return Some(*self);
        }
        if self.zero || other.log2 > self.log2 {
            return None;
        }
        if other.log2 == self.log2 {
            return Some(Self::zero());
        }
        let gap = other.log2 - self.log2;
        // log2(1 - 2^gap) via ln(-expm1(gap ln 2))
        Some(Self::from_log2(self.log2 + (-(gap * ln2()).exp_m1()).ln() / ln2()))
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }
}

impl<F: Float> Mul for LogQuantity<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.zero || rhs.zero {
            return Self::zero();
        }
        Self::from_log2(self.log2 + rhs.log2)
    }
}

impl<F: Float> Div for LogQuantity<F> {
    type Output = Self;
    /// Panics on division by zero.
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.zero, "division by zero");
        if self.zero {
            return Self::zero();
        }
        Self::from_log2(self.log2 - rhs.log2)
    }
}

impl<F: Float> std::ops::Add for LogQuantity<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        LogQuantity::add(&self, &rhs)
    }
}

impl<F: Float> PartialOrd for LogQuantity<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self.zero, other.zero) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => self.log2.partial_cmp(&other.log2),
        }
    }
}

impl<F: Float> std::iter::Sum for LogQuantity<F> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

impl<F: Float> fmt::Debug for LogQuantity<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero {
            write!(f, "0")
        } else {
            write!(f, "2^{}", self.log2.to_f64().unwrap_or(f64::NAN))
        }
    }
}

impl<F: Float> fmt::Display for LogQuantity<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Serialized as its base-2 logarithm (`null` for zero).
impl<F: Float> Serialize for LogQuantity<F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.zero {
            s.serialize_none()
        } else {
            s.serialize_f64(self.log2.to_f64().unwrap_or(f64::NAN))
        }
    }
}
