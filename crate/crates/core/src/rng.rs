//! Deterministic randomness.
//!
//! Edge uniforms come from a counter-based mixing function of
//! `(seed, min(i, j), max(i, j))`, so any window, any exponent and any
//! sampling order see the same value for the same pair. Per-trial generators
//! are ChaCha8 streams keyed by [`derive_seed`].

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Maps 64 random bits to a uniform in `[0, 1)` with 53 bits of resolution.
#[inline]
pub fn unit_interval(bits: u64) -> f64 {
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Seed of trial `index` under `master`: `mix64(master ^ mix64(index + GOLDEN))`.
///
/// Independent of thread schedule; recorded in experiment manifests.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    mix64(master ^ mix64(index.wrapping_add(GOLDEN)))
}

pub fn trial_rng(master: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(master, index))
}

/// Pure map from an unordered integer pair to a uniform value in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeCouplingStream {
    seed: u64,
}

impl EdgeCouplingStream {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    #[inline]
    pub fn bits(&self, i: i64, j: i64) -> u64 {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        let h = mix64(self.seed ^ GOLDEN);
        let h = mix64(h ^ (a as u64));
        mix64(h.wrapping_add(GOLDEN) ^ (b as u64).rotate_left(32))
    }

    #[inline]
    pub fn uniform(&self, i: i64, j: i64) -> f64 {
        unit_interval(self.bits(i, j))
    }

    /// Uniform in `(0, 1]`, used where the far tail of a law is inverted.
    #[inline]
    pub fn upper_uniform(&self, i: i64, j: i64) -> f64 {
        1.0 - self.uniform(i, j)
    }
}
