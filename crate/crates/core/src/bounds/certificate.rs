use serde::Serialize;

use super::beta_c::beta_c_pipeline;
use super::product::cut_probability_lower_bound;
use super::series::{degree_constant_upper, f_delta_with, log2_sum, ratio_tail_sum, SERIES_CUTOFF_BITS};
use crate::error::{invalid, Error, Result};
use crate::Log2;

/// Certified threshold `△` with every intermediate upper bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateResult {
    pub s: f64,
    pub p: f64,
    pub q: f64,
    /// Upper bound on the degree constant `C`.
    pub degree_constant: f64,
    #[serde(rename = "log2_C1")]
    pub c1: Log2,
    /// Upper bound on `E[(T+1)^{99q}]`.
    #[serde(rename = "log2_moment")]
    pub moment: Log2,
    #[serde(rename = "log2_M")]
    pub m: Log2,
    #[serde(rename = "log2_beta")]
    pub beta: Log2,
    pub delta: u64,
    #[serde(rename = "log2_f_delta")]
    pub f_delta: Log2,
    #[serde(rename = "log2_f_delta_minus_one")]
    pub f_delta_minus_one: Log2,
}

impl CertificateResult {
    /// `β^{100}`.
    pub fn target(&self) -> Log2 {
        self.beta.powi(100)
    }

    /// `M f(△) ≤ β^{100}`.
    pub fn holds(&self) -> bool {
        self.m * self.f_delta <= self.target()
    }

    /// `M f(△-1) > β^{100}`, or `△ = 1`.
    pub fn is_minimal(&self) -> bool {
        self.delta == 1 || self.m * self.f_delta_minus_one > self.target()
    }
}

const MAX_TERMS: u64 = 100_000_000;

/// `C_1 = 100p [1 + Σ_{ℓ≥1} ℓ^{2-s} (1+ℓ)^{100p-1} / (s-2)]`, bounded above.
/// For `ℓ > L`, `(1+ℓ)^a ≤ (1+1/L)^a ℓ^a` and `Σ_{ℓ>L} ℓ^{-1-δ} ≤ L^{-δ}/δ`
/// with `δ = (s-102)/2`.
fn c1_upper(s: f64, p: f64) -> Log2 {
    let a = 100.0 * p - 1.0;
    let delta = (s - 102.0) / 2.0;
    let mut terms = Vec::new();
    let mut running = f64::NEG_INFINITY;
    let mut tail = f64::INFINITY;
    for l in 1..=10_000_000u64 {
        let lf = l as f64;
        let t = (2.0 - s) * lf.log2() + a * (1.0 + lf).log2();
        terms.push(t);
        running = log2_sum(&[running, t]);
        tail = a * (1.0 / lf).ln_1p() / std::f64::consts::LN_2 - delta * lf.log2() - delta.log2();
        if tail <= running - SERIES_CUTOFF_BITS {
            break;
        }
    }
    terms.push(tail);
    let series = log2_sum(&terms) - (s - 2.0).log2();
    Log2::from_log2((100.0 * p).log2() + log2_sum(&[0.0, series]))
}

/// `E[(G+1)^e]` for `G` geometric on `{1, 2, …}` with success probability
/// `pg`, which dominates `E[(T+1)^e]`.
fn geometric_moment_upper(e: f64, pg: f64) -> Option<Log2> {
    let log2_r = (-pg).ln_1p() / std::f64::consts::LN_2;
    let log2_pg = pg.log2();
    ratio_tail_sum(
        1,
        MAX_TERMS,
        |i| e * ((i + 1) as f64).log2() + (i - 1) as f64 * log2_r + log2_pg,
        |i| e * ((i + 2) as f64 / (i + 1) as f64).log2() + log2_r,
    )
}

/// Smallest `△ ≥ 1` with `M f(△) ≤ β^{100}` for `s > 102`, where `M` and `f`
/// are replaced by certified upper bounds. `beta` must lie below the
/// threshold of the `(5/2, 1)` pipeline.
pub fn certified_delta(s: f64, beta: Log2) -> Result<CertificateResult> {
    if !(s > 102.0) || !s.is_finite() {
        return Err(invalid("s", format!("s > 102 required, got {s}")));
    }
    let beta_c = beta_c_pipeline(2.5, 1)?.beta_c;
    if beta.is_zero() || beta >= beta_c {
        return Err(invalid("beta", format!("need 0 < beta < beta_c = {beta_c}, got {beta}")));
    }
    let p = 1.0 + (s - 102.0) / 200.0;
    let q = (s + 98.0) / (s - 102.0);
    let c1 = c1_upper(s, p);

    let pg = cut_probability_lower_bound(s);
    let moment = geometric_moment_upper(99.0 * q, pg).ok_or_else(|| invalid("s", "moment series did not settle"))?;
    // Σ_{i≥1} (C_1 r^{i-1})^{1/p} = C_1^{1/p} / (1 - r^{1/p}), r = 1 - pg
    let r_root = ((-pg).ln_1p() / p).exp();
    let geometric = c1.powf(1.0 / p) / Log2::from_value(1.0 - r_root);
    let m = moment.powf(1.0 / q) * (Log2::one() + geometric);

    let c = degree_constant_upper(s)?;
    let target = beta.powi(100);
    let ok = |delta: u64| -> Result<(bool, Log2)> {
        let f = f_delta_with(c, delta)?;
        Ok((m * f <= target, f))
    };
    let mut hi = 1u64;
    let mut f_hi = loop {
        let (good, f) = ok(hi)?;
        if good {
            break f;
        }
        if hi > 1 << 40 {
            return Err(Error::InvalidParameter {
                name: "beta",
                reason: "no threshold below 2^40 satisfies the bound".into(),
            });
        }
        hi *= 2;
    };
    let mut lo = hi / 2;
    // invariant: lo fails (or is 0), hi passes
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        let (good, f) = ok(mid)?;
        if good {
            hi = mid;
            f_hi = f;
        } else {
            lo = mid;
        }
    }
    let f_prev = f_delta_with(c, hi - 1)?;
    Ok(CertificateResult {
        s,
        p,
        q,
        degree_constant: c,
        c1,
        moment,
        m,
        beta,
        delta: hi,
        f_delta: f_hi,
        f_delta_minus_one: f_prev,
    })
}
