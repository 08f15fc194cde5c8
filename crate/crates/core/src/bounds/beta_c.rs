use serde::Serialize;

use crate::error::{invalid, Result};
use crate::Log2;

/// Constants of the subcritical-threshold chain for exponent `alpha` in
/// dimension `d`, ending with the lower bound `β_c`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BetaCConstants {
    pub alpha: f64,
    pub d: u32,
    pub c: f64,
    pub gamma: f64,
    pub k0: u64,
    pub mu: f64,
    /// `n0` after clamping to the first index.
    pub n0: i64,
    pub n0_raw: i64,
    pub n0_clamped: bool,
    pub n1: u32,
    #[serde(rename = "log2_R_n1")]
    pub r_n1: Log2,
    #[serde(rename = "log2_eps_n1")]
    pub eps_n1: Log2,
    #[serde(rename = "log2_beta_c")]
    pub beta_c: Log2,
    /// Rigorous enclosure of `log2 β_c`.
    pub log2_beta_c_enclosure: (f64, f64),
}

impl BetaCConstants {
    /// `log2 L_n = c^n`.
    pub fn log2_l(&self, n: u32) -> f64 {
        self.c.powi(n as i32)
    }

    /// `log2 R_n = c + c² + … + c^n`.
    pub fn log2_r(&self, n: u32) -> f64 {
        log2_r(self.c, n)
    }

    /// `log2 ε_n = -2 d c^{n+1}`.
    pub fn log2_eps(&self, n: u32) -> f64 {
        -2.0 * self.d as f64 * self.c.powi(n as i32 + 1)
    }
}

fn log2_r(c: f64, n: u32) -> f64 {
    (1..=n).map(|k| c.powi(k as i32)).sum()
}

/// Largest `n` searched for `n1`.
const MAX_INDEX: u32 = 64;

pub fn beta_c_pipeline(alpha: f64, d: u32) -> Result<BetaCConstants> {
    if !(alpha >= 1.0) || !alpha.is_finite() {
        return Err(invalid("alpha", format!("alpha >= 1 required, got {alpha}")));
    }
    if d == 0 {
        return Err(invalid("d", "d >= 1 required"));
    }
    let df = d as f64;
    let c = 2.0 * alpha * df + 1.0;
    let gamma = (4.0 * alpha * df).powi(2);
    let k0 = ((2f64).powi(d as i32 + 1) * (c + 1.0)).floor() as u64;
    let mu = (gamma - 1.0) / (2.0 * alpha) - 3.0 * df - 4.0 * alpha * df * df;
    if !(mu > 0.0) {
        return Err(invalid("mu", format!("mu = {mu} must be positive")));
    }
    let n0_raw = (((df + 1.0) / mu).ln() / c.ln()).floor() as i64;
    let n0 = n0_raw.max(1);

    let need = 60f64.log2() + (alpha + 1.0) * (k0 as f64).log2();
    let n1 = (n0 as u32..=MAX_INDEX)
        .find(|&n| need <= log2_r(c, n))
        .ok_or_else(|| invalid("n1", "no index up to 64 satisfies 60 k0^(alpha+1) <= R_n"))?;

    let log2_r_n1 = log2_r(c, n1);
    let log2_eps = -2.0 * df * c.powi(n1 as i32 + 1);
    // 1 - (1 - ε)^x with x = R^{-d}
    let log2_x = -df * log2_r_n1;
    let log2_y = log2_x + log2_eps;
    let (mid, lo, hi) = if log2_y < -40.0 {
        // -x ln(1-ε) ∈ [xε, xε(1+ε)] and 1 - e^{-u} ∈ [u - u²/2, u]
        let eps = log2_eps.exp2();
        let y = log2_y.exp2();
        let lo = log2_y + (-(y * (1.0 + eps).powi(2)) / 2.0).ln_1p() / std::f64::consts::LN_2;
        let hi = log2_y + eps.ln_1p() / std::f64::consts::LN_2;
        (log2_y, lo, hi)
    } else {
        let v = -(log2_x.exp2() * (-log2_eps.exp2()).ln_1p()).exp_m1();
        let l = v.log2();
        (l, l - 4.0 * f64::EPSILON * l.abs().max(1.0), l + 4.0 * f64::EPSILON * l.abs().max(1.0))
    };
    let scale = |v: f64| -1.0 + v / gamma;
    Ok(BetaCConstants {
        alpha,
        d,
        c,
        gamma,
        k0,
        mu,
        n0,
        n0_raw,
        n0_clamped: n0 != n0_raw,
        n1,
        r_n1: Log2::from_log2(log2_r_n1),
        eps_n1: Log2::from_log2(log2_eps),
        beta_c: Log2::from_log2(scale(mid)),
        log2_beta_c_enclosure: (scale(lo), scale(hi)),
    })
}
