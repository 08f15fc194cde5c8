//! Reference values come from oracles/bounds_oracle.py (mpmath, 2000-bit).

// Oracle values are quoted at full precision.
#![allow(clippy::excessive_precision, clippy::inconsistent_digit_grouping)]

use lrcp::bounds::{
    beta_c_pipeline, certified_delta, cut_probability_product, degree_constant_upper, degree_tail_check_in, f_delta,
    sample_block_statistics, CellStatus,
};
use lrcp::{Log2, LogQuantity};
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn cut_product_reference() {
    let p = cut_probability_product(4.0, 10_000).unwrap();
    assert!(rel(p.value, 0.885_187_002_914_224_711_1) < 1e-12);
    assert!(p.tail_bound < 1e-8);
    assert!(rel(cut_probability_product(4.0, 400).unwrap().value, 0.885_189_753_202_715_941) < 1e-12);
    assert!(rel(cut_probability_product(3.0, 400).unwrap().value, 0.637_032_709_784_429_921) < 1e-12);
}

#[test]
fn degree_constant_reference() {
    assert!(rel(degree_constant_upper(3.0).unwrap(), 2.404_113_806_320_188_52) < 1e-13);
}

#[test]
fn f_delta_reference() {
    let f = f_delta(103.0, 500).unwrap();
    assert!(rel(f.log2(), -2354.839_315_372_023_843_55) < 1e-9);
    let f = f_delta(3.0, 10).unwrap();
    assert!(rel(f.log2(), 435.295_931_704_525_865_3) < 1e-9);
}

#[test]
fn beta_c_reference() {
    let k = beta_c_pipeline(2.5, 1).unwrap();
    assert!(rel(k.beta_c.log2(), -5.74) < 1e-9);
    let (lo, hi) = k.log2_beta_c_enclosure;
    assert!(rel(lo, -5.74) < 1e-9 && rel(hi, -5.74) < 1e-9);
}

#[test]
fn certificate_reference() {
    let beta = Log2::from_log2(beta_c_pipeline(2.5, 1).unwrap().beta_c.log2() - 1.0);
    let r = certified_delta(103.0, beta).unwrap();
    assert_eq!(r.delta, 433);
    assert!(rel(r.c1.log2(), 99.492_840_208_427_322_775) < 1e-9);
    assert!(rel(r.moment.log2(), 216_170.735_522_712_211_5) < 1e-9);
    assert!(rel(r.m.log2(), 1174.503_285_380_738_751_1) < 1e-9);
    assert!(rel(r.f_delta.log2(), -1848.984_967_835_861_464_8) < 1e-9);
    assert!(rel(r.f_delta_minus_one.log2(), -1841.566_970_877_287_252_1) < 1e-9);
    assert!(r.holds() && r.is_minimal());
}

#[test]
fn statistical_bounds_hold_at_moderate_scale() {
    for s in [3.0, 4.0, 6.0] {
        let st = sample_block_statistics(s, 20_000, 11).unwrap();
        let t = st.t_tail_report(8);
        assert!(t.all_pass(), "{}", t.to_csv());
        let e = st.epsilon_tail_report(4, 10);
        assert!(e.all_pass(), "{}", e.to_csv());
        assert!(e.cells.iter().any(|c| c.status == CellStatus::Pass));
    }
    let d = degree_tail_check_in(3.0, 20_000, 8, 5, 500).unwrap();
    assert!(d.all_pass(), "{}", d.to_csv());
    assert!(d.cells[0].bound > 1.0);
}

#[test]
fn epsilon_bound_formula() {
    let st = sample_block_statistics(4.0, 500, 2).unwrap();
    let e = st.epsilon_tail_report(4, 10);
    let cell = e.cells.iter().find(|c| c.param_i == Some(1) && c.param_ell == Some(2)).unwrap();
    assert_eq!(cell.bound, 0.125);
    // sparse conditioning at i = 4 leaves cells inconclusive rather than failed
    assert!(e.cells.iter().filter(|c| c.param_i == Some(4)).all(|c| c.status != CellStatus::Fail));
}

fn lq() -> impl Strategy<Value = Log2> {
    prop_oneof![
        1 => Just(Log2::zero()),
        9 => (-2000.0f64..2000.0).prop_map(Log2::from_log2),
    ]
}

proptest! {
    #[test]
    fn log_quantity_algebra(a in lq(), b in lq(), c in lq()) {
        let left = (a * b) * c;
        let right = a * (b * c);
        if left.is_zero() {
            prop_assert!(right.is_zero());
        } else {
            // one unit in the last place of the largest exponent involved
            let scale = [a, b, c, a * b, b * c, left].iter().map(|x| x.log2().abs()).fold(1.0, f64::max);
            prop_assert!((left.log2() - right.log2()).abs() <= 2.0 * f64::EPSILON * scale);
        }
        prop_assert_eq!(a + b, b + a);
        prop_assert!(a + b >= a.max(b));
        if b <= c {
            prop_assert!(a + b <= a + c);
        }
        prop_assert!((a * Log2::zero()).is_zero());
        prop_assert_eq!(a + Log2::zero(), a);
    }

    #[test]
    fn log_quantity_matches_f32_and_f64(x in 1e-3f64..1e3, y in 1e-3f64..1e3) {
        let a = Log2::from_value(x) + Log2::from_value(y);
        prop_assert!(rel(a.value(), x + y) < 1e-12);
        let b = LogQuantity::<f32>::from_value(x as f32) * LogQuantity::<f32>::from_value(y as f32);
        prop_assert!(rel(b.value() as f64, x * y) < 1e-4);
    }
}

#[test]
fn f_delta_monotone_at_large_exponent() {
    let mut prev = f_delta(103.0, 1).unwrap();
    for d in 2..700 {
        let cur = f_delta(103.0, d).unwrap();
        assert!(cur <= prev, "delta {d}");
        prev = cur;
    }
}
