//! End-to-end acceptance suite: one line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p lrcp-core --test acceptance`.

// Oracle values are quoted at full precision.
#![allow(clippy::excessive_precision, clippy::inconsistent_digit_grouping)]

use std::time::{Duration, Instant};

use lrcp::bounds::{
    beta_c_pipeline, certified_delta, cut_probability_product, degree_constant_upper, degree_tail_check,
    sample_block_statistics, verify_cut_point, verify_projection, CellStatus, ProjectionOptions, Report,
};
use lrcp::cmp::{brute_force_cmp, cmp, cmp_random_order, Exponent};
use lrcp::contact::{simulate, simulate_coupled_with, survival_probability, ContactConfig};
use lrcp::graph::{GraphWindow, SimpleGraph};
use lrcp::rng::{derive_seed, EdgeCouplingStream};
use lrcp::stats::ks_one_sample;
use lrcp::Log2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn within_time(start: Instant, limit: Duration, detail: String) -> Outcome {
    let took = start.elapsed();
    ensure(took < limit, format!("{detail}; {:.2}s of {}s budget", took.as_secs_f64(), limit.as_secs()))
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> SimpleGraph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.random::<f64>() < p)
        .collect();
    SimpleGraph::from_edges(n, edges).unwrap()
}

fn five_halves() -> Exponent {
    Exponent::ratio(5, 2).unwrap()
}

fn c1_cmp_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut agree = 0;
    for k in 0..300 {
        let n = rng.random_range(1..=6);
        let p = rng.random_range(0.1..0.9);
        let g = random_graph(&mut rng, n, p);
        let w: Vec<u64> = (0..n).map(|_| rng.random_range(0..=4)).collect();
        let alpha = if k % 2 == 0 { Exponent::new(1.0).unwrap() } else { five_halves() };
        if cmp(&g, &w, alpha).unwrap() == brute_force_cmp(&g, &w, alpha).unwrap() {
            agree += 1;
        }
    }
    within_time(start, Duration::from_secs(30), format!("{agree}/300 instances agree"))
        .and_then(|d| ensure(agree == 300, d))
}

fn c2_merge_order() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut identical = 0;
    for k in 0..20 {
        let n = rng.random_range(10..=40);
        let g = random_graph(&mut rng, n, 3.0 / n as f64);
        let w: Vec<u64> = (0..n).map(|_| rng.random_range(0..=6)).collect();
        let alpha = if k % 2 == 0 { Exponent::new(1.0).unwrap() } else { five_halves() };
        let reference = cmp(&g, &w, alpha).unwrap();
        identical += (0..50)
            .filter(|_| cmp_random_order(&g, &w, alpha, &mut rng).unwrap() == reference)
            .count();
    }
    ensure(identical == 1000, format!("{identical}/1000 random orders match"))
}

fn c3_worked_example() -> Outcome {
    let p = cmp(&SimpleGraph::path(3), &[2u64, 0, 2], Exponent::new(1.0).unwrap()).unwrap();
    ensure(p.clusters() == [vec![0, 2], vec![1]], format!("clusters {:?}", p.clusters()))
}

/// Runs a statistical check, re-running once with a fresh seed if any cell
/// fails. Returns the summary and the reports of the last run.
fn with_rerun(run: impl Fn(u64) -> lrcp::Result<Vec<Report>>) -> Result<(String, Vec<Report>), String> {
    let mut notes = Vec::new();
    for seed in [1u64, 2] {
        let reports = run(seed).map_err(|e| e.to_string())?;
        let cells: usize = reports.iter().map(|r| r.cells.len()).sum();
        let failures: usize = reports.iter().map(Report::failures).sum();
        let inconclusive: usize = reports.iter().map(Report::inconclusive).sum();
        notes.push(format!("seed {seed}: {failures} failed, {inconclusive} inconclusive of {cells} cells"));
        if failures == 0 {
            return Ok((notes.join("; "), reports));
        }
    }
    Err(notes.join("; "))
}

fn c4_cut_point_probability() -> Outcome {
    let start = Instant::now();
    let (out, reports) = with_rerun(|seed| Ok(vec![verify_cut_point(4.0, 200, 100_000, seed)?]))?;
    let product = cut_probability_product(4.0, 400).map_err(|e| e.to_string())?;
    let cells = &reports[0].cells;
    let detail = format!(
        "{out}; frequency {:.5} (sigma {:.5}), product {:.5}, e^-1 = {:.5}",
        cells[0].empirical, cells[0].sigma, product.value, product.lower_bound
    );
    within_time(start, Duration::from_secs(120), detail)
}

fn c5_block_tails() -> Outcome {
    with_rerun(|seed| {
        let st = sample_block_statistics(4.0, 100_000, seed)?;
        let e = st.epsilon_tail_report(4, 10);
        let bad_inconclusive = e
            .cells
            .iter()
            .any(|c| c.status == CellStatus::Inconclusive && c.samples >= 100);
        assert!(!bad_inconclusive);
        Ok(vec![st.t_tail_report(8), e])
    })
    .map(|(d, _)| d)
}

fn c6_degree_tail() -> Outcome {
    let c = degree_constant_upper(3.0).map_err(|e| e.to_string())?;
    if (c - 2.404_113_806_320_188_5).abs() > 1e-12 {
        return Err(format!("C = {c}"));
    }
    with_rerun(|seed| Ok(vec![degree_tail_check(3.0, 100_000, 8, seed)?])).map(|(d, _)| format!("C = {c:.6}; {d}"))
}

/// Two-vertex path at λ = 1 from both infected: `P(alive at t) =
/// e^{-2t} (cosh √2t + √2 sinh √2t)`.
fn path2_cdf(t: f64) -> f64 {
    let r = 2f64.sqrt();
    1.0 - (-2.0 * t).exp() * ((r * t).cosh() + r * (r * t).sinh())
}

fn c7_contact_exactness() -> Outcome {
    let isolated = SimpleGraph::empty(1);
    let trials = 100_000u64;
    let mean = (0..trials)
        .map(|t| {
            simulate(&isolated, &ContactConfig::new(1.0, f64::INFINITY, vec![0], derive_seed(7, t)))
                .unwrap()
                .extinction_time()
                .unwrap()
        })
        .sum::<f64>()
        / trials as f64;
    // matrix-exponential reference values for the closed form
    for (t, v) in [(0.5, 0.136_942_515_219_661_5), (1.0, 0.334_856_680_633_807_2), (5.0, 0.935_475_217_581_951_8)] {
        if (path2_cdf(t) - v).abs() > 1e-12 {
            return Err(format!("closed form off at t = {t}"));
        }
    }
    let path = SimpleGraph::path(2);
    let mut ps = Vec::new();
    for rep in 0..5u64 {
        let times: Vec<f64> = (0..5000u64)
            .map(|t| {
                simulate(&path, &ContactConfig::new(1.0, f64::INFINITY, vec![0, 1], derive_seed(70 + rep, t)))
                    .unwrap()
                    .extinction_time()
                    .unwrap()
            })
            .collect();
        ps.push(ks_one_sample(&times, path2_cdf).p_value);
    }
    let ok = (0.98..=1.02).contains(&mean) && ps.iter().all(|&p| p > 0.01);
    let ps: Vec<String> = ps.iter().map(|p| format!("{p:.3}")).collect();
    ensure(ok, format!("isolated mean {mean:.4}; path KS p-values [{}]", ps.join(", ")))
}

fn c8_lambda_monotonicity() -> Outcome {
    let g = GraphWindow::sample(2.5, 0, 49, &EdgeCouplingStream::new(8)).unwrap();
    let (mut events, mut violations) = (0u64, 0u64);
    for t in 0..1000u64 {
        let seed = derive_seed(8, t);
        let cfgs = [
            ContactConfig::new(0.5, 20.0, vec![25], seed),
            ContactConfig::new(2.0, 20.0, vec![25], seed),
        ];
        simulate_coupled_with(&g, &cfgs, |_, sets| {
            events += 1;
            violations += u64::from(!sets[0].is_subset(sets[1]));
        })
        .unwrap();
    }
    ensure(violations == 0, format!("{violations} violations over {events} events in 1000 trials"))
}

fn c9_s_monotonicity() -> Outcome {
    let st = EdgeCouplingStream::new(9);
    let dense = GraphWindow::sample(1.5, -100, 100, &st).unwrap();
    let sparse = GraphWindow::sample(3.0, -100, 100, &st).unwrap();
    let origin = dense.index_of(0).unwrap();
    let a = survival_probability(&dense, 0.6, origin, 50.0, 1000, 9).unwrap();
    let b = survival_probability(&sparse, 0.6, origin, 50.0, 1000, 9).unwrap();
    ensure(
        a.ci_low > b.ci_high,
        format!(
            "s = 1.5: {:.3} [{:.3}, {:.3}]; s = 3: {:.3} [{:.3}, {:.3}]",
            a.p_hat, a.ci_low, a.ci_high, b.p_hat, b.ci_low, b.ci_high
        ),
    )
}

fn c10_projection() -> Outcome {
    let r = verify_projection(4.0, 200, 10, ProjectionOptions::default()).map_err(|e| e.to_string())?;
    ensure(r.all_pass(), format!("{:.0}% of 200 glued graphs project", 100.0 * r.cells[0].empirical))
}

const ORACLE_LOG2_BETA_C: f64 = -5.74;

fn c11_appendix_constants() -> Outcome {
    let start = Instant::now();
    let k = beta_c_pipeline(2.5, 1).map_err(|e| e.to_string())?;
    let rel = (k.beta_c.log2() - ORACLE_LOG2_BETA_C).abs() / ORACLE_LOG2_BETA_C.abs();
    let ok = k.gamma == 100.0 && k.c == 6.0 && k.k0 == 28 && (k.mu - 6.8).abs() < 1e-12 && k.n1 == 2 && rel < 1e-9;
    within_time(
        start,
        Duration::from_secs(1),
        format!(
            "gamma {} c {} k0 {} mu {} n1 {} log2 beta_c {} (rel err {rel:.1e})",
            k.gamma, k.c, k.k0, k.mu, k.n1, k.beta_c.log2()
        ),
    )
    .and_then(|d| ensure(ok, d))
}

fn c12_certificate() -> Outcome {
    let start = Instant::now();
    let beta_c = beta_c_pipeline(2.5, 1).map_err(|e| e.to_string())?.beta_c;
    let beta = beta_c / Log2::from_value(2.0);
    let r = certified_delta(103.0, beta).map_err(|e| e.to_string())?;
    // oracle: △ = 433, log2 M = 1174.5032853807388, log2 f(433) = -1848.9849678358615, log2 f(432) = -1841.5669708772873
    let rel = |a: f64, b: f64| (a - b).abs() / b.abs();
    let target = 100.0 * beta.log2();
    let ok = r.delta == 433
        && rel(r.m.log2(), 1174.503_285_380_738_8) < 1e-9
        && rel(r.f_delta.log2(), -1848.984_967_835_861_5) < 1e-9
        && rel(r.f_delta_minus_one.log2(), -1841.566_970_877_287_3) < 1e-9
        && r.m.log2() + r.f_delta.log2() <= target
        && r.m.log2() + r.f_delta_minus_one.log2() > target
        && r.holds()
        && r.is_minimal();
    within_time(
        start,
        Duration::from_secs(10),
        format!(
            "delta {} with log2 M f = {:.4} <= {:.2} < {:.4}",
            r.delta,
            r.m.log2() + r.f_delta.log2(),
            target,
            r.m.log2() + r.f_delta_minus_one.log2()
        ),
    )
    .and_then(|d| ensure(ok, d))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 12] = [
        ("CMP oracle equivalence", c1_cmp_oracle),
        ("CMP merge-order invariance", c2_merge_order),
        ("worked CMP example", c3_worked_example),
        ("cut-point probability", c4_cut_point_probability),
        ("block tail bounds", c5_block_tails),
        ("degree tail", c6_degree_tail),
        ("contact-process exactness", c7_contact_exactness),
        ("pathwise lambda-monotonicity", c8_lambda_monotonicity),
        ("s-monotonicity on coupled graphs", c9_s_monotonicity),
        ("projection property", c10_projection),
        ("threshold constants", c11_appendix_constants),
        ("certificate pipeline", c12_certificate),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed().as_secs_f64();
        match outcome {
            Ok(d) => println!("criterion {:>2} PASS {name}: {d} [{took:.1}s]", i + 1),
            Err(d) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {d} [{took:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
