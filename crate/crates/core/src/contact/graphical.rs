use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use super::{validate_common, ContactConfig, ContactTrajectory, InfectedSet, Outcome};
use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use crate::rng::{mix64, unit_interval};

/// One run of a joint graphical-construction simulation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub lambda: f64,
    pub initial: Vec<usize>,
}

/// Per-site Poisson streams shared by every run.
///
/// Site `v` carries a single clock of rate `1 + λ_ref deg(v)` whose arrivals
/// are recoveries with probability `1 / (1 + λ_ref deg(v))` and otherwise
/// infection arrows to a uniform neighbor, each with a thinning mark `u`; a
/// run at rate `λ` uses the arrow iff `u < λ / λ_ref`. Arrivals are indexed
/// from time 0 and hashed from `(seed, v, index)`, so the realization does
/// not depend on which runs are simulated together.
#[derive(Debug, Clone)]
pub struct GraphicalConstruction<'g, G: ?Sized> {
    graph: &'g G,
    seed: u64,
    lambda_ref: f64,
    t_max: f64,
    max_infected: Option<usize>,
}

#[derive(Debug, Clone, Copy)]
enum Mark {
    Recovery,
    Arrow { target: usize, mark: f64 },
}

#[derive(Debug, Clone, Copy)]
struct Cursor {
    index: u64,
    time: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Pending {
    time: f64,
    site: usize,
    generation: u64,
}

impl Eq for Pending {}

impl Ord for Pending {
    fn cmp(&self, other: &Self) -> Ordering {
        self.time
            .total_cmp(&other.time)
            .then(self.site.cmp(&other.site))
            .then(self.generation.cmp(&other.generation))
    }
}

impl PartialOrd for Pending {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct RunState {
    lambda: f64,
    infected: InfectedSet,
    traj: ContactTrajectory,
    done: bool,
}

impl<'g, G: Graph + ?Sized> GraphicalConstruction<'g, G> {
    pub fn new(graph: &'g G, seed: u64, lambda_ref: f64, t_max: f64) -> Result<Self> {
        if !(lambda_ref >= 0.0) || !lambda_ref.is_finite() {
            return Err(Error::InvalidLambda(lambda_ref));
        }
        if !(t_max > 0.0) {
            return Err(Error::InvalidHorizon(t_max));
        }
        Ok(Self {
            graph,
            seed,
            lambda_ref,
            t_max,
            max_infected: None,
        })
    }

    pub fn with_max_infected(mut self, cap: usize) -> Self {
        self.max_infected = Some(cap);
        self
    }

    pub fn lambda_ref(&self) -> f64 {
        self.lambda_ref
    }

    fn site_uniform(&self, v: usize, index: u64, component: u64) -> f64 {
        let key = mix64(self.seed ^ mix64(v as u64 ^ 0x5173_0000_0000_0000));
        unit_interval(mix64(key ^ mix64(index.wrapping_mul(4).wrapping_add(component))))
    }

    fn site_rate(&self, v: usize) -> f64 {
        1.0 + self.lambda_ref * self.graph.degree(v) as f64
    }

    fn gap(&self, v: usize, index: u64) -> f64 {
        -(1.0 - self.site_uniform(v, index, 0)).ln() / self.site_rate(v)
    }

    fn mark(&self, v: usize, index: u64) -> Mark {
        let rate = self.site_rate(v);
        if self.site_uniform(v, index, 1) * rate < 1.0 {
            return Mark::Recovery;
        }
        let nbrs = self.graph.neighbors(v);
        let k = ((self.site_uniform(v, index, 2) * nbrs.len() as f64) as usize).min(nbrs.len() - 1);
        Mark::Arrow {
            target: nbrs[k],
            mark: self.site_uniform(v, index, 3),
        }
    }

    fn advance_past(&self, v: usize, c: &mut Cursor, t: f64) {
        while c.time <= t {
            c.index += 1;
            c.time += self.gap(v, c.index);
        }
    }

    pub fn run(&self, specs: &[RunSpec]) -> Result<Vec<ContactTrajectory>> {
        self.run_with(specs, |_, _| {})
    }

    /// Simulates all runs on the shared realization. `observer` receives the
    /// event time and every run's infected set after each arrival at a site
    /// infected in some unfinished run.
    pub fn run_with<F>(&self, specs: &[RunSpec], mut observer: F) -> Result<Vec<ContactTrajectory>>
    where
        F: FnMut(f64, &[&InfectedSet]),
    {
        let g = self.graph;
        let n = g.order();
        for spec in specs {
            validate_common(g, spec.lambda, self.t_max, &spec.initial)?;
            if spec.lambda > self.lambda_ref {
                return Err(invalid("lambda", format!("{} exceeds the reference rate {}", spec.lambda, self.lambda_ref)));
            }
        }
        let cap = self.max_infected.unwrap_or(n);
        let half = self.t_max / 2.0;
        let mut runs: Vec<RunState> = specs
            .iter()
            .map(|spec| {
                let mut infected = InfectedSet::new(n);
                for &v in &spec.initial {
                    infected.insert(v);
                }
                let peak = infected.len();
                RunState {
                    lambda: spec.lambda,
                    infected,
                    traj: ContactTrajectory {
                        outcome: Outcome::Alive,
                        peak_infected: peak,
                        events_processed: 0,
                        alive_at_half: false,
                        capped: false,
                    },
                    done: false,
                }
            })
            .collect();

        let mut cursors: Vec<Option<Cursor>> = vec![None; n];
        let mut generation = vec![0u64; n];
        let mut union_count = vec![0usize; n];
        let mut heap = BinaryHeap::new();

        let enter = |v: usize,
                     t: f64,
                     cursors: &mut Vec<Option<Cursor>>,
                     generation: &mut Vec<u64>,
                     heap: &mut BinaryHeap<Reverse<Pending>>| {
            let c = cursors[v].get_or_insert_with(|| Cursor {
                index: 0,
                time: self.gap(v, 0),
            });
            self.advance_past(v, c, t);
            generation[v] += 1;
            heap.push(Reverse(Pending {
                time: c.time,
                site: v,
                generation: generation[v],
            }));
        };

        for run in &runs {
            for &v in run.infected.members() {
                union_count[v] += 1;
                if union_count[v] == 1 {
                    enter(v, 0.0, &mut cursors, &mut generation, &mut heap);
                }
            }
        }

        for run in runs.iter_mut() {
            if run.infected.is_empty() {
                run.traj.outcome = Outcome::Extinct { time: 0.0 };
                run.done = true;
            }
        }

        while let Some(Reverse(p)) = heap.pop() {
            if p.generation != generation[p.site] || union_count[p.site] == 0 {
                continue;
            }
            let t = p.time;
            if t > self.t_max {
                break;
            }
            let v = p.site;
            let c = cursors[v].as_mut().expect("tracked site has a cursor");
            let mark = self.mark(v, c.index);
            c.index += 1;
            c.time += self.gap(v, c.index);
            heap.push(Reverse(Pending {
                time: c.time,
                site: v,
                generation: generation[v],
            }));

            let mut entered = Vec::new();
            for run in runs.iter_mut().filter(|r| !r.done && r.infected.contains(v)) {
                if t > half {
                    run.traj.alive_at_half = true;
                }
                match mark {
                    Mark::Recovery => {
                        run.traj.events_processed += 1;
                        run.infected.remove(v);
                        union_count[v] -= 1;
                        if run.infected.is_empty() {
                            run.traj.outcome = Outcome::Extinct { time: t };
                            run.done = true;
                        }
                    }
                    Mark::Arrow { target, mark } => {
                        if mark * self.lambda_ref >= run.lambda {
                            continue;
                        }
                        run.traj.events_processed += 1;
                        if run.infected.insert(target) {
                            union_count[target] += 1;
                            if union_count[target] == 1 {
                                entered.push(target);
                            }
                            run.traj.peak_infected = run.traj.peak_infected.max(run.infected.len());
                            if run.infected.len() > cap {
                                run.traj.capped = true;
                                run.done = true;
                                for &w in run.infected.members() {
                                    union_count[w] -= 1;
                                }
                            }
                        }
                    }
                }
            }
            for w in entered {
                if union_count[w] > 0 {
                    enter(w, t, &mut cursors, &mut generation, &mut heap);
                }
            }
            let sets: Vec<&InfectedSet> = runs.iter().map(|r| &r.infected).collect();
            observer(t, &sets);
            if runs.iter().all(|r| r.done) {
                break;
            }
        }
        for run in runs.iter_mut().filter(|r| !r.done) {
            if half < self.t_max {
                run.traj.alive_at_half = true;
            }
        }
        Ok(runs.into_iter().map(|r| r.traj).collect())
    }
}

/// Runs configurations that share seed, initial set and horizon and differ in
/// `λ` on one graphical construction at `λ_ref = max λ`, so that infected
/// sets are nested at every event time.
pub fn simulate_coupled<G: Graph + ?Sized>(g: &G, cfgs: &[ContactConfig]) -> Result<Vec<ContactTrajectory>> {
    simulate_coupled_with(g, cfgs, |_, _| {})
}

pub fn simulate_coupled_with<G, F>(g: &G, cfgs: &[ContactConfig], observer: F) -> Result<Vec<ContactTrajectory>>
where
    G: Graph + ?Sized,
    F: FnMut(f64, &[&InfectedSet]),
{
    let Some(first) = cfgs.first() else {
        return Ok(Vec::new());
    };
    if cfgs.windows(2).any(|w| !(w[0].lambda <= w[1].lambda)) {
        return Err(Error::UnsortedLambdas);
    }
    if cfgs
        .iter()
        .any(|c| c.seed != first.seed || c.initial != first.initial || c.t_max != first.t_max || c.max_infected != first.max_infected)
    {
        return Err(Error::MismatchedInitialSets);
    }
    let lambda_ref = cfgs.last().map(|c| c.lambda).unwrap_or(0.0);
    let mut gc = GraphicalConstruction::new(g, first.seed, lambda_ref, first.t_max)?;
    if let Some(cap) = first.max_infected {
        gc = gc.with_max_infected(cap);
    }
    let specs: Vec<RunSpec> = cfgs
        .iter()
        .map(|c| RunSpec {
            lambda: c.lambda,
            initial: c.initial.clone(),
        })
        .collect();
    gc.run_with(&specs, observer)
}
