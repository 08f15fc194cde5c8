use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::fenwick::Fenwick;
use super::{ContactConfig, ContactTrajectory, Event, EventKind, InfectedSet, Outcome};
use crate::error::Result;
use crate::graph::Graph;

/// Engine state handed to observers after each event.
pub struct GillespieState<'a> {
    pub infected: &'a InfectedSet,
    /// Incrementally maintained `Σ_{v∈I} deg(v)`.
    pub degree_sum: u64,
    pub lambda: f64,
}

impl GillespieState<'_> {
    pub fn total_rate(&self) -> f64 {
        self.infected.len() as f64 + self.lambda * self.degree_sum as f64
    }
}

/// Exact simulation from `cfg.initial`, seeded by `cfg.seed`.
pub fn simulate<G: Graph + ?Sized>(g: &G, cfg: &ContactConfig) -> Result<ContactTrajectory> {
    simulate_with(g, cfg, |_, _| {})
}

/// As [`simulate`], calling `observer` after every event (no-ops included).
pub fn simulate_with<G, F>(g: &G, cfg: &ContactConfig, mut observer: F) -> Result<ContactTrajectory>
where
    G: Graph + ?Sized,
    F: FnMut(&Event, &GillespieState<'_>),
{
    cfg.validate(g)?;
    let n = g.order();
    let cap = cfg.max_infected.unwrap_or(n);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut infected = InfectedSet::new(n);
    let mut degrees = Fenwick::new(n);
    for &v in &cfg.initial {
        if infected.insert(v) {
            degrees.add(v, g.degree(v) as i64);
        }
    }
    let half = cfg.t_max / 2.0;
    let mut traj = ContactTrajectory {
        outcome: Outcome::Alive,
        peak_infected: infected.len(),
        events_processed: 0,
        alive_at_half: false,
        capped: false,
    };
    let mut t = 0.0f64;
    loop {
        if infected.is_empty() {
            traj.outcome = Outcome::Extinct { time: t };
            return Ok(traj);
        }
        let recovery_rate = infected.len() as f64;
        let infection_rate = cfg.lambda * degrees.total() as f64;
        let total = recovery_rate + infection_rate;
        let u: f64 = rng.random();
        t += -(1.0 - u).ln() / total;
        if t > half {
            traj.alive_at_half = true;
        }
        if t > cfg.t_max {
            return Ok(traj);
        }
        traj.events_processed += 1;
        let (kind, vertex) = if rng.random::<f64>() * total < recovery_rate {
            let v = infected.members()[rng.random_range(0..infected.len())];
            infected.remove(v);
            degrees.add(v, -(g.degree(v) as i64));
            (EventKind::Recovery, v)
        } else {
            let source = degrees.find(rng.random_range(0..degrees.total()));
            let nbrs = g.neighbors(source);
            let target = nbrs[rng.random_range(0..nbrs.len())];
            if infected.insert(target) {
                degrees.add(target, g.degree(target) as i64);
                (EventKind::Infection, target)
            } else {
                (EventKind::NoOp, target)
            }
        };
        traj.peak_infected = traj.peak_infected.max(infected.len());
        let event = Event {
            time: t,
            kind,
            vertex,
            infected_count: infected.len(),
        };
        observer(
            &event,
            &GillespieState {
                infected: &infected,
                degree_sum: degrees.total(),
                lambda: cfg.lambda,
            },
        );
        if infected.len() > cap {
            traj.capped = true;
            return Ok(traj);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimpleGraph;

    #[test]
    fn rejects_bad_configs() {
        let g = SimpleGraph::path(3);
        assert!(simulate(&g, &ContactConfig::new(1.0, 1.0, vec![], 0)).is_err());
        assert!(simulate(&g, &ContactConfig::new(-0.1, 1.0, vec![0], 0)).is_err());
        assert!(simulate(&g, &ContactConfig::new(1.0, 0.0, vec![0], 0)).is_err());
        assert!(simulate(&g, &ContactConfig::new(1.0, 1.0, vec![3], 0)).is_err());
    }

    #[test]
    fn isolated_vertex_recovers_once() {
        let g = SimpleGraph::empty(1);
        let tr = simulate(&g, &ContactConfig::new(5.0, f64::INFINITY, vec![0], 9)).unwrap();
        assert_eq!(tr.events_processed, 1);
        assert!(tr.extinction_time().unwrap() > 0.0);
        assert_eq!(tr.peak_infected, 1);
    }

    #[test]
    fn deterministic_given_seed() {
        let g = SimpleGraph::complete(6);
        let cfg = ContactConfig::new(1.5, 20.0, vec![0, 3], 44);
        assert_eq!(simulate(&g, &cfg).unwrap(), simulate(&g, &cfg).unwrap());
    }

    #[test]
    fn cap_stops_growth() {
        let g = SimpleGraph::complete(10);
        let mut cfg = ContactConfig::new(50.0, 100.0, vec![0], 1);
        cfg.max_infected = Some(3);
        let tr = simulate(&g, &cfg).unwrap();
        assert!(tr.capped && tr.survived() && tr.peak_infected == 4);
    }
}
