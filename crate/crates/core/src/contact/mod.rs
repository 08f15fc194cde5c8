//! Contact process on finite graphs.
//!
//! Infected sites recover at rate 1; a healthy site with `k` infected
//! neighbors becomes infected at rate `λ k`. [`simulate`] is an exact
//! Gillespie engine; [`simulate_coupled`] and [`GraphicalConstruction`]
//! realize the process from per-site Poisson streams so that runs sharing a
//! seed are pathwise ordered in `λ` and in the initial set.

mod fenwick;
mod gillespie;
mod graphical;
mod survival;
mod threshold;

pub use gillespie::{simulate, simulate_with, GillespieState};
pub use graphical::{simulate_coupled, simulate_coupled_with, GraphicalConstruction, RunSpec};
pub use survival::{coupled_survival, survival_probability, SurvivalEstimate, SURVIVAL_CSV_HEADER};
pub use threshold::{estimate_threshold, ThresholdEstimate, ThresholdOptions};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq)]
pub struct ContactConfig {
    pub lambda: f64,
    /// Horizon; `f64::INFINITY` runs to extinction (finite graphs only).
    pub t_max: f64,
    pub initial: Vec<usize>,
    pub seed: u64,
    /// Stop once this many sites are infected at once; `None` means `|V|`.
    pub max_infected: Option<usize>,
}

impl ContactConfig {
    pub fn new(lambda: f64, t_max: f64, initial: Vec<usize>, seed: u64) -> Self {
        Self {
            lambda,
            t_max,
            initial,
            seed,
            max_infected: None,
        }
    }

    pub(crate) fn validate<G: Graph + ?Sized>(&self, g: &G) -> Result<()> {
        validate_common(g, self.lambda, self.t_max, &self.initial)
    }
}

pub(crate) fn validate_common<G: Graph + ?Sized>(g: &G, lambda: f64, t_max: f64, initial: &[usize]) -> Result<()> {
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidLambda(lambda));
    }
    if !(t_max > 0.0) {
        return Err(Error::InvalidHorizon(t_max));
    }
    if initial.is_empty() {
        return Err(Error::EmptyInitialSet);
    }
    if let Some(&v) = initial.iter().find(|&&v| v >= g.order()) {
        return Err(Error::VertexOutOfWindow {
            vertex: v as i64,
            lo: 0,
            hi: g.order() as i64 - 1,
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Outcome {
    Extinct { time: f64 },
    /// Infection present at `t_max`, or the infected-count cap was reached.
    Alive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContactTrajectory {
    pub outcome: Outcome,
    pub peak_infected: usize,
    pub events_processed: u64,
    /// Infection present at `t_max / 2`, for horizon-sensitivity reporting.
    pub alive_at_half: bool,
    /// The run stopped at the infected-count cap.
    pub capped: bool,
}

impl ContactTrajectory {
    pub fn extinction_time(&self) -> Option<f64> {
        match self.outcome {
            Outcome::Extinct { time } => Some(time),
            Outcome::Alive => None,
        }
    }

    pub fn survived(&self) -> bool {
        matches!(self.outcome, Outcome::Alive)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventKind {
    Recovery,
    Infection,
    /// Infection attempt on an already infected site.
    NoOp,
}

impl EventKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            EventKind::Recovery => "recovery",
            EventKind::Infection => "infection",
            EventKind::NoOp => "noop",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event {
    pub time: f64,
    pub kind: EventKind,
    pub vertex: usize,
    pub infected_count: usize,
}

/// Infected set with O(1) membership, insertion and removal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfectedSet {
    flags: Vec<bool>,
    members: Vec<usize>,
    position: Vec<usize>,
}

impl InfectedSet {
    pub fn new(n: usize) -> Self {
        Self {
            flags: vec![false; n],
            members: Vec::new(),
            position: vec![usize::MAX; n],
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.flags[v]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// Returns false if `v` was already present.
    pub fn insert(&mut self, v: usize) -> bool {
        if self.flags[v] {
            return false;
        }
        self.flags[v] = true;
        self.position[v] = self.members.len();
        self.members.push(v);
        true
    }

    pub fn remove(&mut self, v: usize) -> bool {
        if !self.flags[v] {
            return false;
        }
        self.flags[v] = false;
        let at = self.position[v];
        self.members.swap_remove(at);
        if let Some(&moved) = self.members.get(at) {
            self.position[moved] = at;
        }
        self.position[v] = usize::MAX;
        true
    }

    pub fn is_subset(&self, other: &InfectedSet) -> bool {
        self.members.iter().all(|&v| other.contains(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infected_set_ops() {
        let mut s = InfectedSet::new(5);
        assert!(s.insert(3) && s.insert(1) && !s.insert(3));
        assert!(s.remove(3) && !s.remove(3));
        assert_eq!(s.members(), &[1]);
        let mut t = InfectedSet::new(5);
        t.insert(1);
        t.insert(4);
        assert!(s.is_subset(&t) && !t.is_subset(&s));
    }
}
