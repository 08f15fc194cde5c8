use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, SimpleGraph};
use crate::error::{invalid, Error, Result};
use crate::rng::{derive_seed, EdgeCouplingStream};

/// How a window's edges are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplingMode {
    /// Edge `{i, j}` is present iff the stream value for `{i, j}` is below
    /// `|i - j|^{-s}`. Windows sampled from one stream are nested across
    /// exponents: a larger `s` yields a subgraph.
    Coupled,
    /// Geometric skipping along each distance class, driven by a ChaCha8
    /// stream keyed by the seed. Reproducible, but not coupled across `s`.
    Fast,
}

/// Sampled long-range percolation graph on the integer window `[lo, hi]`.
///
/// Equality compares parameters and edges; the sampling mode is provenance
/// only (it is `None` for graphs read back from a file).
#[derive(Debug, Clone)]
pub struct GraphWindow {
    lo: i64,
    hi: i64,
    s: f64,
    seed: u64,
    mode: Option<SamplingMode>,
    graph: SimpleGraph,
}

impl PartialEq for GraphWindow {
    fn eq(&self, other: &Self) -> bool {
        self.lo == other.lo
            && self.hi == other.hi
            && self.s.to_bits() == other.s.to_bits()
            && self.seed == other.seed
            && self.graph == other.graph
    }
}

const FAST_STREAM_TAG: u64 = 0xFA57;

pub(crate) fn check_window(s: f64, lo: i64, hi: i64) -> Result<()> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(Error::NotLocallyFinite(s));
    }
    if hi <= lo {
        return Err(Error::EmptyWindow { lo, hi });
    }
    Ok(())
}

fn window_len(lo: i64, hi: i64) -> Result<usize> {
    usize::try_from(hi - lo)
        .ok()
        .and_then(|n| n.checked_add(1))
        .ok_or_else(|| invalid("window", format!("[{lo}, {hi}] is too large")))
}

impl GraphWindow {
    /// Coupled sampling: every pair in the window consults `stream`.
    pub fn sample(s: f64, lo: i64, hi: i64, stream: &EdgeCouplingStream) -> Result<Self> {
        check_window(s, lo, hi)?;
        let n = window_len(lo, hi)?;
        let mut adj = vec![Vec::new(); n];
        nearest_neighbor_edges(&mut adj);
        for d in 2..n {
            let p = (d as f64).powf(-s);
            for i in 0..n - d {
                let j = i + d;
                if stream.uniform(lo + i as i64, lo + j as i64) < p {
                    adj[i].push(j);
                    adj[j].push(i);
                }
            }
        }
        Ok(Self {
            lo,
            hi,
            s,
            seed: stream.seed(),
            mode: Some(SamplingMode::Coupled),
            graph: SimpleGraph::from_raw(adj),
        })
    }

    /// Expected `O(n + edges)` sampling; see [`SamplingMode::Fast`].
    pub fn sample_fast(s: f64, lo: i64, hi: i64, seed: u64) -> Result<Self> {
        check_window(s, lo, hi)?;
        let n = window_len(lo, hi)?;
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, FAST_STREAM_TAG));
        let mut adj = vec![Vec::new(); n];
        nearest_neighbor_edges(&mut adj);
        for d in 2..n {
            let p = (d as f64).powf(-s);
            let pairs = n - d;
            if p >= 0.25 {
                for i in 0..pairs {
                    if rng.random::<f64>() < p {
                        adj[i].push(i + d);
                        adj[i + d].push(i);
                    }
                }
                continue;
            }
            let log_q = (-p).ln_1p();
            let mut i = 0usize;
            loop {
                let u: f64 = 1.0 - rng.random::<f64>();
                let skip = (u.ln() / log_q).floor();
                if !(skip < (pairs - i) as f64) {
                    break;
                }
                i += skip as usize;
                adj[i].push(i + d);
                adj[i + d].push(i);
                i += 1;
                if i >= pairs {
                    break;
                }
            }
        }
        Ok(Self {
            lo,
            hi,
            s,
            seed,
            mode: Some(SamplingMode::Fast),
            graph: SimpleGraph::from_raw(adj),
        })
    }

    pub(crate) fn from_parts(
        lo: i64,
        hi: i64,
        s: f64,
        seed: u64,
        mode: Option<SamplingMode>,
        graph: SimpleGraph,
    ) -> Self {
        Self {
            lo,
            hi,
            s,
            seed,
            mode,
            graph,
        }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn mode(&self) -> Option<SamplingMode> {
        self.mode
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn index_of(&self, v: i64) -> Result<usize> {
        if v < self.lo || v > self.hi {
            return Err(Error::VertexOutOfWindow {
                vertex: v,
                lo: self.lo,
                hi: self.hi,
            });
        }
        Ok((v - self.lo) as usize)
    }

    /// Degree of the vertex labelled `v`.
    pub fn degree_of(&self, v: i64) -> Result<usize> {
        Ok(self.graph.degree(self.index_of(v)?))
    }

    pub fn neighbors_of(&self, v: i64) -> Result<Vec<i64>> {
        let idx = self.index_of(v)?;
        Ok(self.graph.neighbors(idx).iter().map(|&u| self.lo + u as i64).collect())
    }

    pub fn has_edge_between(&self, u: i64, v: i64) -> Result<bool> {
        Ok(self.graph.has_edge(self.index_of(u)?, self.index_of(v)?))
    }

    /// Edges as label pairs `(i, j)` with `i < j` in lexicographic order.
    pub fn labelled_edges(&self) -> Vec<(i64, i64)> {
        self.graph
            .edges()
            .into_iter()
            .map(|(u, v)| (self.lo + u as i64, self.lo + v as i64))
            .collect()
    }
}

impl Graph for GraphWindow {
    fn order(&self) -> usize {
        self.graph.order()
    }

    fn neighbors(&self, v: usize) -> &[usize] {
        self.graph.neighbors(v)
    }

    fn label(&self, v: usize) -> i64 {
        self.lo + v as i64
    }
}

fn nearest_neighbor_edges(adj: &mut [Vec<usize>]) {
    for i in 1..adj.len() {
        adj[i - 1].push(i);
        adj[i].push(i - 1);
    }
}

/// Degree of `v` in the coupled window `[lo, hi]` without building the graph.
///
/// Equals `GraphWindow::sample(s, lo, hi, stream)?.degree_of(v)?`.
pub fn incident_degree(
    s: f64,
    v: i64,
    lo: i64,
    hi: i64,
    stream: &EdgeCouplingStream,
) -> Result<usize> {
    check_window(s, lo, hi)?;
    if v < lo || v > hi {
        return Err(Error::VertexOutOfWindow { vertex: v, lo, hi });
    }
    let mut deg = usize::from(v > lo) + usize::from(v < hi);
    let reach = (v - lo).max(hi - v);
    for d in 2..=reach {
        let p = (d as f64).powf(-s);
        if v - d >= lo && stream.uniform(v - d, v) < p {
            deg += 1;
        }
        if v + d <= hi && stream.uniform(v, v + d) < p {
            deg += 1;
        }
    }
    Ok(deg)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedSum {
    pub value: f64,
    /// The omitted remainder lies in `[0, tail_bound]`.
    pub tail_bound: f64,
}

/// `2 Σ_{d=1}^{truncation} d^{-s}` and the remainder bound `2 truncation^{1-s} / (s-1)`.
pub fn expected_degree(s: f64, truncation: u64) -> Result<TruncatedSum> {
    if !(s > 1.0) {
        return Err(Error::NotLocallyFinite(s));
    }
    if truncation == 0 {
        return Err(invalid("truncation", "must be at least 1"));
    }
    // smallest terms first
    let sum: f64 = (1..=truncation).rev().map(|d| (d as f64).powf(-s)).sum();
    Ok(TruncatedSum {
        value: 2.0 * sum,
        tail_bound: 2.0 * (truncation as f64).powf(1.0 - s) / (s - 1.0),
    })
}
