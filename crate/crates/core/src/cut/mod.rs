//! Cut-points, exact inter-cut-point blocks and their gluing.

mod block;
mod glue;

pub use block::{replay_exploration, BlockSample, BlockSampler, FarthestNeighborLaw, DEFAULT_EXPLORATION_CAP};
pub use glue::{glue_blocks, GluedGraph};

use crate::graph::{Graph, GraphWindow};

/// A vertex `k` of a window with no in-window edge `{i, j}`, `i < k < j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutPoint {
    pub vertex: i64,
    /// Upper bound on the probability that an edge leaving the window spans
    /// `vertex`: `2 m^{2-s} / (s-2)` with `m` the distance to the nearer
    /// window end, capped at 1. Zero when the graph has no outside.
    pub tail_bound: f64,
}

/// Local indices `k` such that no edge `{i, j}` has `i < k < j`.
///
/// Both ends of the index range qualify vacuously.
pub fn cut_point_indices<G: Graph + ?Sized>(g: &G) -> Vec<usize> {
    let mut out = Vec::new();
    // farthest right endpoint among edges leaving vertices < k
    let mut reach = 0usize;
    for k in 0..g.order() {
        if reach <= k {
            out.push(k);
        }
        if let Some(&far) = g.neighbors(k).last() {
            reach = reach.max(far);
        }
    }
    out
}

/// Truncation bound for a window cut-point at distance `m` from the nearer end.
pub fn window_tail_bound(s: f64, m: i64) -> f64 {
    if m <= 0 || s <= 2.0 {
        return 1.0;
    }
    (2.0 * (m as f64).powf(2.0 - s) / (s - 2.0)).min(1.0)
}

pub fn find_cut_points(g: &GraphWindow) -> Vec<CutPoint> {
    cut_point_indices(g)
        .into_iter()
        .map(|k| {
            let vertex = g.lo() + k as i64;
            let m = (vertex - g.lo()).min(g.hi() - vertex);
            CutPoint {
                vertex,
                tail_bound: window_tail_bound(g.s(), m),
            }
        })
        .collect()
}
