//! Graphs on integer labels and the long-range percolation sampler.

mod io;
mod window;

pub use io::{read_graph, write_graph, GraphHeader};
pub(crate) use io::{parse_raw as io_parse, render as io_render};
pub use window::{expected_degree, incident_degree, GraphWindow, SamplingMode, TruncatedSum};

use crate::error::{invalid, Result};

/// Finite undirected simple graph on local indices `0..order()`.
///
/// `label` maps a local index to the integer vertex name used in files and
/// reports.
pub trait Graph {
    fn order(&self) -> usize;

    /// Sorted neighbor indices of `v`.
    fn neighbors(&self, v: usize) -> &[usize];

    fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    fn label(&self, v: usize) -> i64 {
        v as i64
    }

    fn edge_count(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v` in ascending lexicographic order.
    fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.order() {
            for &v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

impl<G: Graph + ?Sized> Graph for &G {
    fn order(&self) -> usize {
        (**self).order()
    }
    fn neighbors(&self, v: usize) -> &[usize] {
        (**self).neighbors(v)
    }
    fn label(&self, v: usize) -> i64 {
        (**self).label(v)
    }
}

/// Adjacency-list graph with sorted, deduplicated neighbor lists.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(invalid("edge", format!("({u}, {v}) outside 0..{n}")));
            }
            if u == v {
                return Err(invalid("edge", format!("self-loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Self::from_raw(adj))
    }

    /// Sorts and deduplicates each list. The lists must already be symmetric.
    pub(crate) fn from_raw(mut adj: Vec<Vec<usize>>) -> Self {
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Self { adj }
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path edges are valid")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::from_edges(n, edges).expect("complete-graph edges are valid")
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }
}

impl Graph for SimpleGraph {
    fn order(&self) -> usize {
        self.adj.len()
    }

    fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_and_complete() {
        let p = SimpleGraph::path(4);
        assert_eq!(p.edge_count(), 3);
        assert_eq!(p.edges(), vec![(0, 1), (1, 2), (2, 3)]);
        let k = SimpleGraph::complete(5);
        assert_eq!(k.edge_count(), 10);
        assert!((0..5).all(|v| k.degree(v) == 4));
    }

    #[test]
    fn from_edges_rejects_loops_and_strays() {
        assert!(SimpleGraph::from_edges(3, [(1, 1)]).is_err());
        assert!(SimpleGraph::from_edges(3, [(0, 3)]).is_err());
        let g = SimpleGraph::from_edges(3, [(0, 2), (2, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }
}
