use std::collections::VecDeque;

use crate::graph::Graph;

/// Multi-source breadth-first search from `sources`, stopping at the first
/// vertex `v` at hop distance `d ≥ 1` with `is_target(v, d)`, or once `cap`
/// hops are exhausted.
///
/// Returns the hop count and the target reached. `None` when no target is
/// within `cap` hops (a disconnected target is never reached).
pub fn multi_source_distance<G: Graph + ?Sized>(
    g: &G,
    sources: &[usize],
    mut is_target: impl FnMut(usize, u64) -> bool,
    cap: u64,
) -> Option<(u64, usize)> {
    let mut seen = vec![false; g.order()];
    let mut queue = VecDeque::new();
    for &s in sources {
        if !seen[s] {
            seen[s] = true;
            queue.push_back((s, 0u64));
        }
    }
    while let Some((v, d)) = queue.pop_front() {
        if d > 0 && is_target(v, d) {
            return Some((d, v));
        }
        if d == cap {
            continue;
        }
        for &u in g.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                queue.push_back((u, d + 1));
            }
        }
    }
    None
}

/// `min_{x ∈ a, y ∈ b} d(x, y)`; `None` stands for an infinite distance.
///
/// The sets must be nonempty and disjoint.
pub fn cluster_distance<G: Graph + ?Sized>(g: &G, a: &[usize], b: &[usize]) -> Option<u64> {
    debug_assert!(!a.is_empty() && !b.is_empty());
    let mut in_b = vec![false; g.order()];
    for &y in b {
        in_b[y] = true;
    }
    debug_assert!(a.iter().all(|&x| !in_b[x]), "clusters must be disjoint");
    multi_source_distance(g, a, |v, _| in_b[v], u64::MAX).map(|(d, _)| d)
}

/// Floyd–Warshall hop distances; `None` for disconnected pairs.
#[allow(clippy::needless_range_loop)]
pub fn all_pairs_distances<G: Graph + ?Sized>(g: &G) -> Vec<Vec<Option<u64>>> {
    let n = g.order();
    let mut dist = vec![vec![None; n]; n];
    for v in 0..n {
        dist[v][v] = Some(0);
        for &u in g.neighbors(v) {
            dist[v][u] = Some(1);
        }
    }
    for k in 0..n {
        for i in 0..n {
            let Some(ik) = dist[i][k] else { continue };
            for j in 0..n {
                if let Some(kj) = dist[k][j] {
                    let via = ik + kj;
                    if dist[i][j].is_none_or(|d| via < d) {
                        dist[i][j] = Some(via);
                    }
                }
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimpleGraph;

    #[test]
    fn path_distances() {
        let p = SimpleGraph::path(3);
        assert_eq!(cluster_distance(&p, &[0], &[1]), Some(1));
        assert_eq!(cluster_distance(&p, &[0], &[2]), Some(2));
        let p8 = SimpleGraph::path(8);
        assert_eq!(cluster_distance(&p8, &[0, 7], &[3]), Some(3));
    }

    #[test]
    fn disconnected_is_infinite() {
        let g = SimpleGraph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(cluster_distance(&g, &[0], &[3]), None);
    }

    #[test]
    fn cap_limits_search() {
        let p = SimpleGraph::path(10);
        assert_eq!(multi_source_distance(&p, &[0], |v, _| v == 9, 8), None);
        assert_eq!(multi_source_distance(&p, &[0], |v, _| v == 9, 9), Some((9, 9)));
    }

    #[test]
    fn bfs_agrees_with_floyd_warshall() {
        let st = crate::rng::EdgeCouplingStream::new(5);
        let g = crate::graph::GraphWindow::sample(1.6, 0, 30, &st).unwrap();
        let apsp = all_pairs_distances(&g);
        for (a, b) in [(vec![0, 4], vec![30]), (vec![10], vec![11, 29]), (vec![3], vec![17])] {
            let brute = a.iter().flat_map(|&x| b.iter().map(move |&y| (x, y))).filter_map(|(x, y)| apsp[x][y]).min();
            assert_eq!(cluster_distance(&g, &a, &b), brute);
        }
    }
}
