use super::distance::all_pairs_distances;
use super::{Exponent, Weight, WeightedPartition};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const BRUTE_FORCE_MAX_VERTICES: usize = 10;

/// Intersection of all admissible partitions, by enumerating every set
/// partition (restricted growth strings) against Floyd–Warshall distances.
///
/// Panics if the intersection is not itself admissible, which would
/// contradict the existence of a finest admissible partition.
pub fn brute_force_cmp<G: Graph + ?Sized, W: Weight>(
    g: &G,
    weights: &[W],
    alpha: Exponent,
) -> Result<WeightedPartition<W>> {
    let n = g.order();
    if n > BRUTE_FORCE_MAX_VERTICES {
        return Err(Error::TooManyVertices {
            got: n,
            max: BRUTE_FORCE_MAX_VERTICES,
        });
    }
    if weights.len() != n {
        return Err(Error::WeightCountMismatch {
            weights: weights.len(),
            vertices: n,
        });
    }
    if n == 0 {
        return Ok(WeightedPartition::new(Vec::new(), alpha, Vec::new()));
    }
    let dist = all_pairs_distances(g);
    let mut together = vec![vec![true; n]; n];
    let mut labels = vec![0usize; n];
    loop {
        if admissible(&labels, weights, &dist, &alpha) {
            for x in 0..n {
                for y in 0..n {
                    together[x][y] &= labels[x] == labels[y];
                }
            }
        }
        if !next_growth_string(&mut labels) {
            break;
        }
    }
    // `together` is an equivalence relation; label each class by its first member
    let mut meet = vec![usize::MAX; n];
    let mut next = 0;
    for x in 0..n {
        if meet[x] == usize::MAX {
            for y in x..n {
                if together[x][y] {
                    meet[y] = next;
                }
            }
            next += 1;
        }
    }
    assert!(
        admissible(&meet, weights, &dist, &alpha),
        "intersection of admissible partitions is not admissible"
    );
    Ok(WeightedPartition::from_labels(weights.to_vec(), alpha, &meet))
}

fn admissible<W: Weight>(labels: &[usize], weights: &[W], dist: &[Vec<Option<u64>>], alpha: &Exponent) -> bool {
    let k = labels.iter().max().unwrap() + 1;
    let mut cw = vec![W::zero(); k];
    for (v, &l) in labels.iter().enumerate() {
        cw[l] = cw[l] + weights[v];
    }
    let mut cd: Vec<Vec<Option<u64>>> = vec![vec![None; k]; k];
    for x in 0..labels.len() {
        for y in 0..labels.len() {
            let (a, b) = (labels[x], labels[y]);
            if a != b {
                if let Some(d) = dist[x][y] {
                    if cd[a][b].is_none_or(|c| d < c) {
                        cd[a][b] = Some(d);
                    }
                }
            }
        }
    }
    for a in 0..k {
        for b in a + 1..k {
            let m = if cw[b] < cw[a] { cw[b] } else { cw[a] };
            if let Some(d) = cd[a][b] {
                if !W::separated(d, m, alpha) {
                    return false;
                }
            }
        }
    }
    true
}

/// Advances a restricted growth string (`a[0] = 0`, `a[i] ≤ 1 + max a[..i]`).
fn next_growth_string(a: &mut [usize]) -> bool {
    let n = a.len();
    for i in (1..n).rev() {
        let max_prefix = a[..i].iter().copied().max().unwrap();
        if a[i] <= max_prefix {
            a[i] += 1;
            for x in &mut a[i + 1..] {
                *x = 0;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimpleGraph;

    #[test]
    fn growth_strings_count_bell_numbers() {
        for (n, bell) in [(1, 1), (2, 2), (3, 5), (4, 15), (5, 52), (6, 203), (8, 4140)] {
            let mut a = vec![0; n];
            let mut count = 1;
            while next_growth_string(&mut a) {
                count += 1;
            }
            assert_eq!(count, bell, "n = {n}");
        }
    }

    #[test]
    fn single_vertex() {
        let g = SimpleGraph::empty(1);
        let p = brute_force_cmp(&g, &[3u64], Exponent::new(1.0).unwrap()).unwrap();
        assert_eq!(p.clusters(), &[vec![0]]);
    }

    #[test]
    fn rejects_large_graphs() {
        let g = SimpleGraph::path(11);
        assert_eq!(
            brute_force_cmp(&g, &[0u64; 11], Exponent::new(1.0).unwrap()).unwrap_err(),
            Error::TooManyVertices { got: 11, max: 10 }
        );
    }
}
