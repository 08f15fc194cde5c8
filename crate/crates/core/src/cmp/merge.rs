use std::collections::VecDeque;

use rand::seq::IndexedRandom;
use rand::Rng;

use super::distance::{cluster_distance, multi_source_distance};
use super::{Exponent, Weight, WeightedPartition};
use crate::error::{invalid, Error, Result};
use crate::graph::Graph;

fn check_weights<G: Graph + ?Sized, W: Weight>(g: &G, weights: &[W]) -> Result<()> {
    if weights.len() != g.order() {
        return Err(Error::WeightCountMismatch {
            weights: weights.len(),
            vertices: g.order(),
        });
    }
    if let Some(v) = weights.iter().position(|w| !w.is_valid()) {
        return Err(invalid("weights", format!("vertex {v} has weight {:?}", weights[v])));
    }
    Ok(())
}

fn min_weight<W: Weight>(a: W, b: W) -> W {
    if b < a {
        b
    } else {
        a
    }
}

/// Checks `d(C, C') > min(r(C), r(C'))^α` for every pair of distinct clusters.
pub fn is_admissible<G: Graph + ?Sized, W: Weight>(g: &G, p: &WeightedPartition<W>) -> bool {
    let weights: Vec<W> = (0..p.clusters().len()).map(|i| p.cluster_weight(i)).collect();
    let alpha = p.alpha();
    for i in 0..weights.len() {
        for j in i + 1..weights.len() {
            let m = min_weight(weights[i], weights[j]);
            if m.is_zero() {
                continue;
            }
            if let Some(d) = cluster_distance(g, &p.clusters()[i], &p.clusters()[j]) {
                if !W::separated(d, m, &alpha) {
                    return false;
                }
            }
        }
    }
    true
}

struct Clusters<W> {
    parent: Vec<usize>,
    members: Vec<Vec<usize>>,
    weight: Vec<W>,
}

impl<W: Weight> Clusters<W> {
    fn new(weights: &[W]) -> Self {
        Self {
            parent: (0..weights.len()).collect(),
            members: (0..weights.len()).map(|v| vec![v]).collect(),
            weight: weights.to_vec(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    /// Union by size; returns the surviving root.
    fn merge(&mut self, a: usize, b: usize) -> usize {
        let (big, small) = if self.members[a].len() >= self.members[b].len() {
            (a, b)
        } else {
            (b, a)
        };
        self.parent[small] = big;
        let moved = std::mem::take(&mut self.members[small]);
        self.members[big].extend(moved);
        self.weight[big] = self.weight[big] + self.weight[small];
        self.weight[small] = W::zero();
        big
    }

    fn into_partition(mut self, weights: Vec<W>, alpha: Exponent) -> WeightedPartition<W> {
        let n = self.parent.len();
        let roots: Vec<usize> = (0..n).filter(|&v| self.find(v) == v).collect();
        let clusters = roots.into_iter().map(|r| std::mem::take(&mut self.members[r])).collect();
        WeightedPartition::new(weights, alpha, clusters)
    }
}

/// Cumulatively merged partition: starting from singletons, merge any two
/// clusters violating admissibility until none do.
///
/// Clusters of weight zero never violate, so only positive clusters start a
/// search. Each search is a breadth-first search from the cluster capped at
/// `⌊r(C)^α⌋` hops, since `min(r(C), r(C'))^α ≤ r(C)^α`.
pub fn cmp<G: Graph + ?Sized, W: Weight>(
    g: &G,
    weights: &[W],
    alpha: Exponent,
) -> Result<WeightedPartition<W>> {
    check_weights(g, weights)?;
    let mut cl = Clusters::new(weights);
    let mut queued = vec![false; weights.len()];
    let mut work: VecDeque<usize> = VecDeque::new();
    for v in 0..weights.len() {
        if !weights[v].is_zero() {
            queued[v] = true;
            work.push_back(v);
        }
    }
    while let Some(c) = work.pop_front() {
        queued[c] = false;
        if cl.find(c) != c {
            continue;
        }
        let wc = cl.weight[c];
        let cap = W::reach(wc, &alpha);
        if cap == 0 {
            continue;
        }
        let sources = cl.members[c].clone();
        let hit = multi_source_distance(
            g,
            &sources,
            |y, d| {
                let r = cl.find(y);
                if r == c {
                    return false;
                }
                let wr = cl.weight[r];
                if wr.is_zero() {
                    return false;
                }
                // d <= cap = reach(wc); only a lighter neighbor can lower the reach
                wr >= wc || d <= W::reach(wr, &alpha)
            },
            cap,
        );
        if let Some((_, y)) = hit {
            let other = cl.find(y);
            let root = cl.merge(c, other);
            if !queued[root] {
                queued[root] = true;
                work.push_back(root);
            }
        }
    }
    Ok(cl.into_partition(weights.to_vec(), alpha))
}

/// Same fixpoint, but each step merges a uniformly random violating pair.
///
/// Quadratic in the cluster count per step; meant for order-invariance checks
/// on small instances.
pub fn cmp_random_order<G: Graph + ?Sized, W: Weight, R: Rng + ?Sized>(
    g: &G,
    weights: &[W],
    alpha: Exponent,
    rng: &mut R,
) -> Result<WeightedPartition<W>> {
    check_weights(g, weights)?;
    let mut cl = Clusters::new(weights);
    loop {
        let roots: Vec<usize> = (0..weights.len())
            .filter(|&v| cl.parent[v] == v && !cl.weight[v].is_zero())
            .collect();
        let mut violating = Vec::new();
        for (k, &a) in roots.iter().enumerate() {
            for &b in &roots[k + 1..] {
                let m = min_weight(cl.weight[a], cl.weight[b]);
                if let Some(d) = cluster_distance(g, &cl.members[a], &cl.members[b]) {
                    if !W::separated(d, m, &alpha) {
                        violating.push((a, b));
                    }
                }
            }
        }
        let Some(&(a, b)) = violating.choose(rng) else {
            break;
        };
        cl.merge(a, b);
    }
    Ok(cl.into_partition(weights.to_vec(), alpha))
}
