use super::{Exponent, Weight};

/// A partition of `0..n` together with the weights and exponent it was built for.
///
/// Clusters are kept canonical: members sorted, clusters ordered by their
/// smallest member.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedPartition<W> {
    weights: Vec<W>,
    alpha: Exponent,
    clusters: Vec<Vec<usize>>,
}

impl<W: Weight> WeightedPartition<W> {
    pub fn new(weights: Vec<W>, alpha: Exponent, mut clusters: Vec<Vec<usize>>) -> Self {
        for c in &mut clusters {
            c.sort_unstable();
        }
        clusters.retain(|c| !c.is_empty());
        clusters.sort_unstable_by_key(|c| c[0]);
        Self {
            weights,
            alpha,
            clusters,
        }
    }

    pub fn singletons(weights: Vec<W>, alpha: Exponent) -> Self {
        let clusters = (0..weights.len()).map(|v| vec![v]).collect();
        Self::new(weights, alpha, clusters)
    }

    /// Groups vertices by a label per vertex (e.g. a restricted growth string).
    pub fn from_labels(weights: Vec<W>, alpha: Exponent, labels: &[usize]) -> Self {
        let k = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut clusters = vec![Vec::new(); k];
        for (v, &l) in labels.iter().enumerate() {
            clusters[l].push(v);
        }
        Self::new(weights, alpha, clusters)
    }

    pub fn clusters(&self) -> &[Vec<usize>] {
        &self.clusters
    }

    pub fn weights(&self) -> &[W] {
        &self.weights
    }

    pub fn alpha(&self) -> Exponent {
        self.alpha
    }

    pub fn vertex_count(&self) -> usize {
        self.weights.len()
    }

    /// `r(C) = Σ_{x ∈ C} r(x)`.
    pub fn cluster_weight(&self, i: usize) -> W {
        self.clusters[i]
            .iter()
            .fold(W::zero(), |acc, &v| acc + self.weights[v])
    }

    /// Cluster index of each vertex.
    pub fn assignment(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; self.weights.len()];
        for (i, c) in self.clusters.iter().enumerate() {
            for &v in c {
                out[v] = i;
            }
        }
        out
    }

    /// Disjoint, covering, nonempty clusters.
    pub fn is_partition(&self) -> bool {
        let mut seen = vec![false; self.weights.len()];
        for c in &self.clusters {
            for &v in c {
                if v >= seen.len() || seen[v] {
                    return false;
                }
                seen[v] = true;
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// `self` refines `coarser`: every cluster lies inside one cluster of `coarser`.
    pub fn refines<V: Weight>(&self, coarser: &WeightedPartition<V>) -> bool {
        let assign = coarser.assignment();
        self.clusters
            .iter()
            .all(|c| c.iter().all(|&v| assign[v] == assign[c[0]]))
    }

    /// One line per cluster, labels ascending and space separated, clusters
    /// ordered by smallest label.
    pub fn to_text(&self, label: impl Fn(usize) -> i64) -> String {
        let mut rows: Vec<Vec<i64>> = self
            .clusters
            .iter()
            .map(|c| {
                let mut r: Vec<i64> = c.iter().map(|&v| label(v)).collect();
                r.sort_unstable();
                r
            })
            .collect();
        rows.sort_unstable_by_key(|r| r[0]);
        let mut out = String::new();
        for r in rows {
            let line: Vec<String> = r.iter().map(i64::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}
