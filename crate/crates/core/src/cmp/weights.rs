use crate::cut::GluedGraph;
use crate::graph::Graph;

/// Degree weights `r_△(x) = deg(x) · 1(deg(x) ≥ △)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeWeightSpec {
    /// `△`; `f64::INFINITY` zeroes every weight.
    pub threshold: f64,
}

impl DegreeWeightSpec {
    pub fn new(threshold: f64) -> Self {
        Self { threshold }
    }

    pub fn weight(&self, degree: usize) -> u64 {
        if degree as f64 >= self.threshold {
            degree as u64
        } else {
            0
        }
    }
}

pub fn degree_weights<G: Graph + ?Sized>(g: &G, spec: DegreeWeightSpec) -> Vec<u64> {
    (0..g.order()).map(|v| spec.weight(g.degree(v))).collect()
}

/// `Z_i = Σ_{x ∈ block i} r_△(x)` with degrees taken in the glued graph.
pub fn block_weights(gg: &GluedGraph, spec: DegreeWeightSpec) -> Vec<u64> {
    (0..gg.block_count())
        .map(|i| gg.block_range(i).map(|v| spec.weight(gg.degree(v))).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimpleGraph;

    #[test]
    fn thresholds() {
        let g = SimpleGraph::path(3);
        assert_eq!(degree_weights(&g, DegreeWeightSpec::new(0.0)), vec![1, 2, 1]);
        assert_eq!(degree_weights(&g, DegreeWeightSpec::new(2.0)), vec![0, 2, 0]);
        assert_eq!(degree_weights(&g, DegreeWeightSpec::new(f64::INFINITY)), vec![0, 0, 0]);
    }
}
