use super::{cmp, block_weights, degree_weights, DegreeWeightSpec, Exponent, WeightedPartition};
use crate::cut::GluedGraph;
use crate::error::Result;
use crate::graph::{Graph, SimpleGraph};

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionReport {
    /// Every merge of the glued-graph CMP projects into one line cluster.
    pub holds: bool,
    pub glued: WeightedPartition<u64>,
    /// CMP on the path of block indices `0..=n`, the last index holding the
    /// terminal cut-point.
    pub line: WeightedPartition<u64>,
    /// Glued-graph clusters that meet more than one block.
    pub cross_block_clusters: usize,
}

/// Compares the degree-weight CMP of the glued graph with the block-weight
/// CMP on the integer line: `x ~ y` in the former must imply
/// `block(x) ~ block(y)` in the latter.
pub fn projection_report(gg: &GluedGraph, spec: DegreeWeightSpec, alpha: Exponent) -> Result<ProjectionReport> {
    let r = degree_weights(gg.graph(), spec);
    let glued = cmp(gg.graph(), &r, alpha)?;
    let mut z = block_weights(gg, spec);
    // the terminal cut-point starts block n, of which only this vertex is present
    z.push(r[gg.order() - 1]);
    let line = cmp(&SimpleGraph::path(z.len()), &z, alpha)?;
    let line_of = line.assignment();
    let mut holds = true;
    let mut cross = 0;
    for c in glued.clusters() {
        let b0 = gg.block_of(c[0]);
        if c.iter().any(|&v| gg.block_of(v) != b0) {
            cross += 1;
        }
        if c.iter().any(|&v| line_of[gg.block_of(v)] != line_of[b0]) {
            holds = false;
        }
    }
    Ok(ProjectionReport {
        holds,
        glued,
        line,
        cross_block_clusters: cross,
    })
}

pub fn projection_check(gg: &GluedGraph, spec: DegreeWeightSpec, alpha: Exponent) -> Result<bool> {
    projection_report(gg, spec, alpha).map(|r| r.holds)
}
