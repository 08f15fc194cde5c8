use super::block::{BlockSample, BlockSampler};
use super::{cut_point_indices, CutPoint};
use crate::error::{invalid, Result};
use crate::graph::{Graph, SimpleGraph};
use crate::rng::{derive_seed, EdgeCouplingStream};

/// Blocks laid end to end: block `i` occupies `[offset_i, offset_{i+1})` and
/// its closing edges land on `offset_{i+1}`, the first vertex of block `i+1`.
///
/// The vertex set is `[0, K_n]`, where the terminal vertex `K_n` is the
/// cut-point closing the last block. No edge spans any offset.
#[derive(Debug, Clone, PartialEq)]
pub struct GluedGraph {
    blocks: Vec<BlockSample>,
    offsets: Vec<u64>,
    graph: SimpleGraph,
}

pub fn glue_blocks(blocks: Vec<BlockSample>) -> Result<GluedGraph> {
    if blocks.is_empty() {
        return Err(invalid("blocks", "at least one block is required"));
    }
    let mut offsets = Vec::with_capacity(blocks.len() + 1);
    offsets.push(0u64);
    for b in &blocks {
        offsets.push(offsets.last().unwrap() + b.length());
    }
    let total = *offsets.last().unwrap() as usize;
    let mut adj = vec![Vec::new(); total + 1];
    for (b, &off) in blocks.iter().zip(&offsets) {
        for &(x, y) in b.edges() {
            let (u, v) = ((off + x) as usize, (off + y) as usize);
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    Ok(GluedGraph {
        blocks,
        offsets,
        graph: SimpleGraph::from_raw(adj),
    })
}

impl GluedGraph {
    /// Glues `count` blocks; block `i` reads the stream seeded by `derive_seed(master_seed, i)`.
    pub fn sample(sampler: &BlockSampler, count: usize, master_seed: u64) -> Result<Self> {
        let blocks = (0..count as u64)
            .map(|i| sampler.sample(&EdgeCouplingStream::new(derive_seed(master_seed, i))))
            .collect::<Result<Vec<_>>>()?;
        glue_blocks(blocks)
    }

    pub fn blocks(&self) -> &[BlockSample] {
        &self.blocks
    }

    /// `offset_0 = 0, …, offset_n = K_n`; `n + 1` entries.
    pub fn offsets(&self) -> &[u64] {
        &self.offsets
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Index of the block containing `v`; the terminal vertex maps to `block_count()`.
    pub fn block_of(&self, v: usize) -> usize {
        self.offsets.partition_point(|&o| o <= v as u64) - 1
    }

    /// Vertex range `[offset_i, offset_{i+1})` of block `i`.
    pub fn block_range(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i] as usize..self.offsets[i + 1] as usize
    }

    /// Graph-file text for the glued graph, one `# block` trailer per block.
    pub fn to_file_string(&self, master_seed: u64) -> String {
        let header = crate::graph::GraphHeader {
            s: self.blocks[0].s(),
            lo: 0,
            hi: *self.offsets.last().unwrap() as i64,
            seed: master_seed,
        };
        let mut edges = Vec::new();
        for (u, nbrs) in self.graph.adjacency().iter().enumerate() {
            edges.extend(nbrs.iter().filter(|&&v| v > u).map(|&v| (u as i64, v as i64)));
        }
        let trailers: Vec<String> = self
            .blocks
            .iter()
            .zip(&self.offsets)
            .enumerate()
            .map(|(i, (b, off))| {
                let eps: Vec<String> = b.epsilons().iter().map(u64::to_string).collect();
                format!(
                    "# block {i} offset={off} D={} T={} eps={}",
                    b.length(),
                    b.epsilons().len(),
                    eps.join(",")
                )
            })
            .collect();
        crate::graph::io_render(&header, &edges, &trailers)
    }

    /// Cut-points of the glued graph. There is no outside, so bounds are 0.
    pub fn find_cut_points(&self) -> Vec<CutPoint> {
        cut_point_indices(&self.graph)
            .into_iter()
            .map(|k| CutPoint {
                vertex: k as i64,
                tail_bound: 0.0,
            })
            .collect()
    }
}

impl Graph for GluedGraph {
    fn order(&self) -> usize {
        self.graph.order()
    }

    fn neighbors(&self, v: usize) -> &[usize] {
        self.graph.neighbors(v)
    }
}
