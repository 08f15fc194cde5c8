use crate::error::{Error, Result};
use crate::graph::{GraphHeader, SimpleGraph};
use crate::numerics::log_product_tail;
use crate::rng::EdgeCouplingStream;

pub const DEFAULT_EXPLORATION_CAP: u64 = 10_000_000;

const TABLE_LEN: usize = 4096;

/// Law of the distance `F` from a vertex to its farthest right neighbor in
/// the unconditioned graph: `P(F ≤ m) = Π_{d > m} (1 - d^{-s})`, `m ≥ 1`.
///
/// Sampled by inverting the upper tail, so that small tail probabilities keep
/// full floating-point resolution.
#[derive(Debug, Clone)]
pub struct FarthestNeighborLaw {
    s: f64,
    /// `tail[m] = P(F > m)` for `m < TABLE_LEN`; `tail[0] = 1`.
    tail: Vec<f64>,
    /// `edge_prob[d] = d^{-s}` for `d < TABLE_LEN`.
    edge_prob: Vec<f64>,
}

impl FarthestNeighborLaw {
    pub fn new(s: f64) -> Result<Self> {
        if !(s > 2.0) || !s.is_finite() {
            return Err(Error::NoCutPoints(s));
        }
        let edge_prob: Vec<f64> = (0..TABLE_LEN)
            .map(|d| if d == 0 { 1.0 } else { (d as f64).powf(-s) })
            .collect();
        // minus log P(F <= m), accumulated from the far end so small terms go first
        let mut neg_log = vec![0.0; TABLE_LEN];
        let last = TABLE_LEN - 1;
        neg_log[last] = log_product_tail(s, last as f64);
        for m in (0..last).rev() {
            neg_log[m] = neg_log[m + 1] + -(-edge_prob[m + 1]).ln_1p();
        }
        let mut tail: Vec<f64> = neg_log.iter().map(|&x| -(-x).exp_m1()).collect();
        tail[0] = 1.0;
        Ok(Self {
            s,
            tail,
            edge_prob,
        })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn edge_prob(&self, d: u64) -> f64 {
        if (d as usize) < TABLE_LEN {
            self.edge_prob[d as usize]
        } else {
            (d as f64).powf(-self.s)
        }
    }

    /// `P(F > m)`.
    pub fn tail(&self, m: u64) -> f64 {
        if (m as usize) < TABLE_LEN {
            self.tail[m as usize]
        } else {
            -(-log_product_tail(self.s, m as f64)).exp_m1()
        }
    }

    /// Smallest `m ≥ 1` with `P(F > m) < v`, for `v ∈ (0, 1]`; `None` past `cap`.
    pub fn invert(&self, v: f64, cap: u64) -> Option<u64> {
        if self.tail[1] < v {
            return Some(1);
        }
        let last = (TABLE_LEN - 1) as u64;
        if self.tail(last) < v {
            // tail[lo] >= v > tail[hi]
            let (mut lo, mut hi) = (1usize, TABLE_LEN - 1);
            while hi - lo > 1 {
                let mid = (lo + hi) / 2;
                if self.tail[mid] < v {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Some(hi as u64);
        }
        let mut lo = last;
        let mut hi = last * 2;
        while self.tail(hi) >= v {
            if hi > cap {
                return None;
            }
            lo = hi;
            hi = hi.saturating_mul(2);
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.tail(mid) < v {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (hi <= cap).then_some(hi)
    }
}

/// One inter-cut-point block `[0, D)` with its exploration trace.
///
/// `edges` holds every edge with left endpoint in `[0, D)`; right endpoints
/// lie in `[0, D]`, where `D` is the next cut-point. Edges ending at `D`
/// are what the exploration reads to locate `D`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockSample {
    s: f64,
    seed: u64,
    length: u64,
    epsilons: Vec<u64>,
    xs: Vec<u64>,
    edges: Vec<(u64, u64)>,
}

impl BlockSample {
    /// Block length `D`, the distance to the next cut-point.
    pub fn length(&self) -> u64 {
        self.length
    }

    /// Stopping index `T`.
    pub fn stopping_index(&self) -> usize {
        self.epsilons.len()
    }

    /// Increments `ε_1, …, ε_T` (the last is 0).
    pub fn epsilons(&self) -> &[u64] {
        &self.epsilons
    }

    /// Reaches `X_0 = 1, X_1, …, X_T`.
    pub fn xs(&self) -> &[u64] {
        &self.xs
    }

    pub fn edges(&self) -> &[(u64, u64)] {
        &self.edges
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Graph on `[0, D]` (the closing cut-point included).
    pub fn graph(&self) -> SimpleGraph {
        SimpleGraph::from_edges(
            self.length as usize + 1,
            self.edges.iter().map(|&(a, b)| (a as usize, b as usize)),
        )
        .expect("block edges stay inside [0, D]")
    }

    /// Checks the trace identities and that replaying the exploration on
    /// the edges reproduces `xs`.
    pub fn is_consistent(&self) -> bool {
        let t = self.epsilons.len();
        if t == 0 || self.xs.len() != t + 1 || self.xs[0] != 1 {
            return false;
        }
        if self.epsilons[t - 1] != 0 || self.epsilons[..t - 1].contains(&0) {
            return false;
        }
        let increments_ok = (1..=t).all(|i| self.xs[i] == self.xs[i - 1] + self.epsilons[i - 1]);
        let length_ok = self.length == 1 + self.epsilons.iter().sum::<u64>()
            && self.xs[t] == self.length
            && self.xs[t - 1] == self.length;
        let edges_ok = self
            .edges
            .iter()
            .all(|&(a, b)| a < b && a < self.length && b <= self.length);
        increments_ok && length_ok && edges_ok && replay_exploration(&self.edges) == self.xs
    }

    /// Graph-file text with a `# block D=.. T=.. eps=..` trailer.
    pub fn to_file_string(&self) -> String {
        let header = GraphHeader {
            s: self.s,
            lo: 0,
            hi: self.length as i64,
            seed: self.seed,
        };
        let edges: Vec<(i64, i64)> = self.edges.iter().map(|&(a, b)| (a as i64, b as i64)).collect();
        let eps: Vec<String> = self.epsilons.iter().map(u64::to_string).collect();
        let trailer = format!(
            "# block D={} T={} eps={}",
            self.length,
            self.epsilons.len(),
            eps.join(",")
        );
        crate::graph::io_render(&header, &edges, &[trailer])
    }

    pub fn from_file_str(text: &str) -> Result<Self> {
        let raw = crate::graph::io_parse(text.as_bytes())?;
        let bad = |reason: String| Error::Parse { line: 0, reason };
        let trailer = raw
            .trailers
            .iter()
            .find(|t| t.starts_with("# block "))
            .ok_or_else(|| bad("missing `# block` trailer".into()))?;
        let mut length = None;
        let mut t_val = None;
        let mut eps = None;
        for tok in trailer["# block ".len()..].split_whitespace() {
            if let Some(v) = tok.strip_prefix("D=") {
                length = Some(v.parse::<u64>().map_err(|e| bad(format!("D: {e}")))?);
            } else if let Some(v) = tok.strip_prefix("T=") {
                t_val = Some(v.parse::<usize>().map_err(|e| bad(format!("T: {e}")))?);
            } else if let Some(v) = tok.strip_prefix("eps=") {
                let list: std::result::Result<Vec<u64>, _> = v.split(',').map(str::parse).collect();
                eps = Some(list.map_err(|e| bad(format!("eps: {e}")))?);
            }
        }
        let (Some(length), Some(t_val), Some(epsilons)) = (length, t_val, eps) else {
            return Err(bad("block trailer needs D=, T= and eps=".into()));
        };
        if epsilons.len() != t_val {
            return Err(bad(format!("T={t_val} but {} increments", epsilons.len())));
        }
        if raw.header.lo != 0 || raw.header.hi != length as i64 {
            return Err(bad("block header must span [0, D]".into()));
        }
        let mut xs = vec![1u64];
        for &e in &epsilons {
            xs.push(xs.last().unwrap() + e);
        }
        let block = Self {
            s: raw.header.s,
            seed: raw.header.seed,
            length,
            epsilons,
            xs,
            edges: raw.edges.iter().map(|&(a, b)| (a as u64, b as u64)).collect(),
        };
        if !block.is_consistent() {
            return Err(bad("block trace does not match its edges".into()));
        }
        Ok(block)
    }
}

/// Recomputes `X_0, …, X_T` from a block's edges: `X_{-1} = 0`, `X_0 = 1`,
/// `X_i = max{k : j ~ k, X_{i-2} ≤ j < X_{i-1}}`, stopping at the first repeat.
pub fn replay_exploration(edges: &[(u64, u64)]) -> Vec<u64> {
    let top = edges.iter().map(|&(_, b)| b).max().unwrap_or(1) as usize;
    let mut farthest = vec![0u64; top + 1];
    for &(a, b) in edges {
        let a = a as usize;
        farthest[a] = farthest[a].max(b);
    }
    let mut xs = vec![1u64];
    let mut prev = 0u64;
    loop {
        let cur = *xs.last().unwrap();
        let next = (prev..cur)
            .map(|j| farthest.get(j as usize).copied().unwrap_or(0).max(j + 1))
            .max()
            .unwrap_or(cur);
        xs.push(next);
        if next == cur {
            return xs;
        }
        prev = cur;
    }
}

/// Exact sampler of the block `[0, K_1)` following a cut-point at 0.
///
/// Each vertex `j` in the explored range first draws its farthest right
/// neighbor `j + F_j` from [`FarthestNeighborLaw`] using the stream value of
/// the pair `{j, j+1}` (an edge that is always present, so its uniform is
/// otherwise unused). Given `F_j`, the edges to `j + d` with `2 ≤ d < F_j`
/// are independent with probability `d^{-s}` and read the stream value of
/// their own pair. No edge to the left of 0 is ever generated, which is the
/// conditioning on 0 being a cut-point.
#[derive(Debug, Clone)]
pub struct BlockSampler {
    law: FarthestNeighborLaw,
    cap: u64,
}

impl BlockSampler {
    pub fn new(s: f64) -> Result<Self> {
        Ok(Self {
            law: FarthestNeighborLaw::new(s)?,
            cap: DEFAULT_EXPLORATION_CAP,
        })
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }

    pub fn s(&self) -> f64 {
        self.law.s
    }

    pub fn law(&self) -> &FarthestNeighborLaw {
        &self.law
    }

    pub fn sample(&self, stream: &EdgeCouplingStream) -> Result<BlockSample> {
        let runaway = || Error::ExplorationRunaway {
            s: self.law.s,
            cap: self.cap,
        };
        let mut xs = vec![1u64];
        let mut epsilons = Vec::new();
        let mut edges = Vec::new();
        let mut prev = 0u64;
        loop {
            let cur = *xs.last().unwrap();
            let mut reach = cur;
            for j in prev..cur {
                let (ji, nj) = (j as i64, j as i64 + 1);
                let far = self
                    .law
                    .invert(stream.upper_uniform(ji, nj), self.cap)
                    .ok_or_else(runaway)?;
                edges.push((j, j + 1));
                for d in 2..far {
                    if stream.uniform(ji, ji + d as i64) < self.law.edge_prob(d) {
                        edges.push((j, j + d));
                    }
                }
                if far >= 2 {
                    edges.push((j, j + far));
                }
                reach = reach.max(j + far);
            }
            if reach > self.cap {
                return Err(runaway());
            }
            epsilons.push(reach - cur);
            xs.push(reach);
            if reach == cur {
                break;
            }
            prev = cur;
        }
        edges.sort_unstable();
        Ok(BlockSample {
            s: self.law.s,
            seed: stream.seed(),
            length: *xs.last().unwrap(),
            epsilons,
            xs,
            edges,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_s_at_most_two() {
        assert_eq!(BlockSampler::new(2.0).unwrap_err(), Error::NoCutPoints(2.0));
        assert!(BlockSampler::new(1.5).is_err());
    }

    #[test]
    fn tail_matches_direct_product() {
        let law = FarthestNeighborLaw::new(3.0).unwrap();
        for m in [1u64, 2, 5, 40] {
            let log_p: f64 = (m + 1..2_000_000).map(|d| (-(d as f64).powf(-3.0)).ln_1p()).sum();
            let direct = -log_p.exp_m1();
            assert!((law.tail(m) - direct).abs() < 1e-9 * direct, "m = {m}");
        }
        // continuity across the table boundary
        let a = law.tail(4095);
        let b = law.tail(4096);
        assert!(b < a && (a - b) / a < 1e-3);
    }

    #[test]
    fn inversion_is_the_generalized_inverse() {
        let law = FarthestNeighborLaw::new(2.5).unwrap();
        for &v in &[1.0, 0.5, 0.1, 1e-3, 1e-6, 1e-9] {
            let m = law.invert(v, u64::MAX).unwrap();
            assert!(law.tail(m) < v);
            assert!(m == 1 || law.tail(m - 1) >= v);
        }
    }

    #[test]
    fn immediate_stop_gives_unit_block() {
        let sampler = BlockSampler::new(8.0).unwrap();
        // P(F_0 = 1) is about 0.996 at s = 8; find such a seed
        let block = (0..)
            .map(|seed| sampler.sample(&EdgeCouplingStream::new(seed)).unwrap())
            .find(|b| b.length() == 1)
            .unwrap();
        assert_eq!(block.stopping_index(), 1);
        assert_eq!(block.xs(), &[1, 1]);
        assert_eq!(block.epsilons(), &[0]);
        assert_eq!(block.edges(), &[(0, 1)]);
        assert!(block.is_consistent());
    }

    #[test]
    fn traces_are_consistent_near_two() {
        let sampler = BlockSampler::new(2.3).unwrap();
        for seed in 0..300 {
            let b = sampler.sample(&EdgeCouplingStream::new(seed)).unwrap();
            assert!(b.is_consistent(), "seed {seed}");
        }
    }

    #[test]
    fn cap_aborts_runaway() {
        let sampler = BlockSampler::new(2.01).unwrap().with_cap(50);
        let failures = (0..200)
            .filter(|&seed| sampler.sample(&EdgeCouplingStream::new(seed)).is_err())
            .count();
        assert!(failures > 0);
    }

    #[test]
    fn file_round_trip() {
        let sampler = BlockSampler::new(3.0).unwrap();
        let block = (0..)
            .map(|seed| sampler.sample(&EdgeCouplingStream::new(seed)).unwrap())
            .find(|b| b.stopping_index() >= 3)
            .unwrap();
        let text = block.to_file_string();
        assert!(text.lines().last().unwrap().starts_with(&format!("# block D={} T=", block.length())));
        assert_eq!(BlockSample::from_file_str(&text).unwrap(), block);
        let broken = text.replace("# block D=", "# block D=9");
        assert!(BlockSample::from_file_str(&broken).is_err());
    }
}
