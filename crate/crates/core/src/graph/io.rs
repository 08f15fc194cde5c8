//! Line-oriented graph files.
//!
//! ```text
//! lrpg v1 s=<decimal> lo=<int> hi=<int> seed=<uint64>
//! i j
//! ...
//! ```
//! One `i j` line per edge with `i < j`, in ascending lexicographic order.
//! Lines starting with `#` are trailers (block metadata) and are returned
//! verbatim by the reader.

use std::fmt::Write as _;
use std::io::BufRead;

use super::window::{check_window, GraphWindow};
use super::SimpleGraph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphHeader {
    pub s: f64,
    pub lo: i64,
    pub hi: i64,
    pub seed: u64,
}

impl GraphHeader {
    pub fn line(&self) -> String {
        // `{}` on f64 prints the shortest representation that parses back exactly
        format!(
            "lrpg v1 s={} lo={} hi={} seed={}",
            self.s, self.lo, self.hi, self.seed
        )
    }

    fn parse(line: &str) -> Result<Self> {
        let err = |reason: &str| Error::Parse {
            line: 1,
            reason: reason.to_string(),
        };
        let mut tokens = line.split_whitespace();
        if tokens.next() != Some("lrpg") || tokens.next() != Some("v1") {
            return Err(err("expected header `lrpg v1 ...`"));
        }
        let mut field = |name: &str| -> Result<String> {
            let tok = tokens.next().ok_or_else(|| err(&format!("missing {name}=")))?;
            tok.strip_prefix(name)
                .and_then(|t| t.strip_prefix('='))
                .map(str::to_string)
                .ok_or_else(|| err(&format!("expected {name}=<value>, got `{tok}`")))
        };
        let s = field("s")?.parse::<f64>().map_err(|e| err(&format!("s: {e}")))?;
        let lo = field("lo")?.parse::<i64>().map_err(|e| err(&format!("lo: {e}")))?;
        let hi = field("hi")?.parse::<i64>().map_err(|e| err(&format!("hi: {e}")))?;
        let seed = field("seed")?.parse::<u64>().map_err(|e| err(&format!("seed: {e}")))?;
        if tokens.next().is_some() {
            return Err(err("trailing tokens in header"));
        }
        Ok(Self { s, lo, hi, seed })
    }
}

/// Renders a header, sorted label edges and trailer lines.
pub(crate) fn render(header: &GraphHeader, edges: &[(i64, i64)], trailers: &[String]) -> String {
    let mut out = String::with_capacity(32 + edges.len() * 12);
    out.push_str(&header.line());
    out.push('\n');
    for (i, j) in edges {
        let _ = writeln!(out, "{i} {j}");
    }
    for t in trailers {
        out.push_str(t);
        out.push('\n');
    }
    out
}

pub fn write_graph(g: &GraphWindow) -> String {
    let header = GraphHeader {
        s: g.s(),
        lo: g.lo(),
        hi: g.hi(),
        seed: g.seed(),
    };
    render(&header, &g.labelled_edges(), &[])
}

/// Header, label edges and `#` trailer lines of a graph file.
pub(crate) struct RawGraphFile {
    pub header: GraphHeader,
    pub edges: Vec<(i64, i64)>,
    pub trailers: Vec<String>,
}

pub(crate) fn parse_raw(reader: impl BufRead) -> Result<RawGraphFile> {
    let mut lines = reader.lines().enumerate();
    let io_err = |line: usize, e: std::io::Error| Error::Parse {
        line,
        reason: e.to_string(),
    };
    let header = match lines.next() {
        Some((_, l)) => GraphHeader::parse(&l.map_err(|e| io_err(1, e))?)?,
        None => {
            return Err(Error::Parse {
                line: 1,
                reason: "empty file".into(),
            })
        }
    };
    let mut edges = Vec::new();
    let mut trailers = Vec::new();
    for (k, line) in lines {
        let lineno = k + 1;
        let line = line.map_err(|e| io_err(lineno, e))?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') {
            trailers.push(line.to_string());
            continue;
        }
        let bad = |reason: String| Error::Parse {
            line: lineno,
            reason,
        };
        let mut parts = line.split_whitespace();
        let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(bad(format!("expected `i j`, got `{line}`")));
        };
        let i: i64 = a.parse().map_err(|e| bad(format!("{e}")))?;
        let j: i64 = b.parse().map_err(|e| bad(format!("{e}")))?;
        if i >= j {
            return Err(bad(format!("edge ({i}, {j}) must have i < j")));
        }
        if i < header.lo || j > header.hi {
            return Err(bad(format!(
                "edge ({i}, {j}) outside [{}, {}]",
                header.lo, header.hi
            )));
        }
        edges.push((i, j));
    }
    Ok(RawGraphFile {
        header,
        edges,
        trailers,
    })
}

pub fn read_graph(reader: impl BufRead) -> Result<GraphWindow> {
    let raw = parse_raw(reader)?;
    let GraphHeader { s, lo, hi, seed } = raw.header;
    check_window(s, lo, hi)?;
    let n = (hi - lo + 1) as usize;
    let graph = SimpleGraph::from_edges(
        n,
        raw.edges
            .iter()
            .map(|&(i, j)| ((i - lo) as usize, (j - lo) as usize)),
    )?;
    Ok(GraphWindow::from_parts(lo, hi, s, seed, None, graph))
}
