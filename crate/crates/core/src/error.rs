use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("decay exponent s = {0} must exceed 1: the graph is locally finite only for s > 1")]
    NotLocallyFinite(f64),
    #[error("decay exponent s = {0} must exceed 2 for cut-points to have positive density")]
    NoCutPoints(f64),
    #[error("window [{lo}, {hi}] is empty: hi must exceed lo")]
    EmptyWindow { lo: i64, hi: i64 },
    #[error("vertex {vertex} lies outside the window [{lo}, {hi}]")]
    VertexOutOfWindow { vertex: i64, lo: i64, hi: i64 },
    #[error("block exploration exceeded the cap of {cap} vertices (s = {s} is too close to 2)")]
    ExplorationRunaway { s: f64, cap: u64 },
    #[error("expansion exponent alpha = {0} must be at least 1")]
    InvalidAlpha(f64),
    #[error("brute-force CMP supports at most {max} vertices, got {got}")]
    TooManyVertices { got: usize, max: usize },
    #[error("weights cover {weights} vertices but the graph has {vertices}")]
    WeightCountMismatch { weights: usize, vertices: usize },
    #[error("infection rate lambda = {0} must be nonnegative and finite")]
    InvalidLambda(f64),
    #[error("time horizon t_max = {0} must be positive")]
    InvalidHorizon(f64),
    #[error("initial infected set is empty")]
    EmptyInitialSet,
    #[error("lambda values must be sorted ascending")]
    UnsortedLambdas,
    #[error("coupled runs must share the initial set")]
    MismatchedInitialSets,
    #[error("bracket invalid: {0}")]
    InvalidBracket(String),
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("malformed input at line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
