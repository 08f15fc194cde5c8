//! Long-range percolation on the integers, cumulatively merged partitions
//! and the contact process.
//!
//! - [`graph`]: sampling `G_s` on finite windows with counter-based edge uniforms.
//! - [`cut`]: cut-points, exact block exploration, glued renewal graphs.
//! - [`cmp`]: cumulatively merged partitions, generic over the weight scalar.
//! - [`contact`]: Gillespie and graphical-construction contact process.
//! - [`bounds`]: log-domain evaluation of the explicit constants and the
//!   statistical bound checks.

// Negated comparisons double as NaN rejection.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cmp;
pub mod contact;
pub mod cut;
pub mod error;
pub mod graph;
pub mod logq;
pub mod numerics;
pub mod rng;
pub mod stats;

pub use error::{Error, Result};
pub use logq::LogQuantity;

/// Base-2 log-domain quantity over `f64`.
pub type Log2 = LogQuantity<f64>;
/// Partition with exact integer (degree) weights.
pub type DegreePartition = cmp::WeightedPartition<u64>;
/// Partition with real weights.
pub type RealPartition = cmp::WeightedPartition<f64>;
