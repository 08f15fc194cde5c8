//! Cumulatively merged partitions.
//!
//! A partition of a graph's vertices is `(r, α)`-admissible when every two
//! distinct clusters satisfy `d(C, C') > min(r(C), r(C'))^α`; the CMP is the
//! finest admissible partition. Weights are generic over [`Weight`]: `u64`
//! compares exactly in integers, floats compare through `powf`.

mod brute;
mod distance;
mod exponent;
mod merge;
mod partition;
mod projection;
mod weight;
mod weights;

pub use brute::{brute_force_cmp, BRUTE_FORCE_MAX_VERTICES};
pub use distance::{all_pairs_distances, cluster_distance, multi_source_distance};
pub use exponent::Exponent;
pub use merge::{cmp, cmp_random_order, is_admissible};
pub use partition::WeightedPartition;
pub use projection::{projection_check, projection_report, ProjectionReport};
pub use weight::Weight;
pub use weights::{block_weights, degree_weights, DegreeWeightSpec};
