//! Explicit constants and inequalities, evaluated in the base-2 log domain,
//! and Monte Carlo checks of the distributional bounds.

mod beta_c;
mod certificate;
mod product;
mod report;
mod series;
mod verify;

pub use beta_c::{beta_c_pipeline, BetaCConstants};
pub use certificate::{certified_delta, CertificateResult};
pub use product::{cut_probability_product, cut_probability_lower_bound, CutProduct};
pub use report::{Cell, CellStatus, Report, MIN_CONDITIONAL_SAMPLES, REPORT_CSV_HEADER};
pub use series::{degree_constant_upper, f_delta, log2_sum, DEGREE_TRUNCATION};
pub use verify::{
    degree_tail_check, degree_tail_check_in, sample_block_statistics, verify_cut_point, verify_epsilon_tail, verify_projection,
    verify_t_tail, BlockStatistics, ProjectionOptions,
};
