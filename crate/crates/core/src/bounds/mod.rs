//! Classical and memory-assisted bounds for a pair of measurements.

mod frame;
mod measures;
mod overlap;
mod registry;
mod report;

pub use frame::{b_maj_ds, direct_sum_frame, FrameKind, MajorizationFrame, MAX_FRAME_DIM};
pub use measures::{q1, q2, q_lambda};
pub use overlap::{b_cp, b_mu, b_xj, overlaps, OverlapData};
pub use registry::{BoundValue, ClassicalBound, ClassicalInput, FnBound, MajorizationBound, Registry};
pub use report::{
    bound_c, bound_cc, hybrid_bound, hybrid_bound_with_lambdas, relation_satisfied, BoundReport, DEFAULT_LAMBDAS,
};
