//! Global numerical tolerances.

/// Hermiticity, trace and PSD checks on states; orthonormality of bases.
pub const VALIDATION: f64 = 1e-10;
/// Eigen-reconstruction and unitarity of computed eigenvectors.
pub const RECONSTRUCTION: f64 = 1e-9;
/// Agreement of two routes to the same derived quantity.
pub const DERIVED: f64 = 1e-8;
/// Input tolerance for the eigensolver's Hermiticity precondition.
pub const EIGEN_INPUT: f64 = 1e-8;
/// Probabilities below this are treated as zero-weight branches.
pub const ZERO_PROB: f64 = 1e-12;
/// Slack allowed when checking an inequality between bound values.
pub const RELATION: f64 = 1e-8;
/// Margin required before the witness reports entanglement.
pub const WITNESS_MARGIN: f64 = 1e-6;
