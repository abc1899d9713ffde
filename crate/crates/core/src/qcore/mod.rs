//! Dense complex linear algebra and validated quantum objects.

mod eigen;
mod matrix;
mod state;

pub use eigen::{hermitian_spectrum, largest_singular_value, Spectrum};
pub use matrix::{tensor, ComplexMatrix};
pub use state::{partial_trace, validate_basis, validate_state, ProbVector, ProjectiveBasis, QuantumState};
