//! Entropic uncertainty relations for projective measurements, with and
//! without a quantum memory.
//!
//! The crate is organised bottom-up:
//!
//! - [`qcore`]: dense complex matrices, Hermitian eigensolver, density
//!   matrices, projective bases and probability vectors.
//! - [`entropy`]: Shannon / von Neumann / relative entropies, measurement
//!   ensembles on the memory and the Holevo-type terms `S_m`, `χ_m`.
//! - [`bounds`]: overlap data, direct-sum majorization frames, the classical
//!   bounds (Maassen–Uffink, Coles–Piani, the all-overlap bound), the quantum
//!   measures `Q1`, `Q2`, `Q(λ)` and the composite / hybrid bounds.
//! - [`multi`]: bounds for chains of `N` measurements, permutation search,
//!   separable frames and the entanglement witness built on them.
//! - [`scenarios`]: fixed states and bases used for figure data.
//! - [`random`]: seeded generators for random states and bases.
//! - [`io`] and [`cli`]: JSON file formats and the command-line surface.
//!
//! All entropies are in bits.

#![forbid(unsafe_code)]

pub mod bounds;
pub mod cli;
pub mod entropy;
pub mod error;
pub mod io;
pub mod multi;
pub mod qcore;
pub mod random;
pub mod scenarios;
pub mod tol;

pub use error::{Error, Result, Violation};
pub use num_complex::Complex64;
pub use qcore::{ComplexMatrix, ProbVector, ProjectiveBasis, QuantumState};
