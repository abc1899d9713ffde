//! Seeded random states and bases.
//!
//! Every generator draws from a `ChaCha8Rng` (rand_chacha) and standard
//! normal samples (rand_distr), so a seed fixes the output on every platform.
//!
//! - States: Ginibre `G G^dag / Tr(G G^dag)` with `G` square complex Gaussian.
//! - Bases: modified Gram–Schmidt QR of a complex Gaussian matrix. Each
//!   column is normalised by its own positive norm, which makes the diagonal
//!   of `R` positive real, so `Q` is Haar distributed.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
pub use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::qcore::{ComplexMatrix, ProjectiveBasis, QuantumState};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
}

fn gaussian_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Ginibre-distributed mixed state on the given subsystems.
pub fn random_state(rng: &mut impl Rng, dims: &[usize]) -> Result<QuantumState> {
    let d: usize = dims.iter().product();
    let g = gaussian_matrix(rng, d, d);
    let w = &g * &g.adjoint();
    let tr = w.trace().re;
    QuantumState::new(w.scale_real(1.0 / tr), dims)
}

pub fn random_unit_vector(rng: &mut impl Rng, d: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..d).map(|_| gaussian(rng)).collect();
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n > 1e-12 {
            return v.into_iter().map(|z| z / n).collect();
        }
    }
}

pub fn random_pure_state(rng: &mut impl Rng, dims: &[usize]) -> Result<QuantumState> {
    let d: usize = dims.iter().product();
    QuantumState::pure(&random_unit_vector(rng, d), dims)
}

/// Haar-random orthonormal basis of dimension `d`.
pub fn random_basis(rng: &mut impl Rng, d: usize) -> Result<ProjectiveBasis> {
    if d == 0 {
        return Err(Error::InvalidArgument("basis dimension must be positive".into()));
    }
    let g = gaussian_matrix(rng, d, d);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    for j in 0..d {
        let mut v = g.column(j);
        for q in &cols {
            let r: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi -= r * qi;
            }
        }
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n < 1e-12 {
            return Err(Error::Inconsistent("degenerate Gaussian sample in QR".into()));
        }
        cols.push(v.into_iter().map(|z| z / n).collect());
    }
    ProjectiveBasis::new(&cols)
}

/// Mixture of between 1 and `max_terms` pure product states with uniform
/// random weights.
pub fn random_separable_state(rng: &mut impl Rng, dims: [usize; 2], max_terms: usize) -> Result<QuantumState> {
    let terms = rng.random_range(1..=max_terms.max(1));
    let weights: Vec<f64> = (0..terms).map(|_| rng.random::<f64>() + 1e-3).collect();
    let total: f64 = weights.iter().sum();
    let d = dims[0] * dims[1];
    let mut acc = ComplexMatrix::zeros(d, d);
    for w in weights {
        let a = random_unit_vector(rng, dims[0]);
        let b = random_unit_vector(rng, dims[1]);
        let ab: Vec<Complex64> = a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect();
        acc = &acc + &ComplexMatrix::outer(&ab, &ab).scale_real(w / total);
    }
    QuantumState::new(acc, &dims)
}
