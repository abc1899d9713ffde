//! Independent reference computations shared by the integration tests.
//!
//! Spectra come from nalgebra's symmetric eigensolver applied to the real
//! embedding `[[Re, -Im], [Im, Re]]`, so nothing here goes through the
//! crate's own Jacobi solver.

#![allow(dead_code)]

use entropic::{Complex64, ComplexMatrix, ProjectiveBasis, QuantumState};
use nalgebra::DMatrix;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn shannon_bits(p: &[f64]) -> f64 {
    p.iter().filter(|&&x| x > 1e-15).map(|&x| -x * x.log2()).sum()
}

/// Eigenvalues of a Hermitian matrix, descending.
pub fn eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    let n = m.rows();
    let real = DMatrix::from_fn(2 * n, 2 * n, |i, j| {
        let z = m[(i % n, j % n)];
        match (i < n, j < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    let mut ev: Vec<f64> = real.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    // each eigenvalue appears twice in the embedding
    ev.into_iter().step_by(2).collect()
}

pub fn entropy_of(m: &ComplexMatrix) -> f64 {
    shannon_bits(&eigenvalues(m))
}

/// Largest singular value from the spectrum of `M^dag M`.
pub fn sigma_max(m: &ComplexMatrix) -> f64 {
    eigenvalues(&(&m.adjoint() * m))[0].max(0.0).sqrt()
}

/// `Tr_B` of a `da·db` matrix, by explicit index contraction.
pub fn trace_out_b(m: &ComplexMatrix, da: usize, db: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(da, da, |i, j| (0..db).map(|k| m[(i * db + k, j * db + k)]).sum())
}

/// `Tr_A` of a `da·db` matrix, by explicit index contraction.
pub fn trace_out_a(m: &ComplexMatrix, da: usize, db: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(db, db, |i, j| (0..da).map(|k| m[(k * db + i, k * db + j)]).sum())
}

/// Unnormalised `(<u| ⊗ I) M (|u> ⊗ I)` for a vector `u` on the first factor.
pub fn sandwich_first(m: &ComplexMatrix, u: &[Complex64], db: usize) -> ComplexMatrix {
    let da = u.len();
    ComplexMatrix::from_fn(db, db, |i, j| {
        let mut acc = c(0.0, 0.0);
        for a in 0..da {
            for b in 0..da {
                acc += u[a].conj() * m[(a * db + i, b * db + j)] * u[b];
            }
        }
        acc
    })
}

/// `(H(M), S)` for measuring the first factor of `rho` in `basis`:
/// outcome entropy and average entropy of the conditional memory states.
pub fn ensemble_terms(rho: &QuantumState, basis: &ProjectiveBasis) -> (f64, f64) {
    let (da, db) = (rho.dims()[0], rho.dims()[1]);
    let mut probs = Vec::new();
    let mut s = 0.0;
    for i in 0..da {
        let block = sandwich_first(rho.matrix(), &basis.vector(i), db);
        let p = block.trace().re;
        probs.push(p);
        if p > 1e-12 {
            s += p * entropy_of(&block.scale_real(1.0 / p));
        }
    }
    (shannon_bits(&probs), s)
}

/// `H(M|B)` from the post-measurement state, built with explicit loops.
pub fn conditional_entropy_oracle(rho: &QuantumState, basis: &ProjectiveBasis) -> f64 {
    let (da, db) = (rho.dims()[0], rho.dims()[1]);
    let n = da * db;
    let mut post = ComplexMatrix::zeros(n, n);
    for i in 0..da {
        let block = sandwich_first(rho.matrix(), &basis.vector(i), db);
        for a in 0..db {
            for b in 0..db {
                post[(i * db + a, i * db + b)] = block[(a, b)];
            }
        }
    }
    entropy_of(&post) - entropy_of(&trace_out_a(rho.matrix(), da, db))
}

/// `|<u^1_j|u^2_k>|^2` by direct inner products.
pub fn overlap_oracle(m1: &ProjectiveBasis, m2: &ProjectiveBasis) -> Vec<Vec<f64>> {
    let d = m1.dim();
    (0..d)
        .map(|j| {
            (0..d)
                .map(|k| {
                    let (u, v) = (m1.vector(j), m2.vector(k));
                    u.iter()
                        .zip(&v)
                        .map(|(a, b)| a.conj() * b)
                        .sum::<Complex64>()
                        .norm_sqr()
                })
                .collect()
        })
        .collect()
}

pub fn product_state(a: &QuantumState, b: &QuantumState) -> QuantumState {
    a.tensor(b)
}

pub fn bell_phi_plus() -> QuantumState {
    let s = 0.5f64.sqrt();
    QuantumState::pure(&[c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)], &[2, 2]).unwrap()
}

pub fn hadamard() -> ProjectiveBasis {
    let s = 0.5f64.sqrt();
    ProjectiveBasis::from_real(&[vec![s, s], vec![s, -s]]).unwrap()
}

/// Basis of the qubit examples: standard and `{(1/2, -√3/2), (√3/2, 1/2)}`.
pub fn sec_pair() -> (ProjectiveBasis, ProjectiveBasis) {
    let s = 3f64.sqrt() / 2.0;
    (
        ProjectiveBasis::standard(2),
        ProjectiveBasis::from_real(&[vec![0.5, -s], vec![s, 0.5]]).unwrap(),
    )
}

pub fn werner_eigen_entropy(p: f64) -> f64 {
    let a = (1.0 + 3.0 * p) / 4.0;
    let b = (1.0 - p) / 4.0;
    shannon_bits(&[a, b, b, b])
}

#[track_caller]
pub fn close(a: f64, b: f64, tol: f64) {
    assert!(
        (a - b).abs() <= tol,
        "{a} vs {b} (tol {tol:e}, diff {:e})",
        (a - b).abs()
    );
}
