//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.
//!
//! Each rotation first removes the phase of the pivot `a_pq` and then applies
//! the classical real Jacobi rotation, so the pivot pair is annihilated
//! exactly. Sweeps continue until the off-diagonal Frobenius mass is at the
//! round-off floor of the matrix norm.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result, Violation};
use crate::tol;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in descending order with matching eigenvector columns.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl Spectrum {
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.vectors.column(k)
    }

    /// `V diag(values) V^dag`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.values.len();
        let v = &self.vectors;
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| v[(i, k)] * self.values[k] * v[(j, k)].conj()).sum()
        })
    }
}

pub fn hermitian_spectrum(m: &ComplexMatrix) -> Result<Spectrum> {
    if !m.is_square() {
        return Err(Violation::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        }
        .into());
    }
    let dev = m.hermiticity_deviation();
    if dev > tol::EIGEN_INPUT {
        return Err(Violation::NotHermitian { deviation: dev }.into());
    }
    let n = m.rows();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);

    let norm: f64 = a.as_slice().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let floor = (f64::EPSILON * norm).powi(2) * 1e-2;

    let mut converged = n <= 1;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)].norm_sqr())
            .sum();
        if off <= floor || off == 0.0 {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)].norm_sqr())
            .sum();
        // Stagnation at the round-off floor is acceptable; anything larger is not.
        if off.sqrt() > 1e-12 * norm.max(1.0) {
            return Err(Error::Inconsistent(format!(
                "Jacobi iteration did not converge (off-diagonal norm {:e})",
                off.sqrt()
            )));
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(Spectrum { values, vectors })
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let n = a.rows();
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let phase = apq / mag;
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    // G = diag(1, e^{-iφ}) · R(c, s) restricted to the (p, q) plane.
    let g_pp = Complex64::new(c, 0.0);
    let g_pq = Complex64::new(s, 0.0);
    let g_qp = -phase.conj() * s;
    let g_qq = phase.conj() * c;

    // A <- A G, V <- V G
    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
    // A <- G^dag A
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;
}

/// Largest singular value, from the top eigenvalue of the smaller Gram matrix.
pub fn largest_singular_value(m: &ComplexMatrix) -> f64 {
    if m.rows() == 0 || m.cols() == 0 {
        return 0.0;
    }
    let gram = if m.rows() <= m.cols() {
        m * &m.adjoint()
    } else {
        &m.adjoint() * m
    };
    let gram = gram.hermitian_part();
    let top = hermitian_spectrum(&gram)
        .map(|s| s.values[0])
        .expect("Gram matrices are Hermitian");
    top.max(0.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn random_hermitian(n: usize, entries: &[f64]) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(n, n);
        let mut it = entries.iter().copied();
        for i in 0..n {
            m[(i, i)] = Complex64::new(it.next().unwrap(), 0.0);
            for j in (i + 1)..n {
                let z = Complex64::new(it.next().unwrap(), it.next().unwrap());
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        m
    }

    fn unitarity_error(v: &ComplexMatrix) -> f64 {
        (&v.adjoint() * v).max_abs_diff(&ComplexMatrix::identity(v.rows()))
    }

    #[test]
    fn diagonal_sorted_descending() {
        let s = hermitian_spectrum(&ComplexMatrix::diagonal(&[3.0, 1.0, 2.0])).unwrap();
        assert_eq!(s.values, vec![3.0, 2.0, 1.0]);
    }

    #[test]
    fn pauli_x() {
        let sx = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let s = hermitian_spectrum(&sx).unwrap();
        assert!((s.values[0] - 1.0).abs() < 1e-14);
        assert!((s.values[1] + 1.0).abs() < 1e-14);
        assert!(s.reconstruct().max_abs_diff(&sx) < 1e-14);
    }

    #[test]
    fn pauli_y_complex_pivot() {
        let sy = ComplexMatrix::new(
            2,
            2,
            vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, -1.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, 0.0),
            ],
        )
        .unwrap();
        let s = hermitian_spectrum(&sy).unwrap();
        assert!((s.values[0] - 1.0).abs() < 1e-14);
        assert!(s.reconstruct().max_abs_diff(&sy) < 1e-14);
    }

    #[test]
    fn rho1_spectrum_is_theta_independent() {
        // ρ1 = ½|ψ><ψ| + ¼I with ψ = (cosθ, sinθ)
        for theta in [0.0, std::f64::consts::PI / 6.0, std::f64::consts::FRAC_PI_4] {
            let (c, s) = (f64::cos(theta), f64::sin(theta));
            let m = ComplexMatrix::from_real(
                2,
                2,
                &[0.5 * (c * c + 0.5), 0.5 * c * s, 0.5 * c * s, 0.5 * (s * s + 0.5)],
            )
            .unwrap();
            let sp = hermitian_spectrum(&m).unwrap();
            assert!((sp.values[0] - 0.75).abs() < 1e-14);
            assert!((sp.values[1] - 0.25).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(
            hermitian_spectrum(&m),
            Err(Error::Validation(Violation::NotHermitian { .. }))
        ));
    }

    #[test]
    fn degenerate_spectrum() {
        let s = hermitian_spectrum(&ComplexMatrix::identity(5)).unwrap();
        assert!(s.values.iter().all(|&x| (x - 1.0).abs() < 1e-15));
        assert!(unitarity_error(&s.vectors) < 1e-15);
    }

    #[test]
    fn singular_values_simple_cases() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let u = ComplexMatrix::from_real(2, 2, &[h, h, -h, h]).unwrap();
        assert!((largest_singular_value(&u) - 1.0).abs() < 1e-14);
        let row = ComplexMatrix::from_real(1, 2, &[0.5, 3f64.sqrt() / 2.0]).unwrap();
        assert!((largest_singular_value(&row) - 1.0).abs() < 1e-14);
        let one = ComplexMatrix::from_real(1, 1, &[0.5]).unwrap();
        assert!((largest_singular_value(&one) - 0.5).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn reconstruction_and_trace(n in 1usize..=8, entries in proptest::collection::vec(-1.0f64..1.0, 64)) {
            let m = random_hermitian(n, &entries);
            let s = hermitian_spectrum(&m).unwrap();
            prop_assert!(s.reconstruct().max_abs_diff(&m) <= tol::RECONSTRUCTION);
            prop_assert!(unitarity_error(&s.vectors) <= tol::RECONSTRUCTION);
            prop_assert!(s.values.windows(2).all(|w| w[0] >= w[1]));
            let tr: f64 = s.values.iter().sum();
            prop_assert!((tr - m.trace().re).abs() <= tol::RECONSTRUCTION);
        }

        #[test]
        fn singular_value_dominates_probes(
            rows in 1usize..=4,
            cols in 1usize..=4,
            entries in proptest::collection::vec(-1.0f64..1.0, 32),
            probes in proptest::collection::vec(-1.0f64..1.0, 8 * 50),
        ) {
            let m = ComplexMatrix::from_fn(rows, cols, |i, j| {
                Complex64::new(entries[2 * (i * cols + j)], entries[2 * (i * cols + j) + 1])
            });
            let sigma = largest_singular_value(&m);
            let mut best = 0.0f64;
            for probe in probes.chunks(8) {
                let v: Vec<Complex64> = (0..cols).map(|j| Complex64::new(probe[2 * j], probe[2 * j + 1])).collect();
                let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                if norm < 1e-6 { continue; }
                let mv = m.mul_vec(&v);
                let val = mv.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() / norm;
                prop_assert!(val <= sigma + 1e-9);
                best = best.max(val);
            }
            prop_assert!(sigma >= 0.0);
            prop_assert!(best <= sigma + 1e-9);
        }
    }
}
