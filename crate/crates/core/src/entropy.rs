//! Entropy functionals and measurement-induced ensembles on the memory.
//!
//! Bipartite states are taken with the measured system first (subsystem 0)
//! and the memory second (subsystem 1). Use [`QuantumState::swap_parties`]
//! to measure the other side.

use num_complex::Complex64;
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{dim_mismatch, Error, Result};
use crate::qcore::{hermitian_spectrum, ComplexMatrix, ProbVector, ProjectiveBasis, QuantumState};
use crate::tol;

/// `-Σ p log2 p` over the strictly positive entries of an unchecked slice.
pub fn shannon_of(entries: &[f64]) -> f64 {
    entries.iter().filter(|&&p| p > 0.0).map(|&p| -p * p.log2()).sum()
}

pub fn shannon(p: &ProbVector) -> f64 {
    shannon_of(p.entries())
}

pub fn von_neumann(rho: &QuantumState) -> f64 {
    shannon_of(&rho.eigenvalues())
}

/// `Tr ρ (log2 ρ - log2 σ)`, or `+∞` when the support of `ρ` is not inside
/// the support of `σ`.
pub fn relative_entropy(rho: &QuantumState, sigma: &QuantumState) -> Result<f64> {
    if rho.dims() != sigma.dims() {
        return Err(dim_mismatch(format!(
            "relative entropy between dims {:?} and {:?}",
            rho.dims(),
            sigma.dims()
        )));
    }
    let neg_entropy = -von_neumann(rho);
    let spec = hermitian_spectrum(sigma.matrix())?;
    let mut cross = 0.0;
    for (k, &mu) in spec.values.iter().enumerate() {
        let w = rho.matrix().quadratic_form(&spec.vector(k)).re;
        if mu < tol::ZERO_PROB {
            if w > tol::VALIDATION {
                return Ok(f64::INFINITY);
            }
            continue;
        }
        cross -= w * mu.log2();
    }
    Ok(neg_entropy + cross)
}

fn probs_of(matrix: &ComplexMatrix, m: &ProjectiveBasis) -> Result<ProbVector> {
    let raw: Vec<f64> = (0..m.dim()).map(|i| matrix.quadratic_form(&m.vector(i)).re).collect();
    ProbVector::new(raw)
}

/// Outcome distribution `p_i = <u_i|ρ_X|u_i>` of `m` on subsystem `measured`.
///
/// A basis spanning the whole space of `ρ` measures the full state;
/// otherwise `ρ` is first reduced to the measured subsystem.
pub fn measurement_probs(rho: &QuantumState, m: &ProjectiveBasis, measured: usize) -> Result<ProbVector> {
    if m.dim() == rho.dim() {
        return probs_of(rho.matrix(), m);
    }
    match rho.dims().get(measured) {
        Some(&d) if d == m.dim() => probs_of(rho.reduced(measured)?.matrix(), m),
        _ => Err(dim_mismatch(format!(
            "basis of dim {} cannot measure subsystem {measured} of dims {:?}",
            m.dim(),
            rho.dims()
        ))),
    }
}

fn require_measurable(rho_ab: &QuantumState, m: &ProjectiveBasis) -> Result<(usize, usize)> {
    if !rho_ab.is_bipartite() {
        return Err(dim_mismatch(format!(
            "expected a bipartite state, dims are {:?}",
            rho_ab.dims()
        )));
    }
    let (da, db) = (rho_ab.dims()[0], rho_ab.dims()[1]);
    if m.dim() != da {
        return Err(dim_mismatch(format!(
            "basis of dim {} on measured subsystem of dim {da}",
            m.dim()
        )));
    }
    Ok((da, db))
}

/// `Σ_j (|u_j><u_j| ⊗ I) ρ_AB (|u_j><u_j| ⊗ I)`, by explicit projector algebra.
pub fn post_measurement_state(rho_ab: &QuantumState, m: &ProjectiveBasis) -> Result<QuantumState> {
    let (da, db) = require_measurable(rho_ab, m)?;
    let id_b = ComplexMatrix::identity(db);
    let mut out = ComplexMatrix::zeros(da * db, da * db);
    for j in 0..da {
        let p = m.projector(j).kron(&id_b);
        let term = &(&p * rho_ab.matrix()) * &p;
        out = &out + &term;
    }
    Ok(QuantumState::from_trusted(out, rho_ab.dims().to_vec()))
}

/// Outcome probabilities of a measurement on `A` together with the
/// conditional memory states `ρ_{B,i} = Tr_A(|u_i><u_i| ρ_AB) / p_i`.
#[derive(Debug, Clone)]
pub struct ConditionalEnsemble {
    pub probs: ProbVector,
    /// `None` marks a branch with `p_i` below the zero-probability threshold.
    pub states: Vec<Option<QuantumState>>,
    pub basis_label: Option<String>,
}

impl ConditionalEnsemble {
    pub fn labeled(mut self, label: impl Into<String>) -> Self {
        self.basis_label = Some(label.into());
        self
    }

    /// `Σ_i p_i ρ_{B,i}`.
    pub fn average(&self) -> ComplexMatrix {
        let db = self.states.iter().flatten().next().map_or(0, QuantumState::dim);
        let mut acc = ComplexMatrix::zeros(db, db);
        for (p, s) in self.probs.entries().iter().zip(&self.states) {
            if let Some(s) = s {
                acc = &acc + &s.matrix().scale_real(*p);
            }
        }
        acc
    }

    /// `S_m = Σ_i p_i H(ρ_{B,i})` over the non-flagged branches.
    pub fn weighted_entropy(&self) -> f64 {
        self.probs
            .entries()
            .iter()
            .zip(&self.states)
            .filter_map(|(p, s)| s.as_ref().map(|s| p * von_neumann(s)))
            .sum()
    }
}

pub fn conditional_ensemble(rho_ab: &QuantumState, m: &ProjectiveBasis) -> Result<ConditionalEnsemble> {
    let (da, db) = require_measurable(rho_ab, m)?;
    let rho = rho_ab.matrix();
    let mut probs = Vec::with_capacity(da);
    let mut states = Vec::with_capacity(da);
    for i in 0..da {
        let u = m.vector(i);
        let block = ComplexMatrix::from_fn(db, db, |b, bp| {
            let mut acc = Complex64::new(0.0, 0.0);
            for a in 0..da {
                for ap in 0..da {
                    acc += u[a].conj() * rho[(a * db + b, ap * db + bp)] * u[ap];
                }
            }
            acc
        });
        let p = block.trace().re;
        probs.push(p);
        states.push(if p < tol::ZERO_PROB {
            None
        } else {
            Some(QuantumState::from_trusted(block.scale_real(1.0 / p), vec![db]))
        });
    }
    Ok(ConditionalEnsemble {
        probs: ProbVector::new(probs)?,
        states,
        basis_label: None,
    })
}

/// `S_m` and the classical correlation `χ_m = H(B) - S_m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolevoTerms {
    pub s: f64,
    pub chi: f64,
}

pub fn holevo_terms(e: &ConditionalEnsemble, rho_b: &QuantumState) -> Result<HolevoTerms> {
    let dev = e.average().max_abs_diff(rho_b.matrix());
    if dev > tol::RECONSTRUCTION {
        return Err(Error::Inconsistent(format!(
            "ensemble average differs from the memory state by {dev:e}"
        )));
    }
    let s = e.weighted_entropy();
    Ok(HolevoTerms {
        s,
        chi: von_neumann(rho_b) - s,
    })
}

/// Entropies of a bipartite state, measured system first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyReport {
    pub h_a: f64,
    pub h_b: f64,
    pub h_ab: f64,
    pub h_a_given_b: f64,
    pub i_ab: f64,
}

pub fn entropy_report(rho_ab: &QuantumState) -> Result<EntropyReport> {
    if !rho_ab.is_bipartite() {
        return Err(dim_mismatch(format!(
            "expected a bipartite state, dims are {:?}",
            rho_ab.dims()
        )));
    }
    let h_a = von_neumann(&rho_ab.reduced(0)?);
    let h_b = von_neumann(&rho_ab.reduced(1)?);
    let h_ab = von_neumann(rho_ab);
    Ok(EntropyReport {
        h_a,
        h_b,
        h_ab,
        h_a_given_b: h_ab - h_b,
        i_ab: h_a + h_b - h_ab,
    })
}

/// `H(M|B)`, evaluated from the post-measurement state and cross-checked
/// against `H(M) + S_m - H(B)`.
pub fn measured_conditional_entropy(rho_ab: &QuantumState, m: &ProjectiveBasis) -> Result<f64> {
    let h_b = von_neumann(&rho_ab.reduced(1)?);
    let via_state = von_neumann(&post_measurement_state(rho_ab, m)?) - h_b;
    let ens = conditional_ensemble(rho_ab, m)?;
    let via_ensemble = shannon(&ens.probs) + ens.weighted_entropy() - h_b;
    if (via_state - via_ensemble).abs() > tol::DERIVED {
        return Err(Error::Inconsistent(format!(
            "H(M|B) routes disagree: {via_state} vs {via_ensemble}"
        )));
    }
    Ok(via_state)
}

/// Plug-in Shannon estimate from `n` seeded draws of `p`.
pub fn empirical_entropy(p: &ProbVector, n: usize, seed: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument("sample count must be at least 1".into()));
    }
    let dist = WeightedIndex::new(p.entries())
        .map_err(|e| Error::InvalidArgument(format!("cannot sample from {p:?}: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0usize; p.len()];
    for _ in 0..n {
        counts[dist.sample(&mut rng)] += 1;
    }
    let freqs: Vec<f64> = counts.iter().map(|&c| c as f64 / n as f64).collect();
    Ok(shannon_of(&freqs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::validate_state;

    const H34: f64 = 0.811_278_124_459_132_8; // 2 - (3/4) log2 3

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn bell() -> QuantumState {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        QuantumState::pure(&[c(h), c(0.0), c(0.0), c(h)], &[2, 2]).unwrap()
    }

    fn werner(p: f64) -> QuantumState {
        let b = bell();
        let m = &ComplexMatrix::identity(4).scale_real((1.0 - p) / 4.0) + &b.matrix().scale_real(p);
        validate_state(m, &[2, 2]).unwrap()
    }

    fn hadamard() -> ProjectiveBasis {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        ProjectiveBasis::from_real(&[vec![h, h], vec![h, -h]]).unwrap()
    }

    #[test]
    fn shannon_values() {
        assert_eq!(shannon(&ProbVector::new(vec![1.0, 0.0]).unwrap()), 0.0);
        assert!((shannon(&ProbVector::uniform(2)) - 1.0).abs() < 1e-15);
        let p = ProbVector::new(vec![0.75, 0.25]).unwrap();
        assert!((shannon(&p) - (2.0 - 0.75 * 3f64.log2())).abs() < 1e-15);
        assert!((shannon(&p) - H34).abs() < 1e-15);
    }

    #[test]
    fn von_neumann_values() {
        assert!(von_neumann(&bell()).abs() < 1e-12);
        let mixed = QuantumState::maximally_mixed(&[3]).unwrap();
        assert!((von_neumann(&mixed) - 3f64.log2()).abs() < 1e-14);
    }

    #[test]
    fn relative_entropy_cases() {
        let zero = QuantumState::new(ComplexMatrix::diagonal(&[1.0, 0.0]), &[2]).unwrap();
        let one = QuantumState::new(ComplexMatrix::diagonal(&[0.0, 1.0]), &[2]).unwrap();
        let mixed = QuantumState::maximally_mixed(&[2]).unwrap();
        assert!(relative_entropy(&mixed, &mixed).unwrap().abs() < 1e-14);
        assert!((relative_entropy(&zero, &mixed).unwrap() - 1.0).abs() < 1e-14);
        assert_eq!(relative_entropy(&zero, &one).unwrap(), f64::INFINITY);
        let bell = bell();
        assert!(matches!(
            relative_entropy(&zero, &bell),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn uniform_probs_on_maximally_mixed() {
        let mixed = QuantumState::maximally_mixed(&[3]).unwrap();
        let p = measurement_probs(&mixed, &ProjectiveBasis::fourier(3), 0).unwrap();
        assert!(p.entries().iter().all(|x| (x - 1.0 / 3.0).abs() < 1e-15));
    }

    #[test]
    fn probs_reduce_multipartite_state_first() {
        let p = measurement_probs(&bell(), &ProjectiveBasis::standard(2), 1).unwrap();
        assert!((p.entries()[0] - 0.5).abs() < 1e-15);
        assert!(measurement_probs(&bell(), &ProjectiveBasis::standard(3), 0).is_err());
    }

    #[test]
    fn bell_post_measurement_is_classically_correlated() {
        let post = post_measurement_state(&bell(), &ProjectiveBasis::standard(2)).unwrap();
        let expected = ComplexMatrix::diagonal(&[0.5, 0.0, 0.0, 0.5]);
        assert!(post.matrix().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn commuting_product_state_is_unchanged() {
        let ra = QuantumState::new(ComplexMatrix::diagonal(&[0.6, 0.4]), &[2]).unwrap();
        let rb = QuantumState::new(ComplexMatrix::diagonal(&[0.1, 0.9]), &[2]).unwrap();
        let rab = ra.tensor(&rb);
        let post = post_measurement_state(&rab, &ProjectiveBasis::standard(2)).unwrap();
        assert!(post.matrix().max_abs_diff(rab.matrix()) < 1e-15);
    }

    #[test]
    fn bell_ensemble_in_standard_basis() {
        let e = conditional_ensemble(&bell(), &ProjectiveBasis::standard(2)).unwrap();
        assert!((e.probs.entries()[0] - 0.5).abs() < 1e-15);
        let s0 = e.states[0].as_ref().unwrap();
        let s1 = e.states[1].as_ref().unwrap();
        assert!(s0.matrix().max_abs_diff(&ComplexMatrix::diagonal(&[1.0, 0.0])) < 1e-15);
        assert!(s1.matrix().max_abs_diff(&ComplexMatrix::diagonal(&[0.0, 1.0])) < 1e-15);
    }

    #[test]
    fn product_ensemble_states_equal_memory() {
        let ra = QuantumState::new(ComplexMatrix::diagonal(&[0.6, 0.4]), &[2]).unwrap();
        let rb = QuantumState::new(ComplexMatrix::diagonal(&[0.1, 0.2, 0.7]), &[3]).unwrap();
        let e = conditional_ensemble(&ra.tensor(&rb), &hadamard()).unwrap();
        for s in e.states.iter().flatten() {
            assert!(s.matrix().max_abs_diff(rb.matrix()) < 1e-14);
        }
        let t = holevo_terms(&e, &rb).unwrap();
        assert!((t.s - von_neumann(&rb)).abs() < 1e-12);
        assert!(t.chi.abs() < 1e-12);
    }

    #[test]
    fn zero_probability_branch_is_flagged() {
        let ra = QuantumState::new(ComplexMatrix::diagonal(&[1.0, 0.0]), &[2]).unwrap();
        let rb = QuantumState::maximally_mixed(&[2]).unwrap();
        let e = conditional_ensemble(&ra.tensor(&rb), &ProjectiveBasis::standard(2)).unwrap();
        assert!(e.states[0].is_some());
        assert!(e.states[1].is_none());
        assert!((e.weighted_entropy() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn inconsistent_ensemble_is_rejected() {
        let e = conditional_ensemble(&bell(), &ProjectiveBasis::standard(2)).unwrap();
        let wrong = QuantumState::new(ComplexMatrix::diagonal(&[1.0, 0.0]), &[2]).unwrap();
        assert!(matches!(holevo_terms(&e, &wrong), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn werner_half_standard_basis_holevo_by_hand() {
        // Conditional memory states of Werner(p) are ((1-p)/2) I + p |i><i|,
        // renormalised: eigenvalues (1+p)/2, (1-p)/2.
        let p = 0.5;
        let e = conditional_ensemble(&werner(p), &ProjectiveBasis::standard(2)).unwrap();
        let rb = werner(p).reduced(1).unwrap();
        let t = holevo_terms(&e, &rb).unwrap();
        let expected_s = shannon_of(&[(1.0 + p) / 2.0, (1.0 - p) / 2.0]);
        assert!((t.s - expected_s).abs() < 1e-12);
        assert!((t.chi - (1.0 - expected_s)).abs() < 1e-12);
    }

    #[test]
    fn entropy_report_cases() {
        let r = entropy_report(&bell()).unwrap();
        assert!((r.h_a_given_b + 1.0).abs() < 1e-12);
        assert!((r.i_ab - 2.0).abs() < 1e-12);
        let w = entropy_report(&werner(0.5)).unwrap();
        assert!((w.h_ab - shannon_of(&[0.625, 0.125, 0.125, 0.125])).abs() < 1e-12);
        assert_eq!(w.h_a_given_b, w.h_ab - w.h_b);
    }

    #[test]
    fn measured_conditional_entropy_cases() {
        assert!(measured_conditional_entropy(&bell(), &hadamard()).unwrap().abs() < 1e-12);
        let ra = QuantumState::new(ComplexMatrix::diagonal(&[0.6, 0.4]), &[2]).unwrap();
        let rb = QuantumState::maximally_mixed(&[2]).unwrap();
        let rab = ra.tensor(&rb);
        let h = measured_conditional_entropy(&rab, &hadamard()).unwrap();
        let p = measurement_probs(&ra, &hadamard(), 0).unwrap();
        assert!((h - shannon(&p)).abs() < 1e-12);
        assert!(measured_conditional_entropy(&werner(0.5), &ProjectiveBasis::standard(2)).is_ok());
    }

    #[test]
    fn empirical_entropy_cases() {
        let det = ProbVector::new(vec![1.0, 0.0]).unwrap();
        assert_eq!(empirical_entropy(&det, 1000, 3).unwrap(), 0.0);
        let fair = ProbVector::uniform(2);
        assert_eq!(empirical_entropy(&fair, 1, 3).unwrap(), 0.0);
        let est = empirical_entropy(&fair, 100_000, 11).unwrap();
        assert!((est - 1.0).abs() < 0.01);
        assert_eq!(est, empirical_entropy(&fair, 100_000, 11).unwrap());
        assert!(empirical_entropy(&fair, 0, 1).is_err());
    }
}
