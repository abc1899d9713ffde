use crate::entropy::{conditional_ensemble, holevo_terms, EntropyReport};
use crate::error::{Error, Result};
use crate::qcore::{ProjectiveBasis, QuantumState};

/// First quantum measure, `-I(A:B)`.
pub fn q1(r: &EntropyReport) -> f64 {
    -r.i_ab
}

/// Second quantum measure, `-2H(B) + S_1 + S_2`.
pub fn q2(rho_ab: &QuantumState, m1: &ProjectiveBasis, m2: &ProjectiveBasis) -> Result<f64> {
    let rho_b = rho_ab.reduced(1)?;
    let e1 = conditional_ensemble(rho_ab, m1)?;
    let e2 = conditional_ensemble(rho_ab, m2)?;
    let t1 = holevo_terms(&e1, &rho_b)?;
    let t2 = holevo_terms(&e2, &rho_b)?;
    Ok(-(t1.chi + t2.chi))
}

/// `λ Q1 + (1 - λ) Q2` for `λ ∈ [0, 1]`.
pub fn q_lambda(lambda: f64, q1: f64, q2: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::InvalidArgument(format!("lambda {lambda} outside [0, 1]")));
    }
    Ok(lambda * q1 + (1.0 - lambda) * q2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_lambda_endpoints_and_midpoint() {
        assert_eq!(q_lambda(1.0, -2.0, -1.0).unwrap(), -2.0);
        assert_eq!(q_lambda(0.0, -2.0, -1.0).unwrap(), -1.0);
        assert_eq!(q_lambda(0.5, -2.0, -1.0).unwrap(), -1.5);
        assert!(q_lambda(1.5, 0.0, 0.0).is_err());
        assert!(q_lambda(f64::NAN, 0.0, 0.0).is_err());
    }

    #[test]
    fn product_state_measures_vanish() {
        let a = QuantumState::maximally_mixed(&[2]).unwrap();
        let rho = a.tensor(&a);
        let r = crate::entropy::entropy_report(&rho).unwrap();
        assert!(q1(&r).abs() < 1e-12);
        let q = q2(&rho, &ProjectiveBasis::standard(2), &ProjectiveBasis::fourier(2)).unwrap();
        assert!(q.abs() < 1e-12);
    }
}
