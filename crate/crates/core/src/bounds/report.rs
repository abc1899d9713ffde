use std::collections::BTreeMap;

use super::frame::{b_maj_ds, direct_sum_frame, MajorizationFrame};
use super::measures::{q1, q2, q_lambda};
use super::overlap::{b_cp, b_mu, b_xj, overlaps, OverlapData};
use super::registry::{ClassicalInput, Registry};
use crate::entropy::{entropy_report, measured_conditional_entropy, measurement_probs, shannon, EntropyReport};
use crate::error::{dim_mismatch, Result};
use crate::qcore::{ProjectiveBasis, QuantumState};
use crate::tol;

/// λ values reported when the caller does not choose any.
pub const DEFAULT_LAMBDAS: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

/// Every bound and measure for one state and basis pair, in bits.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    /// `H(M1) + H(M2)` on `ρ_A`.
    pub entropic_sum: f64,
    /// `H(M1|B) + H(M2|B)`.
    pub conditional_sum: f64,
    pub h_a: f64,
    pub h_b: f64,
    pub h_a_given_b: f64,
    pub b_mu: f64,
    pub b_cp: f64,
    pub b_xj: f64,
    pub b_maj_ds: f64,
    pub q1: f64,
    pub q2: f64,
    pub q_lambda: Vec<(f64, f64)>,
    /// `B_XJ + H(A) + max(Q1, Q2)`.
    pub bound_cc: f64,
    /// `B_XJ + H(A|B) + max(0, Q2 - Q1)`; equal to `bound_cc` identically.
    pub bound_cc_adabi: f64,
    pub bound_c: f64,
    pub hybrid: f64,
    /// Contribution of each registry entry to `bound_c` before adding `Q2`
    /// (its value, plus `H(A)` when it has a mixing part).
    pub plugins: BTreeMap<String, f64>,
}

impl BoundReport {
    /// `conditional_sum >= hybrid` up to the relation tolerance.
    pub fn relation_satisfied(&self) -> bool {
        relation_satisfied(self)
    }

    /// Flat name → value map with the conventional symbol names.
    pub fn named(&self) -> BTreeMap<String, f64> {
        let mut m: BTreeMap<String, f64> = [
            ("entropic_sum", self.entropic_sum),
            ("conditional_sum", self.conditional_sum),
            ("H_A", self.h_a),
            ("H_B", self.h_b),
            ("H_A_given_B", self.h_a_given_b),
            ("B_MU", self.b_mu),
            ("B_CP", self.b_cp),
            ("B_XJ", self.b_xj),
            ("B_MAJ_DS", self.b_maj_ds),
            ("Q1", self.q1),
            ("Q2", self.q2),
            ("bound_CC", self.bound_cc),
            ("bound_CC_adabi", self.bound_cc_adabi),
            ("bound_C", self.bound_c),
            ("hybrid", self.hybrid),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
        for (l, v) in &self.q_lambda {
            m.insert(format!("Q_lambda({l})"), *v);
        }
        for (name, v) in &self.plugins {
            m.insert(format!("plugin:{name}"), *v);
        }
        m
    }
}

pub fn relation_satisfied(r: &BoundReport) -> bool {
    r.conditional_sum >= r.hybrid - tol::RELATION
}

struct Parts {
    report: EntropyReport,
    rho_a: QuantumState,
    overlaps: OverlapData,
    frame: MajorizationFrame,
    b_xj: f64,
    q1: f64,
    q2: f64,
}

fn parts(rho_ab: &QuantumState, m1: &ProjectiveBasis, m2: &ProjectiveBasis) -> Result<Parts> {
    if m1.dim() != m2.dim() {
        return Err(dim_mismatch(format!("bases of dims {} and {}", m1.dim(), m2.dim())));
    }
    let report = entropy_report(rho_ab)?;
    let rho_a = rho_ab.reduced(0)?;
    let overlaps = overlaps(m1, m2)?;
    let frame = direct_sum_frame(m1, m2)?;
    let b_xj = b_xj(&overlaps, &frame)?;
    let q2 = q2(rho_ab, m1, m2)?;
    Ok(Parts {
        q1: q1(&report),
        q2,
        report,
        rho_a,
        overlaps,
        frame,
        b_xj,
    })
}

fn cc(p: &Parts) -> f64 {
    p.b_xj + p.report.h_a + p.q1.max(p.q2)
}

fn c_with(
    p: &Parts,
    rho_ab: &QuantumState,
    m1: &ProjectiveBasis,
    m2: &ProjectiveBasis,
    registry: &Registry,
) -> Result<(f64, BTreeMap<String, f64>)> {
    let input = ClassicalInput {
        rho_ab,
        rho_a: &p.rho_a,
        m1,
        m2,
        overlaps: &p.overlaps,
        frame: &p.frame,
    };
    let mut contributions = BTreeMap::new();
    let mut best = f64::NEG_INFINITY;
    for (name, v) in registry.evaluate_all(&input)? {
        let c = v.value + if v.includes_mixing_part { p.report.h_a } else { 0.0 };
        best = best.max(c);
        contributions
            .entry(name)
            .and_modify(|x: &mut f64| *x = x.max(c))
            .or_insert(c);
    }
    Ok((best + p.q2, contributions))
}

/// `B_XJ + H(A) + max(Q1, Q2)`.
pub fn bound_cc(rho_ab: &QuantumState, m1: &ProjectiveBasis, m2: &ProjectiveBasis) -> Result<f64> {
    Ok(cc(&parts(rho_ab, m1, m2)?))
}

/// Largest registry bound (with its mixing part where declared) plus `Q2`.
pub fn bound_c(rho_ab: &QuantumState, m1: &ProjectiveBasis, m2: &ProjectiveBasis, registry: &Registry) -> Result<f64> {
    let p = parts(rho_ab, m1, m2)?;
    Ok(c_with(&p, rho_ab, m1, m2, registry)?.0)
}

pub fn hybrid_bound(
    rho_ab: &QuantumState,
    m1: &ProjectiveBasis,
    m2: &ProjectiveBasis,
    registry: &Registry,
) -> Result<BoundReport> {
    hybrid_bound_with_lambdas(rho_ab, m1, m2, registry, &DEFAULT_LAMBDAS)
}

pub fn hybrid_bound_with_lambdas(
    rho_ab: &QuantumState,
    m1: &ProjectiveBasis,
    m2: &ProjectiveBasis,
    registry: &Registry,
    lambdas: &[f64],
) -> Result<BoundReport> {
    let p = parts(rho_ab, m1, m2)?;
    let (bound_c, plugins) = c_with(&p, rho_ab, m1, m2, registry)?;
    let bound_cc = cc(&p);
    let q_lambda = lambdas
        .iter()
        .map(|&l| Ok((l, q_lambda(l, p.q1, p.q2)?)))
        .collect::<Result<Vec<_>>>()?;
    let entropic_sum = shannon(&measurement_probs(&p.rho_a, m1, 0)?) + shannon(&measurement_probs(&p.rho_a, m2, 0)?);
    let conditional_sum = measured_conditional_entropy(rho_ab, m1)? + measured_conditional_entropy(rho_ab, m2)?;
    let r = &p.report;
    Ok(BoundReport {
        entropic_sum,
        conditional_sum,
        h_a: r.h_a,
        h_b: r.h_b,
        h_a_given_b: r.h_a_given_b,
        b_mu: b_mu(&p.overlaps),
        b_cp: b_cp(&p.overlaps),
        b_xj: p.b_xj,
        b_maj_ds: b_maj_ds(&p.frame),
        q1: p.q1,
        q2: p.q2,
        q_lambda,
        bound_cc,
        bound_cc_adabi: p.b_xj + r.h_a_given_b + (p.q2 - p.q1).max(0.0),
        bound_c,
        hybrid: bound_c.max(bound_cc),
        plugins,
    })
}
