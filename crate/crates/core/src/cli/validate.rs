//! Randomised invariant checks over seeded instances.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::bounds::{b_cp, b_mu, b_xj, direct_sum_frame, hybrid_bound, overlaps, Registry, MAX_FRAME_DIM};
use crate::entropy::{
    conditional_ensemble, entropy_report, holevo_terms, measured_conditional_entropy, measurement_probs,
    relative_entropy, shannon,
};
use crate::error::Result;
use crate::io::format_sig;
use crate::multi::{chain_coefficients, multi_bound_opt, MeasurementChain, MAX_PERMUTED_CHAIN};
use crate::qcore::{hermitian_spectrum, ProjectiveBasis, QuantumState};
use crate::random::{random_basis, random_state, rng_from_seed};
use crate::tol;

/// Names of the checks, in report order.
pub const CHECKS: [&str; 20] = [
    "eigen_reconstruction",
    "partial_trace_unit",
    "eq5_identity",
    "holevo_range",
    "measurement_vs_spectrum",
    "data_processing",
    "relative_entropy_nonnegative",
    "direct_sum_majorization",
    "bound_ordering",
    "quantum_measures_nonpositive",
    "q_lambda_between",
    "relation_mu",
    "relation_cp",
    "relation_xj_q1",
    "relation_xj_q2",
    "relation_hybrid",
    "hybrid_is_max",
    "multi_relation",
    "chain_coefficients_range",
    "evaluation",
];

/// An instance: a bipartite state (measured system first) and its bases.
#[derive(Debug, Clone)]
pub struct Instance {
    pub state: QuantumState,
    pub bases: Vec<ProjectiveBasis>,
}

/// Seeded instance `index` of a run; each index has its own stream.
pub fn random_instance(seed: u64, index: u64, dims: [usize; 2], measurements: usize) -> Result<Instance> {
    let mut rng = rng_from_seed(seed);
    rng.set_stream(index);
    let state = random_state(&mut rng, &dims)?;
    let bases = (0..measurements)
        .map(|_| random_basis(&mut rng, dims[0]))
        .collect::<Result<Vec<_>>>()?;
    Ok(Instance { state, bases })
}

/// Slack of every check on one instance; negative slack is a violation.
/// An instance that fails to evaluate (for example when two routes to the
/// same quantity disagree) fails the `evaluation` check with slack `-inf`.
pub fn check_instance(inst: &Instance) -> (Vec<f64>, Option<String>) {
    let mut slack = vec![f64::INFINITY; CHECKS.len()];
    match fill(inst, &mut slack) {
        Ok(()) => {
            set(&mut slack, "evaluation", 0.0);
            (slack, None)
        }
        Err(e) => {
            set(&mut slack, "evaluation", f64::NEG_INFINITY);
            (slack, Some(e.to_string()))
        }
    }
}

fn set(slack: &mut [f64], name: &str, value: f64) {
    let k = CHECKS.iter().position(|&c| c == name).expect("known check");
    slack[k] = slack[k].min(value);
}

fn top_k_sums(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.total_cmp(a));
    v.iter()
        .scan(0.0, |acc, x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}

fn fill(inst: &Instance, slack: &mut [f64]) -> Result<()> {
    let rho = &inst.state;
    let (m1, m2) = (&inst.bases[0], &inst.bases[1]);
    let spec = hermitian_spectrum(rho.matrix())?;
    set(
        slack,
        "eigen_reconstruction",
        tol::RECONSTRUCTION - spec.reconstruct().max_abs_diff(rho.matrix()),
    );

    let rho_a = rho.reduced(0)?;
    let rho_b = rho.reduced(1)?;
    set(
        slack,
        "partial_trace_unit",
        tol::VALIDATION - (rho_b.matrix().trace().re - 1.0).abs(),
    );

    let r = entropy_report(rho)?;
    set(slack, "data_processing", r.h_a - r.h_a_given_b + 1e-9);
    let mixed = QuantumState::maximally_mixed(&[rho_a.dim()])?;
    set(
        slack,
        "relative_entropy_nonnegative",
        relative_entropy(&rho_a, &mixed)? + 1e-9,
    );

    // H(M1|B) + H(M2|B) = H(M1) + H(M2) - 2H(B) + S1 + S2
    let mut lhs = 0.0;
    let mut rhs = -2.0 * r.h_b;
    for m in [m1, m2] {
        lhs += measured_conditional_entropy(rho, m)?;
        let e = conditional_ensemble(rho, m)?;
        let t = holevo_terms(&e, &rho_b)?;
        rhs += shannon(&e.probs) + t.s;
        set(slack, "holevo_range", (t.chi + 1e-9).min(r.h_b - t.chi + 1e-9));
    }
    set(slack, "eq5_identity", tol::DERIVED - (lhs - rhs).abs());

    let p = measurement_probs(&rho_a, m1, 0)?;
    let q = measurement_probs(&rho_a, m2, 0)?;
    for m in &inst.bases {
        let h = shannon(&measurement_probs(&rho_a, m, 0)?);
        set(slack, "measurement_vs_spectrum", h - r.h_a + 1e-9);
    }

    let o = overlaps(m1, m2)?;
    if m1.dim() <= MAX_FRAME_DIM {
        let f = direct_sum_frame(m1, m2)?;
        let mut pq = p.entries().to_vec();
        pq.extend_from_slice(q.entries());
        let mut reference = vec![1.0];
        reference.extend(f.omega_vector());
        let (got, cap) = (top_k_sums(pq), top_k_sums(reference));
        for (g, c) in got.iter().zip(&cap) {
            set(slack, "direct_sum_majorization", c + tol::DERIVED - g);
        }
        let (mu, cp, xj) = (b_mu(&o), b_cp(&o), b_xj(&o, &f)?);
        set(slack, "bound_ordering", (xj - cp + 1e-12).min(cp - mu + 1e-12));

        let rep = hybrid_bound(rho, m1, m2, &Registry::with_builtins())?;
        set(slack, "quantum_measures_nonpositive", 1e-9 - rep.q1.max(rep.q2));
        let (lo, hi) = (rep.q1.min(rep.q2), rep.q1.max(rep.q2));
        for &(_, v) in &rep.q_lambda {
            set(slack, "q_lambda_between", (v - lo + 1e-12).min(hi - v + 1e-12));
        }
        let c = rep.conditional_sum + tol::RELATION;
        set(slack, "relation_mu", c - (rep.b_mu + rep.h_a_given_b));
        set(slack, "relation_cp", c - (rep.b_cp + rep.h_a_given_b));
        set(slack, "relation_xj_q1", c - (rep.b_xj + rep.h_a + rep.q1));
        set(slack, "relation_xj_q2", c - (rep.b_xj + rep.h_a + rep.q2));
        set(slack, "relation_hybrid", c - rep.hybrid);
        set(
            slack,
            "hybrid_is_max",
            1e-12 - (rep.hybrid - rep.bound_c.max(rep.bound_cc)).abs(),
        );
    }

    let chain = MeasurementChain::new(inst.bases.clone())?;
    if chain.len() <= MAX_PERMUTED_CHAIN {
        let (best, _) = multi_bound_opt(rho, &chain, None)?;
        let total: f64 = inst
            .bases
            .iter()
            .map(|m| measured_conditional_entropy(rho, m))
            .sum::<Result<f64>>()?;
        set(slack, "multi_relation", total - best + tol::RELATION);
    }
    let coeffs = chain_coefficients(&chain, &rho_a)?;
    let sum: f64 = coeffs.raw.iter().sum();
    let cap = (chain.dim() as f64).powi(chain.len() as i32 - 2);
    set(
        slack,
        "chain_coefficients_range",
        (sum - 1.0 + 1e-12).min(cap - coeffs.sorted[0] + 1e-12),
    );
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckStats {
    pub name: &'static str,
    pub evaluated: usize,
    pub violations: usize,
    pub worst_slack: f64,
}

#[derive(Debug, Clone)]
pub struct Summary {
    pub header: String,
    pub checks: Vec<CheckStats>,
    /// Index and minimum slack of the worst instance.
    pub worst: Option<(usize, f64)>,
    /// First evaluation error, with its instance index.
    pub first_error: Option<(usize, String)>,
}

impl Summary {
    pub fn total_violations(&self) -> usize {
        self.checks.iter().map(|c| c.violations).sum()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{}", self.header).unwrap();
        writeln!(
            out,
            "{:<30} {:>9} {:>10}  worst_slack",
            "check", "evaluated", "violations"
        )
        .unwrap();
        for c in &self.checks {
            writeln!(
                out,
                "{:<30} {:>9} {:>10}  {}",
                c.name,
                c.evaluated,
                c.violations,
                format_sig(c.worst_slack)
            )
            .unwrap();
        }
        if let Some((i, e)) = &self.first_error {
            writeln!(out, "first evaluation error (instance {i}): {e}").unwrap();
        }
        writeln!(out, "total violations: {}", self.total_violations()).unwrap();
        out
    }
}

/// Runs every check on every instance and aggregates the slacks.
pub fn summarize(header: String, instances: &[Instance]) -> Summary {
    let results: Vec<(Vec<f64>, Option<String>)> = instances.par_iter().map(check_instance).collect();
    let first_error = results
        .iter()
        .enumerate()
        .find_map(|(i, (_, e))| e.clone().map(|e| (i, e)));
    let slacks: Vec<Vec<f64>> = results.into_iter().map(|(s, _)| s).collect();
    let checks = CHECKS
        .iter()
        .enumerate()
        .map(|(k, &name)| {
            let evaluated: Vec<f64> = slacks.iter().map(|s| s[k]).filter(|x| *x != f64::INFINITY).collect();
            CheckStats {
                name,
                evaluated: evaluated.len(),
                violations: evaluated.iter().filter(|&&x| x < 0.0).count(),
                worst_slack: evaluated.iter().copied().fold(f64::INFINITY, f64::min),
            }
        })
        .collect();
    let worst = slacks
        .iter()
        .enumerate()
        .map(|(i, s)| (i, s.iter().copied().fold(f64::INFINITY, f64::min)))
        .min_by(|a, b| a.1.total_cmp(&b.1));
    Summary {
        header,
        checks,
        worst,
        first_error,
    }
}
