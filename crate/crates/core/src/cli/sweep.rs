//! Figure-data sweeps over the built-in scenarios.

use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;

use crate::bounds::{b_maj_ds, b_mu, b_xj, direct_sum_frame, hybrid_bound, overlaps, q1, q2, Registry};
use crate::entropy::{conditional_ensemble, entropy_report, measurement_probs, shannon, von_neumann};
use crate::error::{Error, Result};
use crate::io::format_sig;
use crate::scenarios::{self, equal_overlap_chain, Scenario};

pub const SCENARIOS: [&str; 7] = ["fig1", "fig2", "fig3", "fig4", "bell", "horodecki", "werner"];

/// A CSV table: header plus rows of numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    fn new(header: &[&str], rows: Vec<Vec<f64>>) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows,
        }
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&x| format_sig(x)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Default)]
pub struct SweepOptions {
    pub steps: Option<usize>,
    pub grid: Option<usize>,
    pub theta: Option<f64>,
}

fn linspace(a: f64, b: f64, k: usize) -> Vec<f64> {
    if k == 1 {
        return vec![a];
    }
    (0..k).map(|i| a + (b - a) * i as f64 / (k - 1) as f64).collect()
}

fn positive(name: &str, k: usize) -> Result<usize> {
    if k == 0 {
        return Err(Error::InvalidArgument(format!("{name} must be at least 1")));
    }
    Ok(k)
}

fn par_rows<T: Sync>(params: &[T], f: impl Fn(&T) -> Result<Vec<f64>> + Sync + Send) -> Result<Vec<Vec<f64>>> {
    params.par_iter().map(f).collect()
}

pub fn run_sweep(name: &str, opts: &SweepOptions) -> Result<Table> {
    match name {
        "fig1" => qubit_sweep(scenarios::rho1, positive("steps", opts.steps.unwrap_or(50))?),
        "fig2" => qubit_sweep(scenarios::rho2, positive("steps", opts.steps.unwrap_or(50))?),
        "fig3" => fig3(positive("steps", opts.steps.unwrap_or(9))?),
        "fig4" => fig4(positive("grid", opts.grid.or(opts.steps).unwrap_or(10))?),
        "bell" => bell_sweep(positive("steps", opts.steps.unwrap_or(4))?),
        "horodecki" => {
            let k = positive("steps", opts.steps.unwrap_or(9))?;
            let ps: Vec<f64> = (0..k).map(|i| (i + 1) as f64 / (k + 1) as f64).collect();
            report_sweep(&ps, |&p| scenarios::horodecki_state(p), &["p"], |s| vec![s.params["p"]])
        }
        "werner" => {
            let k = positive("steps", opts.steps.unwrap_or(10))?;
            let theta = opts.theta.unwrap_or(0.5);
            let ps: Vec<f64> = (0..k).map(|i| (i as f64 + 0.5) / k as f64).collect();
            report_sweep(
                &ps,
                |&p| scenarios::werner(p, theta),
                &["p", "theta"],
                |s| vec![s.params["p"], s.params["theta"]],
            )
        }
        other => Err(Error::InvalidArgument(format!(
            "unknown scenario '{other}' (expected one of {})",
            SCENARIOS.join(", ")
        ))),
    }
}

/// Memoryless qubit families over `θ ∈ [0, π/2]`.
fn qubit_sweep(make: fn(f64) -> Result<Scenario>, k: usize) -> Result<Table> {
    let first = make(0.0)?;
    let (m1, m2) = (&first.bases[0], &first.bases[1]);
    let o = overlaps(m1, m2)?;
    let frame = direct_sum_frame(m1, m2)?;
    let (mu, maj, xj) = (b_mu(&o), b_maj_ds(&frame), b_xj(&o, &frame)?);
    let thetas = linspace(0.0, FRAC_PI_2, k);
    let rows = par_rows(&thetas, |&theta| {
        let s = make(theta)?;
        let h_a = von_neumann(&s.state);
        let sum = shannon(&measurement_probs(&s.state, m1, 0)?) + shannon(&measurement_probs(&s.state, m2, 0)?);
        Ok(vec![theta, sum, mu, mu + h_a, maj, xj + h_a])
    })?;
    Ok(Table::new(
        &[
            "theta",
            "entropic_sum",
            "b_mu",
            "b_mu_plus_HA",
            "b_maj_ds",
            "b_xj_plus_HA",
        ],
        rows,
    ))
}

/// `𝓑_1 … 𝓑_4` on the entangled `4 × 2` family; memory is the 2-dim side.
fn fig3(k: usize) -> Result<Table> {
    let chain = equal_overlap_chain()?;
    let ps: Vec<f64> = (0..k).map(|i| (i + 1) as f64 / (k + 1) as f64).collect();
    let rows = par_rows(&ps, |&p| {
        let s = scenarios::horodecki_state(p)?;
        let r = entropy_report(&s.state)?;
        let b3 = r.h_a + q2(&s.state, &chain.m1, &chain.m2)?;
        let b4 = r.h_a + q2(&s.state, &chain.m3, &chain.m4)?;
        Ok(vec![p, r.h_a, r.h_a_given_b, b3, b4])
    })?;
    Ok(Table::new(&["p", "B1", "B2", "B3", "B4"], rows))
}

/// `Q2 - Q1` for Werner states on a `k × k` grid.
fn fig4(k: usize) -> Result<Table> {
    let grid: Vec<(f64, f64)> = (0..k)
        .flat_map(|i| {
            let p = (i as f64 + 0.5) / k as f64;
            linspace(0.1, 6.2, k).into_iter().map(move |t| (p, t))
        })
        .collect();
    let rows = par_rows(&grid, |&(p, theta)| {
        let s = scenarios::werner(p, theta)?;
        let r = entropy_report(&s.state)?;
        Ok(vec![p, theta, q2(&s.state, &s.bases[0], &s.bases[1])? - q1(&r)])
    })?;
    Ok(Table::new(&["p", "theta", "q2_minus_q1"], rows))
}

/// Maximally entangled states for `d = 2 ..= k + 1`.
fn bell_sweep(k: usize) -> Result<Table> {
    let ds: Vec<usize> = (2..k + 2).collect();
    let rows = par_rows(&ds, |&d| {
        let s = scenarios::bell(d)?;
        let r = entropy_report(&s.state)?;
        let s1 = conditional_ensemble(&s.state, &s.bases[0])?.weighted_entropy();
        let s2 = conditional_ensemble(&s.state, &s.bases[1])?.weighted_entropy();
        let (a, b) = (q1(&r), q2(&s.state, &s.bases[0], &s.bases[1])?);
        Ok(vec![d as f64, r.h_a, s1, s2, a, b, r.h_a + a, r.h_a + b])
    })?;
    Ok(Table::new(
        &["d", "H_A", "S1", "S2", "Q1", "Q2", "HA_plus_Q1", "HA_plus_Q2"],
        rows,
    ))
}

fn report_sweep<T: Sync>(
    params: &[T],
    make: impl Fn(&T) -> Result<Scenario> + Sync + Send,
    lead: &[&str],
    lead_values: impl Fn(&Scenario) -> Vec<f64> + Sync + Send,
) -> Result<Table> {
    let registry = Registry::with_builtins();
    let rows = par_rows(params, |p| {
        let s = make(p)?;
        let r = hybrid_bound(&s.state, &s.bases[0], &s.bases[1], &registry)?;
        let mut row = lead_values(&s);
        row.extend([
            r.entropic_sum,
            r.conditional_sum,
            r.h_a_given_b,
            r.b_xj,
            r.q1,
            r.q2,
            r.bound_cc,
            r.bound_c,
            r.hybrid,
        ]);
        Ok(row)
    })?;
    let mut header = lead.to_vec();
    header.extend([
        "entropic_sum",
        "conditional_sum",
        "H_A_given_B",
        "B_XJ",
        "Q1",
        "Q2",
        "bound_CC",
        "bound_C",
        "hybrid",
    ]);
    Ok(Table::new(&header, rows))
}
