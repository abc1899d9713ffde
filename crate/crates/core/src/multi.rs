//! Bounds for chains of `N` measurements, separable frames and the
//! entanglement witness built on them.

use std::fmt;

use itertools::Itertools;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::bounds::{FrameKind, MajorizationFrame};
use crate::entropy::{entropy_report, measurement_probs, shannon, von_neumann};
use crate::error::{dim_mismatch, Error, Result};
use crate::qcore::{hermitian_spectrum, ComplexMatrix, ProbVector, ProjectiveBasis, QuantumState};
use crate::tol;

/// Longest chain accepted by [`multi_bound_opt`] (`7! = 5040` orderings).
pub const MAX_PERMUTED_CHAIN: usize = 7;
/// Default number of random restarts per `(m, S)` in [`separable_frame`].
pub const DEFAULT_BUDGET: usize = 200;
const MAX_ALTERNATIONS: usize = 500;
const CONVERGENCE: f64 = 1e-10;

/// `N >= 2` bases of a common dimension, in measurement order.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementChain {
    bases: Vec<ProjectiveBasis>,
}

impl MeasurementChain {
    pub fn new(bases: Vec<ProjectiveBasis>) -> Result<Self> {
        if bases.len() < 2 {
            return Err(Error::InvalidArgument(format!(
                "a chain needs at least 2 measurements, got {}",
                bases.len()
            )));
        }
        let d = bases[0].dim();
        if let Some(b) = bases.iter().find(|b| b.dim() != d) {
            return Err(dim_mismatch(format!("chain mixes bases of dims {d} and {}", b.dim())));
        }
        Ok(Self { bases })
    }

    pub fn dim(&self) -> usize {
        self.bases[0].dim()
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bases(&self) -> &[ProjectiveBasis] {
        &self.bases
    }

    /// Chain whose `k`-th measurement is `self[order[k]]`.
    pub fn reordered(&self, order: &[usize]) -> Result<Self> {
        let n = self.len();
        if order.len() != n || !order.iter().copied().sorted().eq(0..n) {
            return Err(Error::InvalidArgument(format!(
                "{order:?} is not a permutation of {n} measurements"
            )));
        }
        Ok(Self {
            bases: order.iter().map(|&k| self.bases[k].clone()).collect(),
        })
    }
}

/// The coefficients `b(i_N)` of a chain.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainCoefficients {
    /// Indexed by the outcome `i_N` of the last measurement.
    pub raw: Vec<f64>,
    /// `b_1 >= b_2 >= …`.
    pub sorted: Vec<f64>,
    /// `sorted[k] = raw[order[k]]`; ties keep the original index order.
    pub order: Vec<usize>,
    /// Distribution of the last measurement, permuted like `sorted`.
    pub probs: ProbVector,
}

fn overlap_matrix(a: &ProjectiveBasis, b: &ProjectiveBasis) -> Vec<Vec<f64>> {
    let amp = a.amplitudes(b);
    (0..a.dim())
        .map(|i| (0..b.dim()).map(|j| amp[(i, j)].norm_sqr()).collect())
        .collect()
}

fn coefficients(chain: &MeasurementChain) -> Vec<f64> {
    let b = chain.bases();
    let d = chain.dim();
    let first = overlap_matrix(&b[0], &b[1]);
    let mut v: Vec<f64> = (0..d)
        .map(|j| (0..d).map(|i| first[i][j]).fold(f64::NEG_INFINITY, f64::max))
        .collect();
    for w in b[1..].windows(2) {
        let c = overlap_matrix(&w[0], &w[1]);
        v = (0..d).map(|k| (0..d).map(|j| v[j] * c[j][k]).sum()).collect();
    }
    v
}

/// `b(i_N) = Σ_{i_2…i_{N-1}} max_{i_1} c(u¹_{i_1}, u²_{i_2}) Π_m c(u^m_{i_m}, u^{m+1}_{i_{m+1}})`,
/// with the distribution of `M_N` on `rho_a` attached.
pub fn chain_coefficients(chain: &MeasurementChain, rho_a: &QuantumState) -> Result<ChainCoefficients> {
    let last = chain.bases().last().expect("chain is nonempty");
    if rho_a.dim() != chain.dim() {
        return Err(dim_mismatch(format!(
            "chain of dim {} on a state of dim {}",
            chain.dim(),
            rho_a.dim()
        )));
    }
    let probs = measurement_probs(rho_a, last, 0)?;
    let raw = coefficients(chain);
    let mut order: Vec<usize> = (0..raw.len()).collect();
    order.sort_by(|&i, &j| raw[j].total_cmp(&raw[i]));
    let sorted = order.iter().map(|&k| raw[k]).collect();
    Ok(ChainCoefficients {
        probs: probs.reordered(&order),
        raw,
        sorted,
        order,
    })
}

/// `-log2 b_1 + Σ_{k<d} (1 - Ω_k) log2(b_k / b_{k+1})`.
fn frame_term(sorted: &[f64], frame: &MajorizationFrame) -> f64 {
    let d = sorted.len();
    -sorted[0].log2()
        + (1..d)
            .map(|k| (1.0 - frame.omega(k)) * (sorted[k - 1] / sorted[k]).log2())
            .sum::<f64>()
}

fn check_frame(frame: &MajorizationFrame, d: usize) -> Result<()> {
    if frame.len() + 1 < d {
        return Err(dim_mismatch(format!(
            "frame of length {} is too short for dimension {d} (needs {})",
            frame.len(),
            d - 1
        )));
    }
    Ok(())
}

fn require_chain_on_a(rho_ab: &QuantumState, chain: &MeasurementChain) -> Result<()> {
    if !rho_ab.is_bipartite() {
        return Err(dim_mismatch(format!(
            "expected a bipartite state, dims are {:?}",
            rho_ab.dims()
        )));
    }
    if rho_ab.dims()[0] != chain.dim() {
        return Err(dim_mismatch(format!(
            "chain of dim {} on a measured subsystem of dim {}",
            chain.dim(),
            rho_ab.dims()[0]
        )));
    }
    Ok(())
}

/// Lower bound on `Σ_m H(M_m|B)`:
/// `(N-1) H(A|B) - log2 b_1 + Σ_{k=1}^{d-1} (1 - Ω_k) log2(b_k / b_{k+1})`.
/// Without a frame the trivial frame is used and the sum vanishes.
pub fn multi_bound(rho_ab: &QuantumState, chain: &MeasurementChain, frame: Option<&MajorizationFrame>) -> Result<f64> {
    require_chain_on_a(rho_ab, chain)?;
    let d = chain.dim();
    let trivial = MajorizationFrame::trivial(d);
    let frame = frame.unwrap_or(&trivial);
    check_frame(frame, d)?;
    let h = entropy_report(rho_ab)?.h_a_given_b;
    let mut sorted = coefficients(chain);
    sorted.sort_by(|a, b| b.total_cmp(a));
    Ok((chain.len() - 1) as f64 * h + frame_term(&sorted, frame))
}

/// Best [`multi_bound`] over all orderings of the chain. Returns the value
/// and the ordering (as indices into the original chain); among equal
/// values the lexicographically smallest ordering wins.
pub fn multi_bound_opt(
    rho_ab: &QuantumState,
    chain: &MeasurementChain,
    frame: Option<&MajorizationFrame>,
) -> Result<(f64, Vec<usize>)> {
    let n = chain.len();
    if n > MAX_PERMUTED_CHAIN {
        return Err(Error::Unsupported(format!(
            "permutation search is limited to {MAX_PERMUTED_CHAIN} measurements (got {n})"
        )));
    }
    require_chain_on_a(rho_ab, chain)?;
    let d = chain.dim();
    let trivial = MajorizationFrame::trivial(d);
    let frame = frame.unwrap_or(&trivial);
    check_frame(frame, d)?;
    let lead = (n - 1) as f64 * entropy_report(rho_ab)?.h_a_given_b;
    let mut best: Option<(f64, Vec<usize>)> = None;
    for order in (0..n).permutations(n) {
        let mut sorted = coefficients(&chain.reordered(&order)?);
        sorted.sort_by(|a, b| b.total_cmp(a));
        let value = lead + frame_term(&sorted, frame);
        if best.as_ref().is_none_or(|(v, _)| value > v + 1e-12) {
            best = Some((value, order));
        }
    }
    Ok(best.expect("at least one ordering"))
}

fn random_unit(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

fn top_eigen(m: &ComplexMatrix) -> (f64, Vec<Complex64>) {
    let s = hermitian_spectrum(&m.hermitian_part()).expect("contracted projectors are Hermitian");
    (s.values[0], s.vector(0))
}

/// `max_{a,b} <ab|P|ab>` by alternating top-eigenvector steps from `budget`
/// random starting points.
fn product_max(p: &ComplexMatrix, dx: usize, dy: usize, budget: usize, rng: &mut ChaCha8Rng) -> f64 {
    // (I ⊗ <b|) P (I ⊗ |b>) and (<a| ⊗ I) P (|a> ⊗ I)
    let on_a = |b: &[Complex64]| {
        ComplexMatrix::from_fn(dx, dx, |x, xp| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (y, by) in b.iter().enumerate() {
                for (yp, byp) in b.iter().enumerate() {
                    acc += by.conj() * p[(x * dy + y, xp * dy + yp)] * byp;
                }
            }
            acc
        })
    };
    let on_b = |a: &[Complex64]| {
        ComplexMatrix::from_fn(dy, dy, |y, yp| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (x, ax) in a.iter().enumerate() {
                for (xp, axp) in a.iter().enumerate() {
                    acc += ax.conj() * p[(x * dy + y, xp * dy + yp)] * axp;
                }
            }
            acc
        })
    };
    let mut best = 0.0f64;
    for _ in 0..budget {
        let mut b = random_unit(rng, dy);
        let mut value = f64::NEG_INFINITY;
        for _ in 0..MAX_ALTERNATIONS {
            let (_, a) = top_eigen(&on_a(&b));
            let (v, nb) = top_eigen(&on_b(&a));
            b = nb;
            let improved = v - value;
            value = v;
            if improved < CONVERGENCE {
                break;
            }
        }
        best = best.max(value);
    }
    best.min(1.0)
}

/// Estimate of the separable frame `Ω^sep_k = max_{m, |S| = k, |a>, |b>} Σ_{i∈S} |<ab|u^m_i>|²`
/// for a chain measuring a `dx × dy` system.
///
/// Each `(m, S)` pair runs on its own random stream derived from `seed`, so
/// the result does not depend on scheduling. The optimiser can only
/// undershoot, which makes the witness less conservative; the frame is
/// flagged as heuristic.
pub fn separable_frame(
    chain: &MeasurementChain,
    split: [usize; 2],
    budget: usize,
    seed: u64,
) -> Result<MajorizationFrame> {
    if budget < 1 {
        return Err(Error::InvalidArgument("frame budget must be at least 1".into()));
    }
    let [dx, dy] = split;
    if dx < 2 || dy < 2 {
        return Err(Error::Unsupported(format!(
            "separable frames need a bipartite measured system, got split {dx}x{dy}"
        )));
    }
    let d = chain.dim();
    if dx * dy != d {
        return Err(dim_mismatch(format!(
            "split {dx}x{dy} does not match chain dimension {d}"
        )));
    }
    if d >= usize::BITS as usize {
        return Err(Error::Unsupported(format!("dimension {d} is too large")));
    }
    let masks = (1usize..(1 << d) - 1).collect::<Vec<_>>();
    let tasks: Vec<(usize, usize)> = (0..chain.len())
        .flat_map(|m| masks.iter().map(move |&s| (m, s)))
        .collect();
    let values: Vec<(usize, f64)> = tasks
        .par_iter()
        .map(|&(m, mask)| {
            let basis = &chain.bases()[m];
            let mut p = ComplexMatrix::zeros(d, d);
            for i in (0..d).filter(|i| mask >> i & 1 == 1) {
                p = &p + &basis.projector(i);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(((m as u64) << 32) | mask as u64);
            (mask.count_ones() as usize, product_max(&p, dx, dy, budget, &mut rng))
        })
        .collect();
    let mut cumulative = vec![0.0f64; d];
    for (k, v) in values {
        cumulative[k - 1] = cumulative[k - 1].max(v);
    }
    cumulative[d - 1] = 1.0;
    for k in 1..d {
        cumulative[k] = cumulative[k].max(cumulative[k - 1]).min(1.0);
    }
    MajorizationFrame::new(cumulative, FrameKind::Separable { heuristic: true })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Entangled,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Entangled => "ENTANGLED",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessVerdict {
    /// `Σ_m H(M_m)` on the measured state.
    pub lhs: f64,
    /// Value the sum cannot go below for separable states.
    pub rhs: f64,
    pub margin: f64,
    pub verdict: Verdict,
    pub frame: MajorizationFrame,
}

/// Separable-state inequality `Σ_m H(M_m) >= (N-1) H(A) - log2 b_1 + Σ_k (1 - Ω^sep_k) log2(b_k / b_{k+1})`.
/// A violation by more than the witness margin certifies entanglement.
pub fn witness(rho: &QuantumState, chain: &MeasurementChain, frame_sep: &MajorizationFrame) -> Result<WitnessVerdict> {
    if !matches!(frame_sep.kind(), FrameKind::Separable { .. }) {
        return Err(Error::InvalidArgument(format!(
            "the witness needs a separable frame, got {:?}",
            frame_sep.kind()
        )));
    }
    let d = chain.dim();
    if rho.dim() != d {
        return Err(dim_mismatch(format!(
            "chain of dim {d} on a state of dim {}",
            rho.dim()
        )));
    }
    check_frame(frame_sep, d)?;
    let lhs = chain
        .bases()
        .iter()
        .map(|m| Ok(shannon(&measurement_probs(rho, m, 0)?)))
        .sum::<Result<f64>>()?;
    let coeffs = chain_coefficients(chain, rho)?;
    let rhs = (chain.len() - 1) as f64 * von_neumann(rho) + frame_term(&coeffs.sorted, frame_sep);
    let margin = rhs - lhs;
    Ok(WitnessVerdict {
        lhs,
        rhs,
        margin,
        verdict: if margin > tol::WITNESS_MARGIN {
            Verdict::Entangled
        } else {
            Verdict::Inconclusive
        },
        frame: frame_sep.clone(),
    })
}
