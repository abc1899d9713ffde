use rayon::prelude::*;

use crate::entropy::shannon_of;
use crate::error::{dim_mismatch, Error, Result, Violation};
use crate::qcore::{largest_singular_value, ProjectiveBasis};
use crate::tol;

/// Largest dimension accepted by [`direct_sum_frame`]; the enumeration visits
/// `(2^d - 1)^2` submatrices.
pub const MAX_FRAME_DIM: usize = 8;

/// Where a frame came from. The witness only accepts separable frames.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameKind {
    /// `Ω_k = 1` everywhere.
    Trivial,
    DirectSum,
    /// Frame for product states; `heuristic` marks an optimiser estimate
    /// that may sit below the true supremum.
    Separable {
        heuristic: bool,
    },
    Custom,
}

/// Nondecreasing cumulative vector `(Ω_1, …, Ω_K)` with `Ω_K = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct MajorizationFrame {
    cumulative: Vec<f64>,
    kind: FrameKind,
}

impl MajorizationFrame {
    pub fn new(cumulative: Vec<f64>, kind: FrameKind) -> Result<Self> {
        let bad = |msg: String| -> Error { Violation::Frame(msg).into() };
        let Some(&last) = cumulative.last() else {
            return Err(bad("empty frame".into()));
        };
        if let Some(x) = cumulative
            .iter()
            .find(|x| !x.is_finite() || **x < -tol::VALIDATION || **x > 1.0 + tol::RECONSTRUCTION)
        {
            return Err(bad(format!("entry {x} outside [0, 1]")));
        }
        if let Some(w) = cumulative.windows(2).find(|w| w[1] < w[0] - tol::VALIDATION) {
            return Err(bad(format!("decreasing step {} -> {}", w[0], w[1])));
        }
        if (last - 1.0).abs() > tol::RECONSTRUCTION {
            return Err(bad(format!("last entry is {last}, expected 1")));
        }
        Ok(Self { cumulative, kind })
    }

    /// All-ones frame of the given length.
    pub fn trivial(len: usize) -> Self {
        Self {
            cumulative: vec![1.0; len.max(1)],
            kind: FrameKind::Trivial,
        }
    }

    pub fn len(&self) -> usize {
        self.cumulative.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cumulative.is_empty()
    }

    pub fn cumulative(&self) -> &[f64] {
        &self.cumulative
    }

    /// `(Ω_1, Ω_2 - Ω_1, …)`.
    pub fn omega_vector(&self) -> Vec<f64> {
        let mut prev = 0.0;
        self.cumulative
            .iter()
            .map(|&c| {
                let w = c - prev;
                prev = c;
                w
            })
            .collect()
    }

    pub fn kind(&self) -> FrameKind {
        self.kind
    }

    /// `Ω_k` (1-based), equal to 1 beyond the stored length.
    pub fn omega(&self, k: usize) -> f64 {
        assert!(k >= 1, "frame entries are 1-based");
        self.cumulative.get(k - 1).copied().unwrap_or(1.0)
    }
}

/// Direct-sum frame of a basis pair: `Ω_k` is the largest singular value over
/// all submatrices of `U_jk = <u1_j|u2_k>` with `r` rows and `s` columns,
/// `r + s = k + 1`. The result has length `2d - 1`.
pub fn direct_sum_frame(m1: &ProjectiveBasis, m2: &ProjectiveBasis) -> Result<MajorizationFrame> {
    if m1.dim() != m2.dim() {
        return Err(dim_mismatch(format!(
            "direct-sum frame for bases of dims {} and {}",
            m1.dim(),
            m2.dim()
        )));
    }
    let d = m1.dim();
    if d > MAX_FRAME_DIM {
        return Err(Error::Unsupported(format!(
            "direct-sum frame enumeration is limited to d <= {MAX_FRAME_DIM} (got {d})"
        )));
    }
    let u = m1.amplitudes(m2);
    let full = (1usize << d) - 1;
    let best = (1..=full)
        .into_par_iter()
        .map(|rmask| {
            let rows = bits(rmask);
            let mut local = vec![0.0f64; 2 * d];
            for cmask in 1..=full {
                let cols = bits(cmask);
                let k = rows.len() + cols.len() - 1;
                let sigma = largest_singular_value(&u.select(&rows, &cols));
                if sigma > local[k] {
                    local[k] = sigma;
                }
            }
            local
        })
        .reduce(
            || vec![0.0f64; 2 * d],
            |a, b| a.iter().zip(&b).map(|(x, y)| x.max(*y)).collect(),
        );
    let mut cumulative: Vec<f64> = best[1..].iter().map(|&x| x.min(1.0)).collect();
    // Monotone by construction (adding a row or column never lowers σ_max);
    // the running max only absorbs round-off.
    for k in 1..cumulative.len() {
        cumulative[k] = cumulative[k].max(cumulative[k - 1]);
    }
    *cumulative.last_mut().expect("d >= 1") = 1.0;
    MajorizationFrame::new(cumulative, FrameKind::DirectSum)
}

fn bits(mask: usize) -> Vec<usize> {
    (0..usize::BITS as usize).filter(|i| mask >> i & 1 == 1).collect()
}

/// Majorization bound `H(ω)` from the difference vector of a frame.
pub fn b_maj_ds(f: &MajorizationFrame) -> f64 {
    let w: Vec<f64> = f.omega_vector().into_iter().map(|x| x.max(0.0)).collect();
    shannon_of(&w)
}
