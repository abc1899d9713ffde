use crate::error::{dim_mismatch, Result};
use crate::qcore::ProjectiveBasis;

use super::frame::MajorizationFrame;

/// Squared overlaps `c_jk = |<u1_j|u2_k>|²` of two bases.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapData {
    dim: usize,
    /// Row-major `d × d`.
    matrix: Vec<f64>,
    /// All `d²` entries, descending.
    sorted: Vec<f64>,
}

impl OverlapData {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, j: usize, k: usize) -> f64 {
        self.matrix[j * self.dim + k]
    }

    pub fn matrix(&self) -> &[f64] {
        &self.matrix
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.matrix.chunks(self.dim).map(<[f64]>::to_vec).collect()
    }

    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    /// Largest overlap.
    pub fn c1(&self) -> f64 {
        self.sorted[0]
    }

    /// Largest deviation of a row or column sum from 1.
    pub fn stochasticity_error(&self) -> f64 {
        let d = self.dim;
        (0..d)
            .flat_map(|i| {
                let row: f64 = (0..d).map(|k| self.get(i, k)).sum();
                let col: f64 = (0..d).map(|j| self.get(j, i)).sum();
                [(row - 1.0).abs(), (col - 1.0).abs()]
            })
            .fold(0.0, f64::max)
    }
}

pub fn overlaps(m1: &ProjectiveBasis, m2: &ProjectiveBasis) -> Result<OverlapData> {
    if m1.dim() != m2.dim() {
        return Err(dim_mismatch(format!(
            "overlaps between bases of dims {} and {}",
            m1.dim(),
            m2.dim()
        )));
    }
    let d = m1.dim();
    let amp = m1.amplitudes(m2);
    let matrix: Vec<f64> = amp.as_slice().iter().map(|z| z.norm_sqr()).collect();
    let mut sorted = matrix.clone();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let data = OverlapData { dim: d, matrix, sorted };
    debug_assert!(data.stochasticity_error() < 1e-9);
    Ok(data)
}

/// Maassen–Uffink: `log2(1/c1)`.
pub fn b_mu(o: &OverlapData) -> f64 {
    -o.c1().log2()
}

/// Coles–Piani: `log2(1/c1) + (1 - √c1)/2 · log2(c1/c2)`.
pub fn b_cp(o: &OverlapData) -> f64 {
    let (c1, c2) = (o.sorted[0], o.sorted[1]);
    -c1.log2() + 0.5 * (1.0 - c1.sqrt()) * (c1 / c2).log2()
}

/// Bound using every overlap: `b_cp` plus, for `k = 2..d-1`,
/// `(1 - Ω_{2k-1})/2 · log2(c_k / c_{k+1})`.
///
/// `Ω` is the cumulative direct-sum frame of the same pair (length `2d - 1`,
/// 1-based). The coefficient is `(2 - Ω'_{2k})/2` written for the cumulative
/// `Ω'` of `(1) ⊕ ω`, where `Ω'_{2k} = 1 + Ω_{2k-1}`; at `k = 1` it is the
/// Coles–Piani term since `Ω_1 = √c1`.
pub fn b_xj(o: &OverlapData, f: &MajorizationFrame) -> Result<f64> {
    let d = o.dim;
    if f.len() != 2 * d - 1 {
        return Err(dim_mismatch(format!(
            "direct-sum frame of length {} for overlaps of dim {d} (expected {})",
            f.len(),
            2 * d - 1
        )));
    }
    let c = &o.sorted;
    let omega = f.cumulative();
    let tail: f64 = (2..d)
        .map(|k| 0.5 * (1.0 - omega[2 * k - 2]) * (c[k - 1] / c[k]).log2())
        .sum();
    Ok(b_cp(o) + tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::frame::direct_sum_frame;

    fn sec2_pair() -> (ProjectiveBasis, ProjectiveBasis) {
        let s = 3f64.sqrt() / 2.0;
        (
            ProjectiveBasis::standard(2),
            ProjectiveBasis::from_real(&[vec![0.5, -s], vec![s, 0.5]]).unwrap(),
        )
    }

    #[test]
    fn identical_bases() {
        let b = ProjectiveBasis::fourier(3);
        let o = overlaps(&b, &b).unwrap();
        for j in 0..3 {
            for k in 0..3 {
                let expected = if j == k { 1.0 } else { 0.0 };
                assert!((o.get(j, k) - expected).abs() < 1e-15);
            }
        }
        assert!((o.c1() - 1.0).abs() < 1e-15);
        assert!(b_mu(&o).abs() < 1e-15);
        let f = direct_sum_frame(&b, &b).unwrap();
        assert!(b_xj(&o, &f).unwrap().abs() < 1e-12);
    }

    #[test]
    fn qubit_pair_overlaps() {
        let (m1, m2) = sec2_pair();
        let o = overlaps(&m1, &m2).unwrap();
        let expected = [0.25, 0.75, 0.75, 0.25];
        for (a, b) in o.matrix().iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!((o.c1() - 0.75).abs() < 1e-15);
        assert!((b_mu(&o) - (4.0f64 / 3.0).log2()).abs() < 1e-15);
        // c1 = c2 kills the Coles–Piani correction
        assert!((b_cp(&o) - b_mu(&o)).abs() < 1e-15);
        let f = direct_sum_frame(&m1, &m2).unwrap();
        assert!((b_xj(&o, &f).unwrap() - b_cp(&o)).abs() < 1e-15);
    }

    #[test]
    fn mub_values() {
        let o = overlaps(&ProjectiveBasis::standard(2), &ProjectiveBasis::fourier(2)).unwrap();
        assert!(o.matrix().iter().all(|c| (c - 0.5).abs() < 1e-15));
        assert!((b_mu(&o) - 1.0).abs() < 1e-15);
        assert!((b_cp(&o) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn coles_piani_asymmetric_d3_direct_formula() {
        // Real rotation with distinct overlaps; formula evaluated term by term.
        let (a, b) = (0.3f64, 0.7f64);
        let r = |t: f64| [[t.cos(), -t.sin()], [t.sin(), t.cos()]];
        let (ra, rb) = (r(a), r(b));
        // R = R_xy(a) · R_yz(b)
        let m = [
            [ra[0][0], ra[0][1] * rb[0][0], ra[0][1] * rb[0][1]],
            [ra[1][0], ra[1][1] * rb[0][0], ra[1][1] * rb[0][1]],
            [0.0, rb[1][0], rb[1][1]],
        ];
        let cols: Vec<Vec<f64>> = (0..3).map(|j| (0..3).map(|i| m[i][j]).collect()).collect();
        let m2 = ProjectiveBasis::from_real(&cols).unwrap();
        let o = overlaps(&ProjectiveBasis::standard(3), &m2).unwrap();
        let mut c: Vec<f64> = m.iter().flatten().map(|x| x * x).collect();
        c.sort_by(|x, y| y.total_cmp(x));
        let expected = -c[0].log2() + (1.0 - c[0].sqrt()) / 2.0 * (c[0] / c[1]).log2();
        assert!((b_cp(&o) - expected).abs() < 1e-14);
        assert!(b_cp(&o) > b_mu(&o));
    }

    #[test]
    fn mismatched_dims() {
        assert!(overlaps(&ProjectiveBasis::standard(2), &ProjectiveBasis::standard(3)).is_err());
        let o = overlaps(&ProjectiveBasis::standard(3), &ProjectiveBasis::fourier(3)).unwrap();
        let short = MajorizationFrame::trivial(3);
        assert!(b_xj(&o, &short).is_err());
    }
}
