use num_complex::Complex64;

use super::eigen::hermitian_spectrum;
use super::matrix::ComplexMatrix;
use crate::error::{dim_mismatch, Error, Result, Violation};
use crate::tol;

/// A density matrix together with its subsystem dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    dims: Vec<usize>,
    matrix: ComplexMatrix,
}

fn check_dims(dims: &[usize], side: usize) -> Result<()> {
    if dims.is_empty() {
        return Err(Violation::BadDims("no subsystems".into()).into());
    }
    if let Some(d) = dims.iter().find(|&&d| d < 2) {
        return Err(Violation::BadDims(format!("subsystem dimension {d} < 2")).into());
    }
    let total: usize = dims.iter().product();
    if total != side {
        return Err(dim_mismatch(format!(
            "dims {dims:?} multiply to {total}, matrix side is {side}"
        )));
    }
    Ok(())
}

/// Checks Hermiticity, unit trace and positivity, in that order.
pub fn validate_state(matrix: ComplexMatrix, dims: &[usize]) -> Result<QuantumState> {
    if !matrix.is_square() {
        return Err(Violation::NotSquare {
            rows: matrix.rows(),
            cols: matrix.cols(),
        }
        .into());
    }
    check_dims(dims, matrix.rows())?;
    let herm = matrix.hermiticity_deviation();
    if herm > tol::VALIDATION {
        return Err(Violation::NotHermitian { deviation: herm }.into());
    }
    let tr = matrix.trace();
    let tr_dev = (tr - Complex64::new(1.0, 0.0)).norm();
    if tr_dev > tol::VALIDATION {
        return Err(Violation::Trace { deviation: tr_dev }.into());
    }
    let min_eig = *hermitian_spectrum(&matrix)?.values.last().expect("nonempty spectrum");
    if min_eig < -tol::VALIDATION {
        return Err(Violation::NotPsd {
            min_eigenvalue: min_eig,
        }
        .into());
    }
    Ok(QuantumState {
        dims: dims.to_vec(),
        matrix: matrix.hermitian_part(),
    })
}

impl QuantumState {
    pub fn new(matrix: ComplexMatrix, dims: &[usize]) -> Result<Self> {
        validate_state(matrix, dims)
    }

    /// For matrices produced by trusted operations on valid states
    /// (partial traces, products, conditioning); only shape is checked.
    pub(crate) fn from_trusted(matrix: ComplexMatrix, dims: Vec<usize>) -> Self {
        debug_assert_eq!(dims.iter().product::<usize>(), matrix.rows());
        debug_assert!(matrix.hermiticity_deviation() < 1e-8);
        Self {
            dims,
            matrix: matrix.hermitian_part(),
        }
    }

    pub fn pure(vector: &[Complex64], dims: &[usize]) -> Result<Self> {
        let norm = vector.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidArgument("zero state vector".into()));
        }
        let v: Vec<Complex64> = vector.iter().map(|z| z / norm).collect();
        validate_state(ComplexMatrix::outer(&v, &v), dims)
    }

    pub fn maximally_mixed(dims: &[usize]) -> Result<Self> {
        let d: usize = dims.iter().product();
        validate_state(ComplexMatrix::identity(d).scale_real(1.0 / d as f64), dims)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn is_bipartite(&self) -> bool {
        self.dims.len() == 2
    }

    /// Spectrum clamped to `[0, 1]`, descending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_spectrum(&self.matrix)
            .expect("states are Hermitian")
            .values
            .into_iter()
            .map(|x| x.clamp(0.0, 1.0))
            .collect()
    }

    pub fn tensor(&self, other: &QuantumState) -> QuantumState {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        QuantumState::from_trusted(self.matrix.kron(&other.matrix), dims)
    }

    /// Reduced state on the subsystems listed in `keep` (in ascending order).
    pub fn partial_trace(&self, keep: &[usize]) -> Result<QuantumState> {
        partial_trace(self, keep)
    }

    /// Reduced state of a single subsystem.
    pub fn reduced(&self, subsystem: usize) -> Result<QuantumState> {
        partial_trace(self, &[subsystem])
    }

    /// Reorders subsystems: new subsystem `k` is old subsystem `order[k]`.
    pub fn permute(&self, order: &[usize]) -> Result<QuantumState> {
        let n = self.dims.len();
        let mut seen = vec![false; n];
        if order.len() != n || order.iter().any(|&k| k >= n || std::mem::replace(&mut seen[k], true)) {
            return Err(Error::InvalidArgument(format!(
                "{order:?} is not a permutation of {n} subsystems"
            )));
        }
        let new_dims: Vec<usize> = order.iter().map(|&k| self.dims[k]).collect();
        let d = self.dim();
        // map new flat index -> old flat index
        let map: Vec<usize> = (0..d)
            .map(|idx| {
                let digits = split_index(idx, &new_dims);
                let mut old = vec![0; n];
                for (k, &o) in order.iter().enumerate() {
                    old[o] = digits[k];
                }
                join_index(&old, &self.dims)
            })
            .collect();
        let m = ComplexMatrix::from_fn(d, d, |i, j| self.matrix[(map[i], map[j])]);
        Ok(QuantumState::from_trusted(m, new_dims))
    }

    /// Exchanges the two parties of a bipartite state.
    pub fn swap_parties(&self) -> Result<QuantumState> {
        if !self.is_bipartite() {
            return Err(dim_mismatch(format!(
                "swap needs a bipartite state, dims are {:?}",
                self.dims
            )));
        }
        self.permute(&[1, 0])
    }
}

/// Mixed-radix digits of `idx`, most significant first.
pub(crate) fn split_index(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut digits = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        digits[k] = idx % dims[k];
        idx /= dims[k];
    }
    digits
}

pub(crate) fn join_index(digits: &[usize], dims: &[usize]) -> usize {
    digits.iter().zip(dims).fold(0, |acc, (&x, &d)| acc * d + x)
}

pub fn partial_trace(state: &QuantumState, keep: &[usize]) -> Result<QuantumState> {
    let n = state.dims.len();
    if keep.is_empty() {
        return Err(dim_mismatch("partial trace must keep at least one subsystem"));
    }
    if let Some(&bad) = keep.iter().find(|&&k| k >= n) {
        return Err(dim_mismatch(format!(
            "subsystem index {bad} out of range for {n} subsystems"
        )));
    }
    let mut keep_sorted = keep.to_vec();
    keep_sorted.sort_unstable();
    keep_sorted.dedup();
    if keep_sorted.len() != keep.len() {
        return Err(dim_mismatch(format!("repeated subsystem in {keep:?}")));
    }
    let traced: Vec<usize> = (0..n).filter(|k| !keep_sorted.contains(k)).collect();
    let kept_dims: Vec<usize> = keep_sorted.iter().map(|&k| state.dims[k]).collect();
    let traced_dims: Vec<usize> = traced.iter().map(|&k| state.dims[k]).collect();
    let dk: usize = kept_dims.iter().product();

    let d = state.dim();
    // (kept index, traced index) for each flat index
    let parts: Vec<(usize, usize)> = (0..d)
        .map(|idx| {
            let digits = split_index(idx, &state.dims);
            let kd: Vec<usize> = keep_sorted.iter().map(|&k| digits[k]).collect();
            let td: Vec<usize> = traced.iter().map(|&k| digits[k]).collect();
            (join_index(&kd, &kept_dims), join_index(&td, &traced_dims))
        })
        .collect();

    let mut out = ComplexMatrix::zeros(dk, dk);
    for i in 0..d {
        for j in 0..d {
            if parts[i].1 == parts[j].1 {
                out[(parts[i].0, parts[j].0)] += state.matrix[(i, j)];
            }
        }
    }
    Ok(QuantumState::from_trusted(out, kept_dims))
}

/// An orthonormal basis `{|u_i>}` defining a rank-one projective measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveBasis {
    /// Columns are the basis vectors.
    matrix: ComplexMatrix,
}

pub fn validate_basis(vectors: &[Vec<Complex64>]) -> Result<ProjectiveBasis> {
    let d = vectors.len();
    if d == 0 {
        return Err(Violation::BadDims("empty basis".into()).into());
    }
    let matrix = ComplexMatrix::from_columns(vectors)?;
    if matrix.rows() != d {
        return Err(dim_mismatch(format!(
            "{d} vectors of length {} cannot form a basis",
            matrix.rows()
        )));
    }
    let gram = &matrix.adjoint() * &matrix;
    let dev = gram.max_abs_diff(&ComplexMatrix::identity(d));
    if dev > tol::VALIDATION {
        return Err(Violation::NotOrthonormal { deviation: dev }.into());
    }
    Ok(ProjectiveBasis { matrix })
}

impl ProjectiveBasis {
    pub fn new(vectors: &[Vec<Complex64>]) -> Result<Self> {
        validate_basis(vectors)
    }

    /// Basis from the columns of a unitary matrix.
    pub fn from_unitary(u: &ComplexMatrix) -> Result<Self> {
        let cols: Vec<Vec<Complex64>> = (0..u.cols()).map(|j| u.column(j)).collect();
        validate_basis(&cols)
    }

    pub fn from_real(vectors: &[Vec<f64>]) -> Result<Self> {
        let v: Vec<Vec<Complex64>> = vectors
            .iter()
            .map(|row| row.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        validate_basis(&v)
    }

    pub fn standard(d: usize) -> Self {
        ProjectiveBasis {
            matrix: ComplexMatrix::identity(d),
        }
    }

    /// Discrete Fourier basis, mutually unbiased to the standard basis.
    pub fn fourier(d: usize) -> Self {
        let s = 1.0 / (d as f64).sqrt();
        let w = 2.0 * std::f64::consts::PI / d as f64;
        ProjectiveBasis {
            matrix: ComplexMatrix::from_fn(d, d, |i, j| Complex64::from_polar(s, w * (i * j) as f64)),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn vector(&self, i: usize) -> Vec<Complex64> {
        self.matrix.column(i)
    }

    pub fn vectors(&self) -> Vec<Vec<Complex64>> {
        (0..self.dim()).map(|i| self.vector(i)).collect()
    }

    /// The unitary whose columns are the basis vectors.
    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn projector(&self, i: usize) -> ComplexMatrix {
        let v = self.vector(i);
        ComplexMatrix::outer(&v, &v)
    }

    /// `<u_i|v_j>` for every pair.
    pub fn amplitudes(&self, other: &ProjectiveBasis) -> ComplexMatrix {
        &self.matrix.adjoint() * &other.matrix
    }

    /// Basis `{U|u_i>}`.
    pub fn transformed(&self, u: &ComplexMatrix) -> Result<ProjectiveBasis> {
        ProjectiveBasis::from_unitary(&(u * &self.matrix))
    }
}

/// Outcome distribution of a measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector(Vec<f64>);

impl ProbVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Violation::BadDims("empty probability vector".into()).into());
        }
        for (index, &value) in entries.iter().enumerate() {
            if !value.is_finite() {
                return Err(Violation::NonFinite.into());
            }
            if value < -1e-12 {
                return Err(Violation::NegativeProbability { index, value }.into());
            }
        }
        let sum: f64 = entries.iter().sum();
        if (sum - 1.0).abs() > tol::VALIDATION {
            return Err(Violation::ProbabilitySum { deviation: sum - 1.0 }.into());
        }
        Ok(ProbVector(entries.into_iter().map(|p| p.max(0.0)).collect()))
    }

    pub fn uniform(d: usize) -> Self {
        ProbVector(vec![1.0 / d as f64; d])
    }

    pub fn entries(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Entries sorted in descending order.
    pub fn sorted_desc(&self) -> Vec<f64> {
        let mut v = self.0.clone();
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }

    /// Entry `order[k]` at position `k`.
    pub fn reordered(&self, order: &[usize]) -> ProbVector {
        ProbVector(order.iter().map(|&k| self.0[k]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bell_state() -> QuantumState {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let v = [h, 0.0, 0.0, h].map(|x| Complex64::new(x, 0.0));
        QuantumState::pure(&v, &[2, 2]).unwrap()
    }

    #[test]
    fn maximally_mixed_qubit_is_valid() {
        assert!(validate_state(ComplexMatrix::identity(2).scale_real(0.5), &[2]).is_ok());
    }

    #[test]
    fn trace_violation_reports_amount() {
        let m = ComplexMatrix::diagonal(&[0.5, 0.4]);
        match validate_state(m, &[2]) {
            Err(Error::Validation(Violation::Trace { deviation })) => {
                assert!((deviation - 0.1).abs() < 1e-12)
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn hermiticity_and_psd_violations_are_distinct() {
        let m = ComplexMatrix::from_real(2, 2, &[0.5, 0.1, 0.0, 0.5]).unwrap();
        assert!(matches!(
            validate_state(m, &[2]),
            Err(Error::Validation(Violation::NotHermitian { .. }))
        ));
        let m = ComplexMatrix::diagonal(&[1.5, -0.5]);
        assert!(matches!(
            validate_state(m, &[2]),
            Err(Error::Validation(Violation::NotPsd { .. }))
        ));
    }

    #[test]
    fn dims_must_match_side() {
        let m = ComplexMatrix::identity(4).scale_real(0.25);
        assert!(matches!(
            validate_state(m.clone(), &[2, 3]),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(validate_state(m, &[4, 1]), Err(Error::Validation(_))));
    }

    #[test]
    fn product_state_partial_trace() {
        let ra = QuantumState::new(ComplexMatrix::diagonal(&[0.7, 0.3]), &[2]).unwrap();
        let rb = QuantumState::new(ComplexMatrix::diagonal(&[0.2, 0.5, 0.3]), &[3]).unwrap();
        let rab = ra.tensor(&rb);
        assert!(rab.partial_trace(&[0]).unwrap().matrix().max_abs_diff(ra.matrix()) < 1e-15);
        assert!(rab.partial_trace(&[1]).unwrap().matrix().max_abs_diff(rb.matrix()) < 1e-15);
    }

    #[test]
    fn bell_reduced_state_is_maximally_mixed() {
        let r = bell_state().reduced(1).unwrap();
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        assert!(r.matrix().max_abs_diff(&half) < 1e-15);
    }

    #[test]
    fn partial_trace_errors() {
        let b = bell_state();
        assert!(b.partial_trace(&[]).is_err());
        assert!(matches!(b.partial_trace(&[2]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn permute_round_trip() {
        let ra = QuantumState::new(ComplexMatrix::diagonal(&[0.7, 0.3]), &[2]).unwrap();
        let rb = QuantumState::new(ComplexMatrix::diagonal(&[0.2, 0.5, 0.3]), &[3]).unwrap();
        let swapped = ra.tensor(&rb).swap_parties().unwrap();
        assert_eq!(swapped.dims(), &[3, 2]);
        assert!(swapped.matrix().max_abs_diff(rb.tensor(&ra).matrix()) < 1e-15);
    }

    #[test]
    fn basis_validation() {
        let s = 3f64.sqrt() / 2.0;
        assert!(ProjectiveBasis::from_real(&[vec![0.5, -s], vec![s, 0.5]]).is_ok());
        let err = ProjectiveBasis::from_real(&[vec![1.0, 0.0], vec![1.0, 0.0]]).unwrap_err();
        assert!(matches!(err, Error::Validation(Violation::NotOrthonormal { .. })));
        let f = ProjectiveBasis::fourier(3);
        assert!(validate_basis(&f.vectors()).is_ok());
    }

    #[test]
    fn prob_vector_clamps_and_checks_sum() {
        let p = ProbVector::new(vec![1.0 + 5e-13, -5e-13]).unwrap();
        assert_eq!(p.entries()[1], 0.0);
        assert!(ProbVector::new(vec![0.5, 0.4]).is_err());
        assert!(ProbVector::new(vec![1.1, -0.1]).is_err());
    }
}
