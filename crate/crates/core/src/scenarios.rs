//! Fixed states and measurement bases used for the figure data.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::{ComplexMatrix, ProjectiveBasis, QuantumState};
use crate::tol;

/// A named state with the bases measured on it.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    pub state: QuantumState,
    pub bases: Vec<ProjectiveBasis>,
    pub params: BTreeMap<String, f64>,
    /// Index of the memory subsystem; `None` when there is no memory.
    /// The measured subsystem is always subsystem 0.
    pub memory: Option<usize>,
}

impl Scenario {
    fn new(
        name: &str,
        state: QuantumState,
        bases: Vec<ProjectiveBasis>,
        params: &[(&str, f64)],
        memory: Option<usize>,
    ) -> Self {
        Self {
            name: name.to_string(),
            state,
            bases,
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            memory,
        }
    }
}

fn check_range(name: &str, x: f64, lo: f64, hi: f64, open: bool) -> Result<()> {
    let inside = if open { x > lo && x < hi } else { x >= lo && x <= hi };
    if !inside {
        let (l, r) = if open { ('(', ')') } else { ('[', ']') };
        return Err(Error::InvalidArgument(format!("{name} = {x} outside {l}{lo}, {hi}{r}")));
    }
    Ok(())
}

/// Qubit pair `M1 = {|0>, |1>}`, `M2 = {(1/2, -√3/2), (√3/2, 1/2)}`; `c_1 = 3/4`.
pub fn qubit_bases() -> (ProjectiveBasis, ProjectiveBasis) {
    let s = 3f64.sqrt() / 2.0;
    (
        ProjectiveBasis::standard(2),
        ProjectiveBasis::from_real(&[vec![0.5, -s], vec![s, 0.5]]).expect("orthonormal"),
    )
}

/// `ρ1(θ) = ½ [[cos²θ + ½, cosθ sinθ], [cosθ sinθ, sin²θ + ½]]` for `θ ∈ [0, π/2]`.
pub fn rho1(theta: f64) -> Result<Scenario> {
    check_range("theta", theta, 0.0, FRAC_PI_2, false)?;
    let (c, s) = (theta.cos(), theta.sin());
    let m = ComplexMatrix::from_real(
        2,
        2,
        &[0.5 * (c * c + 0.5), 0.5 * c * s, 0.5 * c * s, 0.5 * (s * s + 0.5)],
    )?;
    let (m1, m2) = qubit_bases();
    Ok(Scenario::new(
        "rho1",
        QuantumState::new(m, &[2])?,
        vec![m1, m2],
        &[("theta", theta)],
        None,
    ))
}

/// `ρ2(θ) = diag(cos²θ, sin²θ)` for `θ ∈ [0, π/2]`.
pub fn rho2(theta: f64) -> Result<Scenario> {
    check_range("theta", theta, 0.0, FRAC_PI_2, false)?;
    let (c, s) = (theta.cos(), theta.sin());
    let m = ComplexMatrix::diagonal(&[c * c, s * s]);
    let (m1, m2) = qubit_bases();
    Ok(Scenario::new(
        "rho2",
        QuantumState::new(m, &[2])?,
        vec![m1, m2],
        &[("theta", theta)],
        None,
    ))
}

/// The 8×8 matrix of the entangled `2 × 4` family, unnormalised rows as
/// printed, scaled by `1/(1 + 7p)`.
pub fn horodecki_matrix(p: f64) -> ComplexMatrix {
    let mut m = [[0.0f64; 8]; 8];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = p;
    }
    m[4][4] = (1.0 + p) / 2.0;
    m[7][7] = (1.0 + p) / 2.0;
    for (i, j) in [(0, 5), (1, 6), (2, 7)] {
        m[i][j] = p;
        m[j][i] = p;
    }
    let off = (1.0 - p * p).sqrt() / 2.0;
    m[4][7] = off;
    m[7][4] = off;
    let n = 1.0 + 7.0 * p;
    ComplexMatrix::from_fn(8, 8, |i, j| Complex64::new(m[i][j] / n, 0.0))
}

/// The entangled family for `p ∈ (0, 1)`, with the measured 4-dim system
/// first and the 2-dim memory second (dims `[4, 2]`); bases `M1`, `M2` of
/// [`equal_overlap_chain`].
pub fn horodecki_state(p: f64) -> Result<Scenario> {
    check_range("p", p, 0.0, 1.0, true)?;
    let state = QuantumState::new(horodecki_matrix(p), &[4, 2])
        .map_err(|e| Error::InvalidArgument(format!("entangled family at p = {p} is not a state: {e}")))?;
    let chain = equal_overlap_chain()?;
    Ok(Scenario::new(
        "horodecki",
        state,
        vec![chain.m1, chain.m2],
        &[("p", p)],
        Some(1),
    ))
}

/// Two basis pairs with identical overlap matrices: `(M1, M2)` and
/// `(M3, M4)` with `M3 = M2` and `M4 = U M2`, where `U = Σ_i |u²_i><u¹_i|`.
#[derive(Debug, Clone)]
pub struct EqualOverlapChain {
    pub m1: ProjectiveBasis,
    pub m2: ProjectiveBasis,
    pub m3: ProjectiveBasis,
    pub m4: ProjectiveBasis,
    pub u: ComplexMatrix,
}

pub fn equal_overlap_chain() -> Result<EqualOverlapChain> {
    let h = FRAC_1_SQRT_2;
    let m1 = ProjectiveBasis::from_real(&[
        vec![h, -h, 0.0, 0.0],
        vec![h, h, 0.0, 0.0],
        vec![0.0, 0.0, h, h],
        vec![0.0, 0.0, h, -h],
    ])?;
    let r6 = 6f64.sqrt();
    let (r2, r3) = (2f64.sqrt(), 3f64.sqrt());
    let m2 = ProjectiveBasis::from_real(&[
        vec![r2 / r6, r2 / r6, r2 / r6, 0.0],
        vec![r3 / r6, 0.0, -r3 / r6, 0.0],
        vec![1.0 / r6, -2.0 / r6, 1.0 / r6, 0.0],
        vec![0.0, 0.0, 0.0, 1.0],
    ])?;
    let u = m2.as_matrix() * &m1.as_matrix().adjoint();
    let unitarity = (&u.adjoint() * &u).max_abs_diff(&ComplexMatrix::identity(4));
    if unitarity > tol::VALIDATION {
        return Err(Error::Inconsistent(format!("U is not unitary (error {unitarity:e})")));
    }
    let m4 = m2.transformed(&u)?;
    let a = m1.amplitudes(&m2);
    let b = m2.amplitudes(&m4);
    for j in 0..4 {
        for k in 0..4 {
            let dev = (a[(j, k)].norm_sqr() - b[(j, k)].norm_sqr()).abs();
            if dev > tol::VALIDATION {
                return Err(Error::Inconsistent(format!(
                    "overlap ({j}, {k}) differs between the pairs by {dev:e}"
                )));
            }
        }
    }
    let same = m1.amplitudes(&m4);
    if (0..4).all(|j| same[(j, j)].norm_sqr() >= 1.0 - 1e-6) {
        return Err(Error::Inconsistent("M4 coincides with M1".into()));
    }
    Ok(EqualOverlapChain {
        m3: m2.clone(),
        m1,
        m2,
        m4,
        u,
    })
}

/// Hadamard-type basis `{(1/√2, -1/√2), (1/√2, 1/√2)}`.
pub fn werner_m1() -> ProjectiveBasis {
    let h = FRAC_1_SQRT_2;
    ProjectiveBasis::from_real(&[vec![h, -h], vec![h, h]]).expect("orthonormal")
}

/// Rotated basis `{(cosθ, -sinθ), (sinθ, cosθ)}`.
pub fn werner_m2(theta: f64) -> ProjectiveBasis {
    let (c, s) = (theta.cos(), theta.sin());
    ProjectiveBasis::from_real(&[vec![c, -s], vec![s, c]]).expect("orthonormal")
}

/// `¼(1 - p) I + p |B1><B1|` with bases `M1`, `M2(θ)`; `p ∈ [0, 1]`,
/// `θ ∈ [0, 2π]`. Memory is subsystem 1.
pub fn werner(p: f64, theta: f64) -> Result<Scenario> {
    check_range("p", p, 0.0, 1.0, false)?;
    check_range("theta", theta, 0.0, 2.0 * PI, false)?;
    let h = FRAC_1_SQRT_2;
    let b1 = [h, 0.0, 0.0, h].map(|x| Complex64::new(x, 0.0));
    let bell = ComplexMatrix::outer(&b1, &b1);
    let m = &ComplexMatrix::identity(4).scale_real(0.25 * (1.0 - p)) + &bell.scale_real(p);
    let state = QuantumState::new(m, &[2, 2])?;
    Ok(Scenario::new(
        "werner",
        state,
        vec![werner_m1(), werner_m2(theta)],
        &[("p", p), ("theta", theta)],
        Some(1),
    ))
}

/// `(1/√d) Σ_i |ii>` with the standard and Fourier bases on subsystem 0.
pub fn bell(d: usize) -> Result<Scenario> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("bell state needs d >= 2, got {d}")));
    }
    let amp = 1.0 / (d as f64).sqrt();
    let v: Vec<Complex64> = (0..d * d)
        .map(|k| Complex64::new(if k / d == k % d { amp } else { 0.0 }, 0.0))
        .collect();
    let state = QuantumState::pure(&v, &[d, d])?;
    Ok(Scenario::new(
        "bell",
        state,
        vec![ProjectiveBasis::standard(d), ProjectiveBasis::fourier(d)],
        &[("d", d as f64)],
        Some(1),
    ))
}

/// Magic basis `(Φ+, iΦ-, iΨ+, Ψ-)` of two qubits; every vector is maximally
/// entangled.
pub fn magic_basis() -> ProjectiveBasis {
    let h = FRAC_1_SQRT_2;
    let r = |x: f64| Complex64::new(x, 0.0);
    let i = |x: f64| Complex64::new(0.0, x);
    ProjectiveBasis::new(&[
        vec![r(h), r(0.0), r(0.0), r(h)],
        vec![i(h), r(0.0), r(0.0), i(-h)],
        vec![r(0.0), i(h), i(h), r(0.0)],
        vec![r(0.0), r(h), r(-h), r(0.0)],
    ])
    .expect("orthonormal")
}

/// Two maximally entangled two-qubit bases sharing `Φ+`: the magic basis
/// rotated by `1 ⊕ (1/3)[[-1, 2, 2], [2, -1, 2], [2, 2, -1]]`, then the magic
/// basis itself. Measured on `|Φ+>` both outcomes are certain while every
/// separable state is forced into larger entropic sums.
pub fn entangled_witness_chain() -> Vec<ProjectiveBasis> {
    let magic = magic_basis();
    let t = 1.0 / 3.0;
    let o = ComplexMatrix::from_real(
        4,
        4,
        &[
            1.0,
            0.0,
            0.0,
            0.0, //
            0.0,
            -t,
            2.0 * t,
            2.0 * t, //
            0.0,
            2.0 * t,
            -t,
            2.0 * t, //
            0.0,
            2.0 * t,
            2.0 * t,
            -t,
        ],
    )
    .expect("finite");
    let rotated = ProjectiveBasis::from_unitary(&(magic.as_matrix() * &o)).expect("unitary");
    vec![rotated, magic]
}
