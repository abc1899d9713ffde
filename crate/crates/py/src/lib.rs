//! Python bindings: states, bases, the bound report, chain bounds, the
//! witness and the built-in scenarios.

use entropic::bounds::{hybrid_bound_with_lambdas, Registry, DEFAULT_LAMBDAS};
use entropic::cli::{run_sweep, SweepOptions};
use entropic::multi::{self, MeasurementChain, DEFAULT_BUDGET};
use entropic::random::{random_basis as gen_basis, random_state as gen_state, rng_from_seed};
use entropic::{entropy, scenarios, ComplexMatrix, Error, ProbVector, ProjectiveBasis, QuantumState};
use num_complex::Complex64;
use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Io(io) => PyIOError::new_err(io.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

/// A density matrix with subsystem dimensions.
#[pyclass(name = "State", module = "entropic_py", frozen)]
pub struct PyState {
    inner: QuantumState,
}

#[pymethods]
impl PyState {
    /// `matrix` is a square list of lists of complex numbers.
    #[new]
    fn new(matrix: Vec<Vec<Complex64>>, dims: Vec<usize>) -> PyResult<Self> {
        let n = matrix.len();
        if matrix.iter().any(|r| r.len() != n) {
            return Err(PyValueError::new_err("matrix must be square"));
        }
        let data = matrix.into_iter().flatten().collect();
        let m = ComplexMatrix::new(n, n, data).map_err(to_py)?;
        Ok(Self {
            inner: QuantumState::new(m, &dims).map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn pure(vector: Vec<Complex64>, dims: Vec<usize>) -> PyResult<Self> {
        Ok(Self {
            inner: QuantumState::pure(&vector, &dims).map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn maximally_mixed(dims: Vec<usize>) -> PyResult<Self> {
        Ok(Self {
            inner: QuantumState::maximally_mixed(&dims).map_err(to_py)?,
        })
    }

    #[staticmethod]
    #[pyo3(signature = (dims, seed = 0))]
    fn random(dims: Vec<usize>, seed: u64) -> PyResult<Self> {
        Ok(Self {
            inner: gen_state(&mut rng_from_seed(seed), &dims).map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn read(path: &str) -> PyResult<Self> {
        Ok(Self {
            inner: entropic::io::read_state(path).map_err(to_py)?,
        })
    }

    fn write(&self, path: &str) -> PyResult<()> {
        entropic::io::write_state(path, &self.inner).map_err(to_py)
    }

    #[getter]
    fn dims(&self) -> Vec<usize> {
        self.inner.dims().to_vec()
    }

    fn matrix(&self) -> Vec<Vec<Complex64>> {
        let m = self.inner.matrix();
        (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| m[(i, j)]).collect())
            .collect()
    }

    fn eigenvalues(&self) -> Vec<f64> {
        self.inner.eigenvalues()
    }

    fn reduced(&self, subsystem: usize) -> PyResult<Self> {
        Ok(Self {
            inner: self.inner.reduced(subsystem).map_err(to_py)?,
        })
    }

    fn tensor(&self, other: PyRef<'_, PyState>) -> Self {
        Self {
            inner: self.inner.tensor(&other.inner),
        }
    }

    fn von_neumann(&self) -> f64 {
        entropy::von_neumann(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("State(dims={:?})", self.inner.dims())
    }
}

/// An orthonormal basis defining a projective measurement.
#[pyclass(name = "Basis", module = "entropic_py", frozen)]
pub struct PyBasis {
    inner: ProjectiveBasis,
}

#[pymethods]
impl PyBasis {
    /// `vectors` lists the basis vectors; each is a list of complex numbers.
    #[new]
    fn new(vectors: Vec<Vec<Complex64>>) -> PyResult<Self> {
        Ok(Self {
            inner: ProjectiveBasis::new(&vectors).map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn standard(d: usize) -> Self {
        Self {
            inner: ProjectiveBasis::standard(d),
        }
    }

    #[staticmethod]
    fn fourier(d: usize) -> Self {
        Self {
            inner: ProjectiveBasis::fourier(d),
        }
    }

    #[staticmethod]
    #[pyo3(signature = (d, seed = 0))]
    fn random(d: usize, seed: u64) -> PyResult<Self> {
        Ok(Self {
            inner: gen_basis(&mut rng_from_seed(seed), d).map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn read(path: &str) -> PyResult<Self> {
        Ok(Self {
            inner: entropic::io::read_basis(path).map_err(to_py)?,
        })
    }

    fn write(&self, path: &str) -> PyResult<()> {
        entropic::io::write_basis(path, &self.inner).map_err(to_py)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn vectors(&self) -> Vec<Vec<Complex64>> {
        self.inner.vectors()
    }

    /// Outcome distribution on `state`, measuring subsystem `measured`.
    #[pyo3(signature = (state, measured = 0))]
    fn probabilities(&self, state: PyRef<'_, PyState>, measured: usize) -> PyResult<Vec<f64>> {
        Ok(entropy::measurement_probs(&state.inner, &self.inner, measured)
            .map_err(to_py)?
            .entries()
            .to_vec())
    }

    fn __repr__(&self) -> String {
        format!("Basis(dim={})", self.inner.dim())
    }
}

fn bases_of(bases: &[PyRef<'_, PyBasis>]) -> Vec<ProjectiveBasis> {
    bases.iter().map(|b| b.inner.clone()).collect()
}

fn scenario_tuple(s: scenarios::Scenario) -> (PyState, Vec<PyBasis>) {
    (
        PyState { inner: s.state },
        s.bases.into_iter().map(|inner| PyBasis { inner }).collect(),
    )
}

/// Shannon entropy in bits of a probability vector.
#[pyfunction]
fn shannon(probs: Vec<f64>) -> PyResult<f64> {
    Ok(entropy::shannon(&ProbVector::new(probs).map_err(to_py)?))
}

/// `H(M|B)` for measuring subsystem 0 of a bipartite state.
#[pyfunction]
fn conditional_entropy(state: PyRef<'_, PyState>, basis: PyRef<'_, PyBasis>) -> PyResult<f64> {
    entropy::measured_conditional_entropy(&state.inner, &basis.inner).map_err(to_py)
}

/// Every bound and measure for a bipartite state (measured system first) and
/// two bases, as a dict keyed by the report names.
#[pyfunction]
#[pyo3(signature = (state, m1, m2, lambdas = None))]
fn hybrid_bound<'py>(
    py: Python<'py>,
    state: PyRef<'_, PyState>,
    m1: PyRef<'_, PyBasis>,
    m2: PyRef<'_, PyBasis>,
    lambdas: Option<Vec<f64>>,
) -> PyResult<Bound<'py, PyDict>> {
    let lambdas = lambdas.unwrap_or_else(|| DEFAULT_LAMBDAS.to_vec());
    let r = hybrid_bound_with_lambdas(&state.inner, &m1.inner, &m2.inner, &Registry::with_builtins(), &lambdas)
        .map_err(to_py)?;
    let d = PyDict::new(py);
    for (k, v) in r.named() {
        d.set_item(k, v)?;
    }
    d.set_item("relation_satisfied", r.relation_satisfied())?;
    Ok(d)
}

/// `(N - 1) H(A|B)` plus the chain term, with the trivial frame.
#[pyfunction]
fn multi_bound(state: PyRef<'_, PyState>, bases: Vec<PyRef<'_, PyBasis>>) -> PyResult<f64> {
    let chain = MeasurementChain::new(bases_of(&bases)).map_err(to_py)?;
    multi::multi_bound(&state.inner, &chain, None).map_err(to_py)
}

/// Best chain bound over all orderings: `(value, ordering)`.
#[pyfunction]
fn multi_bound_opt(state: PyRef<'_, PyState>, bases: Vec<PyRef<'_, PyBasis>>) -> PyResult<(f64, Vec<usize>)> {
    let chain = MeasurementChain::new(bases_of(&bases)).map_err(to_py)?;
    multi::multi_bound_opt(&state.inner, &chain, None).map_err(to_py)
}

/// Entanglement witness on a `dx × dy` state with a chain of bases.
#[pyfunction]
#[pyo3(signature = (state, bases, split, budget = DEFAULT_BUDGET, seed = 0))]
fn witness<'py>(
    py: Python<'py>,
    state: PyRef<'_, PyState>,
    bases: Vec<PyRef<'_, PyBasis>>,
    split: (usize, usize),
    budget: usize,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let chain = MeasurementChain::new(bases_of(&bases)).map_err(to_py)?;
    let rho = QuantumState::new(state.inner.matrix().clone(), &[split.0, split.1]).map_err(to_py)?;
    let frame = multi::separable_frame(&chain, [split.0, split.1], budget, seed).map_err(to_py)?;
    let v = multi::witness(&rho, &chain, &frame).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("lhs", v.lhs)?;
    d.set_item("rhs", v.rhs)?;
    d.set_item("margin", v.margin)?;
    d.set_item("verdict", v.verdict.to_string())?;
    d.set_item("frame", v.frame.cumulative().to_vec())?;
    Ok(d)
}

#[pyfunction]
fn bell(d: usize) -> PyResult<(PyState, Vec<PyBasis>)> {
    Ok(scenario_tuple(scenarios::bell(d).map_err(to_py)?))
}

#[pyfunction]
fn werner(p: f64, theta: f64) -> PyResult<(PyState, Vec<PyBasis>)> {
    Ok(scenario_tuple(scenarios::werner(p, theta).map_err(to_py)?))
}

#[pyfunction]
fn horodecki(p: f64) -> PyResult<(PyState, Vec<PyBasis>)> {
    Ok(scenario_tuple(scenarios::horodecki_state(p).map_err(to_py)?))
}

/// The two-basis chain that detects `|Φ+>`.
#[pyfunction]
fn entangled_witness_chain() -> Vec<PyBasis> {
    scenarios::entangled_witness_chain()
        .into_iter()
        .map(|inner| PyBasis { inner })
        .collect()
}

/// Figure data for a named scenario: `(header, rows)`.
#[pyfunction]
#[pyo3(signature = (scenario, steps = None, grid = None, theta = None))]
fn sweep(
    scenario: &str,
    steps: Option<usize>,
    grid: Option<usize>,
    theta: Option<f64>,
) -> PyResult<(Vec<String>, Vec<Vec<f64>>)> {
    let t = run_sweep(scenario, &SweepOptions { steps, grid, theta }).map_err(to_py)?;
    Ok((t.header, t.rows))
}

#[pymodule]
fn entropic_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyState>()?;
    m.add_class::<PyBasis>()?;
    m.add_function(wrap_pyfunction!(shannon, m)?)?;
    m.add_function(wrap_pyfunction!(conditional_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(hybrid_bound, m)?)?;
    m.add_function(wrap_pyfunction!(multi_bound, m)?)?;
    m.add_function(wrap_pyfunction!(multi_bound_opt, m)?)?;
    m.add_function(wrap_pyfunction!(witness, m)?)?;
    m.add_function(wrap_pyfunction!(bell, m)?)?;
    m.add_function(wrap_pyfunction!(werner, m)?)?;
    m.add_function(wrap_pyfunction!(horodecki, m)?)?;
    m.add_function(wrap_pyfunction!(entangled_witness_chain, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    Ok(())
}
