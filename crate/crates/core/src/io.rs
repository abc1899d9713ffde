//! JSON state/basis files and deterministic number formatting.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation};
use crate::qcore::{ComplexMatrix, ProjectiveBasis, QuantumState};

/// Density matrix on disk: `dims` plus real and imaginary parts as rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub dims: Vec<usize>,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorFile {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisFile {
    pub dim: usize,
    pub vectors: Vec<VectorFile>,
}

fn shape_error(what: &str, expected: usize, found: usize) -> Error {
    Error::Parse(format!("{what}: expected {expected}, found {found}"))
}

impl StateFile {
    pub fn from_state(s: &QuantumState) -> Self {
        let m = s.matrix();
        let n = m.rows();
        Self {
            dims: s.dims().to_vec(),
            re: (0..n).map(|i| (0..n).map(|j| m[(i, j)].re).collect()).collect(),
            im: (0..n).map(|i| (0..n).map(|j| m[(i, j)].im).collect()).collect(),
        }
    }

    pub fn to_state(&self) -> Result<QuantumState> {
        let n = self.re.len();
        if self.im.len() != n {
            return Err(shape_error("rows of im", n, self.im.len()));
        }
        let mut data = Vec::with_capacity(n * n);
        for (r, i) in self.re.iter().zip(&self.im) {
            if r.len() != n {
                return Err(Violation::NotSquare { rows: n, cols: r.len() }.into());
            }
            if i.len() != n {
                return Err(shape_error("columns of im", n, i.len()));
            }
            data.extend(r.iter().zip(i).map(|(&a, &b)| Complex64::new(a, b)));
        }
        QuantumState::new(ComplexMatrix::new(n, n, data)?, &self.dims)
    }
}

impl BasisFile {
    pub fn from_basis(b: &ProjectiveBasis) -> Self {
        Self {
            dim: b.dim(),
            vectors: b
                .vectors()
                .into_iter()
                .map(|v| VectorFile {
                    re: v.iter().map(|z| z.re).collect(),
                    im: v.iter().map(|z| z.im).collect(),
                })
                .collect(),
        }
    }

    pub fn to_basis(&self) -> Result<ProjectiveBasis> {
        if self.vectors.len() != self.dim {
            return Err(shape_error("number of basis vectors", self.dim, self.vectors.len()));
        }
        let vectors = self
            .vectors
            .iter()
            .map(|v| {
                if v.re.len() != self.dim || v.im.len() != self.dim {
                    return Err(shape_error("basis vector length", self.dim, v.re.len().max(v.im.len())));
                }
                Ok(v.re.iter().zip(&v.im).map(|(&a, &b)| Complex64::new(a, b)).collect())
            })
            .collect::<Result<Vec<Vec<Complex64>>>>()?;
        ProjectiveBasis::new(&vectors)
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))?;
    fs::write(path, text + "\n")?;
    Ok(())
}

pub fn read_state(path: impl AsRef<Path>) -> Result<QuantumState> {
    read_json::<StateFile>(path.as_ref())?.to_state()
}

pub fn read_basis(path: impl AsRef<Path>) -> Result<ProjectiveBasis> {
    read_json::<BasisFile>(path.as_ref())?.to_basis()
}

pub fn write_state(path: impl AsRef<Path>, s: &QuantumState) -> Result<()> {
    write_json(path.as_ref(), &StateFile::from_state(s))
}

pub fn write_basis(path: impl AsRef<Path>, b: &ProjectiveBasis) -> Result<()> {
    write_json(path.as_ref(), &BasisFile::from_basis(b))
}

/// `x` with 12 significant digits in the style of C's `%.12g`.
pub fn format_sig(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..DIGITS).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `x` rounded to 12 significant digits, as a JSON value. Non-finite
/// values become strings.
pub fn json_number(x: f64) -> serde_json::Value {
    let s = format_sig(x);
    match s.parse::<f64>().ok().and_then(serde_json::Number::from_f64) {
        Some(n) if x.is_finite() => serde_json::Value::Number(n),
        _ => serde_json::Value::String(s),
    }
}
