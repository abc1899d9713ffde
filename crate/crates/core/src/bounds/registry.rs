//! Classical bounds that take part in the maximum of [`super::bound_c`].

use std::sync::Arc;

use super::frame::{b_maj_ds, MajorizationFrame};
use super::overlap::OverlapData;
use crate::error::{Error, Result};
use crate::qcore::{ProjectiveBasis, QuantumState};

/// Everything a classical bound may look at.
#[derive(Debug, Clone, Copy)]
pub struct ClassicalInput<'a> {
    pub rho_ab: &'a QuantumState,
    pub rho_a: &'a QuantumState,
    pub m1: &'a ProjectiveBasis,
    pub m2: &'a ProjectiveBasis,
    pub overlaps: &'a OverlapData,
    pub frame: &'a MajorizationFrame,
}

/// A bound on `H(M1) + H(M2)`. With `includes_mixing_part` set the bound
/// has the form `B + H(A)` and [`super::bound_c`] adds `H(A)` to `value`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundValue {
    pub value: f64,
    pub includes_mixing_part: bool,
}

pub trait ClassicalBound: Send + Sync {
    fn name(&self) -> &str;
    fn evaluate(&self, input: &ClassicalInput<'_>) -> Result<BoundValue>;
}

type BoundFn = dyn Fn(&ClassicalInput<'_>) -> Result<BoundValue> + Send + Sync;

/// A named closure as a [`ClassicalBound`].
pub struct FnBound {
    name: String,
    f: Box<BoundFn>,
}

impl FnBound {
    pub fn new(
        name: impl Into<String>,
        f: impl Fn(&ClassicalInput<'_>) -> Result<BoundValue> + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            f: Box::new(f),
        }
    }
}

impl ClassicalBound for FnBound {
    fn name(&self) -> &str {
        &self.name
    }

    fn evaluate(&self, input: &ClassicalInput<'_>) -> Result<BoundValue> {
        (self.f)(input)
    }
}

/// The built-in majorization entry `H(ω)`; it has no mixing part.
pub struct MajorizationBound;

impl ClassicalBound for MajorizationBound {
    fn name(&self) -> &str {
        "B_MAJ_DS"
    }

    fn evaluate(&self, input: &ClassicalInput<'_>) -> Result<BoundValue> {
        Ok(BoundValue {
            value: b_maj_ds(input.frame),
            includes_mixing_part: false,
        })
    }
}

#[derive(Clone, Default)]
pub struct Registry {
    entries: Vec<Arc<dyn ClassicalBound>>,
}

impl std::fmt::Debug for Registry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.names()).finish()
    }
}

impl Registry {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn with_builtins() -> Self {
        let mut r = Self::empty();
        r.register(MajorizationBound);
        r
    }

    pub fn register(&mut self, bound: impl ClassicalBound + 'static) -> &mut Self {
        self.entries.push(Arc::new(bound));
        self
    }

    pub fn register_fn(
        &mut self,
        name: impl Into<String>,
        f: impl Fn(&ClassicalInput<'_>) -> Result<BoundValue> + Send + Sync + 'static,
    ) -> &mut Self {
        self.register(FnBound::new(name, f))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.name()).collect()
    }

    /// Evaluates every entry, in registration order.
    pub fn evaluate_all(&self, input: &ClassicalInput<'_>) -> Result<Vec<(String, BoundValue)>> {
        if self.entries.is_empty() {
            return Err(Error::InvalidArgument("classical bound registry is empty".into()));
        }
        self.entries
            .iter()
            .map(|e| Ok((e.name().to_string(), e.evaluate(input)?)))
            .collect()
    }
}
