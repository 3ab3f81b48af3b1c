//! The objective-function contract and a finite-difference gradient oracle.
//!
//! Every analytic gradient in the crate is validated against
//! [`fd_gradient`]; the oracle is deliberately independent of any solver
//! code path.

use crate::error::{Error, Result};
use crate::vector::Vector;

/// A smooth function `f: R^n -> R` together with its analytic gradient.
///
/// Implementations must be deterministic and side-effect-free; `grad` must
/// return exactly `n` components for inputs of length `n`. Raw `f64` slices
/// are used at this boundary so that overflowing evaluations (for example a
/// line-search trial far outside the sensible region) can report non-finite
/// values, which callers treat as "too far" rather than as corrupted state.
pub trait Objective: Send + Sync {
    fn n(&self) -> usize;
    fn name(&self) -> &str;
    fn eval(&self, x: &[f64]) -> f64;
    fn grad(&self, x: &[f64]) -> Vec<f64>;
}

type EvalFn = Box<dyn Fn(&[f64]) -> f64 + Send + Sync>;
type GradFn = Box<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;

/// An [`Objective`] built from closures; the workhorse for the built-in
/// problem catalog and for tests.
pub struct FnObjective {
    n: usize,
    name: String,
    f: EvalFn,
    g: GradFn,
}

impl FnObjective {
    pub fn new<F, G>(name: impl Into<String>, n: usize, f: F, g: G) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
        G: Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    {
        FnObjective {
            n,
            name: name.into(),
            f: Box::new(f),
            g: Box::new(g),
        }
    }
}

impl Objective for FnObjective {
    fn n(&self) -> usize {
        self.n
    }
    fn name(&self) -> &str {
        &self.name
    }
    fn eval(&self, x: &[f64]) -> f64 {
        (self.f)(x)
    }
    fn grad(&self, x: &[f64]) -> Vec<f64> {
        (self.g)(x)
    }
}

/// Monotone counters for function and gradient evaluations within one solve.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EvalCounter {
    pub fevals: u64,
    pub gevals: u64,
}

/// Wraps an objective and counts every `eval`/`grad` call made through it.
///
/// Confined to a single solve; counters are monotone within that solve.
pub struct CountingObjective<'a> {
    inner: &'a dyn Objective,
    fevals: std::sync::atomic::AtomicU64,
    gevals: std::sync::atomic::AtomicU64,
}

impl<'a> CountingObjective<'a> {
    pub fn new(inner: &'a dyn Objective) -> Self {
        CountingObjective {
            inner,
            fevals: std::sync::atomic::AtomicU64::new(0),
            gevals: std::sync::atomic::AtomicU64::new(0),
        }
    }

    pub fn counts(&self) -> EvalCounter {
        use std::sync::atomic::Ordering;
        EvalCounter {
            fevals: self.fevals.load(Ordering::Relaxed),
            gevals: self.gevals.load(Ordering::Relaxed),
        }
    }
}

impl Objective for CountingObjective<'_> {
    fn n(&self) -> usize {
        self.inner.n()
    }
    fn name(&self) -> &str {
        self.inner.name()
    }
    fn eval(&self, x: &[f64]) -> f64 {
        self.fevals.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        self.inner.eval(x)
    }
    fn grad(&self, x: &[f64]) -> Vec<f64> {
        self.gevals.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        self.inner.grad(x)
    }
}

/// Central-difference gradient estimate with per-coordinate step
/// `h * max(1, |x_i|)`.
///
/// The coordinate scaling keeps the estimate stable for iterates with large
/// components. Fails if the objective returns a non-finite value at any
/// probe point.
pub fn fd_gradient(obj: &dyn Objective, x: &Vector, h: f64) -> Result<Vector> {
    if h <= 0.0 || !h.is_finite() {
        return Err(Error::InvalidConfig(format!(
            "finite-difference step must be positive, got {h}"
        )));
    }
    if x.len() != obj.n() {
        return Err(Error::DimensionMismatch {
            expected: obj.n(),
            actual: x.len(),
        });
    }
    let mut probe = x.as_slice().to_vec();
    let mut grad = Vec::with_capacity(x.len());
    for i in 0..x.len() {
        let xi = probe[i];
        let hi = h * 1.0f64.max(xi.abs());

        probe[i] = xi + hi;
        let f_plus = obj.eval(&probe);
        probe[i] = xi - hi;
        let f_minus = obj.eval(&probe);
        probe[i] = xi;

        if !f_plus.is_finite() || !f_minus.is_finite() {
            return Err(Error::EvalFailed);
        }
        grad.push((f_plus - f_minus) / (2.0 * hi));
    }
    Vector::new(grad)
}

/// Max-norm error of `analytic` against the finite-difference oracle,
/// relative to `1 + ||analytic||`. Used as the gate for every built-in
/// gradient.
pub fn fd_relative_error(obj: &dyn Objective, x: &Vector, h: f64) -> Result<f64> {
    let numeric = fd_gradient(obj, x, h)?;
    let analytic = Vector::new(obj.grad(x.as_slice()))?;
    let diff = analytic.sub(&numeric)?;
    Ok(diff.norm_inf() / (1.0 + analytic.norm2()))
}
