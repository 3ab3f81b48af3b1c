//! Wolfe-Powell line searches.
//!
//! [`search`] computes a step size satisfying the sufficient-decrease
//! (Armijo) condition
//!
//! ```text
//! f(x + a d) <= f(x) + delta * a * g'd
//! ```
//!
//! together with a curvature condition: in strong mode
//! `|g(x + a d)'d| <= sigma * |g'd|`, in weak mode
//! `g(x + a d)'d >= sigma * g'd`.
//!
//! The procedure is the canonical two-phase bracket-then-zoom scheme with
//! safeguarded cubic interpolation and a bisection fallback, which
//! terminates for C^1 functions bounded below. Non-finite trial values are
//! treated as "too far": the bracket shrinks toward zero instead of
//! aborting.

use crate::error::{Error, Result};
use crate::objective::Objective;
use crate::vector::Vector;

/// Whether the curvature condition is two-sided (strong) or one-sided (weak).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WolfeMode {
    Strong,
    Weak,
}

/// Parameters of the Wolfe-Powell conditions and the search budget.
#[derive(Debug, Clone, Copy)]
pub struct WolfeParams {
    /// Sufficient-decrease constant, `0 < delta < 1/2`.
    pub delta: f64,
    /// Curvature constant, `delta < sigma < 1`.
    pub sigma: f64,
    pub mode: WolfeMode,
    /// Cap on combined f/g evaluations inside one search.
    pub max_evals: usize,
    /// Upper bound on trial steps.
    pub alpha_max: f64,
}

impl Default for WolfeParams {
    fn default() -> Self {
        WolfeParams {
            delta: 0.01,
            sigma: 0.1,
            mode: WolfeMode::Strong,
            max_evals: 60,
            alpha_max: 1e10,
        }
    }
}

impl WolfeParams {
    pub fn new(delta: f64, sigma: f64, mode: WolfeMode) -> Result<Self> {
        let params = WolfeParams {
            delta,
            sigma,
            mode,
            ..WolfeParams::default()
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.delta < 0.5) {
            return Err(Error::InvalidConfig(format!(
                "delta must satisfy 0 < delta < 1/2, got {}",
                self.delta
            )));
        }
        if !(self.sigma > self.delta && self.sigma < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "sigma must satisfy delta < sigma < 1, got {}",
                self.sigma
            )));
        }
        if self.max_evals < 10 {
            return Err(Error::InvalidConfig(format!(
                "max_evals must be at least 10, got {}",
                self.max_evals
            )));
        }
        let alpha_max_ok = self.alpha_max > 0.0;
        if !alpha_max_ok {
            return Err(Error::InvalidConfig(format!(
                "alpha_max must be positive, got {}",
                self.alpha_max
            )));
        }
        Ok(())
    }
}

/// An accepted step together with the objective data at the new point.
#[derive(Debug, Clone)]
pub struct LineSearchResult {
    pub alpha: f64,
    pub f_new: f64,
    pub g_new: Vector,
    pub fevals: usize,
    pub gevals: usize,
}

/// Re-checks the Wolfe conditions for a candidate step.
///
/// Returns `(armijo_ok, curvature_ok)`. Boundary cases are accepted: an
/// exact-equality Armijo value passes, as does a curvature derivative
/// landing exactly on the threshold.
pub fn check_wolfe(
    f0: f64,
    g0d: f64,
    alpha: f64,
    f_new: f64,
    gnew_d: f64,
    params: &WolfeParams,
) -> (bool, bool) {
    let armijo_ok = f_new <= f0 + params.delta * alpha * g0d;
    let curvature_ok = match params.mode {
        WolfeMode::Strong => gnew_d.abs() <= params.sigma * g0d.abs(),
        WolfeMode::Weak => gnew_d >= params.sigma * g0d,
    };
    (armijo_ok, curvature_ok)
}

// One end of the zoom interval. The slope is unknown for trial points that
// failed the Armijo test before their gradient was evaluated.
#[derive(Clone, Copy)]
struct End {
    alpha: f64,
    f: f64,
    slope: Option<f64>,
}

struct Search<'a> {
    obj: &'a dyn Objective,
    x: &'a Vector,
    d: &'a Vector,
    f0: f64,
    g0d: f64,
    params: &'a WolfeParams,
    evals: usize,
    fevals: usize,
    gevals: usize,
}

impl<'a> Search<'a> {
    fn charge(&mut self) -> Result<()> {
        if self.evals >= self.params.max_evals {
            return Err(Error::LineSearchFailed { evals: self.evals });
        }
        self.evals += 1;
        Ok(())
    }

    fn trial_point(&self, alpha: f64) -> Vec<f64> {
        self.x
            .iter()
            .zip(self.d.iter())
            .map(|(xi, di)| xi + alpha * di)
            .collect()
    }

    fn eval_f(&mut self, xt: &[f64]) -> Result<f64> {
        self.charge()?;
        self.fevals += 1;
        Ok(self.obj.eval(xt))
    }

    fn eval_g(&mut self, xt: &[f64]) -> Result<Vec<f64>> {
        self.charge()?;
        self.gevals += 1;
        Ok(self.obj.grad(xt))
    }

    fn armijo_ok(&self, alpha: f64, f: f64) -> bool {
        f.is_finite() && f <= self.f0 + self.params.delta * alpha * self.g0d
    }

    fn curvature_ok(&self, slope: f64) -> bool {
        match self.params.mode {
            WolfeMode::Strong => slope.abs() <= self.params.sigma * self.g0d.abs(),
            WolfeMode::Weak => slope >= self.params.sigma * self.g0d,
        }
    }

    fn accept(&self, alpha: f64, f: f64, g: Vec<f64>) -> Result<LineSearchResult> {
        Ok(LineSearchResult {
            alpha,
            f_new: f,
            g_new: Vector::new(g)?,
            fevals: self.fevals,
            gevals: self.gevals,
        })
    }

    /// Bracketing phase: expand from `alpha_init` by factor 2 until the
    /// Armijo test fails, the function stops decreasing, or the directional
    /// derivative turns nonnegative.
    fn run(&mut self, alpha_init: f64) -> Result<LineSearchResult> {
        let mut prev = End {
            alpha: 0.0,
            f: self.f0,
            slope: Some(self.g0d),
        };
        let mut alpha = alpha_init.min(self.params.alpha_max);
        let mut first = true;
        loop {
            let xt = self.trial_point(alpha);
            let ft = self.eval_f(&xt)?;

            if !self.armijo_ok(alpha, ft) || (!first && ft >= prev.f) {
                return self.zoom(
                    prev,
                    End {
                        alpha,
                        f: ft,
                        slope: None,
                    },
                );
            }

            let gt = self.eval_g(&xt)?;
            if !gt.iter().all(|v| v.is_finite()) {
                // Gradient overflowed even though f looked fine: too far.
                return self.zoom(
                    prev,
                    End {
                        alpha,
                        f: ft,
                        slope: None,
                    },
                );
            }
            let slope = slice_dot(&gt, self.d.as_slice());
            if self.curvature_ok(slope) {
                return self.accept(alpha, ft, gt);
            }
            if slope >= 0.0 {
                return self.zoom(
                    End {
                        alpha,
                        f: ft,
                        slope: Some(slope),
                    },
                    prev,
                );
            }
            if alpha >= self.params.alpha_max {
                return Err(Error::LineSearchFailed { evals: self.evals });
            }
            prev = End {
                alpha,
                f: ft,
                slope: Some(slope),
            };
            alpha = (alpha * 2.0).min(self.params.alpha_max);
            first = false;
        }
    }

    /// Function-value comparisons smaller than this are rounding noise for
    /// values near `f0`; slope information is still trustworthy there.
    fn noise_tol(&self, ft: f64) -> f64 {
        8.0 * f64::EPSILON * self.f0.abs().max(ft.abs())
    }

    /// Zoom phase: `lo` tracks the end the minimizer is bracketed against
    /// (normally the Armijo-feasible end with the smallest known value);
    /// the interval shrinks until a step passes both conditions or the
    /// budget runs out. When function differences fall below evaluation
    /// noise the bracket is steered by the directional derivative instead,
    /// which stays resolvable long after `f` comparisons degenerate;
    /// acceptance itself is never relaxed.
    fn zoom(&mut self, mut lo: End, mut hi: End) -> Result<LineSearchResult> {
        loop {
            let width = (hi.alpha - lo.alpha).abs();
            if width <= 1e-16 * lo.alpha.abs().max(1.0) {
                return Err(Error::LineSearchFailed { evals: self.evals });
            }
            let t = interpolate(&lo, &hi);
            let xt = self.trial_point(t);
            let ft = self.eval_f(&xt)?;

            if !self.armijo_ok(t, ft) || ft >= lo.f {
                let tol = self.noise_tol(ft);
                let armijo_margin = ft - (self.f0 + self.params.delta * t * self.g0d);
                let genuine = !ft.is_finite() || armijo_margin > tol || ft - lo.f > tol;
                if genuine {
                    hi = End {
                        alpha: t,
                        f: ft,
                        slope: None,
                    };
                    continue;
                }
                // Ambiguous by rounding: place the trial by slope sign.
                let gt = self.eval_g(&xt)?;
                if !gt.iter().all(|v| v.is_finite()) {
                    hi = End {
                        alpha: t,
                        f: ft,
                        slope: None,
                    };
                    continue;
                }
                let slope = slice_dot(&gt, self.d.as_slice());
                if self.curvature_ok(slope) && self.armijo_ok(t, ft) {
                    return self.accept(t, ft, gt);
                }
                let end = End {
                    alpha: t,
                    f: ft,
                    slope: Some(slope),
                };
                if slope * (hi.alpha - lo.alpha) >= 0.0 {
                    hi = end;
                } else {
                    lo = end;
                }
                continue;
            }
            let gt = self.eval_g(&xt)?;
            if !gt.iter().all(|v| v.is_finite()) {
                hi = End {
                    alpha: t,
                    f: ft,
                    slope: None,
                };
                continue;
            }
            let slope = slice_dot(&gt, self.d.as_slice());
            if self.curvature_ok(slope) {
                return self.accept(t, ft, gt);
            }
            if slope * (hi.alpha - lo.alpha) >= 0.0 {
                hi = lo;
            }
            lo = End {
                alpha: t,
                f: ft,
                slope: Some(slope),
            };
        }
    }
}

/// Finds a step along `d` from `x` that satisfies the configured Wolfe
/// conditions.
///
/// `f0` and `g0` are the objective value and gradient at `x` (not
/// re-evaluated here). Fails with [`Error::NotDescentDirection`] when
/// `g0'd >= 0` and with [`Error::LineSearchFailed`] when the evaluation
/// budget is exhausted; the caller decides whether to restart or abort.
pub fn search(
    obj: &dyn Objective,
    x: &Vector,
    f0: f64,
    g0: &Vector,
    d: &Vector,
    alpha_init: f64,
    params: &WolfeParams,
) -> Result<LineSearchResult> {
    params.validate()?;
    let g0d = g0.dot(d)?;
    if g0d >= 0.0 {
        return Err(Error::NotDescentDirection { slope: g0d });
    }
    if !(alpha_init > 0.0 && alpha_init.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "alpha_init must be positive and finite, got {alpha_init}"
        )));
    }
    let mut state = Search {
        obj,
        x,
        d,
        f0,
        g0d,
        params,
        evals: 0,
        fevals: 0,
        gevals: 0,
    };
    state.run(alpha_init)
}

fn slice_dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

/// Next trial inside `[lo, hi]`: cubic Hermite when both slopes are known,
/// quadratic from `lo`'s slope otherwise, bisection when the fit is
/// untrustworthy. The result is clamped away from the ends by 10% of the
/// interval so the bracket always shrinks.
fn interpolate(lo: &End, hi: &End) -> f64 {
    let (a, b) = if lo.alpha <= hi.alpha {
        (lo, hi)
    } else {
        (hi, lo)
    };
    let width = b.alpha - a.alpha;
    let lower = a.alpha + 0.1 * width;
    let upper = b.alpha - 0.1 * width;
    let bisect = 0.5 * (a.alpha + b.alpha);

    if !(a.f.is_finite() && b.f.is_finite()) {
        return bisect;
    }

    if let (Some(sa), Some(sb)) = (a.slope, b.slope) {
        // Cubic through both endpoints with derivatives.
        let d1 = sa + sb - 3.0 * (a.f - b.f) / (a.alpha - b.alpha);
        let disc = d1 * d1 - sa * sb;
        if disc >= 0.0 {
            let d2 = disc.sqrt();
            let t = b.alpha - (b.alpha - a.alpha) * ((sb + d2 - d1) / (sb - sa + 2.0 * d2));
            if t.is_finite() {
                return t.clamp(lower, upper);
            }
        }
        return bisect;
    }

    // Quadratic using the one known slope.
    let (known, other) = if a.slope.is_some() { (a, b) } else { (b, a) };
    if let Some(s) = known.slope {
        let w = other.alpha - known.alpha;
        let c = (other.f - known.f - s * w) / (w * w);
        if c > 0.0 {
            let t = known.alpha - s / (2.0 * c);
            if t.is_finite() {
                return t.clamp(lower, upper);
            }
        }
    }
    bisect
}
