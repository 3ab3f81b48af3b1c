//! The conjugate-gradient iteration: direction, Wolfe step, state rollover,
//! stopping rules, and per-iteration diagnostics.

use std::time::Instant;

use crate::direction::{
    direction, BetaBranch, DirectionState, MethodSpec, SafeguardParams,
};
use crate::error::{Error, Result};
use crate::linesearch::{search, WolfeParams};
use crate::objective::{CountingObjective, Objective};
use crate::vector::Vector;

/// How a solve ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Converged,
    IterationCap,
    LineSearchFailure,
}

impl SolveStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolveStatus::Converged => "converged",
            SolveStatus::IterationCap => "iteration-cap",
            SolveStatus::LineSearchFailure => "line-search-failure",
        }
    }
}

impl std::fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Solver configuration. Defaults: gradient stop at `||g||_inf <= 1e-6`,
/// no relative-step rule, 50 000 iteration cap, trace off.
#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    pub method: MethodSpec,
    pub wolfe: WolfeParams,
    /// Infinity-norm gradient threshold.
    pub gtol: f64,
    /// Optional relative-step threshold: stop when
    /// `||x_{k+1} - x_k|| / ||x_k|| < step_rtol`.
    pub step_rtol: Option<f64>,
    pub max_iter: usize,
    pub collect_trace: bool,
    pub safeguard: SafeguardParams,
}

impl SolverConfig {
    pub fn new(method: MethodSpec) -> Self {
        SolverConfig {
            method,
            wolfe: WolfeParams::default(),
            gtol: 1e-6,
            step_rtol: None,
            max_iter: 50_000,
            collect_trace: false,
            safeguard: SafeguardParams::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.method.validate()?;
        self.wolfe.validate()?;
        if !(self.gtol >= 0.0 && self.gtol.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "gtol must be finite and nonnegative, got {}",
                self.gtol
            )));
        }
        let step_ok = self.step_rtol.is_some_and(|eps| eps > 0.0 && eps.is_finite());
        if self.gtol <= 0.0 && !step_ok {
            return Err(Error::InvalidConfig(
                "either gtol > 0 or step_rtol > 0 is required".to_string(),
            ));
        }
        if let Some(eps) = self.step_rtol {
            if !(eps > 0.0 && eps.is_finite()) {
                return Err(Error::InvalidConfig(format!(
                    "step_rtol must be positive, got {eps}"
                )));
            }
        }
        if self.max_iter < 1 {
            return Err(Error::InvalidConfig("max_iter must be at least 1".to_string()));
        }
        Ok(())
    }
}

/// Inputs the update-parameter formula consumed, recorded for re-checking
/// formula-level bounds outside the solver.
#[derive(Debug, Clone, Copy)]
pub struct BetaInputs {
    /// `d_{k-1}' y_{k-1}`.
    pub dty: f64,
    /// `||s_{k-1}|| / ||y_{k-1}||`.
    pub mu: f64,
    pub g_dot_gprev: f64,
    pub g_dot_sprev: f64,
    pub alpha_prev: f64,
}

/// One completed iteration.
#[derive(Debug, Clone)]
pub struct IterationRecord {
    pub k: usize,
    /// `f(x_k)` before the step.
    pub f: f64,
    pub gnorm_inf: f64,
    /// `g_k . g_k`.
    pub gnorm_sq: f64,
    pub beta: f64,
    pub branch: BetaBranch,
    pub restarted: bool,
    pub alpha: f64,
    /// `g_k' d_k`.
    pub g_dot_d: f64,
    pub dnorm_sq: f64,
    /// `(g_k' d_k)^2 / ||d_k||^2`.
    pub zoutendijk_term: f64,
    /// `f(x_k + alpha d_k)`.
    pub f_new: f64,
    /// `g(x_{k+1})' d_k`, the directional derivative at the accepted point.
    pub gnew_dot_d: f64,
    /// Present when a formula branch produced the direction (absent on the
    /// first iteration and on restarts).
    pub beta_inputs: Option<BetaInputs>,
}

/// Running diagnostics over one solve.
#[derive(Debug, Clone, Copy)]
pub struct Diagnostics {
    /// Partial sum of `(g'd)^2 / ||d||^2` over completed iterations.
    pub zoutendijk_partial_sum: f64,
    /// Minimum of `-g'd / ||g||^2` over completed iterations
    /// (`+inf` when no iteration ran).
    pub min_descent_ratio: f64,
}

impl Default for Diagnostics {
    fn default() -> Self {
        Diagnostics {
            zoutendijk_partial_sum: 0.0,
            min_descent_ratio: f64::INFINITY,
        }
    }
}

/// Result of a solve. Counters are exact: every `eval`/`grad` call on the
/// objective is counted exactly once.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub status: SolveStatus,
    pub iters: usize,
    pub fevals: u64,
    pub gevals: u64,
    /// Seconds spent in the iteration loop.
    pub wall_time: f64,
    pub f_final: f64,
    /// `||g||_inf` at the final iterate.
    pub gnorm_final: f64,
    pub x_final: Vector,
    pub trace: Option<Vec<IterationRecord>>,
    pub diagnostics: Diagnostics,
}

/// Trial step for the next line search.
///
/// First iteration: `1 / (1 + ||g||_inf)`. Later iterations carry the
/// previous scale over via `alpha_prev * (g_prev'd_prev) / (g'd)`, clamped
/// to `[1e-12, alpha_max]`.
pub fn initial_alpha(
    k: usize,
    g: &Vector,
    d: &Vector,
    prev: Option<(f64, f64)>,
    alpha_max: f64,
) -> Result<f64> {
    match prev {
        Some((alpha_prev, slope_prev)) if k >= 2 => {
            let slope = g.dot(d)?;
            let alpha = alpha_prev * (slope_prev / slope);
            Ok(alpha.clamp(1e-12, alpha_max))
        }
        _ => Ok(1.0 / (1.0 + g.norm_inf())),
    }
}

/// Minimizes `obj` from `x0`.
///
/// Iterates `x_{k+1} = x_k + alpha_k d_k` with `alpha_k` from the Wolfe
/// search and `d_k` from the configured update formula. Terminates when
/// `||g||_inf <= gtol`, when the relative-step rule fires (if configured),
/// when the iteration cap is reached, or when the line search fails twice
/// consecutively even after a steepest-descent restart.
pub fn minimize(obj: &dyn Objective, x0: &Vector, config: &SolverConfig) -> Result<SolveReport> {
    config.validate()?;
    if x0.len() != obj.n() {
        return Err(Error::DimensionMismatch {
            expected: obj.n(),
            actual: x0.len(),
        });
    }

    let counting = CountingObjective::new(obj);
    let start = Instant::now();

    let mut x = x0.clone();
    let mut f = counting.eval(x.as_slice());
    let g_raw = counting.grad(x.as_slice());
    if !f.is_finite() || g_raw.len() != obj.n() || g_raw.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidStart);
    }
    let mut g = Vector::new(g_raw)?;

    let mut state: Option<DirectionState> = None;
    let mut prev_scale: Option<(f64, f64)> = None;
    let mut trace: Option<Vec<IterationRecord>> = config.collect_trace.then(Vec::new);
    let mut diag = Diagnostics::default();
    let mut iters = 0usize;
    let mut k = 1usize;

    let status = loop {
        if g.norm_inf() <= config.gtol {
            break SolveStatus::Converged;
        }
        if iters >= config.max_iter {
            break SolveStatus::IterationCap;
        }

        let (mut d, mut outcome) =
            match direction(&g, state.as_ref(), &config.method, &config.safeguard) {
                Ok(pair) => pair,
                Err(Error::ZeroGradient) => break SolveStatus::Converged,
                Err(e) => return Err(e),
            };
        let mut slope0 = g.dot(&d)?;
        let mut alpha_init = initial_alpha(k, &g, &d, prev_scale, config.wolfe.alpha_max)?;

        let mut ls = match search(&counting, &x, f, &g, &d, alpha_init, &config.wolfe) {
            Ok(r) => Some(r),
            Err(Error::LineSearchFailed { .. }) | Err(Error::NotDescentDirection { .. }) => None,
            Err(e) => return Err(e),
        };

        // One steepest-descent retry after a failed search on a formula
        // direction; a second consecutive failure ends the solve.
        let was_plain_descent = matches!(
            outcome.branch,
            BetaBranch::SteepestDescent | BetaBranch::Restart
        );
        if ls.is_none() && !was_plain_descent {
            d = g.neg();
            outcome.branch = BetaBranch::Restart;
            outcome.restarted = true;
            slope0 = g.dot(&d)?;
            alpha_init = initial_alpha(1, &g, &d, None, config.wolfe.alpha_max)?;
            ls = match search(&counting, &x, f, &g, &d, alpha_init, &config.wolfe) {
                Ok(r) => Some(r),
                Err(Error::LineSearchFailed { .. })
                | Err(Error::NotDescentDirection { .. }) => None,
                Err(e) => return Err(e),
            };
        }
        let Some(ls) = ls else {
            break SolveStatus::LineSearchFailure;
        };

        let gnorm_sq = g.dot(&g)?;
        let dnorm_sq = d.dot(&d)?;
        let zoutendijk_term = if dnorm_sq > 0.0 {
            slope0 * slope0 / dnorm_sq
        } else {
            0.0
        };
        diag.zoutendijk_partial_sum += zoutendijk_term;
        diag.min_descent_ratio = diag.min_descent_ratio.min(-slope0 / gnorm_sq);

        let gnew_dot_d = ls.g_new.dot(&d)?;
        // The Wolfe conditions guarantee a positive curvature gap.
        debug_assert!(gnew_dot_d - slope0 > 0.0);

        if let Some(records) = trace.as_mut() {
            let beta_inputs = match (&state, outcome.restarted, outcome.branch) {
                (Some(st), false, branch) if branch != BetaBranch::SteepestDescent => {
                    let y = g.sub(&st.g_prev)?;
                    let ny = y.norm2();
                    Some(BetaInputs {
                        dty: st.d_prev.dot(&y)?,
                        mu: if ny > 0.0 { st.s_prev.norm2() / ny } else { f64::NAN },
                        g_dot_gprev: g.dot(&st.g_prev)?,
                        g_dot_sprev: g.dot(&st.s_prev)?,
                        alpha_prev: st.alpha_prev,
                    })
                }
                _ => None,
            };
            records.push(IterationRecord {
                k,
                f,
                gnorm_inf: g.norm_inf(),
                gnorm_sq,
                beta: outcome.beta,
                branch: outcome.branch,
                restarted: outcome.restarted,
                alpha: ls.alpha,
                g_dot_d: slope0,
                dnorm_sq,
                zoutendijk_term,
                f_new: ls.f_new,
                gnew_dot_d,
                beta_inputs,
            });
        }

        let s = d.scale(ls.alpha);
        let x_next = x.axpy(ls.alpha, &d)?;

        let step_converged = config.step_rtol.is_some_and(|eps| {
            let xnorm = x.norm2();
            let snorm = s.norm2();
            if xnorm > 0.0 {
                snorm / xnorm < eps
            } else {
                snorm < eps
            }
        });

        prev_scale = Some((ls.alpha, slope0));
        state = Some(DirectionState::new(g, d, s, ls.alpha, k + 1)?);
        x = x_next;
        f = ls.f_new;
        g = ls.g_new;
        iters += 1;
        k += 1;

        if step_converged {
            break SolveStatus::Converged;
        }
    };

    let counts = counting.counts();
    Ok(SolveReport {
        status,
        iters,
        fevals: counts.fevals,
        gevals: counts.gevals,
        wall_time: start.elapsed().as_secs_f64(),
        f_final: f,
        gnorm_final: g.norm_inf(),
        x_final: x,
        trace,
        diagnostics: diag,
    })
}
