//! Conjugate-gradient update parameters and search-direction assembly.
//!
//! Each method is a choice of the scalar `beta` in
//!
//! ```text
//! d_k = -g_k             (k = 1)
//! d_k = -g_k + beta d_{k-1}   (k >= 2)
//! ```
//!
//! Notation inside this module: `y = g - g_prev`, `s_prev = alpha_prev *
//! d_prev`, and `mu = ||s_prev|| / ||y||`, an online proxy for the
//! reciprocal Lipschitz constant of the gradient.
//!
//! Supported choices:
//!
//! * `azhs` — a Hestenes-Stiefel/Dai-Liao hybrid with a `mu`-scaled restart
//!   criterion; satisfies sufficient descent under the strong Wolfe search
//!   with `sigma < 1/2`.
//! * `azhs3` — the three-branch variant of `azhs` that drops the `mu`
//!   scaling whenever `||g||^2` already dominates `|g'g_prev|`.
//! * `azprp` — the analogous nonnegative Polak-Ribiere-Polyak hybrid.
//! * `hs`, `fr`, `prp` — the classical formulas, plus `hs+`/`prp+` clamped
//!   at zero.
//! * `dl`, `dl+` — Dai-Liao conjugacy-condition formulas with parameter `t`.
//! * `hz` — the Hager-Zhang descent-guaranteed formula with truncation
//!   constant `eta`.

use crate::error::{Error, Result};
use crate::vector::Vector;

/// Absolute floor under which a `d'y` style denominator triggers a restart.
pub const DENOMINATOR_FLOOR: f64 = 1e-30;

/// Default descent-safeguard constant applied to all methods.
pub const DEFAULT_C_MIN: f64 = 1e-10;

/// The update-parameter formula to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MethodKind {
    Azhs,
    Azhs3,
    Azprp,
    Hs,
    HsPlus,
    Prp,
    PrpPlus,
    Fr,
    Dl,
    DlPlus,
    Hz,
}

impl MethodKind {
    pub const ALL: [MethodKind; 11] = [
        MethodKind::Azhs,
        MethodKind::Azhs3,
        MethodKind::Azprp,
        MethodKind::Hs,
        MethodKind::HsPlus,
        MethodKind::Prp,
        MethodKind::PrpPlus,
        MethodKind::Fr,
        MethodKind::Dl,
        MethodKind::DlPlus,
        MethodKind::Hz,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            MethodKind::Azhs => "azhs",
            MethodKind::Azhs3 => "azhs3",
            MethodKind::Azprp => "azprp",
            MethodKind::Hs => "hs",
            MethodKind::HsPlus => "hs+",
            MethodKind::Prp => "prp",
            MethodKind::PrpPlus => "prp+",
            MethodKind::Fr => "fr",
            MethodKind::Dl => "dl",
            MethodKind::DlPlus => "dl+",
            MethodKind::Hz => "hz",
        }
    }
}

impl std::fmt::Display for MethodKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for MethodKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "azhs" => Ok(MethodKind::Azhs),
            "azhs3" => Ok(MethodKind::Azhs3),
            "azprp" => Ok(MethodKind::Azprp),
            "hs" => Ok(MethodKind::Hs),
            "hs+" | "hsplus" => Ok(MethodKind::HsPlus),
            "prp" => Ok(MethodKind::Prp),
            "prp+" | "prpplus" => Ok(MethodKind::PrpPlus),
            "fr" => Ok(MethodKind::Fr),
            "dl" => Ok(MethodKind::Dl),
            "dl+" | "dlplus" => Ok(MethodKind::DlPlus),
            "hz" => Ok(MethodKind::Hz),
            other => Err(Error::UnknownMethod(other.to_string())),
        }
    }
}

/// The classical subset accepted by [`beta_classical`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassicalKind {
    Hs,
    HsPlus,
    Prp,
    PrpPlus,
    Fr,
}

/// A formula plus its constants.
#[derive(Debug, Clone, Copy)]
pub struct MethodSpec {
    pub kind: MethodKind,
    /// Dai-Liao parameter, `t >= 0`; used by `dl`/`dl+`.
    pub t: f64,
    /// Hager-Zhang truncation constant, `eta > 0`.
    pub eta: f64,
}

impl MethodSpec {
    pub fn new(kind: MethodKind) -> Self {
        MethodSpec {
            kind,
            t: 0.1,
            eta: 0.01,
        }
    }

    pub fn with_t(mut self, t: f64) -> Self {
        self.t = t;
        self
    }

    pub fn with_eta(mut self, eta: f64) -> Self {
        self.eta = eta;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t >= 0.0 && self.t.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "Dai-Liao parameter t must be >= 0, got {}",
                self.t
            )));
        }
        if !(self.eta > 0.0 && self.eta.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "Hager-Zhang eta must be > 0, got {}",
                self.eta
            )));
        }
        Ok(())
    }
}

/// Safeguards applied when assembling a direction.
#[derive(Debug, Clone, Copy)]
pub struct SafeguardParams {
    /// A direction is rejected unless `g'd <= -c_min ||g||^2`.
    pub c_min: f64,
    /// See [`DENOMINATOR_FLOOR`].
    pub denominator_floor: f64,
}

impl Default for SafeguardParams {
    fn default() -> Self {
        SafeguardParams {
            c_min: DEFAULT_C_MIN,
            denominator_floor: DENOMINATOR_FLOOR,
        }
    }
}

/// Everything a `beta` formula consumes from the previous iteration.
#[derive(Debug, Clone)]
pub struct DirectionState {
    pub g_prev: Vector,
    pub d_prev: Vector,
    /// `s_prev = alpha_prev * d_prev = x_k - x_{k-1}`.
    pub s_prev: Vector,
    pub alpha_prev: f64,
    /// Iteration index of the direction about to be computed (>= 2).
    pub k: usize,
}

impl DirectionState {
    pub fn new(
        g_prev: Vector,
        d_prev: Vector,
        s_prev: Vector,
        alpha_prev: f64,
        k: usize,
    ) -> Result<Self> {
        let n = g_prev.len();
        for (label, v) in [("d_prev", &d_prev), ("s_prev", &s_prev)] {
            if v.len() != n {
                return Err(Error::InvalidConfig(format!(
                    "{label} has length {}, expected {n}",
                    v.len()
                )));
            }
        }
        if k >= 2 && !(alpha_prev > 0.0 && alpha_prev.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "alpha_prev must be positive for k >= 2, got {alpha_prev}"
            )));
        }
        Ok(DirectionState {
            g_prev,
            d_prev,
            s_prev,
            alpha_prev,
            k,
        })
    }
}

/// Which formula case produced a `beta` value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BetaBranch {
    /// First iteration: `d = -g` by definition.
    SteepestDescent,
    /// A safeguard tripped; the direction was reset to `-g`.
    Restart,
    AzhsCase1,
    AzhsCase2,
    Azhs3CaseA,
    Azhs3CaseB,
    Azhs3CaseC,
    Azprp,
    Hs,
    HsPlus,
    Prp,
    PrpPlus,
    Fr,
    Dl,
    DlPlus,
    Hz,
}

impl BetaBranch {
    pub fn label(&self) -> &'static str {
        match self {
            BetaBranch::SteepestDescent => "steepest-descent",
            BetaBranch::Restart => "restart",
            BetaBranch::AzhsCase1 => "azhs-case1",
            BetaBranch::AzhsCase2 => "azhs-case2",
            BetaBranch::Azhs3CaseA => "azhs3-caseA",
            BetaBranch::Azhs3CaseB => "azhs3-caseB",
            BetaBranch::Azhs3CaseC => "azhs3-caseC",
            BetaBranch::Azprp => "azprp",
            BetaBranch::Hs => "hs",
            BetaBranch::HsPlus => "hs+",
            BetaBranch::Prp => "prp",
            BetaBranch::PrpPlus => "prp+",
            BetaBranch::Fr => "fr",
            BetaBranch::Dl => "dl",
            BetaBranch::DlPlus => "dl+",
            BetaBranch::Hz => "hz",
        }
    }
}

impl std::fmt::Display for BetaBranch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// A computed update parameter plus the branch that produced it.
#[derive(Debug, Clone, Copy)]
pub struct BetaOutcome {
    pub beta: f64,
    pub branch: BetaBranch,
    pub restarted: bool,
}

impl BetaOutcome {
    fn restart() -> Self {
        BetaOutcome {
            beta: 0.0,
            branch: BetaBranch::Restart,
            restarted: true,
        }
    }

    fn value(beta: f64, branch: BetaBranch) -> Self {
        if beta.is_finite() {
            BetaOutcome {
                beta,
                branch,
                restarted: false,
            }
        } else {
            BetaOutcome::restart()
        }
    }
}

/// `mu = ||s_prev|| / ||y||`. Returns `None` when `||y|| == 0`, which
/// signals that a restart is required (the state is degenerate: the iterate
/// did not move the gradient).
pub fn mu(s_prev: &Vector, y: &Vector) -> Option<f64> {
    let ny = y.norm2();
    if ny == 0.0 {
        None
    } else {
        Some(s_prev.norm2() / ny)
    }
}

// Quantities shared by the beta formulas.
struct Inputs {
    dty: f64,
    gnorm_sq: f64,
    gg_prev: f64,
    gs_prev: f64,
    mu: Option<f64>,
    gp_sq: f64,
    y: Vector,
}

impl Inputs {
    fn compute(g: &Vector, state: &DirectionState) -> Result<Inputs> {
        let y = g.sub(&state.g_prev)?;
        Ok(Inputs {
            dty: state.d_prev.dot(&y)?,
            gnorm_sq: g.dot(g)?,
            gg_prev: g.dot(&state.g_prev)?,
            gs_prev: g.dot(&state.s_prev)?,
            mu: mu(&state.s_prev, &y),
            gp_sq: state.g_prev.dot(&state.g_prev)?,
            y,
        })
    }
}

/// The mu-scaled Hestenes-Stiefel hybrid:
///
/// ```text
/// beta = (||g||^2 - mu |g'g_prev|) / d'y - mu (g's_prev) / (alpha_prev d'y)
///        when ||g||^2 > mu |g'g_prev|,
/// beta = -mu (g's_prev) / (alpha_prev d'y)   otherwise.
/// ```
pub fn beta_azhs(g: &Vector, state: &DirectionState) -> Result<BetaOutcome> {
    let inp = Inputs::compute(g, state)?;
    if inp.dty.abs() < DENOMINATOR_FLOOR {
        return Ok(BetaOutcome::restart());
    }
    let Some(mu) = inp.mu else {
        return Ok(BetaOutcome::restart());
    };
    let correction = mu * inp.gs_prev / (state.alpha_prev * inp.dty);
    if inp.gnorm_sq > mu * inp.gg_prev.abs() {
        let beta = (inp.gnorm_sq - mu * inp.gg_prev.abs()) / inp.dty - correction;
        Ok(BetaOutcome::value(beta, BetaBranch::AzhsCase1))
    } else {
        Ok(BetaOutcome::value(-correction, BetaBranch::AzhsCase2))
    }
}

/// Three-branch variant of [`beta_azhs`], evaluated strictly top-down:
///
/// 1. `||g||^2 > |g'g_prev|`: `beta = (||g||^2 - |g'g_prev|) / d'y`
///    (bounded above by the Hestenes-Stiefel value),
/// 2. `||g||^2 > mu |g'g_prev|`: the full case-1 expression of `azhs`,
/// 3. otherwise the case-2 expression.
pub fn beta_azhs3(g: &Vector, state: &DirectionState) -> Result<BetaOutcome> {
    let inp = Inputs::compute(g, state)?;
    if inp.dty.abs() < DENOMINATOR_FLOOR {
        return Ok(BetaOutcome::restart());
    }
    let Some(mu) = inp.mu else {
        return Ok(BetaOutcome::restart());
    };
    if inp.gnorm_sq > inp.gg_prev.abs() {
        let beta = (inp.gnorm_sq - inp.gg_prev.abs()) / inp.dty;
        return Ok(BetaOutcome::value(beta, BetaBranch::Azhs3CaseA));
    }
    let correction = mu * inp.gs_prev / (state.alpha_prev * inp.dty);
    if inp.gnorm_sq > mu * inp.gg_prev.abs() {
        let beta = (inp.gnorm_sq - mu * inp.gg_prev.abs()) / inp.dty - correction;
        Ok(BetaOutcome::value(beta, BetaBranch::Azhs3CaseB))
    } else {
        Ok(BetaOutcome::value(-correction, BetaBranch::Azhs3CaseC))
    }
}

/// Hestenes-Stiefel, Fletcher-Reeves, and Polak-Ribiere-Polyak formulas;
/// the `+` variants clamp at zero.
pub fn beta_classical(
    kind: ClassicalKind,
    g: &Vector,
    state: &DirectionState,
) -> Result<BetaOutcome> {
    let inp = Inputs::compute(g, state)?;
    let gy = g.dot(&inp.y)?;
    match kind {
        ClassicalKind::Hs | ClassicalKind::HsPlus => {
            if inp.dty.abs() < DENOMINATOR_FLOOR {
                return Ok(BetaOutcome::restart());
            }
            let beta = gy / inp.dty;
            if kind == ClassicalKind::Hs {
                Ok(BetaOutcome::value(beta, BetaBranch::Hs))
            } else {
                Ok(BetaOutcome::value(beta.max(0.0), BetaBranch::HsPlus))
            }
        }
        ClassicalKind::Fr => {
            if inp.gp_sq < DENOMINATOR_FLOOR {
                return Ok(BetaOutcome::restart());
            }
            Ok(BetaOutcome::value(inp.gnorm_sq / inp.gp_sq, BetaBranch::Fr))
        }
        ClassicalKind::Prp | ClassicalKind::PrpPlus => {
            if inp.gp_sq < DENOMINATOR_FLOOR {
                return Ok(BetaOutcome::restart());
            }
            let beta = gy / inp.gp_sq;
            if kind == ClassicalKind::Prp {
                Ok(BetaOutcome::value(beta, BetaBranch::Prp))
            } else {
                Ok(BetaOutcome::value(beta.max(0.0), BetaBranch::PrpPlus))
            }
        }
    }
}

/// Dai-Liao formula `beta = g'y / d'y - t g's_prev / d'y`; with
/// `plus = true` the first term is clamped at zero. `t = 0` reduces to
/// Hestenes-Stiefel exactly.
pub fn beta_dl(g: &Vector, state: &DirectionState, t: f64, plus: bool) -> Result<BetaOutcome> {
    let inp = Inputs::compute(g, state)?;
    if inp.dty.abs() < DENOMINATOR_FLOOR {
        return Ok(BetaOutcome::restart());
    }
    let base = g.dot(&inp.y)? / inp.dty;
    let base = if plus { base.max(0.0) } else { base };
    let beta = base - t * inp.gs_prev / inp.dty;
    let branch = if plus {
        BetaBranch::DlPlus
    } else {
        BetaBranch::Dl
    };
    Ok(BetaOutcome::value(beta, branch))
}

/// Hager-Zhang formula `beta = max(beta_n, eta_k)` with
///
/// ```text
/// beta_n = (y - 2 d ||y||^2 / d'y)' g / d'y
/// eta_k  = -1 / (||d|| min(eta, ||g_prev||))
/// ```
pub fn beta_hz(g: &Vector, state: &DirectionState, eta: f64) -> Result<BetaOutcome> {
    let inp = Inputs::compute(g, state)?;
    if inp.dty.abs() < DENOMINATOR_FLOOR {
        return Ok(BetaOutcome::restart());
    }
    let dnorm = state.d_prev.norm2();
    let scale = dnorm * eta.min(inp.gp_sq.sqrt());
    if scale < DENOMINATOR_FLOOR {
        return Ok(BetaOutcome::restart());
    }
    let gy = g.dot(&inp.y)?;
    let gd = g.dot(&state.d_prev)?;
    let yy = inp.y.dot(&inp.y)?;
    let beta_n = (gy - 2.0 * gd * yy / inp.dty) / inp.dty;
    let eta_k = -1.0 / scale;
    Ok(BetaOutcome::value(beta_n.max(eta_k), BetaBranch::Hz))
}

/// Nonnegative mu-scaled Polak-Ribiere-Polyak hybrid:
/// `beta = (||g||^2 - mu |g'g_prev|) / ||g_prev||^2` when
/// `||g||^2 > mu |g'g_prev|`, else zero.
pub fn beta_azprp(g: &Vector, state: &DirectionState) -> Result<BetaOutcome> {
    let inp = Inputs::compute(g, state)?;
    if inp.gp_sq < DENOMINATOR_FLOOR {
        return Ok(BetaOutcome::restart());
    }
    let Some(mu) = inp.mu else {
        return Ok(BetaOutcome::restart());
    };
    if inp.gnorm_sq > mu * inp.gg_prev.abs() {
        let beta = (inp.gnorm_sq - mu * inp.gg_prev.abs()) / inp.gp_sq;
        Ok(BetaOutcome::value(beta, BetaBranch::Azprp))
    } else {
        Ok(BetaOutcome::value(0.0, BetaBranch::Azprp))
    }
}

fn compute_beta(g: &Vector, state: &DirectionState, spec: &MethodSpec) -> Result<BetaOutcome> {
    match spec.kind {
        MethodKind::Azhs => beta_azhs(g, state),
        MethodKind::Azhs3 => beta_azhs3(g, state),
        MethodKind::Azprp => beta_azprp(g, state),
        MethodKind::Hs => beta_classical(ClassicalKind::Hs, g, state),
        MethodKind::HsPlus => beta_classical(ClassicalKind::HsPlus, g, state),
        MethodKind::Prp => beta_classical(ClassicalKind::Prp, g, state),
        MethodKind::PrpPlus => beta_classical(ClassicalKind::PrpPlus, g, state),
        MethodKind::Fr => beta_classical(ClassicalKind::Fr, g, state),
        MethodKind::Dl => beta_dl(g, state, spec.t, false),
        MethodKind::DlPlus => beta_dl(g, state, spec.t, true),
        MethodKind::Hz => beta_hz(g, state, spec.eta),
    }
}

/// Assembles the search direction `d = -g + beta d_prev`.
///
/// The first iteration (no state) takes the steepest-descent branch. A
/// direction that fails the descent safeguard `g'd <= -c_min ||g||^2`, or a
/// formula that signalled a restart, falls back to `d = -g` with
/// `restarted = true`. A zero gradient is reported as
/// [`Error::ZeroGradient`]: the iterate is already stationary.
pub fn direction(
    g: &Vector,
    state: Option<&DirectionState>,
    spec: &MethodSpec,
    safeguard: &SafeguardParams,
) -> Result<(Vector, BetaOutcome)> {
    spec.validate()?;
    let gnorm_sq = g.dot(g)?;
    if gnorm_sq == 0.0 {
        return Err(Error::ZeroGradient);
    }
    let state = match state {
        Some(s) if s.k >= 2 => s,
        _ => {
            return Ok((
                g.neg(),
                BetaOutcome {
                    beta: 0.0,
                    branch: BetaBranch::SteepestDescent,
                    restarted: false,
                },
            ))
        }
    };

    let outcome = compute_beta(g, state, spec)?;
    if outcome.restarted {
        return Ok((g.neg(), outcome));
    }

    let d = g.neg().axpy(outcome.beta, &state.d_prev)?;
    let gd = g.dot(&d)?;
    if !gd.is_finite() || gd > -safeguard.c_min * gnorm_sq {
        return Ok((
            g.neg(),
            BetaOutcome {
                beta: outcome.beta,
                branch: BetaBranch::Restart,
                restarted: true,
            },
        ));
    }
    Ok((d, outcome))
}
