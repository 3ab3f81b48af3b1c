//! Nonlinear conjugate-gradient toolkit.
//!
//! The crate provides:
//!
//! * dense-vector arithmetic and an objective-function contract with a
//!   finite-difference gradient oracle ([`vector`], [`objective`]);
//! * a strong/weak Wolfe-Powell line search ([`linesearch`]);
//! * conjugate-gradient update parameters — the `azhs`/`azhs3`/`azprp`
//!   hybrids alongside the classical `hs`, `prp`, `fr`, Dai-Liao, and
//!   Hager-Zhang formulas — with restart safeguards ([`direction`]);
//! * the full minimization loop with diagnostics ([`solver`]);
//! * a built-in problem catalog, a heat-conduction least-squares problem,
//!   and a smoothed-TV image-denoising objective ([`problems`]);
//! * a benchmark harness with Dolan-More performance profiles and CSV
//!   emission ([`bench`]).
//!
//! ```
//! use cgkit::{minimize, MethodKind, MethodSpec, SolverConfig, Vector};
//!
//! let entry = cgkit::problems::by_name("rosenbr").unwrap();
//! let config = SolverConfig::new(MethodSpec::new(MethodKind::Azhs));
//! let report = minimize(entry.objective.as_ref(), &entry.x0, &config).unwrap();
//! assert_eq!(report.status, cgkit::SolveStatus::Converged);
//! let x = Vector::new(vec![1.0, 1.0]).unwrap();
//! assert!(report.x_final.sub(&x).unwrap().norm_inf() < 1e-3);
//! ```

pub mod bench;
pub mod direction;
pub mod error;
pub mod linesearch;
pub mod objective;
pub mod problems;
pub mod solver;
pub mod vector;

pub use direction::{
    direction, BetaBranch, BetaOutcome, DirectionState, MethodKind, MethodSpec, SafeguardParams,
};
pub use error::{Error, Result};
pub use linesearch::{check_wolfe, search, LineSearchResult, WolfeMode, WolfeParams};
pub use objective::{fd_gradient, CountingObjective, EvalCounter, FnObjective, Objective};
pub use problems::{ImageGray, ProblemEntry};
pub use solver::{
    initial_alpha, minimize, Diagnostics, IterationRecord, SolveReport, SolveStatus, SolverConfig,
};
pub use vector::{axpy, dot, norm2, Vector};
