//! Built-in objective catalog: a representative smooth test-function suite,
//! the heat-conduction least-squares problem, and the image-denoising
//! objective with a Gaussian-noise generator.

mod heat;
mod image;
mod suite;

pub use heat::{heat_objective, HEAT_SOLUTION};
pub use image::{add_gaussian_noise, denoise_objective, rmse, DenoiseSpec, ImageGray};

use std::sync::Arc;

use crate::objective::Objective;
use crate::vector::Vector;

/// A named objective with its standard starting point and, when known, its
/// optimal value and minimizer.
#[derive(Clone)]
pub struct ProblemEntry {
    pub name: &'static str,
    pub objective: Arc<dyn Objective>,
    pub x0: Vector,
    pub f_star: Option<f64>,
    pub x_star: Option<Vector>,
}

impl ProblemEntry {
    pub fn n(&self) -> usize {
        self.objective.n()
    }
}

/// The built-in problem suite (16 entries), chosen for diversity:
/// quadratic, nonconvex, ill-conditioned, and separable shapes at
/// `n <= 1000`.
pub fn catalog() -> Vec<ProblemEntry> {
    let mut entries = suite::entries();
    entries.push(heat::entry());
    entries
}

/// Case-insensitive catalog lookup; accepts a few common aliases
/// (`rosenbrock` for `rosenbr`).
pub fn by_name(name: &str) -> Option<ProblemEntry> {
    let lower = name.to_ascii_lowercase();
    let canonical = match lower.as_str() {
        "rosenbrock" => "rosenbr",
        "powell" => "powellsg",
        other => other,
    };
    catalog().into_iter().find(|e| e.name == canonical)
}

/// Names of every catalog entry, in catalog order.
pub fn names() -> Vec<&'static str> {
    catalog().iter().map(|e| e.name).collect()
}
