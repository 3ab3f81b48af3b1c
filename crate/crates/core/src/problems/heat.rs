//! Steady-state heat-conduction problem on a rectangular plate.
//!
//! Discretizing the governing Poisson equation with a nonlinear source term
//! over the symmetric mesh leaves four unknown temperatures and four
//! nonlinear equations; the objective is the sum of the squared residuals.

use std::sync::Arc;

use super::ProblemEntry;
use crate::objective::FnObjective;
use crate::vector::Vector;

/// Temperatures a solver is expected to find (to the quoted precision).
pub const HEAT_SOLUTION: [f64; 4] = [4.8521, 6.0545, 6.4042, 8.1383];

fn residuals(x: &[f64]) -> [f64; 4] {
    let (x1, x2, x3, x4) = (x[0], x[1], x[2], x[3]);
    [
        2.0 * (x2 + x3 - 4.0 * x1) + 20.0 - 1.5 * x1 + x1 * x1 / 20.0,
        2.0 * (x1 - 3.0 * x3 + x4) + 20.0 - 1.5 * x3 + x3 * x3 / 20.0,
        2.0 * (2.0 * x1 + x4 - 4.0 * x2) + 20.0 - 1.5 * x2 + x2 * x2 / 20.0,
        2.0 * (x2 + 2.0 * x3 - 3.0 * x4) + 20.0 - 1.5 * x4 + x4 * x4 / 20.0,
    ]
}

// Jacobian rows of the four residuals.
fn jacobian(x: &[f64]) -> [[f64; 4]; 4] {
    let (x1, x2, x3, x4) = (x[0], x[1], x[2], x[3]);
    [
        [-9.5 + x1 / 10.0, 2.0, 2.0, 0.0],
        [2.0, 0.0, -7.5 + x3 / 10.0, 2.0],
        [4.0, -9.5 + x2 / 10.0, 0.0, 2.0],
        [0.0, 2.0, 4.0, -7.5 + x4 / 10.0],
    ]
}

/// The heat-conduction objective: sum of four squared residuals over the
/// four distinct mesh temperatures.
pub fn heat_objective() -> FnObjective {
    FnObjective::new(
        "heat",
        4,
        |x| residuals(x).iter().map(|r| r * r).sum(),
        |x| {
            let r = residuals(x);
            let j = jacobian(x);
            (0..4)
                .map(|col| 2.0 * (0..4).map(|row| r[row] * j[row][col]).sum::<f64>())
                .collect()
        },
    )
}

pub fn entry() -> ProblemEntry {
    ProblemEntry {
        name: "heat",
        objective: Arc::new(heat_objective()),
        x0: Vector::zeros(4),
        f_star: None,
        x_star: None,
    }
}
