//! The smooth test-function suite.
//!
//! Formulas follow the classical unconstrained-optimization collections;
//! dimensions are desk-scale (n <= 1000). Every gradient here is validated
//! against the finite-difference oracle in tests.

use std::sync::Arc;

use super::ProblemEntry;
use crate::objective::FnObjective;
use crate::vector::Vector;

fn entry(
    name: &'static str,
    obj: FnObjective,
    x0: Vec<f64>,
    f_star: Option<f64>,
    x_star: Option<Vec<f64>>,
) -> ProblemEntry {
    ProblemEntry {
        name,
        objective: Arc::new(obj),
        x0: Vector::new(x0).unwrap(),
        f_star,
        x_star: x_star.map(|x| Vector::new(x).unwrap()),
    }
}

fn alternating(n: usize, a: f64, b: f64) -> Vec<f64> {
    (0..n).map(|i| if i % 2 == 0 { a } else { b }).collect()
}

pub fn entries() -> Vec<ProblemEntry> {
    vec![
        rosenbr(),
        srosenbr(1000),
        woods(100),
        powellsg(100),
        tridia(500),
        dixmaana(300),
        engval1(500),
        liarwhd(500),
        edensch(500),
        quartc(500),
        cosine(500),
        dqdrtic(500),
        nondia(500),
        beale(),
        himmelbg(),
    ]
}

fn rosenbr() -> ProblemEntry {
    let obj = FnObjective::new(
        "rosenbr",
        2,
        |x| 100.0 * (x[1] - x[0] * x[0]).powi(2) + (1.0 - x[0]).powi(2),
        |x| {
            vec![
                -400.0 * x[0] * (x[1] - x[0] * x[0]) - 2.0 * (1.0 - x[0]),
                200.0 * (x[1] - x[0] * x[0]),
            ]
        },
    );
    entry("rosenbr", obj, vec![-1.2, 1.0], Some(0.0), Some(vec![1.0, 1.0]))
}

// Separable extension of the Rosenbrock valley over consecutive pairs.
fn srosenbr(n: usize) -> ProblemEntry {
    assert!(n.is_multiple_of(2));
    let obj = FnObjective::new(
        "srosenbr",
        n,
        |x| {
            x.chunks_exact(2)
                .map(|p| 100.0 * (p[1] - p[0] * p[0]).powi(2) + (1.0 - p[0]).powi(2))
                .sum()
        },
        |x| {
            let mut g = vec![0.0; x.len()];
            for (i, p) in x.chunks_exact(2).enumerate() {
                let (a, b) = (p[0], p[1]);
                g[2 * i] = -400.0 * a * (b - a * a) - 2.0 * (1.0 - a);
                g[2 * i + 1] = 200.0 * (b - a * a);
            }
            g
        },
    );
    entry(
        "srosenbr",
        obj,
        alternating(n, -1.2, 1.0),
        Some(0.0),
        Some(vec![1.0; n]),
    )
}

fn woods(n: usize) -> ProblemEntry {
    assert!(n.is_multiple_of(4));
    let obj = FnObjective::new(
        "woods",
        n,
        |x| {
            x.chunks_exact(4)
                .map(|q| {
                    let (a, b, c, d) = (q[0], q[1], q[2], q[3]);
                    100.0 * (b - a * a).powi(2)
                        + (1.0 - a).powi(2)
                        + 90.0 * (d - c * c).powi(2)
                        + (1.0 - c).powi(2)
                        + 10.0 * (b + d - 2.0).powi(2)
                        + 0.1 * (b - d).powi(2)
                })
                .sum()
        },
        |x| {
            let mut g = vec![0.0; x.len()];
            for (i, q) in x.chunks_exact(4).enumerate() {
                let (a, b, c, d) = (q[0], q[1], q[2], q[3]);
                let j = 4 * i;
                g[j] = -400.0 * a * (b - a * a) - 2.0 * (1.0 - a);
                g[j + 1] = 200.0 * (b - a * a) + 20.0 * (b + d - 2.0) + 0.2 * (b - d);
                g[j + 2] = -360.0 * c * (d - c * c) - 2.0 * (1.0 - c);
                g[j + 3] = 180.0 * (d - c * c) + 20.0 * (b + d - 2.0) - 0.2 * (b - d);
            }
            g
        },
    );
    entry(
        "woods",
        obj,
        alternating(n, -3.0, -1.0),
        Some(0.0),
        Some(vec![1.0; n]),
    )
}

// Extended Powell singular function: the Hessian is singular at the
// solution, which slows first-order methods down near the end.
fn powellsg(n: usize) -> ProblemEntry {
    assert!(n.is_multiple_of(4));
    let obj = FnObjective::new(
        "powellsg",
        n,
        |x| {
            x.chunks_exact(4)
                .map(|q| {
                    let (a, b, c, d) = (q[0], q[1], q[2], q[3]);
                    (a + 10.0 * b).powi(2)
                        + 5.0 * (c - d).powi(2)
                        + (b - 2.0 * c).powi(4)
                        + 10.0 * (a - d).powi(4)
                })
                .sum()
        },
        |x| {
            let mut g = vec![0.0; x.len()];
            for (i, q) in x.chunks_exact(4).enumerate() {
                let (a, b, c, d) = (q[0], q[1], q[2], q[3]);
                let j = 4 * i;
                g[j] = 2.0 * (a + 10.0 * b) + 40.0 * (a - d).powi(3);
                g[j + 1] = 20.0 * (a + 10.0 * b) + 4.0 * (b - 2.0 * c).powi(3);
                g[j + 2] = 10.0 * (c - d) - 8.0 * (b - 2.0 * c).powi(3);
                g[j + 3] = -10.0 * (c - d) - 40.0 * (a - d).powi(3);
            }
            g
        },
    );
    let x0: Vec<f64> = (0..n)
        .map(|i| match i % 4 {
            0 => 3.0,
            1 => -1.0,
            2 => 0.0,
            _ => 1.0,
        })
        .collect();
    entry("powellsg", obj, x0, Some(0.0), Some(vec![0.0; n]))
}

// Strictly convex quadratic with an index-weighted tridiagonal structure.
fn tridia(n: usize) -> ProblemEntry {
    let obj = FnObjective::new(
        "tridia",
        n,
        |x| {
            let mut f = (x[0] - 1.0).powi(2);
            for j in 1..x.len() {
                f += (j + 1) as f64 * (2.0 * x[j] - x[j - 1]).powi(2);
            }
            f
        },
        |x| {
            let n = x.len();
            let mut g = vec![0.0; n];
            g[0] = 2.0 * (x[0] - 1.0);
            for j in 1..n {
                let w = (j + 1) as f64;
                let r = 2.0 * x[j] - x[j - 1];
                g[j] += 4.0 * w * r;
                g[j - 1] -= 2.0 * w * r;
            }
            g
        },
    );
    let x_star: Vec<f64> = (0..n).map(|j| 0.5f64.powi(j as i32)).collect();
    entry("tridia", obj, vec![1.0; n], Some(0.0), Some(x_star))
}

// Dixon-Maany family member with parameters (1, 0, 0.125, 0.125) and all
// exponents zero; n = 3m.
fn dixmaana(n: usize) -> ProblemEntry {
    assert!(n.is_multiple_of(3));
    let m = n / 3;
    let obj = FnObjective::new(
        "dixmaana",
        n,
        move |x| {
            let mut f = 1.0 + x.iter().map(|a| a * a).sum::<f64>();
            for j in 0..2 * m {
                f += 0.125 * x[j] * x[j] * x[j + m].powi(4);
            }
            for j in 0..m {
                f += 0.125 * x[j] * x[j + 2 * m];
            }
            f
        },
        move |x| {
            let mut g: Vec<f64> = x.iter().map(|a| 2.0 * a).collect();
            for j in 0..2 * m {
                g[j] += 0.25 * x[j] * x[j + m].powi(4);
                g[j + m] += 0.5 * x[j] * x[j] * x[j + m].powi(3);
            }
            for j in 0..m {
                g[j] += 0.125 * x[j + 2 * m];
                g[j + 2 * m] += 0.125 * x[j];
            }
            g
        },
    );
    entry("dixmaana", obj, vec![2.0; n], Some(1.0), Some(vec![0.0; n]))
}

fn engval1(n: usize) -> ProblemEntry {
    let obj = FnObjective::new(
        "engval1",
        n,
        |x| {
            (0..x.len() - 1)
                .map(|j| (x[j] * x[j] + x[j + 1] * x[j + 1]).powi(2) - 4.0 * x[j] + 3.0)
                .sum()
        },
        |x| {
            let mut g = vec![0.0; x.len()];
            for j in 0..x.len() - 1 {
                let ss = x[j] * x[j] + x[j + 1] * x[j + 1];
                g[j] += 4.0 * x[j] * ss - 4.0;
                g[j + 1] += 4.0 * x[j + 1] * ss;
            }
            g
        },
    );
    entry("engval1", obj, vec![2.0; n], None, None)
}

fn liarwhd(n: usize) -> ProblemEntry {
    let obj = FnObjective::new(
        "liarwhd",
        n,
        |x| {
            x.iter()
                .map(|&xi| 4.0 * (xi * xi - x[0]).powi(2) + (xi - 1.0).powi(2))
                .sum()
        },
        |x| {
            let mut g: Vec<f64> = x
                .iter()
                .map(|&xi| 16.0 * xi * (xi * xi - x[0]) + 2.0 * (xi - 1.0))
                .collect();
            g[0] -= x.iter().map(|&xi| 8.0 * (xi * xi - x[0])).sum::<f64>();
            g
        },
    );
    entry("liarwhd", obj, vec![4.0; n], Some(0.0), Some(vec![1.0; n]))
}

fn edensch(n: usize) -> ProblemEntry {
    let obj = FnObjective::new(
        "edensch",
        n,
        |x| {
            16.0 + (0..x.len() - 1)
                .map(|j| {
                    (x[j] - 2.0).powi(4)
                        + (x[j] * x[j + 1] - 2.0 * x[j + 1]).powi(2)
                        + (x[j + 1] + 1.0).powi(2)
                })
                .sum::<f64>()
        },
        |x| {
            let mut g = vec![0.0; x.len()];
            for j in 0..x.len() - 1 {
                let cross = x[j] * x[j + 1] - 2.0 * x[j + 1];
                g[j] += 4.0 * (x[j] - 2.0).powi(3) + 2.0 * cross * x[j + 1];
                g[j + 1] += 2.0 * cross * (x[j] - 2.0) + 2.0 * (x[j + 1] + 1.0);
            }
            g
        },
    );
    entry("edensch", obj, vec![0.0; n], None, None)
}

// Diagonal quartic: smooth, convex, singular Hessian at the solution.
fn quartc(n: usize) -> ProblemEntry {
    let obj = FnObjective::new(
        "quartc",
        n,
        |x| x.iter().map(|a| (a - 2.0).powi(4)).sum(),
        |x| x.iter().map(|a| 4.0 * (a - 2.0).powi(3)).collect(),
    );
    entry("quartc", obj, vec![1.0; n], Some(0.0), Some(vec![2.0; n]))
}

fn cosine(n: usize) -> ProblemEntry {
    let obj = FnObjective::new(
        "cosine",
        n,
        |x| {
            (0..x.len() - 1)
                .map(|j| (x[j] * x[j] - 0.5 * x[j + 1]).cos())
                .sum()
        },
        |x| {
            let mut g = vec![0.0; x.len()];
            for j in 0..x.len() - 1 {
                let s = (x[j] * x[j] - 0.5 * x[j + 1]).sin();
                g[j] += -2.0 * x[j] * s;
                g[j + 1] += 0.5 * s;
            }
            g
        },
    );
    entry("cosine", obj, vec![1.0; n], Some(-((n - 1) as f64)), None)
}

// Diagonal quadratic accumulated over sliding windows of three.
fn dqdrtic(n: usize) -> ProblemEntry {
    let coeff = move |j: usize| -> f64 {
        let mut c = 0.0;
        if j + 2 < n {
            c += 1.0;
        }
        if j >= 1 && j + 1 < n {
            c += 100.0;
        }
        if j >= 2 {
            c += 100.0;
        }
        c
    };
    let obj = FnObjective::new(
        "dqdrtic",
        n,
        move |x| x.iter().enumerate().map(|(j, a)| coeff(j) * a * a).sum(),
        move |x| {
            x.iter()
                .enumerate()
                .map(|(j, a)| 2.0 * coeff(j) * a)
                .collect()
        },
    );
    entry("dqdrtic", obj, vec![3.0; n], Some(0.0), Some(vec![0.0; n]))
}

// Nondiagonal Rosenbrock variant: every coordinate couples to the first.
fn nondia(n: usize) -> ProblemEntry {
    let obj = FnObjective::new(
        "nondia",
        n,
        |x| {
            (x[0] - 1.0).powi(2)
                + (1..x.len())
                    .map(|j| 100.0 * (x[0] - x[j] * x[j]).powi(2))
                    .sum::<f64>()
        },
        |x| {
            let mut g = vec![0.0; x.len()];
            g[0] = 2.0 * (x[0] - 1.0);
            for j in 1..x.len() {
                let r = x[0] - x[j] * x[j];
                g[0] += 200.0 * r;
                g[j] = -400.0 * x[j] * r;
            }
            g
        },
    );
    entry("nondia", obj, vec![-1.0; n], Some(0.0), Some(vec![1.0; n]))
}

fn beale() -> ProblemEntry {
    let obj = FnObjective::new(
        "beale",
        2,
        |x| {
            let (a, b) = (x[0], x[1]);
            (1.5 - a * (1.0 - b)).powi(2)
                + (2.25 - a * (1.0 - b * b)).powi(2)
                + (2.625 - a * (1.0 - b * b * b)).powi(2)
        },
        |x| {
            let (a, b) = (x[0], x[1]);
            let r1 = 1.5 - a * (1.0 - b);
            let r2 = 2.25 - a * (1.0 - b * b);
            let r3 = 2.625 - a * (1.0 - b * b * b);
            vec![
                -2.0 * (r1 * (1.0 - b) + r2 * (1.0 - b * b) + r3 * (1.0 - b * b * b)),
                2.0 * a * (r1 + 2.0 * b * r2 + 3.0 * b * b * r3),
            ]
        },
    );
    entry("beale", obj, vec![1.0, 1.0], Some(0.0), Some(vec![3.0, 0.5]))
}

fn himmelbg() -> ProblemEntry {
    let obj = FnObjective::new(
        "himmelbg",
        2,
        |x| (2.0 * x[0] * x[0] + 3.0 * x[1] * x[1]) * (-x[0] - x[1]).exp(),
        |x| {
            let e = (-x[0] - x[1]).exp();
            let q = 2.0 * x[0] * x[0] + 3.0 * x[1] * x[1];
            vec![e * (4.0 * x[0] - q), e * (6.0 * x[1] - q)]
        },
    );
    entry("himmelbg", obj, vec![1.5, 1.5], Some(0.0), Some(vec![0.0, 0.0]))
}
