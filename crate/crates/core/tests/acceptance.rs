//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured numbers (run with `--nocapture` to see them).
//!
//! The solver grid (7 methods x 16 problems, traces on) is shared across
//! criteria through a `OnceLock`.

use std::sync::OnceLock;

use cgkit::direction::{BetaBranch, MethodKind, MethodSpec};
use cgkit::linesearch::WolfeParams;
use cgkit::objective::{fd_relative_error, FnObjective};
use cgkit::problems::{self, add_gaussian_noise, denoise_objective, rmse, DenoiseSpec, ImageGray};
use cgkit::solver::{minimize, IterationRecord, SolveReport, SolveStatus, SolverConfig};
use cgkit::Vector;

use proptest::prelude::*;
use proptest::test_runner::{Config as ProptestConfig, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GRID_METHODS: [MethodKind; 7] = [
    MethodKind::Azhs,
    MethodKind::Azhs3,
    MethodKind::Azprp,
    MethodKind::HsPlus,
    MethodKind::PrpPlus,
    MethodKind::DlPlus,
    MethodKind::Hz,
];

struct TracedRun {
    problem: &'static str,
    method: MethodKind,
    n: usize,
    report: SolveReport,
}

fn traced_config(kind: MethodKind) -> SolverConfig {
    SolverConfig {
        collect_trace: true,
        ..SolverConfig::new(MethodSpec::new(kind))
    }
}

fn grid() -> &'static Vec<TracedRun> {
    static GRID: OnceLock<Vec<TracedRun>> = OnceLock::new();
    GRID.get_or_init(|| {
        let mut runs = Vec::new();
        for entry in problems::catalog() {
            for kind in GRID_METHODS {
                let report =
                    minimize(entry.objective.as_ref(), &entry.x0, &traced_config(kind))
                        .expect("benchmark solve must not error");
                runs.push(TracedRun {
                    problem: entry.name,
                    method: kind,
                    n: entry.n(),
                    report,
                });
            }
        }
        runs
    })
}

fn trace(run: &TracedRun) -> &[IterationRecord] {
    run.report.trace.as_deref().unwrap()
}

#[test]
fn criterion_01_heat_reproduction() {
    let entry = problems::by_name("heat").unwrap();
    let config = traced_config(MethodKind::Azhs);
    assert_eq!(config.wolfe.delta, 0.01);
    assert_eq!(config.wolfe.sigma, 0.1);
    let report = minimize(entry.objective.as_ref(), &Vector::zeros(4), &config).unwrap();

    assert_eq!(report.status, SolveStatus::Converged);
    assert!(report.f_final <= 1e-6, "f_final = {}", report.f_final);
    let max_dist = report
        .x_final
        .iter()
        .zip(problems::HEAT_SOLUTION.iter())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max)
        .max(0.0);
    assert!(max_dist <= 1e-2, "max coordinate distance = {max_dist}");
    assert!(report.wall_time < 1.0, "wall_time = {}", report.wall_time);
    println!(
        "acceptance 01 heat reproduction: PASS — f={:.4e}, max|x - x*|={:.2e}, {} iters in {:.4}s",
        report.f_final, max_dist, report.iters, report.wall_time
    );
}

#[test]
fn criterion_02_sufficient_descent() {
    let c = 8.0 / 9.0;
    let mut checked = 0usize;
    let mut problems_seen = std::collections::BTreeSet::new();
    for run in grid()
        .iter()
        .filter(|r| matches!(r.method, MethodKind::Azhs | MethodKind::Azhs3))
    {
        problems_seen.insert(run.problem);
        for rec in trace(run) {
            let bound = if rec.restarted || rec.branch == BetaBranch::SteepestDescent {
                -rec.gnorm_sq * (1.0 - 1e-12)
            } else {
                -c * rec.gnorm_sq + 1e-9 * rec.gnorm_sq
            };
            assert!(
                rec.g_dot_d <= bound,
                "{} {} k={}: g'd = {:e} > bound {:e} (branch {})",
                run.problem,
                run.method,
                rec.k,
                rec.g_dot_d,
                bound,
                rec.branch
            );
            assert!(
                rec.zoutendijk_term.is_finite() && rec.zoutendijk_term >= 0.0,
                "{} {} k={}: bad Zoutendijk term {}",
                run.problem,
                run.method,
                rec.k,
                rec.zoutendijk_term
            );
            checked += 1;
        }
    }
    assert!(problems_seen.len() >= 15);
    println!(
        "acceptance 02 sufficient descent: PASS — {checked} iterations over {} problems, zero violations",
        problems_seen.len()
    );
}

#[test]
fn criterion_03_wolfe_certification() {
    let params = WolfeParams::default();
    let (delta, sigma) = (params.delta, params.sigma);
    let mut steps = 0usize;
    for run in grid() {
        for rec in trace(run) {
            // Re-derive both conditions from first principles.
            let armijo = rec.f_new <= rec.f + delta * rec.alpha * rec.g_dot_d;
            let curvature = rec.gnew_dot_d.abs() <= sigma * rec.g_dot_d.abs();
            assert!(
                armijo && curvature,
                "{} {} k={}: armijo={armijo} curvature={curvature}",
                run.problem,
                run.method,
                rec.k
            );
            // Curvature gap implies d'y > 0 at every accepted step.
            let dty = rec.gnew_dot_d - rec.g_dot_d;
            assert!(
                dty > 0.0,
                "{} {} k={}: d'y = {dty:e}",
                run.problem,
                run.method,
                rec.k
            );
            steps += 1;
        }
    }
    println!("acceptance 03 wolfe certification: PASS — {steps} accepted steps re-verified");
}

#[test]
fn criterion_04_convergence_robustness() {
    let total = problems::catalog().len();
    for kind in GRID_METHODS {
        let converged = grid()
            .iter()
            .filter(|r| r.method == kind && r.report.status == SolveStatus::Converged)
            .count();
        let rate = converged as f64 / total as f64;
        assert!(
            rate >= 0.9,
            "{kind}: converged on {converged}/{total} problems"
        );
        println!("acceptance 04 robustness: {kind} converged on {converged}/{total}");
    }

    for name in ["tridia", "dqdrtic"] {
        let run = grid()
            .iter()
            .find(|r| r.problem == name && r.method == MethodKind::Azhs)
            .unwrap();
        assert_eq!(run.report.status, SolveStatus::Converged, "{name}");
        assert!(
            run.report.iters <= 5 * run.n,
            "{name}: {} iters > 5n = {}",
            run.report.iters,
            5 * run.n
        );
        println!(
            "acceptance 04 robustness: PASS — azhs solved {name} in {} iters (cap {})",
            run.report.iters,
            5 * run.n
        );
    }
}

#[test]
fn criterion_05_gradient_oracle() {
    let mut worst = 0.0f64;
    for (idx, entry) in problems::catalog().iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + idx as u64);
        for point in 0..10 {
            let x = Vector::new(
                (0..entry.n())
                    .map(|_| rng.random_range(-2.0..2.0))
                    .collect(),
            )
            .unwrap();
            let err = fd_relative_error(entry.objective.as_ref(), &x, 1e-6).unwrap();
            assert!(
                err <= 1e-5,
                "{} point {point}: fd relative error {err:e}",
                entry.name
            );
            worst = worst.max(err);
        }
    }
    println!("acceptance 05 gradient oracle: PASS — worst relative error {worst:.2e}");
}

#[test]
fn criterion_06_beta_bound_properties() {
    let mut case1 = 0usize;
    let mut case_a = 0usize;
    for run in grid()
        .iter()
        .filter(|r| matches!(r.method, MethodKind::Azhs | MethodKind::Azhs3))
    {
        for rec in trace(run) {
            let Some(inputs) = rec.beta_inputs else {
                continue;
            };
            match rec.branch {
                // First branch of the two-case formula (and its three-branch
                // middle case): beta never exceeds the bound obtained by
                // dropping the nonnegative mu |g'g_prev| term.
                BetaBranch::AzhsCase1 | BetaBranch::Azhs3CaseB => {
                    let bound = rec.gnorm_sq / inputs.dty
                        - inputs.mu * inputs.g_dot_sprev / (inputs.alpha_prev * inputs.dty);
                    assert!(
                        rec.beta <= bound + 1e-12 * bound.abs().max(1.0),
                        "{} {} k={}: beta {:e} above bound {:e}",
                        run.problem,
                        run.method,
                        rec.k,
                        rec.beta,
                        bound
                    );
                    case1 += 1;
                }
                // Three-branch first case is capped by Hestenes-Stiefel.
                BetaBranch::Azhs3CaseA => {
                    let beta_hs = (rec.gnorm_sq - inputs.g_dot_gprev) / inputs.dty;
                    assert!(
                        rec.beta <= beta_hs + 1e-12 * beta_hs.abs().max(1.0),
                        "{} {} k={}: beta {:e} above HS {:e}",
                        run.problem,
                        run.method,
                        rec.k,
                        rec.beta,
                        beta_hs
                    );
                    case_a += 1;
                }
                _ => {}
            }
        }
    }
    assert!(case1 > 0 && case_a > 0, "branches never fired: {case1}, {case_a}");
    println!(
        "acceptance 06 beta bounds: PASS — {case1} case-1 and {case_a} case-A firings checked"
    );
}

#[test]
fn criterion_07_step_lower_bound() {
    // f = x'Qx/2 with Q = diag(1, 10): the gradient is 10-Lipschitz.
    let lipschitz = 10.0;
    let sigma = WolfeParams::default().sigma;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut steps = 0usize;
    for _ in 0..100 {
        let obj = FnObjective::new(
            "diag-quadratic",
            2,
            |x| 0.5 * (x[0] * x[0] + 10.0 * x[1] * x[1]),
            |x| vec![x[0], 10.0 * x[1]],
        );
        let x0 = Vector::new(vec![
            rng.random_range(-5.0..5.0),
            rng.random_range(-5.0..5.0),
        ])
        .unwrap();
        let report = minimize(&obj, &x0, &traced_config(MethodKind::Azhs)).unwrap();
        assert_eq!(report.status, SolveStatus::Converged);
        for rec in report.trace.as_deref().unwrap() {
            let floor = (1.0 - sigma) * rec.g_dot_d.abs() / (lipschitz * rec.dnorm_sq);
            assert!(
                rec.alpha >= floor * (1.0 - 1e-9),
                "k={}: alpha {:e} below floor {:e}",
                rec.k,
                rec.alpha,
                floor
            );
            steps += 1;
        }
    }
    println!("acceptance 07 step lower bound: PASS — {steps} steps over 100 starts");
}

#[test]
fn criterion_08_profile_oracle() {
    use cgkit::bench::{profile, ProfileMetric, RunRecord, RunStatus};

    let record = |problem: &str, method: &str, iters: u64, ok: bool| RunRecord {
        problem: problem.to_string(),
        method: method.to_string(),
        status: if ok {
            RunStatus::Converged
        } else {
            RunStatus::IterationCap
        },
        iters,
        fevals: iters,
        gevals: iters,
        wall_time: 0.0,
        f_final: 0.0,
        gnorm_final: 0.0,
    };

    // Hand-computed oracle for the 2x2 cost matrix [[2,1],[3,6]].
    let records = vec![
        record("p1", "s1", 2, true),
        record("p1", "s2", 1, true),
        record("p2", "s1", 3, true),
        record("p2", "s2", 6, true),
    ];
    let table = profile(&records, ProfileMetric::Iters).unwrap();
    assert_eq!(table.ratios, vec![vec![2.0, 1.0], vec![1.0, 2.0]]);
    assert_eq!(table.p(0, 1.0), 0.5);
    assert_eq!(table.p(0, 2.0), 1.0);
    assert_eq!(table.p(1, 1.0), 0.5);
    assert_eq!(table.p(1, 2.0), 1.0);

    // 1000 random cost matrices: P_s within [0,1], nondecreasing, and
    // constant between consecutive breakpoints (right-continuity).
    let mut runner = TestRunner::new(ProptestConfig {
        cases: 1000,
        failure_persistence: None,
        ..ProptestConfig::default()
    });
    let strategy = prop::collection::vec(
        prop::collection::vec(prop::option::weighted(0.85, 1u64..1000), 2..5),
        2..7,
    );
    runner
        .run(&strategy, |costs| {
            let n_solvers = costs[0].len();
            let mut records = Vec::new();
            for (p, row) in costs.iter().enumerate() {
                for (s, cell) in row.iter().enumerate().take(n_solvers) {
                    match cell {
                        Some(c) => records.push(record(&format!("p{p}"), &format!("s{s}"), *c, true)),
                        None => records.push(record(&format!("p{p}"), &format!("s{s}"), 1, false)),
                    }
                }
            }
            let table = match profile(&records, ProfileMetric::Iters) {
                Ok(t) => t,
                Err(_) => return Ok(()), // every problem failed: legitimately empty
            };
            let points = table.breakpoints();
            for s in 0..table.solvers.len() {
                let mut last = 0.0;
                for (i, t) in points.iter().enumerate() {
                    let v = table.p(s, *t);
                    prop_assert!((0.0..=1.0).contains(&v));
                    prop_assert!(v >= last);
                    last = v;
                    if i + 1 < points.len() {
                        let mid = 0.5 * (t + points[i + 1]);
                        prop_assert_eq!(table.p(s, mid), v);
                    }
                }
            }
            Ok(())
        })
        .unwrap();

    println!("acceptance 08 profile oracle: PASS — hand table exact, 1000 random tables clean");
}

#[test]
fn criterion_09_denoising() {
    // 64x64 piecewise-constant truth, 25% Gaussian noise, fixed seed.
    let truth = ImageGray::new(
        64,
        64,
        (0..64 * 64)
            .map(|i| {
                let (r, c) = (i / 64, i % 64);
                if (r / 16 + c / 16) % 2 == 0 {
                    0.2
                } else {
                    0.8
                }
            })
            .collect(),
    )
    .unwrap();
    let noisy = add_gaussian_noise(&truth, 0.25, 42).unwrap();
    let rmse_noisy = rmse(&truth, &noisy).unwrap();

    let spec = DenoiseSpec::new(noisy.clone(), 0.08, 1e-3).unwrap();
    let obj = denoise_objective(&spec);
    let config = SolverConfig {
        step_rtol: Some(1e-3),
        ..SolverConfig::new(MethodSpec::new(MethodKind::Azhs))
    };
    let report = minimize(&obj, &noisy.to_vector(), &config).unwrap();
    assert_eq!(report.status, SolveStatus::Converged);
    assert!(report.wall_time < 10.0, "wall_time = {}", report.wall_time);

    let restored = ImageGray::from_clamped(64, 64, report.x_final.as_slice()).unwrap();
    let rmse_restored = rmse(&truth, &restored).unwrap();
    assert!(
        rmse_restored <= 0.7 * rmse_noisy,
        "rmse dropped only from {rmse_noisy} to {rmse_restored}"
    );
    println!(
        "acceptance 09 denoising: PASS — rmse {:.4} -> {:.4} ({:.0}% reduction) in {} iters, {:.3}s",
        rmse_noisy,
        rmse_restored,
        100.0 * (1.0 - rmse_restored / rmse_noisy),
        report.iters,
        report.wall_time
    );
}
