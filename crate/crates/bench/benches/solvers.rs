//! Micro-benchmarks: update-parameter formulas, one line search, full
//! solves on representative problems, and a small denoising run.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cgkit::direction::{beta_azhs, beta_hz, DirectionState, MethodKind, MethodSpec};
use cgkit::linesearch::{search, WolfeParams};
use cgkit::objective::FnObjective;
use cgkit::problems::{self, add_gaussian_noise, denoise_objective, DenoiseSpec, ImageGray};
use cgkit::solver::{minimize, SolverConfig};
use cgkit::Vector;

fn state_of_dim(n: usize) -> (Vector, DirectionState) {
    let g = Vector::new((0..n).map(|i| ((i % 7) as f64 - 3.0) / 7.0).collect()).unwrap();
    let g_prev = Vector::new((0..n).map(|i| ((i % 5) as f64 - 2.0) / 5.0).collect()).unwrap();
    let d_prev = g_prev.neg();
    let s_prev = d_prev.scale(0.37);
    let state = DirectionState::new(g_prev, d_prev, s_prev, 0.37, 2).unwrap();
    (g, state)
}

fn bench_beta(c: &mut Criterion) {
    let mut group = c.benchmark_group("beta");
    for n in [100usize, 10_000] {
        let (g, state) = state_of_dim(n);
        group.bench_with_input(BenchmarkId::new("azhs", n), &n, |b, _| {
            b.iter(|| beta_azhs(black_box(&g), black_box(&state)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("hz", n), &n, |b, _| {
            b.iter(|| beta_hz(black_box(&g), black_box(&state), 0.01).unwrap())
        });
    }
    group.finish();
}

fn bench_line_search(c: &mut Criterion) {
    let n = 1000;
    let obj = FnObjective::new(
        "half-norm-sq",
        n,
        |x| 0.5 * x.iter().map(|a| a * a).sum::<f64>(),
        |x| x.to_vec(),
    );
    let x = Vector::filled(n, 1.0).unwrap();
    let g = x.clone();
    let d = g.neg();
    let f0 = 0.5 * n as f64;
    let params = WolfeParams::default();
    c.bench_function("line_search/quadratic_1000", |b| {
        b.iter(|| {
            search(
                black_box(&obj),
                black_box(&x),
                f0,
                black_box(&g),
                black_box(&d),
                0.5,
                &params,
            )
            .unwrap()
        })
    });
}

fn bench_solves(c: &mut Criterion) {
    let mut group = c.benchmark_group("minimize");
    group.sample_size(20);
    for problem in ["rosenbr", "tridia", "heat"] {
        let entry = problems::by_name(problem).unwrap();
        for kind in [MethodKind::Azhs, MethodKind::HsPlus] {
            let config = SolverConfig::new(MethodSpec::new(kind));
            group.bench_with_input(
                BenchmarkId::new(problem, kind),
                &entry,
                |b, entry| {
                    b.iter(|| {
                        minimize(black_box(entry.objective.as_ref()), &entry.x0, &config).unwrap()
                    })
                },
            );
        }
    }
    group.finish();
}

fn bench_denoise(c: &mut Criterion) {
    let truth = ImageGray::new(
        32,
        32,
        (0..32 * 32)
            .map(|i| {
                let (r, col) = (i / 32, i % 32);
                if (r / 8 + col / 8) % 2 == 0 {
                    0.2
                } else {
                    0.8
                }
            })
            .collect(),
    )
    .unwrap();
    let noisy = add_gaussian_noise(&truth, 0.25, 42).unwrap();
    let spec = DenoiseSpec::new(noisy.clone(), 0.08, 1e-3).unwrap();
    let obj = denoise_objective(&spec);
    let config = SolverConfig {
        step_rtol: Some(1e-3),
        ..SolverConfig::new(MethodSpec::new(MethodKind::Azhs))
    };
    let x0 = noisy.to_vector();
    let mut group = c.benchmark_group("denoise");
    group.sample_size(20);
    group.bench_function("azhs_32x32", |b| {
        b.iter(|| minimize(black_box(&obj), &x0, &config).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_beta, bench_line_search, bench_solves, bench_denoise);
criterion_main!(benches);
