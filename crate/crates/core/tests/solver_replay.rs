//! Replays the iteration `x_{k+1} = x_k + alpha_k d_k` from the public
//! building blocks and checks the solver produces bit-identical iterates:
//! no hidden modification of `x` is possible without this test noticing.

use cgkit::direction::{direction, DirectionState, MethodKind, MethodSpec, SafeguardParams};
use cgkit::linesearch::search;
use cgkit::problems;
use cgkit::solver::{initial_alpha, minimize, SolveStatus, SolverConfig};
use cgkit::Vector;

fn replay_matches(problem: &str, kind: MethodKind) {
    let entry = problems::by_name(problem).unwrap();
    let config = SolverConfig::new(MethodSpec::new(kind));
    let report = minimize(entry.objective.as_ref(), &entry.x0, &config).unwrap();
    assert_eq!(report.status, SolveStatus::Converged);

    let obj = entry.objective.as_ref();
    let safeguard = SafeguardParams::default();
    let mut x = entry.x0.clone();
    let mut f = obj.eval(x.as_slice());
    let mut g = Vector::new(obj.grad(x.as_slice())).unwrap();
    let mut state: Option<DirectionState> = None;
    let mut prev_scale: Option<(f64, f64)> = None;
    let mut iters = 0usize;
    let mut k = 1usize;

    while g.norm_inf() > config.gtol {
        let (d, _) = direction(&g, state.as_ref(), &config.method, &safeguard).unwrap();
        let slope0 = g.dot(&d).unwrap();
        let alpha_init = initial_alpha(k, &g, &d, prev_scale, config.wolfe.alpha_max).unwrap();
        let ls = search(obj, &x, f, &g, &d, alpha_init, &config.wolfe).unwrap();

        let s = d.scale(ls.alpha);
        x = x.axpy(ls.alpha, &d).unwrap();
        prev_scale = Some((ls.alpha, slope0));
        state = Some(DirectionState::new(g, d, s, ls.alpha, k + 1).unwrap());
        f = ls.f_new;
        g = ls.g_new;
        iters += 1;
        k += 1;
        assert!(iters <= config.max_iter, "replay diverged from solver");
    }

    assert_eq!(iters, report.iters, "{problem}/{kind}: iteration counts differ");
    assert_eq!(
        f.to_bits(),
        report.f_final.to_bits(),
        "{problem}/{kind}: f_final differs"
    );
    for (i, (a, b)) in x.iter().zip(report.x_final.iter()).enumerate() {
        assert_eq!(
            a.to_bits(),
            b.to_bits(),
            "{problem}/{kind}: x_final[{i}] differs: {a} vs {b}"
        );
    }
}

#[test]
fn iterates_are_exactly_x_plus_alpha_d() {
    replay_matches("rosenbr", MethodKind::Azhs);
    replay_matches("heat", MethodKind::Azhs);
    replay_matches("beale", MethodKind::Azhs3);
    replay_matches("woods", MethodKind::HsPlus);
}
