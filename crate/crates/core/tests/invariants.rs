use bellbeat::{
    bell_fidelity, bell_limit_probabilities, build_hamiltonian, concurrence, diagonalize,
    evolve, expand_initial_state, basis_probabilities, shannon_entropy, HamiltonianParams, TwoQubitState,
};
use num_complex::Complex64 as C64;
use proptest::prelude::*;

fn params() -> impl Strategy<Value = HamiltonianParams> {
    (-1.0f64..1.0, 0.01f64..1.0, -10.0f64..10.0).prop_map(|(e, d, u)| HamiltonianParams::new(e, d, u).unwrap())
}

fn state() -> impl Strategy<Value = TwoQubitState> {
    prop::array::uniform4((-1.0f64..1.0, -1.0f64..1.0))
        .prop_filter("nonzero", |a| a.iter().map(|(x, y)| x * x + y * y).sum::<f64>() > 1e-3)
        .prop_map(|a| TwoQubitState::normalized(a.map(|(x, y)| C64::new(x, y))).unwrap())
}

fn real_state() -> impl Strategy<Value = TwoQubitState> {
    prop::array::uniform4(-1.0f64..1.0)
        .prop_filter("nonzero", |a| a.iter().map(|x| x * x).sum::<f64>() > 1e-3)
        .prop_map(|a| TwoQubitState::normalized(a.map(|x| C64::new(x, 0.0))).unwrap())
}

fn observables(psi: &TwoQubitState, p: &HamiltonianParams, t: f64) -> (f64, f64, [f64; 4]) {
    let es = diagonalize(&build_hamiltonian(p)).unwrap();
    let s = evolve(&expand_initial_state(psi, &es), &es, t);
    let probs = basis_probabilities(&s);
    (shannon_entropy(&probs).bits(), concurrence(&s).value(), probs.as_array())
}

proptest! {
    #[test]
    fn gaps_match(p in params()) {
        let es = diagonalize(&build_hamiltonian(&p)).unwrap();
        prop_assert!((es.gap(2, 3) - es.gap(0, 1)).abs() <= 1e-12 * es.gap(0, 3));
    }

    #[test]
    fn offset_does_not_change_observables(p in params(), shift in -5.0f64..5.0, psi in state(), t in 0.0f64..1e-13) {
        let q = HamiltonianParams::new(p.epsilon0() + shift, p.delta(), p.u()).unwrap();
        let (s1, c1, p1) = observables(&psi, &p, t);
        let (s2, c2, p2) = observables(&psi, &q, t);
        prop_assert!((s1 - s2).abs() < 1e-9);
        prop_assert!((c1 - c2).abs() < 1e-9);
        for (a, b) in p1.iter().zip(&p2) {
            prop_assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn global_phase_is_invisible(p in params(), psi in state(), phi in 0.0f64..6.3, t in 0.0f64..1e-13) {
        let (s1, c1, p1) = observables(&psi, &p, t);
        let (s2, c2, p2) = observables(&psi.with_global_phase(phi), &p, t);
        prop_assert!((s1 - s2).abs() < 1e-12);
        prop_assert!((c1 - c2).abs() < 1e-12);
        for (a, b) in p1.iter().zip(&p2) {
            prop_assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn evolution_is_unitary(p in params(), psi in state(), t in 0.0f64..1e-12) {
        let es = diagonalize(&build_hamiltonian(&p)).unwrap();
        let s = evolve(&expand_initial_state(&psi, &es), &es, t);
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
        let (h, c, _) = observables(&psi, &p, t);
        prop_assert!((-1e-12..=2.0 + 1e-12).contains(&h));
        prop_assert!((0.0..=1.0 + 1e-12).contains(&c));
    }

    #[test]
    fn bell_limit_probabilities_converge(ratio in 10.0f64..100.0, psi in real_state(), t in 0.0f64..1e-11) {
        let p = HamiltonianParams::new(0.0, 1e-3, ratio * 1e-3).unwrap();
        let es = diagonalize(&build_hamiltonian(&p)).unwrap();
        let c = expand_initial_state(&psi, &es);
        let exact = basis_probabilities(&evolve(&c, &es, t));
        let analytic = bell_limit_probabilities(&c, &es, t);
        // the eigenvectors mix Ψ and Φ at first order in Δ/U
        let bound = 1.0 / ratio;
        prop_assert!(exact.max_abs_diff(&analytic) <= bound, "diff {} bound {}", exact.max_abs_diff(&analytic), bound);
    }

    #[test]
    fn outer_fidelities_grow_with_ratio(a in 0.0f64..50.0, b in 0.0f64..50.0) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let f = |r: f64| bell_fidelity(&diagonalize(&build_hamiltonian(&HamiltonianParams::new(0.0, 1.0, r).unwrap())).unwrap());
        let (fl, fh) = (f(lo), f(hi));
        prop_assert!(fh[0] >= fl[0] - 1e-12);
        prop_assert!(fh[3] >= fl[3] - 1e-12);
    }
}
