use std::f64::consts::{FRAC_PI_2, PI, TAU};

use proptest::prelude::*;

use qrepeater::alphabets::{beats_bound, generic_fidelities, violation, AlphabetMoment};
use qrepeater::linalg::inner_product;
use qrepeater::qubit::{self, bound_residual, ProbeConfig};
use qrepeater::qudit::{self, QuditProbeConfig};
use qrepeater::{Complex, ComplexMatrix, Ket};

fn complex() -> impl Strategy<Value = Complex> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex::new(re, im))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec(complex(), rows * cols)
        .prop_map(move |data| ComplexMatrix::from_row_major(rows, cols, data).unwrap())
}

fn ket(dim: usize) -> impl Strategy<Value = Ket> {
    prop::collection::vec(complex(), dim)
        .prop_filter("non-zero", |v| {
            v.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-6
        })
        .prop_map(|v| Ket::normalized(v).unwrap())
}

/// A mixed state `Σ w_i |ψ_i⟩⟨ψ_i|` with random weights.
fn density(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((0.01..1.0f64, ket(dim)), 1..4).prop_map(move |parts| {
        let total: f64 = parts.iter().map(|(w, _)| w).sum();
        parts
            .iter()
            .fold(ComplexMatrix::zeros(dim, dim), |acc, (w, k)| {
                acc.add(&k.projector().scale(Complex::new(w / total, 0.0)))
                    .unwrap()
            })
    })
}

fn qubit_cfg() -> impl Strategy<Value = ProbeConfig> {
    (0.0..=PI, 0.0..TAU).prop_map(|(t, p)| ProbeConfig::new(t, p).unwrap())
}

fn qudit_cfg() -> impl Strategy<Value = QuditProbeConfig> {
    (2usize..=6, 0.0..=FRAC_PI_2).prop_map(|(d, t)| QuditProbeConfig::new(d, t).unwrap())
}

proptest! {
    #[test]
    fn adjoint_reverses_products(
        (a, b) in (1usize..5, 1usize..5, 1usize..5)
            .prop_flat_map(|(n, m, k)| (matrix(n, m), matrix(m, k)))
    ) {
        let lhs = a.mul(&b).unwrap().adjoint();
        let rhs = b.adjoint().mul(&a.adjoint()).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-12);
    }

    #[test]
    fn partial_trace_preserves_trace(
        (da, db, m) in (1usize..4, 1usize..4)
            .prop_flat_map(|(da, db)| (Just(da), Just(db), matrix(da * db, da * db)))
    ) {
        let reduced = m.partial_trace_second(da, db).unwrap();
        prop_assert_eq!(reduced.rows(), da);
        prop_assert!((reduced.trace() - m.trace()).norm() < 1e-12);
    }

    #[test]
    fn self_inner_product_is_real_and_non_negative(
        v in (1usize..8).prop_flat_map(|n| prop::collection::vec(complex(), n))
    ) {
        let ip = inner_product(&v, &v).unwrap();
        prop_assert!(ip.im.abs() < 1e-15);
        prop_assert!(ip.re >= 0.0);
    }

    #[test]
    fn qubit_outcome_probabilities_sum_to_one(cfg in qubit_cfg(), psi in ket(2)) {
        let outcomes = qubit::build_scheme(cfg).measure(&psi).unwrap();
        let total: f64 = outcomes.iter().map(|o| o.probability).sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn qudit_outcome_probabilities_sum_to_one(
        (cfg, psi) in qudit_cfg().prop_flat_map(|c| (Just(c), ket(c.d())))
    ) {
        let outcomes = qudit::build_scheme_qudit(cfg).measure(&psi).unwrap();
        let total: f64 = outcomes.iter().map(|o| o.probability).sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn state_fidelities_are_probabilities(
        (cfg, psi) in qudit_cfg().prop_flat_map(|c| (Just(c), ket(c.d())))
    ) {
        let p = qudit::build_scheme_qudit(cfg).state_fidelities(&psi).unwrap();
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&p.transmission));
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&p.estimation));
    }

    #[test]
    fn post_state_is_a_density_matrix(cfg in qubit_cfg(), rho in density(2)) {
        let sigma = qubit::build_scheme(cfg).post_state(&rho).unwrap();
        prop_assert!((sigma.trace() - Complex::new(1.0, 0.0)).norm() < 1e-12);
        prop_assert!(sigma.hermiticity_defect() < 1e-12);
    }

    #[test]
    fn qudit_post_state_is_a_density_matrix(
        (cfg, rho) in qudit_cfg().prop_flat_map(|c| (Just(c), density(c.d())))
    ) {
        let sigma = qudit::build_scheme_qudit(cfg).post_state(&rho).unwrap();
        prop_assert!((sigma.trace() - Complex::new(1.0, 0.0)).norm() < 1e-12);
        prop_assert!(sigma.hermiticity_defect() < 1e-12);
    }

    #[test]
    fn qubit_schemes_never_leave_the_allowed_region(cfg in qubit_cfg()) {
        let avg = qubit::build_scheme(cfg).average_fidelities();
        prop_assert!(bound_residual(avg.transmission, avg.estimation) <= 1e-12);
    }

    #[test]
    fn optimal_qubit_schemes_saturate(theta2 in 0.0..=PI) {
        let avg = qubit::build_scheme(ProbeConfig::optimal(theta2).unwrap()).average_fidelities();
        prop_assert!(bound_residual(avg.transmission, avg.estimation).abs() <= 1e-12);
    }

    #[test]
    fn qudit_schemes_saturate(cfg in qudit_cfg()) {
        let avg = qudit::build_scheme_qudit(cfg).average_fidelities();
        prop_assert!(qudit::bound_residual_d(cfg.d(), avg.transmission, avg.estimation).abs() <= 1e-10);
    }

    #[test]
    fn gamma_is_a_weight(d in 2usize..50, theta2 in 0.0..=FRAC_PI_2) {
        let g = qudit::gamma(d, theta2);
        prop_assert!((0.0..=1.0).contains(&g));
    }

    #[test]
    fn beating_the_bound_means_leaving_the_region(m in 0.0..=1.0f64, theta2 in 0.0..=FRAC_PI_2) {
        let moment = AlphabetMoment::new(m).unwrap();
        let p = generic_fidelities(moment, theta2);
        // violation is four times the residual
        let residual = bound_residual(p.transmission, p.estimation);
        prop_assert!((violation(moment, theta2) - 4.0 * residual).abs() < 1e-12);
        if beats_bound(moment, theta2) {
            prop_assert!(residual > 0.0);
        }
        if m <= 1.0 / 3.0 {
            prop_assert!(!beats_bound(moment, theta2));
        }
    }
}
