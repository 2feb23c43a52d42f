mod common;

use cohlab::qubit::{
    coherence_factor, evolve_cat, evolve_element, operator_sum, overlap, phase_error_prob, CatState, CoherentElement,
};
use common::c;
use nalgebra::Matrix2;
use num_complex::Complex64;
use proptest::prelude::*;

fn unit_disk() -> impl Strategy<Value = Complex64> {
    (0.0f64..=1.0, -3.2f64..3.2).prop_map(|(r, phi)| Complex64::from_polar(r, phi))
}

fn cat() -> impl Strategy<Value = CatState> {
    (0.0f64..1.0, -3.2f64..3.2, -3.2f64..3.2, 0.3f64..2.5, -3.2f64..3.2).prop_map(|(w, p1, p2, r, phi)| {
        let c1 = Complex64::from_polar(w.sqrt(), p1);
        let c2 = Complex64::from_polar((1.0 - w).sqrt(), p2);
        CatState::new(c1, c2, Complex64::from_polar(r, phi)).unwrap()
    })
}

/// Even/odd matrix of the damped cat built only from coherent overlaps:
/// `⟨k|β⟩ = (⟨α_t|β⟩ ± ⟨−α_t|β⟩)/√(2(1 ± e^{−2|α_t|²}))`.
fn projected(state: &CatState, u: Complex64) -> Matrix2<Complex64> {
    let damped = evolve_cat(state, u);
    let at = damped.alpha_t;
    let x = (-2.0 * at.norm_sqr()).exp();
    let proj = |even: bool, beta: Complex64| {
        let sign = if even { 1.0 } else { -1.0 };
        (overlap(at, beta) + sign * overlap(-at, beta)) / (2.0 * (1.0 + sign * x)).sqrt()
    };
    let amps = [at, -at];
    let mut m = Matrix2::zeros();
    for (r, er) in [true, false].into_iter().enumerate() {
        for (s, es) in [true, false].into_iter().enumerate() {
            for i in 0..2 {
                for j in 0..2 {
                    m[(r, s)] += damped.coeffs[(i, j)] * proj(er, amps[i]) * proj(es, amps[j]).conj();
                }
            }
        }
    }
    m
}

#[test]
fn spec_values() {
    let e = evolve_element(
        CoherentElement::new(c(1.0, 0.0), c(1.2, 0.0), c(-1.2, 0.0)),
        c(0.5, 0.0),
    );
    assert!((e.prefactor.norm() - (-2.16f64).exp()).abs() < 1e-15);
    assert!((phase_error_prob(c(1.2, 0.0), c(0.0, 0.0)) - 0.4719326185829331).abs() < 1e-15);
    assert!((phase_error_prob(c(1.2, 0.0), c(0.5, 0.0)) - 0.44233743948096876).abs() < 1e-15);
    assert_eq!(phase_error_prob(c(1.2, 0.0), c(1.0, 0.0)), 0.0);
}

#[test]
fn undamped_cat_stays_pure() {
    let state = CatState::new(c(0.6, 0.0), c(0.0, 0.8), c(1.2, 0.0)).unwrap();
    let rho = evolve_cat(&state, c(1.0, 0.0)).even_odd();
    assert!((rho.trace() - 1.0).norm() < 1e-14);
    assert!(((rho * rho).trace() - 1.0).norm() < 1e-14);
}

#[test]
fn single_coherent_state_has_one_term() {
    let state = CatState::new(c(1.0, 0.0), c(0.0, 0.0), c(1.2, 0.3)).unwrap();
    let d = evolve_cat(&state, c(0.4, 0.2));
    assert!((d.coeffs[(0, 0)] - 1.0).norm() < 1e-14);
    for (i, j) in [(0, 1), (1, 0), (1, 1)] {
        assert_eq!(d.coeffs[(i, j)], c(0.0, 0.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn operator_sum_equals_element_map(state in cat(), u in unit_disk()) {
        prop_assume!((state.alpha0() * u).norm() > 1e-3);
        let direct = evolve_cat(&state, u).even_odd();
        let os = operator_sum(&state, u);
        prop_assert!((direct - os).norm() < 1e-12, "{direct} vs {os}");
        let proj = projected(&state, u);
        prop_assert!((direct - proj).norm() < 1e-12);
    }

    #[test]
    fn evolution_preserves_trace_and_hermiticity(state in cat(), u in unit_disk()) {
        prop_assume!((state.alpha0() * u).norm() > 1e-3);
        let rho = evolve_cat(&state, u).even_odd();
        prop_assert!((rho.trace() - 1.0).norm() < 1e-12);
        prop_assert!((rho - rho.adjoint()).norm() < 1e-12);
        prop_assert!(rho[(0, 0)].re >= -1e-12 && rho[(1, 1)].re >= -1e-12);
    }

    #[test]
    fn diagonal_elements_keep_their_weight(a in unit_disk(), u in unit_disk()) {
        let e = evolve_element(CoherentElement::new(c(1.0, 0.0), a * 2.0, a * 2.0), u);
        prop_assert!((e.prefactor - 1.0).norm() < 1e-14);
        prop_assert!((e.trace() - 1.0).norm() < 1e-12);
    }

    #[test]
    fn coherence_factor_is_one_minus_twice_p_e(r in 0.0f64..3.0, u in unit_disk()) {
        let a = c(r, 0.0);
        let cf = coherence_factor(a, u);
        prop_assert!((cf - (1.0 - 2.0 * phase_error_prob(a, u))).abs() < 1e-14);
        prop_assert!((0.0..0.5).contains(&phase_error_prob(a, u)));
    }
}
