mod common;

use cohlab::bath::BathSpec;
use cohlab::channel::{
    channel_metrics, cluster_state_density, concurrence_closed, fef_closed, fef_oracle, teleportation_fidelity,
    wootters_concurrence, x_form_density, StateParams, TwoQubitState,
};
use cohlab::codes::bitflip_density;
use cohlab::propagator::{solve_laplace, TimeGrid};
use common::{brute_force_fef, c, element_map_density, Sampler};
use nalgebra::Matrix4;
use num_complex::Complex64;
use proptest::prelude::*;

fn params() -> StateParams {
    StateParams {
        alpha0: c(1.0, 0.0),
        u: c(1.0, 0.0),
        c: 1.0,
        n_bits: 1,
    }
}

fn pure(psi: [Complex64; 4]) -> TwoQubitState {
    let v = nalgebra::Vector4::from(psi);
    TwoQubitState::new(v * v.adjoint(), params()).unwrap()
}

#[test]
fn reference_states() {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let z = c(0.0, 0.0);
    let bell = pure([c(r, 0.0), z, z, c(r, 0.0)]);
    assert!((wootters_concurrence(&bell).unwrap() - 1.0).abs() < 1e-12);
    assert!((fef_oracle(&bell).unwrap() - 1.0).abs() < 1e-12);
    let product = pure([c(1.0, 0.0), z, z, z]);
    assert!(wootters_concurrence(&product).unwrap().abs() < 1e-12);
    let mixed = TwoQubitState::new(Matrix4::identity() * c(0.25, 0.0), params()).unwrap();
    assert!((fef_oracle(&mixed).unwrap() - 0.25).abs() < 1e-14);
    assert!(wootters_concurrence(&mixed).unwrap().abs() < 1e-12);
}

#[test]
fn invalid_matrices_are_rejected() {
    let mut m = Matrix4::identity() * c(0.25, 0.0);
    m[(0, 0)] = c(0.5, 0.0);
    assert!(TwoQubitState::new(m, params()).is_err());
    let mut m = Matrix4::identity() * c(0.25, 0.0);
    m[(0, 1)] = c(0.1, 0.0);
    assert!(TwoQubitState::new(m, params()).is_err());
    let mut m = Matrix4::identity() * c(0.25, 0.0);
    m[(0, 3)] = c(0.4, 0.0);
    m[(3, 0)] = c(0.4, 0.0);
    assert!(TwoQubitState::new(m, params()).is_err());
}

#[test]
fn undamped_closed_forms() {
    let a = c(1.2, 0.0);
    let u = c(1.0, 0.0);
    assert!((concurrence_closed(a, u) - (2.0f64 * 1.44).tanh()).abs() < 1e-14);
    assert!((fef_closed(a, u) - 1.0 / (1.0 + (-5.76f64).exp())).abs() < 1e-14);
    let big = c(6.0, 0.0);
    assert!((fef_closed(big, u) - 1.0).abs() < 1e-14);
    assert!(concurrence_closed(c(1e-4, 0.0), c(0.5, 0.0)) < 1e-7);
    let rho = cluster_state_density(a, u).unwrap();
    let eig = rho.eigenvalues().unwrap();
    assert!((eig.iter().cloned().fold(f64::MIN, f64::max) - 1.0).abs() < 1e-10);
}

#[test]
fn sudden_death_threshold() {
    // C = 0 exactly when c ≤ √2 − 1.
    let a = c(1.2, 0.0);
    let threshold = std::f64::consts::SQRT_2 - 1.0;
    let r_at = |cf: f64| (1.0 + cf.ln() / (2.0 * 1.44)).sqrt();
    let below = x_form_density(a, c(r_at(threshold * 0.99), 0.0), threshold * 0.99).unwrap();
    assert_eq!(wootters_concurrence(&below).unwrap(), 0.0);
    assert_eq!(concurrence_closed(a, c(r_at(threshold * 0.99), 0.0)), 0.0);
    assert!(concurrence_closed(a, c(r_at(threshold * 1.01), 0.0)) > 0.0);
}

#[test]
fn teleportation_limits() {
    assert_eq!(teleportation_fidelity(1.0).unwrap(), 1.0);
    assert!((teleportation_fidelity(0.5).unwrap() - 2.0 / 3.0).abs() < 1e-15);
    assert_eq!(teleportation_fidelity(0.25).unwrap(), 0.5);
    assert!(teleportation_fidelity(1.5).is_err());
}

#[test]
fn element_map_matches_closed_matrix() {
    let mut sampler = Sampler::default();
    for _ in 0..100 {
        let u = sampler.u();
        let a = c(sampler.draw(0.2f64..2.5), 0.0);
        let closed = cluster_state_density(a, u).unwrap();
        let generic = element_map_density(a, u, 1);
        assert!((closed.rho() - generic).norm() < 1e-12, "u={u} α0={a}");
    }
}

#[test]
fn closed_forms_match_oracles_along_trajectories() {
    let a = c(1.2, 0.0);
    for s in [0.5, 1.0, 3.0] {
        for eta0 in [0.01, 0.5] {
            let spec = BathSpec::new(s, eta0, 1.0).unwrap();
            let grid = TimeGrid::log(1e3, 60, 0.01).unwrap();
            let sol = solve_laplace(&spec, 0.1, &grid).unwrap();
            for &u in sol.u() {
                let rho = cluster_state_density(a, u).unwrap();
                let m = channel_metrics(a, u).unwrap();
                assert!((m.concurrence - wootters_concurrence(&rho).unwrap()).abs() < 1e-10);
                assert!((m.f_max - fef_oracle(&rho).unwrap()).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn closed_forms_match_oracles_on_random_inputs() {
    let mut sampler = Sampler::default();
    for _ in 0..100 {
        let u = sampler.u();
        let a = Complex64::from_polar(sampler.draw(0.1f64..3.0), sampler.draw(-3.2f64..3.2));
        let rho = cluster_state_density(a, u).unwrap();
        let m = channel_metrics(a, u).unwrap();
        assert!(
            (m.concurrence - wootters_concurrence(&rho).unwrap()).abs() < 1e-10,
            "u={u} α0={a}"
        );
        assert!((m.f_max - fef_oracle(&rho).unwrap()).abs() < 1e-10, "u={u} α0={a}");
    }
}

#[test]
fn fef_oracle_matches_direct_search() {
    let mut sampler = Sampler::default();
    for k in 0..10 {
        let u = sampler.u();
        let a = c(sampler.draw(0.3f64..2.0), 0.0);
        // Alternate X-form and dense (even-n) states.
        let state = if k % 2 == 0 {
            cluster_state_density(a, u).unwrap()
        } else {
            bitflip_density(2 * (k % 3 + 1), a, u).unwrap()
        };
        let oracle = fef_oracle(&state).unwrap();
        let search = brute_force_fef(state.rho(), 24);
        assert!((oracle - search).abs() < 1e-4, "k={k}: {oracle} vs {search}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn channel_states_are_valid(r in 0.05f64..3.0, ur in 0.0f64..=1.0, phi in -3.2f64..3.2) {
        let a = c(r, 0.0);
        let u = Complex64::from_polar(ur, phi);
        let rho = cluster_state_density(a, u).unwrap();
        prop_assert!((rho.rho().trace() - 1.0).norm() < 1e-12);
        prop_assert!(rho.min_eigenvalue().unwrap() >= -1e-10);
        prop_assert!(rho.x_form_defect() == 0.0);
        let m = channel_metrics(a, u).unwrap();
        prop_assert!((0.0..=1.0).contains(&m.concurrence));
        prop_assert!((0.25..=1.0).contains(&m.f_max));
        prop_assert!((m.fidelity - (2.0 * m.f_max + 1.0) / 3.0).abs() < 1e-15);
    }
}
