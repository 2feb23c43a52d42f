//! Independent oracles shared by the integration tests and the acceptance
//! run. Nothing here calls the closed forms it is used to check.

#![allow(dead_code)]

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Channel state built term by term from the `n`-mode element map
/// `|α⟩⟨β|^{⊗n} → e^{−n(1−|u|²)(|α|²+|β|²−2αβ*)/2} |αu⟩⟨βu|^{⊗n}`, applied
/// to both logical qubits, then expressed in the even/odd basis of
/// `(α0 u)^{⊗n}` where `|±α_t⟩^{⊗n} = aₙ|e⟩ ± bₙ|o⟩`.
///
/// Initial coefficients over `(±, ±)`: `1, −zⁿ, −zⁿ, −z^{2n}` with `z = −i`.
pub fn element_map_density(alpha0: Complex64, u: Complex64, n: usize) -> Matrix4<Complex64> {
    let z = c(0.0, -1.0);
    let zn = z.powu(n as u32);
    let coef = [
        ((1.0, 1.0), c(1.0, 0.0)),
        ((1.0, -1.0), -zn),
        ((-1.0, 1.0), -zn),
        ((-1.0, -1.0), -zn * zn),
    ];
    let x = (-2.0 * n as f64 * (alpha0 * u).norm_sqr()).exp();
    let (an, bn) = (((1.0 + x) / 2.0).sqrt(), ((1.0 - x) / 2.0).sqrt());
    let single = |sign: f64| [c(an, 0.0), c(sign * bn, 0.0)];
    let ket = |s1: f64, s2: f64| {
        let (p, q) = (single(s1), single(s2));
        Vector4::new(p[0] * q[0], p[0] * q[1], p[1] * q[0], p[1] * q[1])
    };
    let loss = 1.0 - u.norm_sqr();
    let mut rho = Matrix4::<Complex64>::zeros();
    for &((a1, a2), ca) in &coef {
        for &((b1, b2), cb) in &coef {
            let (al, alp, be, bep) = (alpha0 * a1, alpha0 * a2, alpha0 * b1, alpha0 * b2);
            let exponent = al.norm_sqr() + alp.norm_sqr() + be.norm_sqr() + bep.norm_sqr()
                - 2.0 * (al * be.conj() + alp * bep.conj());
            let mult = (-(n as f64) * loss / 2.0 * exponent).exp();
            rho += ket(a1, a2) * ket(b1, b2).adjoint() * (ca * cb.conj() * mult);
        }
    }
    let tr = rho.trace();
    rho / tr
}

/// `(I ⊗ U)|Φ⁺⟩` for `U ∈ SU(2)` with Euler-type angles.
fn max_entangled(theta: f64, p1: f64, p2: f64) -> Vector4<Complex64> {
    let (ct, st) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let u = [
        [Complex64::from_polar(ct, p1), -Complex64::from_polar(st, p2)],
        [Complex64::from_polar(st, -p2), Complex64::from_polar(ct, -p1)],
    ];
    let r = std::f64::consts::FRAC_1_SQRT_2;
    // component (k, j) = U[j][k]/√2
    Vector4::new(u[0][0] * r, u[1][0] * r, u[0][1] * r, u[1][1] * r)
}

fn overlap_with(rho: &Matrix4<Complex64>, x: [f64; 3]) -> f64 {
    let psi = max_entangled(x[0], x[1], x[2]);
    (psi.adjoint() * rho * psi)[(0, 0)].re
}

/// Direct search for `max ⟨ψ|ρ|ψ⟩` over maximally entangled `ψ`: a
/// `steps³` grid over `SU(2)` followed by compass search from the best few
/// grid points.
pub fn brute_force_fef(rho: &Matrix4<Complex64>, steps: usize) -> f64 {
    use std::f64::consts::PI;
    let mut samples = Vec::with_capacity(steps.pow(3));
    for i in 0..steps {
        let theta = PI * (i as f64 + 0.5) / steps as f64;
        for j in 0..steps {
            let p1 = 2.0 * PI * j as f64 / steps as f64;
            for k in 0..steps {
                let p2 = 2.0 * PI * k as f64 / steps as f64;
                let x = [theta, p1, p2];
                samples.push((overlap_with(rho, x), x));
            }
        }
    }
    samples.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut best = samples[0].0;
    for &(mut value, mut x) in samples.iter().take(4) {
        let mut step = PI / steps as f64;
        while step > 1e-9 {
            let mut improved = false;
            for d in 0..3 {
                for sign in [1.0, -1.0] {
                    let mut y = x;
                    y[d] += sign * step;
                    let v = overlap_with(rho, y);
                    if v > value {
                        value = v;
                        x = y;
                        improved = true;
                    }
                }
            }
            if !improved {
                step /= 2.0;
            }
        }
        best = best.max(value);
    }
    best
}

/// `∫₀^∞ J(ω) e^{−iωt} dω/2π` by double-exponential quadrature on unit
/// panels up to `ω = 80 ωc`.
pub fn correlation_by_quadrature(s: f64, eta0: f64, omega_c: f64, t: f64) -> Complex64 {
    use quadrature::double_exponential::integrate;
    let eta_s = eta0 * (std::f64::consts::E / s).powf(s);
    // J(ω)/2π = ηs ω (ω/ωc)^{s−1} e^{−ω/ωc}; substitute ω = ωc y.
    let j = |y: f64| eta_s * omega_c * omega_c * y.powf(s) * (-y).exp();
    let mut re = 0.0;
    let mut im = 0.0;
    for k in 0..80 {
        let (a, b) = (k as f64, k as f64 + 1.0);
        re += integrate(|y| j(y) * (y * omega_c * t).cos(), a, b, 1e-16).integral;
        im -= integrate(|y| j(y) * (y * omega_c * t).sin(), a, b, 1e-16).integral;
    }
    c(re, im)
}

/// Deterministic sampler for loops that need plain random inputs.
pub struct Sampler {
    runner: TestRunner,
}

impl Default for Sampler {
    fn default() -> Self {
        Self {
            runner: TestRunner::deterministic(),
        }
    }
}

impl Sampler {
    pub fn draw<S: Strategy>(&mut self, strategy: S) -> S::Value {
        strategy
            .new_tree(&mut self.runner)
            .expect("strategy without filters")
            .current()
    }

    /// Propagator value in the closed unit disk.
    pub fn u(&mut self) -> Complex64 {
        let r = self.draw(0.0..=1.0f64);
        let phi = self.draw(-3.2..3.2f64);
        Complex64::from_polar(r, phi)
    }
}
