//! Weak-coupling (Markov) approximation
//! `u(t) ≈ exp[−(iω0' + J(ω0)/2) t]` with the Lamb-shifted frequency
//! `ω0' = ω0 − PV∫₀^∞ dω/2π J(ω)/(ω − ω0)`.

use num_complex::Complex64;

use crate::bath::{generic_pv_shift, spectral_density, BathSpec};
use crate::error::{Error, Result};
use crate::quad::{self, QuadOptions};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftedFrequency {
    pub omega0: f64,
    /// Renormalized frequency `ω0'`.
    pub omega0_prime: f64,
    /// Estimated error of the principal value, in units of `ω`.
    pub error: f64,
}

impl ShiftedFrequency {
    pub fn shift(&self) -> f64 {
        self.omega0_prime - self.omega0
    }
}

/// Lamb shift by symmetric excision: the principal value is the limit of
/// the integral with `(ω0 − ε, ω0 + ε)` removed. The excised integrals are
/// odd in `ε`, so successive halving of `ε` is Richardson-extrapolated in
/// odd powers.
pub fn lamb_shift(spec: &BathSpec, omega0: f64) -> Result<ShiftedFrequency> {
    let w0 = reduced_positive(spec, omega0)?;
    let s = spec.s();
    let f = |y: f64| {
        if y <= 0.0 {
            0.0
        } else {
            (s * y.ln() - y).exp() / (y - w0)
        }
    };
    let opts = QuadOptions {
        abs_tol: 1e-14,
        rel_tol: 1e-13,
        max_panels: 8000,
    };
    let excised = |eps: f64| -> Result<f64> {
        let below = quad::integrate(f, 0.0, w0 - eps, opts)?.value;
        let above_near = quad::integrate(f, w0 + eps, 2.0 * w0 + 1.0, opts)?.value;
        let above_far = quad::integrate_to_infinity(f, 2.0 * w0 + 1.0, opts)?.value;
        Ok(below + above_near + above_far)
    };

    const LEVELS: usize = 8;
    let eps0 = 0.5 * w0.min(1.0);
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(LEVELS);
    let mut change = f64::INFINITY;
    for k in 0..LEVELS {
        let mut row = vec![excised(eps0 / (1u64 << k) as f64)?];
        for j in 1..=k {
            let factor = 2f64.powi(2 * j as i32 - 1);
            let v = (factor * row[j - 1] - table[k - 1][j - 1]) / (factor - 1.0);
            row.push(v);
        }
        if k > 0 {
            change = (row[k] - table[k - 1][k - 1]).abs();
        }
        let done = k >= 3 && change <= 1e-10 * row[k].abs().max(1.0);
        table.push(row);
        if done {
            break;
        }
    }
    let pv = *table.last().unwrap().last().unwrap();
    if !(change <= 1e-7 * pv.abs().max(1.0)) {
        return Err(Error::NonConvergence {
            what: "Lamb-shift excision extrapolation",
            achieved: change,
            target: 1e-7,
        });
    }
    let shift = spec.eta_s() * pv * spec.omega_c();
    Ok(ShiftedFrequency {
        omega0,
        omega0_prime: omega0 - shift,
        error: spec.eta_s() * change * spec.omega_c(),
    })
}

/// Same shift by singularity subtraction; an independent cross-check of
/// [`lamb_shift`].
pub fn lamb_shift_subtracted(spec: &BathSpec, omega0: f64) -> Result<ShiftedFrequency> {
    let w0 = reduced_positive(spec, omega0)?;
    let shift = spec.eta_s() * generic_pv_shift(spec.s(), w0)? * spec.omega_c();
    Ok(ShiftedFrequency {
        omega0,
        omega0_prime: omega0 - shift,
        error: 0.0,
    })
}

fn reduced_positive(spec: &BathSpec, omega0: f64) -> Result<f64> {
    if !(omega0 > 0.0 && omega0.is_finite()) {
        return Err(Error::Domain {
            func: "lamb_shift",
            arg: format!("{omega0}"),
            reason: "omega0 must lie inside the bath band (omega0 > 0)",
        });
    }
    Ok(omega0 / spec.omega_c())
}

/// Markov propagator at time `t`.
pub fn markov_u(spec: &BathSpec, omega0: f64, t: f64) -> Result<Complex64> {
    let shifted = lamb_shift(spec, omega0)?;
    let rate = spectral_density(spec, omega0)?;
    Ok(Complex64::new(-0.5 * rate * t, -shifted.omega0_prime * t).exp())
}
