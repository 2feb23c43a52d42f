//! Spectral density family, bath correlation function and the
//! frequency-domain self-energy that enters the Laplace inversion.
//!
//! Frequencies are nondimensionalized by the cutoff `ωc` internally; the
//! public functions take and return physical units unless stated.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::{self, QuadOptions};
use crate::specfun::{dawson, ei_signed, gamma_real};

/// Power-law spectral density with exponential cutoff,
/// `J(ω) = 2π ηs ω (ω/ωc)^{s-1} e^{-ω/ωc}` with `ηs = η0 (e/s)^s`.
///
/// The scaling of `ηs` pins the peak height to `2π η0 ωc` for every `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathSpec {
    s: f64,
    eta0: f64,
    omega_c: f64,
}

impl BathSpec {
    pub fn new(s: f64, eta0: f64, omega_c: f64) -> Result<Self> {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::InvalidParameter(format!("s must be > 0, got {s}")));
        }
        if !(eta0 >= 0.0 && eta0.is_finite()) {
            return Err(Error::InvalidParameter(format!("eta0 must be >= 0, got {eta0}")));
        }
        if !(omega_c > 0.0 && omega_c.is_finite()) {
            return Err(Error::InvalidParameter(format!("omega_c must be > 0, got {omega_c}")));
        }
        Ok(Self { s, eta0, omega_c })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn eta0(&self) -> f64 {
        self.eta0
    }

    pub fn omega_c(&self) -> f64 {
        self.omega_c
    }

    /// Scaled coupling `ηs = η0 (e/s)^s`.
    pub fn eta_s(&self) -> f64 {
        self.eta0 * (std::f64::consts::E / self.s).powf(self.s)
    }

    /// `J(ω)` with the raw coupling (`ηs = η0`), for comparison plots only.
    pub fn spectral_density_unscaled(&self, omega: f64) -> Result<f64> {
        check_frequency(omega)?;
        let x = omega / self.omega_c;
        Ok(self.omega_c * 2.0 * PI * self.eta0 * scaled_power(x, self.s))
    }

    /// Frequency `ωc ∫ y^{s-1} e^{-y} ηs dy = ηs ωc Γ(s)`; a localized mode
    /// exists iff `ω0` lies below it.
    pub fn pole_threshold(&self) -> Result<f64> {
        Ok(self.eta_s() * self.omega_c * gamma_real(self.s)?)
    }

    pub(crate) fn hand_derived(&self) -> Option<HandForm> {
        const TOL: f64 = 1e-14;
        if (self.s - 0.5).abs() < TOL {
            Some(HandForm::SubOhmicHalf)
        } else if (self.s - 1.0).abs() < TOL {
            Some(HandForm::Ohmic)
        } else if (self.s - 3.0).abs() < TOL {
            Some(HandForm::SuperOhmicCubic)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum HandForm {
    SubOhmicHalf,
    Ohmic,
    SuperOhmicCubic,
}

fn check_frequency(omega: f64) -> Result<()> {
    if omega >= 0.0 && omega.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            func: "spectral_density",
            arg: format!("{omega}"),
            reason: "requires omega >= 0",
        })
    }
}

// x^s e^{-x}, zero at the origin.
fn scaled_power(x: f64, s: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        (s * x.ln() - x).exp()
    }
}

/// `J(ω)` in physical units.
pub fn spectral_density(spec: &BathSpec, omega: f64) -> Result<f64> {
    check_frequency(omega)?;
    Ok(spec.omega_c * reduced_density(spec, omega / spec.omega_c))
}

/// `J(x ωc) / ωc`; zero for `x <= 0`.
pub(crate) fn reduced_density(spec: &BathSpec, x: f64) -> f64 {
    2.0 * PI * spec.eta_s() * scaled_power(x, spec.s)
}

/// Noise correlation `g(t) = ∫₀^∞ dω/2π J(ω) e^{-iωt}` in closed form,
/// `ηs ωc² Γ(s+1) (1 + iωc t)^{-(s+1)}` (principal branch).
pub fn correlation(spec: &BathSpec, t: f64) -> Result<Complex64> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::Domain {
            func: "correlation",
            arg: format!("{t}"),
            reason: "requires t >= 0",
        });
    }
    let prefactor = spec.eta_s() * spec.omega_c * spec.omega_c * gamma_real(spec.s + 1.0)?;
    Ok(correlation_kernel(prefactor, spec.s, spec.omega_c * t))
}

/// Correlation samples at `t_k = k·step`, `k = 0..n`.
pub(crate) fn correlation_samples(spec: &BathSpec, step: f64, n: usize) -> Result<Vec<Complex64>> {
    let prefactor = spec.eta_s() * spec.omega_c * spec.omega_c * gamma_real(spec.s + 1.0)?;
    Ok((0..n)
        .map(|k| correlation_kernel(prefactor, spec.s, spec.omega_c * step * k as f64))
        .collect())
}

fn correlation_kernel(prefactor: f64, s: f64, tau: f64) -> Complex64 {
    let base = Complex64::new(1.0, tau);
    prefactor * (-(s + 1.0) * base.ln()).exp()
}

/// Whether the branch-cut denominator may fall back to numerical
/// dispersion integrals for exponents without a hand-derived form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Fallback {
    #[default]
    Enabled,
    Disabled,
}

/// Branch-cut denominator `D(ω)` in units of `ωc`.
///
/// For `ω > 0` this is `ω0τc − ω − Δ(ω) − iJ(ω)/2`, where
/// `Δ(ω) = PV∫ dω'/2π J(ω')/(ω' − ω)` is the dispersive shift. The three
/// hand-derived forms are
///
/// * `s = 3`: `(ω0τc − 2ηs) − (1+ηs)ω − ηsω² − ηsω³e^{-ω}(−Ei(ω) + iπ)`
/// * `s = 1/2`: `(ω0τc − √π ηs) − ω − iπηs√ω (e^{-ω} + i(2/√π) F(√ω))`
/// * `s = 1`: `(ω0τc − ηs) − ω[1 + ηs e^{-ω}(−Ei(ω) + iπ)]`
///
/// with `ω` in units of `ωc`. Other exponents use numerical quadrature of
/// the dispersion integral.
#[derive(Debug, Clone, Copy)]
pub struct InversionDenominator {
    spec: BathSpec,
    w0: f64,
    form: Option<HandForm>,
}

impl InversionDenominator {
    pub fn new(spec: &BathSpec, omega0: f64, fallback: Fallback) -> Result<Self> {
        if !omega0.is_finite() {
            return Err(Error::InvalidParameter(format!("omega0 must be finite, got {omega0}")));
        }
        let form = spec.hand_derived();
        if form.is_none() && fallback == Fallback::Disabled {
            return Err(Error::UnsupportedExponent { s: spec.s });
        }
        Ok(Self {
            spec: *spec,
            w0: omega0 / spec.omega_c,
            form,
        })
    }

    pub fn spec(&self) -> &BathSpec {
        &self.spec
    }

    /// `ω0 τc`.
    pub fn reduced_omega0(&self) -> f64 {
        self.w0
    }

    /// Denominator on the cut at reduced frequency `x = ω/ωc > 0`.
    pub fn on_cut(&self, x: f64) -> Result<Complex64> {
        if !(x > 0.0 && x.is_finite()) {
            return Err(Error::Domain {
                func: "inversion_denominator",
                arg: format!("{x}"),
                reason: "requires omega > 0",
            });
        }
        let eta = self.spec.eta_s();
        let w0 = self.w0;
        let d = match self.form {
            Some(HandForm::SuperOhmicCubic) => {
                let tail = Complex64::new(-ei_signed(x)?, PI) * (-x).exp();
                Complex64::from(w0 - 2.0 * eta - (1.0 + eta) * x - eta * x * x) - eta * x.powi(3) * tail
            }
            Some(HandForm::SubOhmicHalf) => {
                let r = x.sqrt();
                let inner = Complex64::new((-x).exp(), 2.0 / PI.sqrt() * dawson(r));
                Complex64::from(w0 - PI.sqrt() * eta - x) - Complex64::new(0.0, PI * eta * r) * inner
            }
            Some(HandForm::Ohmic) => {
                let tail = Complex64::new(-ei_signed(x)?, PI) * (eta * (-x).exp());
                Complex64::from(w0 - eta) - x * (1.0 + tail)
            }
            None => {
                let shift = eta * generic_pv_shift(self.spec.s, x)?;
                Complex64::new(w0 - x - shift, -0.5 * reduced_density(&self.spec, x))
            }
        };
        Ok(d)
    }

    /// Real denominator `ω0τc − x − Δ(x)` off the band, `x <= 0`. Zeros
    /// are localized-mode poles of `û(z)` at `z = −i x ωc`.
    pub fn off_band(&self, x: f64) -> Result<f64> {
        debug_assert!(x <= 0.0);
        let eta = self.spec.eta_s();
        if x == 0.0 {
            return Ok(self.w0 - eta * gamma_real(self.spec.s)?);
        }
        let shift = match self.form {
            Some(HandForm::Ohmic) => eta * (1.0 - x * (-x).exp() * ei_signed(x)?),
            Some(HandForm::SuperOhmicCubic) => eta * (2.0 + x + x * x - x.powi(3) * (-x).exp() * ei_signed(x)?),
            _ => eta * off_band_moment(self.spec.s, x, 1)?,
        };
        Ok(self.w0 - x - shift)
    }

    /// `d/dx` of [`off_band`](Self::off_band), `−1 − ηs ∫ y^s e^{-y}/(y − x)² dy`.
    pub fn off_band_derivative(&self, x: f64) -> Result<f64> {
        debug_assert!(x < 0.0);
        Ok(-1.0 - self.spec.eta_s() * off_band_moment(self.spec.s, x, 2)?)
    }
}

/// `∫₀^∞ y^s e^{-y} / (y − x)^p dy` for `x < 0`.
fn off_band_moment(s: f64, x: f64, p: i32) -> Result<f64> {
    let opts = QuadOptions {
        abs_tol: 1e-15,
        rel_tol: 1e-13,
        max_panels: 4000,
    };
    let f = |y: f64| scaled_power(y, s) / (y - x).powi(p);
    // Split at y = 1 so the y^s endpoint behaviour gets its own panel set.
    let head = quad::integrate(f, 0.0, 1.0, opts)?;
    let tail = quad::integrate_to_infinity(f, 1.0, opts)?;
    Ok(head.value + tail.value)
}

/// `PV∫₀^∞ y^s e^{-y}/(y − x) dy` for `x > 0` by singularity subtraction
/// on `[0, 2x]`, where the PV of `1/(y − x)` vanishes.
pub(crate) fn generic_pv_shift(s: f64, x: f64) -> Result<f64> {
    let opts = QuadOptions {
        abs_tol: 1e-14,
        rel_tol: 1e-12,
        max_panels: 4000,
    };
    let fx = scaled_power(x, s);
    let dfx = fx * (s / x - 1.0);
    let near = quad::integrate(
        |y| {
            let d = y - x;
            if d.abs() <= 1e-10 * x {
                dfx
            } else {
                (scaled_power(y, s) - fx) / d
            }
        },
        0.0,
        2.0 * x,
        opts,
    )?;
    let far = quad::integrate_to_infinity(|y| scaled_power(y, s) / (y - x), 2.0 * x, opts)?;
    Ok(near.value + far.value)
}

/// Branch-cut denominator at physical frequency `omega > 0`, in units of
/// `ωc`. Uses the hand-derived forms for `s ∈ {1/2, 1, 3}` and numerical
/// dispersion integrals otherwise.
pub fn inversion_denominator(spec: &BathSpec, omega0: f64, omega: f64) -> Result<Complex64> {
    InversionDenominator::new(spec, omega0, Fallback::Enabled)?.on_cut(omega / spec.omega_c)
}
