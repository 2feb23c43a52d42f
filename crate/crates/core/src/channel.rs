//! Two-qubit channel built from the cluster-type entangled coherent state
//! `(|α,α⟩ + i|α,−α⟩ + i|−α,α⟩ + |−α,−α⟩)`, each mode damped by the same
//! propagator `u`.
//!
//! States are 4×4 matrices in the ordered basis `{ee, eo, oe, oo}` of the
//! even/odd states of the damped amplitude `α_t = α0 u`. Closed forms for
//! the concurrence and fully entangled fraction are paired with generic
//! oracles ([`wootters_concurrence`], [`fef_oracle`]) that only see the
//! matrix.

use nalgebra::{Matrix4, SymmetricEigen, SVD};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qubit::coherence_factor;

const TRACE_TOL: f64 = 1e-10;
const HERMITIAN_TOL: f64 = 1e-12;
const PSD_TOL: f64 = 1e-10;

/// Even/odd amplitudes: `|±α⟩ = a|e⟩ ± b|o⟩` (normalized states).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvenOddCoeffs {
    pub a: f64,
    pub b: f64,
}

impl EvenOddCoeffs {
    pub fn new(alpha_t: Complex64) -> Self {
        Self::repeated(alpha_t, 1)
    }

    /// Coefficients for the `n`-fold product `|±α⟩^{⊗n}`.
    pub fn repeated(alpha_t: Complex64, n: usize) -> Self {
        let y = -2.0 * n as f64 * alpha_t.norm_sqr();
        Self {
            a: ((1.0 + y.exp()) / 2.0).sqrt(),
            b: (-y.exp_m1() / 2.0).sqrt(),
        }
    }

    pub fn a2b2(&self) -> f64 {
        let p = self.a * self.b;
        p * p
    }
}

/// Parameters a state was built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateParams {
    pub alpha0: Complex64,
    pub u: Complex64,
    /// Coherence factor entering the matrix (corrected, if a code is used).
    pub c: f64,
    /// Repetition length per logical qubit.
    pub n_bits: usize,
}

/// Validated two-qubit density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoQubitState {
    rho: Matrix4<Complex64>,
    params: StateParams,
}

impl TwoQubitState {
    /// Checks trace, Hermiticity and positivity.
    pub fn new(rho: Matrix4<Complex64>, params: StateParams) -> Result<Self> {
        let trace = rho.trace();
        if (trace - 1.0).norm() > TRACE_TOL {
            return Err(Error::Tolerance(format!("density matrix trace {trace}")));
        }
        let asym = (rho - rho.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if asym > HERMITIAN_TOL {
            return Err(Error::Tolerance(format!(
                "density matrix not Hermitian (deviation {asym:e})"
            )));
        }
        let state = Self { rho, params };
        let min = state.min_eigenvalue()?;
        if min < -PSD_TOL {
            return Err(Error::Tolerance(format!(
                "density matrix not positive (eigenvalue {min:e})"
            )));
        }
        Ok(state)
    }

    pub fn rho(&self) -> &Matrix4<Complex64> {
        &self.rho
    }

    pub fn params(&self) -> &StateParams {
        &self.params
    }

    fn hermitian_part(&self) -> Matrix4<Complex64> {
        (self.rho + self.rho.adjoint()) * Complex64::from(0.5)
    }

    pub fn eigenvalues(&self) -> Result<[f64; 4]> {
        let eig = SymmetricEigen::try_new(self.hermitian_part(), 1e-15, 10_000)
            .ok_or(Error::Eigen("density matrix spectrum"))?;
        let mut v = [0.0; 4];
        v.copy_from_slice(eig.eigenvalues.as_slice());
        v.sort_by(|a, b| b.total_cmp(a));
        Ok(v)
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.eigenvalues()?[3])
    }

    /// Largest modulus among the eight entries off the diagonal and the
    /// anti-diagonal.
    pub fn x_form_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                if i != j && i + j != 3 {
                    worst = worst.max(self.rho[(i, j)].norm());
                }
            }
        }
        worst
    }
}

/// Entanglement and teleportation figures of merit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelMetrics {
    pub concurrence: f64,
    pub f_max: f64,
    pub fidelity: f64,
}

impl ChannelMetrics {
    pub fn new(concurrence: f64, f_max: f64) -> Result<Self> {
        if !(-1e-12..=1.0 + 1e-12).contains(&concurrence) {
            return Err(Error::Tolerance(format!("concurrence {concurrence} outside [0, 1]")));
        }
        Ok(Self {
            concurrence: concurrence.clamp(0.0, 1.0),
            f_max,
            fidelity: teleportation_fidelity(f_max)?,
        })
    }
}

/// `(2 f_max + 1)/3`.
pub fn teleportation_fidelity(f_max: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&f_max) {
        return Err(Error::Domain {
            func: "teleportation_fidelity",
            arg: format!("{f_max}"),
            reason: "f_max must lie in [0, 1]",
        });
    }
    Ok((2.0 * f_max + 1.0) / 3.0)
}

/// X-form state of the channel with coherence factor `c` (the physical
/// `c` or a code-corrected `c'`).
///
/// Divided by its trace: `1 + e^{−4|α0|²}` is the trace only for the
/// physical `c`, so a corrected `c'` would otherwise leave trace ≠ 1.
pub fn x_form_density(alpha0: Complex64, u: Complex64, c: f64) -> Result<TwoQubitState> {
    let eo = EvenOddCoeffs::new(alpha0 * u);
    let raw = odd_repetition_matrix(alpha0, eo, c, 1);
    let rho = raw / raw.trace();
    TwoQubitState::new(
        rho,
        StateParams {
            alpha0,
            u,
            c,
            n_bits: 1,
        },
    )
}

/// Exact two-qubit state after damping both modes with `u`.
pub fn cluster_state_density(alpha0: Complex64, u: Complex64) -> Result<TwoQubitState> {
    x_form_density(alpha0, u, coherence_factor(alpha0, u))
}

/// X-form matrix for odd repetition length `n`; `cn = c^n`.
#[rustfmt::skip]
pub(crate) fn odd_repetition_matrix(
    alpha0: Complex64,
    eo: EvenOddCoeffs,
    cn: f64,
    n: usize,
) -> Matrix4<Complex64> {
    debug_assert!(n % 2 == 1);
    let m = 1.0 + (-4.0 * n as f64 * alpha0.norm_sqr()).exp();
    let (a2, b2) = (eo.a * eo.a, eo.b * eo.b);
    let c2 = cn * cn;
    let phase = i_pow(n);
    let coh = Complex64::from(2.0 * a2 * b2 * cn) * phase;
    let zero = Complex64::from(0.0);
    let mid = Complex64::from(a2 * b2 * (1.0 - c2));
    Matrix4::new(
        Complex64::from(a2 * a2 * (1.0 + c2)), zero, zero, coh,
        zero, mid, zero, zero,
        zero, zero, mid, zero,
        -coh, zero, zero, Complex64::from(b2 * b2 * (1.0 + c2)),
    ) / Complex64::from(m)
}

/// `iⁿ`.
pub(crate) fn i_pow(n: usize) -> Complex64 {
    match n % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Concurrence for coherence factor `c`, amplitudes from `α_t`.
pub fn concurrence_from_c(alpha0: Complex64, alpha_t: Complex64, c: f64) -> f64 {
    let eo = EvenOddCoeffs::new(alpha_t);
    2.0 * eo.a2b2() / (1.0 + (-4.0 * alpha0.norm_sqr()).exp()) * (c * c + 2.0 * c - 1.0).max(0.0)
}

/// `2a²b²/(1 + e^{−4|α0|²}) · max{0, c² + 2c − 1}`.
pub fn concurrence_closed(alpha0: Complex64, u: Complex64) -> f64 {
    concurrence_from_c(alpha0, alpha0 * u, coherence_factor(alpha0, u))
}

/// Fully entangled fraction for coherence factor `c`.
pub fn fef_from_c(alpha0: Complex64, alpha_t: Complex64, c: f64) -> f64 {
    let eo = EvenOddCoeffs::new(alpha_t);
    let d = 1.0 - c;
    (c * c - 2.0 * eo.a2b2() * d * d + 1.0) / (2.0 * (1.0 + (-4.0 * alpha0.norm_sqr()).exp()))
}

/// `(c² − 2a²b²(1 − c)² + 1) / (2(1 + e^{−4|α0|²}))`.
pub fn fef_closed(alpha0: Complex64, u: Complex64) -> f64 {
    fef_from_c(alpha0, alpha0 * u, coherence_factor(alpha0, u))
}

/// Closed-form metrics of the unencoded channel.
pub fn channel_metrics(alpha0: Complex64, u: Complex64) -> Result<ChannelMetrics> {
    ChannelMetrics::new(concurrence_closed(alpha0, u), fef_closed(alpha0, u))
}

/// Wootters concurrence `max{0, √λ1 − √λ2 − √λ3 − √λ4}`.
///
/// The `√λ_i` are obtained as the singular values of `√ρ (Y⊗Y) √ρ*`, which
/// share their squares with the eigenvalues of `ρ (Y⊗Y) ρ* (Y⊗Y)` but do
/// not lose half the digits for small `λ`.
pub fn wootters_concurrence(state: &TwoQubitState) -> Result<f64> {
    let rho = state.hermitian_part();
    let eig = SymmetricEigen::try_new(rho, 1e-15, 10_000).ok_or(Error::Eigen("density matrix square root"))?;
    let roots = eig.eigenvalues.map(|l| if l < 1e-12 { l.max(0.0) } else { l }.sqrt());
    let v = &eig.eigenvectors;
    let sqrt_rho = v * Matrix4::from_diagonal(&roots.map(Complex64::from)) * v.adjoint();
    // Y⊗Y = antidiag(−1, 1, 1, −1)
    let mut yy = Matrix4::<Complex64>::zeros();
    for (k, sign) in [-1.0, 1.0, 1.0, -1.0].into_iter().enumerate() {
        yy[(k, 3 - k)] = Complex64::from(sign);
    }
    let b = sqrt_rho * yy * sqrt_rho.conjugate();
    let svd = SVD::try_new(b, false, false, 1e-15, 10_000).ok_or(Error::Eigen("spin-flip singular values"))?;
    let mut s: Vec<f64> = svd.singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    Ok((s[0] - s[1] - s[2] - s[3]).max(0.0))
}

/// Largest eigenvalue of `Re⟨φ_k|ρ|φ_l⟩` with
/// `φ = (Φ⁺, iΦ⁻, iΨ⁺, Ψ⁻)`.
pub fn fef_oracle(state: &TwoQubitState) -> Result<f64> {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let z = Complex64::from(0.0);
    let p = Complex64::from(r);
    let i = Complex64::new(0.0, r);
    // Rows are φ_k in {ee, eo, oe, oo}.
    #[rustfmt::skip]
    let basis = Matrix4::new(
        p, z, z, p,
        i, z, z, -i,
        z, i, i, z,
        z, p, -p, z,
    );
    let transformed = basis.conjugate() * state.rho() * basis.transpose();
    let real = transformed.map(|z| z.re);
    let sym = (real + real.transpose()) * 0.5;
    let eig = SymmetricEigen::try_new(sym, 1e-15, 10_000).ok_or(Error::Eigen("magic-basis spectrum"))?;
    Ok(eig.eigenvalues.max())
}
