//! Repetition codes on the two-qubit channel.
//!
//! Phase-flip code: majority decoding over `n` (odd) copies replaces the
//! coherence factor `c` by `c' = 2p_s − 1`; amplitudes still come from the
//! damped `α_t`. Bit-flip encoding `|±α⟩ → |±α⟩^{⊗n}` is not corrected and
//! raises the phase-error rate to `p_e^{(n)}`.

use nalgebra::Matrix4;
use num_complex::Complex64;
use statrs::function::factorial::ln_binomial;

use crate::channel::{self, i_pow, odd_repetition_matrix, ChannelMetrics, EvenOddCoeffs, StateParams, TwoQubitState};
use crate::error::{Error, Result};
use crate::qubit::coherence_factor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CodeKind {
    #[default]
    None,
    PhaseFlip,
    BitFlip,
}

impl CodeKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CodeKind::None => "none",
            CodeKind::PhaseFlip => "phase",
            CodeKind::BitFlip => "bit",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodeConfig {
    kind: CodeKind,
    n: usize,
}

impl CodeConfig {
    /// `n >= 1`; the phase-flip code needs odd `n`.
    pub fn new(kind: CodeKind, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("code length must be at least 1".into()));
        }
        if kind == CodeKind::PhaseFlip && n.is_multiple_of(2) {
            return Err(Error::EvenCodeLength(n));
        }
        Ok(Self { kind, n })
    }

    pub fn none() -> Self {
        Self {
            kind: CodeKind::None,
            n: 1,
        }
    }

    pub fn kind(&self) -> CodeKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Metrics of the channel at propagator value `u`.
    pub fn metrics(&self, alpha0: Complex64, u: Complex64) -> Result<ChannelMetrics> {
        match self.kind {
            CodeKind::None => channel::channel_metrics(alpha0, u),
            CodeKind::PhaseFlip => corrected_channel_metrics(alpha0, u, self.n),
            CodeKind::BitFlip => bitflip_metrics(self.n, alpha0, u),
        }
    }

    /// Density matrix of the configured channel.
    ///
    /// For the phase-flip code this is the trace-normalized X form with
    /// `c → c'`. Its concurrence is the `metrics` value times
    /// `(1 + e^{−4|α0|²})/(1 + c'² e^{−4|α_t|²})`; the two coincide when
    /// `c' = c`.
    pub fn density(&self, alpha0: Complex64, u: Complex64) -> Result<TwoQubitState> {
        match self.kind {
            CodeKind::None => channel::cluster_state_density(alpha0, u),
            CodeKind::PhaseFlip => {
                let p_e = crate::qubit::phase_error_prob(alpha0, u);
                channel::x_form_density(alpha0, u, corrected_c(self.n, p_e)?)
            }
            CodeKind::BitFlip => bitflip_density(self.n, alpha0, u),
        }
    }
}

fn check_phase_code(n: usize, p_e: f64) -> Result<()> {
    if n.is_multiple_of(2) {
        return Err(Error::EvenCodeLength(n));
    }
    if !(0.0..1.0).contains(&p_e) {
        return Err(Error::Domain {
            func: "phase_success_prob",
            arg: format!("{p_e}"),
            reason: "p_e must lie in [0, 1)",
        });
    }
    Ok(())
}

// Kahan-summed Σ_{k ∈ range} C(n,k) (1−p)^{n−k} p^k in log space.
fn binomial_mass(n: usize, p: f64, range: std::ops::RangeInclusive<usize>) -> f64 {
    let (lp, lq) = (p.ln(), (-p).ln_1p());
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for k in range {
        let term = (ln_binomial(n as u64, k as u64) + (n - k) as f64 * lq + k as f64 * lp).exp();
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    sum
}

/// Probability of at most `(n−1)/2` phase errors among `n` copies.
pub fn phase_success_prob(n: usize, p_e: f64) -> Result<f64> {
    check_phase_code(n, p_e)?;
    Ok(1.0 - failure_prob(n, p_e))
}

fn failure_prob(n: usize, p_e: f64) -> f64 {
    if p_e == 0.0 {
        return 0.0;
    }
    let m = (n - 1) / 2;
    if p_e <= 0.5 {
        binomial_mass(n, p_e, m + 1..=n)
    } else {
        1.0 - binomial_mass(n, p_e, 0..=m)
    }
}

/// `c' = 2p_s − 1`.
pub fn corrected_c(n: usize, p_e: f64) -> Result<f64> {
    check_phase_code(n, p_e)?;
    Ok(1.0 - 2.0 * failure_prob(n, p_e))
}

/// Unencoded closed forms with `c → c'`; `a`, `b` from the damped `α_t`.
pub fn corrected_channel_metrics(alpha0: Complex64, u: Complex64, n: usize) -> Result<ChannelMetrics> {
    let p_e = crate::qubit::phase_error_prob(alpha0, u);
    let c = corrected_c(n, p_e)?;
    let alpha_t = alpha0 * u;
    ChannelMetrics::new(
        channel::concurrence_from_c(alpha0, alpha_t, c),
        channel::fef_from_c(alpha0, alpha_t, c),
    )
}

/// `(1 − e^{−2n(|α0|² − |α_t|²)})/2`.
pub fn bitflip_p_e(n: usize, alpha0: Complex64, u: Complex64) -> f64 {
    -(-2.0 * n as f64 * alpha0.norm_sqr() * crate::qubit::loss(u)).exp_m1() / 2.0
}

/// Channel state with each logical qubit spread over `n` modes.
///
/// Basis `{eₙeₙ, eₙoₙ, oₙeₙ, oₙoₙ}` of the `n`-mode even/odd states. Odd
/// `n` keeps the X form; even `n` gives a dense matrix.
pub fn bitflip_density(n: usize, alpha0: Complex64, u: Complex64) -> Result<TwoQubitState> {
    if n == 0 {
        return Err(Error::InvalidParameter("code length must be at least 1".into()));
    }
    let c = coherence_factor(alpha0, u);
    let cn = c.powi(n as i32);
    let eo = EvenOddCoeffs::repeated(alpha0 * u, n);
    let rho = if n % 2 == 1 {
        odd_repetition_matrix(alpha0, eo, cn, n)
    } else {
        even_repetition_matrix(eo, cn, n)
    };
    TwoQubitState::new(
        rho,
        StateParams {
            alpha0,
            u,
            c,
            n_bits: n,
        },
    )
}

#[rustfmt::skip]
fn even_repetition_matrix(eo: EvenOddCoeffs, cn: f64, n: usize) -> Matrix4<Complex64> {
    let (a, b) = (eo.a, eo.b);
    let (a2, b2) = (a * a, b * b);
    let c2 = cn * cn;
    let ph = i_pow(n);
    let r = |x: f64| Complex64::from(x);
    let p = -ph * (a2 * a * b * cn);
    let q = ph * (a * b2 * b * cn);
    let d = r(a2 * b2 * c2);
    Matrix4::new(
        r(a2 * a2), p, p, -d,
        p, r(a2 * b2), d, q,
        p, d, r(a2 * b2), q,
        -d, q, q, r(b2 * b2),
    )
}

/// Encoded concurrence `(8aₙ²bₙ²/Mₙ) max{0, c^{2n} + 2cⁿ − 1}` and the
/// parity-dependent fully entangled fraction.
pub fn bitflip_metrics(n: usize, alpha0: Complex64, u: Complex64) -> Result<ChannelMetrics> {
    if n == 0 {
        return Err(Error::InvalidParameter("code length must be at least 1".into()));
    }
    let c = coherence_factor(alpha0, u);
    let cn = c.powi(n as i32);
    let c2n = cn * cn;
    let eo = EvenOddCoeffs::repeated(alpha0 * u, n);
    let ab = eo.a2b2();
    let overlap_term = (-4.0 * n as f64 * alpha0.norm_sqr()).exp();
    let (m_n, f_max) = if n.is_multiple_of(2) {
        let d = eo.a * eo.a - eo.b * eo.b;
        let f = 0.25 * (1.0 + 4.0 * ab * c2n + (d.powi(4) + 16.0 * ab * c2n).sqrt());
        (4.0, f)
    } else {
        let f = (c2n - 2.0 * ab * (1.0 - cn).powi(2) + 1.0) / (2.0 * (1.0 + overlap_term));
        (4.0 * (1.0 + overlap_term), f)
    };
    let conc = 8.0 * ab / m_n * (c2n + 2.0 * cn - 1.0).max(0.0);
    ChannelMetrics::new(conc, f_max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn success_probability_values() {
        assert!((phase_success_prob(1, 0.3).unwrap() - 0.7).abs() < 1e-15);
        assert_eq!(phase_success_prob(5, 0.0).unwrap(), 1.0);
        // ≤ 1 error among 3: 0.9³ + 3·0.9²·0.1
        assert!((phase_success_prob(3, 0.1).unwrap() - 0.972).abs() < 1e-14);
        assert!(matches!(phase_success_prob(4, 0.1), Err(Error::EvenCodeLength(4))));
        assert!(phase_success_prob(3, 1.0).is_err());
    }

    #[test]
    fn corrected_c_large_n() {
        assert!(corrected_c(101, 0.4).unwrap() > 0.95);
        assert!((corrected_c(1, 0.2).unwrap() - 0.6).abs() < 1e-15);
    }

    #[test]
    fn code_config_validation() {
        assert!(CodeConfig::new(CodeKind::PhaseFlip, 4).is_err());
        assert!(CodeConfig::new(CodeKind::BitFlip, 4).is_ok());
        assert!(CodeConfig::new(CodeKind::BitFlip, 0).is_err());
    }

    #[test]
    fn bitflip_error_grows_with_n() {
        let (a, u) = (c(1.2, 0.0), c(0.8, 0.0));
        let p: Vec<f64> = [3, 6, 9].iter().map(|&n| bitflip_p_e(n, a, u)).collect();
        assert!(p[0] < p[1] && p[1] < p[2]);
        assert_eq!(bitflip_p_e(4, a, c(1.0, 0.0)), 0.0);
    }

    #[test]
    fn single_copy_matches_unencoded() {
        let (a, u) = (c(1.2, 0.0), c(0.5, 0.3));
        let enc = bitflip_density(1, a, u).unwrap();
        let bare = channel::cluster_state_density(a, u).unwrap();
        assert!((enc.rho() - bare.rho()).norm() < 1e-15);
        let m1 = bitflip_metrics(1, a, u).unwrap();
        let m0 = channel::channel_metrics(a, u).unwrap();
        assert!((m1.fidelity - m0.fidelity).abs() < 1e-15);
        assert!((m1.concurrence - m0.concurrence).abs() < 1e-15);
    }
}
