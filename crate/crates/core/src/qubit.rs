//! Single coherent-state qubit `c1|α⟩ + c2|−α⟩` under the exact dissipative
//! dynamics. Everything reduces to the coherent-state overlap [`overlap`].

use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// `⟨α|β⟩ = exp(−(|α|² + |β|² − 2α*β)/2)`.
pub fn overlap(alpha: Complex64, beta: Complex64) -> Complex64 {
    (-(alpha.norm_sqr() + beta.norm_sqr() - 2.0 * alpha.conj() * beta) / 2.0).exp()
}

/// `prefactor · |ket⟩⟨bra|` with coherent-state amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentElement {
    pub prefactor: Complex64,
    pub ket: Complex64,
    pub bra: Complex64,
}

impl CoherentElement {
    pub fn new(prefactor: Complex64, ket: Complex64, bra: Complex64) -> Self {
        Self { prefactor, ket, bra }
    }

    /// `Tr(prefactor·|α⟩⟨β|) = prefactor·⟨β|α⟩`.
    pub fn trace(&self) -> Complex64 {
        self.prefactor * overlap(self.bra, self.ket)
    }
}

/// Exact map `|α⟩⟨β| → e^{−(1−|u|²)(|α|²+|β|²−2αβ*)/2} |αu⟩⟨βu|`.
pub fn evolve_element(elem: CoherentElement, u: Complex64) -> CoherentElement {
    let (a, b) = (elem.ket, elem.bra);
    let loss = 1.0 - u.norm_sqr();
    let multiplier = (-loss * (a.norm_sqr() + b.norm_sqr() - 2.0 * a * b.conj()) / 2.0).exp();
    CoherentElement {
        prefactor: elem.prefactor * multiplier,
        ket: a * u,
        bra: b * u,
    }
}

/// `1 − |u|²`, with solver roundoff above `|u| = 1` read as no loss.
pub(crate) fn loss(u: Complex64) -> f64 {
    (1.0 - u.norm_sqr()).max(0.0)
}

/// Coherence factor `c = e^{−2(|α0|² − |α0 u|²)}`; equals `1 − 2p_e`.
pub fn coherence_factor(alpha0: Complex64, u: Complex64) -> f64 {
    (-2.0 * alpha0.norm_sqr() * loss(u)).exp()
}

/// Phase-flip probability `p_e = (1 − c)/2 ∈ [0, 1/2)`.
pub fn phase_error_prob(alpha0: Complex64, u: Complex64) -> f64 {
    // −expm1 keeps p_e accurate when |u| is close to 1.
    -(-2.0 * alpha0.norm_sqr() * loss(u)).exp_m1() / 2.0
}

/// `(c1|α0⟩ + c2|−α0⟩)/√N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatState {
    c1: Complex64,
    c2: Complex64,
    alpha0: Complex64,
    norm: f64,
}

impl CatState {
    pub fn new(c1: Complex64, c2: Complex64, alpha0: Complex64) -> Result<Self> {
        let weight = c1.norm_sqr() + c2.norm_sqr();
        if (weight - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!("|c1|² + |c2|² = {weight}, expected 1")));
        }
        let norm = 1.0 + (-2.0 * alpha0.norm_sqr()).exp() * 2.0 * (c1.conj() * c2).re;
        if !(norm > 0.0) {
            return Err(Error::InvalidParameter("cat state has vanishing normalization".into()));
        }
        Ok(Self { c1, c2, alpha0, norm })
    }

    pub fn c1(&self) -> Complex64 {
        self.c1
    }

    pub fn c2(&self) -> Complex64 {
        self.c2
    }

    pub fn alpha0(&self) -> Complex64 {
        self.alpha0
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    fn amplitudes(&self) -> Vector2<Complex64> {
        Vector2::new(self.c1, self.c2) / Complex64::from(self.norm.sqrt())
    }
}

/// Operator-sum data for damping to `u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorChannel {
    pub p_e: f64,
    pub u: Complex64,
    pub alpha_t: Complex64,
}

impl ErrorChannel {
    pub fn new(alpha0: Complex64, u: Complex64) -> Self {
        Self {
            p_e: phase_error_prob(alpha0, u),
            u,
            alpha_t: alpha0 * u,
        }
    }
}

/// Density operator `Σ_ij m_ij |s_i α_t⟩⟨s_j α_t|` with `s = (+, −)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DampedCat {
    pub alpha_t: Complex64,
    pub coeffs: Matrix2<Complex64>,
}

impl DampedCat {
    /// Matrix in the orthonormal even/odd basis of `α_t`.
    ///
    /// At `α_t = 0` the odd state is undefined and its row and column are
    /// zero.
    pub fn even_odd(&self) -> Matrix2<Complex64> {
        let v = damped_to_even_odd(self.alpha_t);
        v * self.coeffs * v.adjoint()
    }
}

// Columns: |α⟩ and |−α⟩ in the basis {|e⟩, |o⟩}, i.e. |±α⟩ = a|e⟩ ± b|o⟩.
fn damped_to_even_odd(alpha: Complex64) -> Matrix2<Complex64> {
    let x = (-2.0 * alpha.norm_sqr()).exp();
    let a = ((1.0 + x) / 2.0).sqrt();
    let b = (-(-2.0 * alpha.norm_sqr()).exp_m1() / 2.0).sqrt();
    Matrix2::new(a, a, b, -b).map(Complex64::from)
}

/// Evolves the cat state through the element map.
pub fn evolve_cat(state: &CatState, u: Complex64) -> DampedCat {
    let amps = state.amplitudes();
    let signs = [1.0, -1.0];
    let mut coeffs = Matrix2::zeros();
    for i in 0..2 {
        for j in 0..2 {
            let elem = CoherentElement::new(
                amps[i] * amps[j].conj(),
                state.alpha0 * signs[i],
                state.alpha0 * signs[j],
            );
            coeffs[(i, j)] = evolve_element(elem, u).prefactor;
        }
    }
    DampedCat {
        alpha_t: state.alpha0 * u,
        coeffs,
    }
}

/// `(1 − p_e)|Q_t⟩⟨Q_t| + p_e Z|Q_t⟩⟨Q_t|Z†` in the even/odd basis, where
/// `|Q_t⟩ = (c1|α_t⟩ + c2|−α_t⟩)/√N` and `Z` flips the sign of `c2`.
pub fn operator_sum(state: &CatState, u: Complex64) -> Matrix2<Complex64> {
    let channel = ErrorChannel::new(state.alpha0, u);
    let v = damped_to_even_odd(channel.alpha_t);
    let q = v * state.amplitudes();
    let zq = v * Vector2::new(state.c1, -state.c2) / Complex64::from(state.norm.sqrt());
    q * q.adjoint() * Complex64::from(1.0 - channel.p_e) + zq * zq.adjoint() * Complex64::from(channel.p_e)
}
