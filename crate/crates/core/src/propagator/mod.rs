//! The propagator `u(t)`: solution of
//! `u'(t) + iω0 u(t) + ∫₀ᵗ g(t−τ) u(τ) dτ = 0`, `u(0) = 1`.
//!
//! Two independent routes are provided: [`solve_volterra`] steps the
//! integro-differential equation directly, [`solve_laplace`] inverts the
//! Laplace transform as a sum of localized-mode poles plus a branch-cut
//! Fourier integral. [`markov_u`] is the weak-coupling approximation.

mod grid;
mod laplace;
mod markov;
mod volterra;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use grid::{GridLayout, TimeGrid};
pub use laplace::{find_poles, solve_laplace, solve_laplace_with, BranchCut, LaplaceOptions, Pole};
pub use markov::{lamb_shift, lamb_shift_subtracted, markov_u, ShiftedFrequency};
pub use volterra::{solve_volterra, solve_volterra_with, VolterraOptions};

/// Slack allowed on `|u| <= 1`.
pub const MODULUS_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Volterra,
    Laplace,
    Markov,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Volterra => "volterra",
            Method::Laplace => "laplace",
            Method::Markov => "markov",
        }
    }
}

/// `u(t)` sampled on a [`TimeGrid`].
#[derive(Debug, Clone)]
pub struct PropagatorSolution {
    grid: TimeGrid,
    u: Vec<Complex64>,
    method: Method,
    poles: Vec<Pole>,
    steady_modulus: f64,
}

impl PropagatorSolution {
    pub(crate) fn new(grid: TimeGrid, u: Vec<Complex64>, method: Method, poles: Vec<Pole>) -> Result<Self> {
        assert_eq!(grid.len(), u.len());
        if let Some((k, v)) = u.iter().enumerate().find(|(_, v)| !(v.norm() <= 1.0 + MODULUS_SLACK)) {
            return Err(Error::Tolerance(format!(
                "|u| = {} exceeds 1 at t = {} ({} solver)",
                v.norm(),
                grid.samples()[k],
                method.as_str()
            )));
        }
        let steady_modulus = if poles.is_empty() {
            0.0
        } else {
            poles.iter().map(|p| p.residue).sum::<Complex64>().norm()
        };
        Ok(Self {
            grid,
            u,
            method,
            poles,
            steady_modulus,
        })
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn times(&self) -> &[f64] {
        self.grid.samples()
    }

    pub fn u(&self) -> &[Complex64] {
        &self.u
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn poles(&self) -> &[Pole] {
        &self.poles
    }

    /// `|Σ residues|`, the long-time plateau of `|u|`; zero without poles.
    pub fn steady_modulus(&self) -> f64 {
        self.steady_modulus
    }

    /// Largest `|u_self − u_other|` over a common grid.
    pub fn max_abs_difference(&self, other: &PropagatorSolution) -> Result<f64> {
        if self.grid.samples() != other.grid.samples() {
            return Err(Error::InvalidGrid("solutions live on different grids"));
        }
        Ok(self
            .u
            .iter()
            .zip(&other.u)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Cubic (four-point Lagrange) resampling of a uniform-grid solution.
    pub fn resample(&self, target: &TimeGrid) -> Result<PropagatorSolution> {
        let step = self
            .grid
            .uniform_step()
            .ok_or(Error::InvalidGrid("resampling needs a uniform source grid"))?;
        let t_end = *self.grid.samples().last().unwrap();
        let n = self.u.len();
        if n < 4 {
            return Err(Error::InvalidGrid("resampling needs at least four samples"));
        }
        let mut out = Vec::with_capacity(target.len());
        for &t in target.samples() {
            if t > t_end * (1.0 + 1e-12) {
                return Err(Error::InvalidGrid("target grid extends past the solution"));
            }
            let pos = t / step;
            let i = (pos.floor() as usize).clamp(1, n - 3) - 1;
            let x = pos - i as f64;
            if (pos - pos.round()).abs() < 1e-9 {
                out.push(self.u[(pos.round() as usize).min(n - 1)]);
                continue;
            }
            // nodes at x = 0, 1, 2, 3
            let l0 = -(x - 1.0) * (x - 2.0) * (x - 3.0) / 6.0;
            let l1 = x * (x - 2.0) * (x - 3.0) / 2.0;
            let l2 = -x * (x - 1.0) * (x - 3.0) / 2.0;
            let l3 = x * (x - 1.0) * (x - 2.0) / 6.0;
            out.push(self.u[i] * l0 + self.u[i + 1] * l1 + self.u[i + 2] * l2 + self.u[i + 3] * l3);
        }
        PropagatorSolution::new(target.clone(), out, self.method, self.poles.clone())
    }
}
