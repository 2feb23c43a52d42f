//! Laplace inversion: `u(t) = Σ_p R_p e^{−iω_p t} + u_cut(t)`.
//!
//! Localized-mode poles sit on the imaginary `z` axis outside the bath
//! band, at real frequencies `ω_p < 0` where the off-band denominator
//! vanishes. The branch-cut part is the Fourier integral
//! `u_cut(t) = ∫₀^∞ dx w(x) e^{−ixωc t}` with the non-negative weight
//! `w = Im(1/D)/π = J/(2π|D|²)`.
//!
//! The weight is sampled adaptively, interpolated by quadratics on each
//! panel and integrated against the oscillatory factor with exact
//! (Filon) moments, so large `t` costs no more than small `t`.

use num_complex::Complex64;
use rayon::prelude::*;

use super::{Method, PropagatorSolution, TimeGrid};
use crate::bath::{BathSpec, Fallback, InversionDenominator};
use crate::error::{Error, Result};
use crate::quad::{self, QuadOptions};

/// Localized mode: pole of `û(z)` at `z = −iω_p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pole {
    /// Physical frequency `ω_p`, below the band (`ω_p < 0`); an uncoupled
    /// mode is reported at `ω0`.
    pub frequency: f64,
    /// Residue of `û` at the pole; real and in `(0, 1)` for this bath.
    pub residue: Complex64,
}

impl Pole {
    /// Pole location in the Laplace variable `z`.
    pub fn location(&self) -> Complex64 {
        Complex64::new(0.0, -self.frequency)
    }

    pub fn contribution(&self, t: f64) -> Complex64 {
        self.residue * Complex64::new(0.0, -self.frequency * t).exp()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct LaplaceOptions {
    /// Initial upper cutoff of the cut integral, in units of `ωc`.
    pub x_max: f64,
    /// Bound on the discarded weight beyond the cutoff.
    pub tail_tol: f64,
    /// Per-unit-length interpolation error accepted on a panel.
    pub panel_tol: f64,
    /// Absolute per-panel error floor.
    pub panel_floor: f64,
    pub max_panels: usize,
    pub fallback: Fallback,
}

impl Default for LaplaceOptions {
    fn default() -> Self {
        Self {
            x_max: 50.0,
            tail_tol: 1e-8,
            panel_tol: 1e-10,
            panel_floor: 1e-14,
            max_panels: 2_000_000,
            fallback: Fallback::Enabled,
        }
    }
}

const BISECTION_TOL: f64 = 1e-12;

/// Localized-mode poles for transition frequency `omega0`.
///
/// The off-band denominator `ω0τc − x − Δ(x)` is scanned for sign changes
/// on `x ∈ (−∞, 0]` and every bracket is bisected to `1e−12`.
pub fn find_poles(spec: &BathSpec, omega0: f64) -> Result<Vec<Pole>> {
    let den = InversionDenominator::new(spec, omega0, Fallback::Enabled)?;
    find_poles_with(&den)
}

fn find_poles_with(den: &InversionDenominator) -> Result<Vec<Pole>> {
    let omega_c = den.spec().omega_c();
    // Δ(x) → 0 as x → −∞, so the denominator eventually behaves as −x.
    let mut x_min = -50.0f64.max(2.0 * den.reduced_omega0().abs());
    while den.off_band(x_min)? <= 0.0 {
        x_min *= 2.0;
        if x_min < -1e8 {
            return Err(Error::PoleBracketing {
                lo: x_min * omega_c,
                hi: 0.0,
            });
        }
    }

    // Scan points: geometric near the branch point, uniform further out.
    let mut xs = vec![0.0];
    let mut x = -1e-6;
    while x > -1.0 {
        xs.push(x);
        x *= 1.25;
    }
    let mut x = -1.0;
    while x > x_min {
        xs.push(x);
        x -= 0.25;
    }
    xs.push(x_min);

    let mut poles = Vec::new();
    let mut f_hi = den.off_band(xs[0])?;
    for w in xs.windows(2) {
        let (hi, lo) = (w[0], w[1]);
        let f_lo = den.off_band(lo)?;
        if f_hi == 0.0 && hi == 0.0 {
            // Pole exactly at the band edge merges with the branch point.
            f_hi = f_lo;
            continue;
        }
        if f_lo == 0.0 || (f_lo > 0.0) != (f_hi > 0.0) {
            let root = bisect(den, lo, hi, f_lo)?;
            let slope = den.off_band_derivative(root)?;
            poles.push(Pole {
                frequency: root * omega_c,
                residue: Complex64::new(-1.0 / slope, 0.0),
            });
        }
        f_hi = f_lo;
    }
    Ok(poles)
}

fn bisect(den: &InversionDenominator, mut lo: f64, mut hi: f64, f_lo: f64) -> Result<f64> {
    if f_lo == 0.0 {
        return Ok(lo);
    }
    let lo_positive = f_lo > 0.0;
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        let f = den.off_band(mid)?;
        if f == 0.0 {
            return Ok(mid);
        }
        if (f > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Quadratic panel of the cut weight: endpoints and midpoint samples.
#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    wa: f64,
    wm: f64,
    wb: f64,
}

/// Sampled branch-cut weight, ready for Fourier evaluation.
#[derive(Debug, Clone)]
pub struct BranchCut {
    panels: Vec<Panel>,
    omega_c: f64,
    x_max: f64,
    error_estimate: f64,
    tail_weight: f64,
}

impl BranchCut {
    pub fn build(den: &InversionDenominator, opts: &LaplaceOptions) -> Result<Self> {
        let weight = |x: f64| -> Result<f64> {
            let d = den.on_cut(x)?;
            Ok((1.0 / d).im / std::f64::consts::PI)
        };

        let mut x_max = opts.x_max;
        let tail_opts = QuadOptions {
            abs_tol: 1e-14,
            rel_tol: 1e-8,
            max_panels: 2000,
        };
        let tail_weight = loop {
            let failed = std::cell::Cell::new(None);
            let tail = quad::integrate_to_infinity(
                |x| match weight(x) {
                    Ok(v) => v,
                    Err(e) => {
                        failed.set(Some(e.to_string()));
                        0.0
                    }
                },
                x_max,
                tail_opts,
            )?;
            if let Some(msg) = failed.take() {
                return Err(Error::Tolerance(format!("cut tail weight: {msg}")));
            }
            if tail.value <= opts.tail_tol {
                break tail.value;
            }
            x_max *= 2.0;
            if x_max > 1e6 {
                return Err(Error::NonConvergence {
                    what: "branch-cut tail",
                    achieved: tail.value,
                    target: opts.tail_tol,
                });
            }
        };

        // Seed breakpoints: geometric towards the branch point, then uniform.
        let mut breaks = vec![0.0];
        let mut x = 1e-7;
        while x < 0.05 {
            breaks.push(x);
            x *= 2.0;
        }
        let mut k = 1;
        while 0.05 * k as f64 <= x_max {
            breaks.push(0.05 * k as f64);
            k += 1;
        }
        if *breaks.last().unwrap() < x_max {
            breaks.push(x_max);
        }

        let mut wvals = Vec::with_capacity(breaks.len());
        for &b in &breaks {
            wvals.push(if b == 0.0 { 0.0 } else { weight(b)? });
        }
        let mut stack: Vec<Panel> = Vec::new();
        for i in (0..breaks.len() - 1).rev() {
            let (a, b) = (breaks[i], breaks[i + 1]);
            stack.push(Panel {
                a,
                b,
                wa: wvals[i],
                wm: weight(0.5 * (a + b))?,
                wb: wvals[i + 1],
            });
        }

        let mut panels = Vec::new();
        let mut error_estimate = 0.0;
        while let Some(p) = stack.pop() {
            let m = 0.5 * (p.a + p.b);
            let q1 = weight(0.5 * (p.a + m))?;
            let q3 = weight(0.5 * (m + p.b))?;
            let curv = 0.5 * (p.wa + p.wb) - p.wm;
            let slope = 0.5 * (p.wb - p.wa);
            let p1 = p.wm - 0.5 * slope + 0.25 * curv;
            let p3 = p.wm + 0.5 * slope + 0.25 * curv;
            let width = p.b - p.a;
            let err = 0.5 * ((q1 - p1).abs() + (q3 - p3).abs()) * width;
            let left = Panel {
                a: p.a,
                b: m,
                wa: p.wa,
                wm: q1,
                wb: p.wm,
            };
            let right = Panel {
                a: m,
                b: p.b,
                wa: p.wm,
                wm: q3,
                wb: p.wb,
            };
            let resolved = m <= p.a || m >= p.b || width < 1e-13;
            if err <= (opts.panel_tol * width).max(opts.panel_floor) || resolved {
                // Error of the halved quadratics is about err/8.
                error_estimate += err / 8.0;
                panels.push(left);
                panels.push(right);
            } else {
                stack.push(right);
                stack.push(left);
            }
            if panels.len() + stack.len() > opts.max_panels {
                return Err(Error::NonConvergence {
                    what: "branch-cut panel refinement",
                    achieved: error_estimate,
                    target: opts.panel_tol * x_max,
                });
            }
        }
        panels.sort_by(|a, b| a.a.total_cmp(&b.a));
        Ok(Self {
            panels,
            omega_c: den.spec().omega_c(),
            x_max,
            error_estimate,
            tail_weight,
        })
    }

    /// `u_cut(t)`.
    pub fn eval(&self, t: f64) -> Complex64 {
        let tau = self.omega_c * t;
        self.panels.iter().map(|p| filon(p, tau)).sum()
    }

    /// `∫ w dx = u_cut(0)`, the weight carried by the continuum.
    pub fn total_weight(&self) -> f64 {
        self.eval(0.0).re
    }

    pub fn error_estimate(&self) -> f64 {
        self.error_estimate
    }

    pub fn tail_weight(&self) -> f64 {
        self.tail_weight
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn panel_count(&self) -> usize {
        self.panels.len()
    }
}

// ∫_a^b q(x) e^{−ixτ} dx for the quadratic q through the panel samples.
fn filon(p: &Panel, tau: f64) -> Complex64 {
    let c = 0.5 * (p.a + p.b);
    let h = 0.5 * (p.b - p.a);
    let alpha = p.wm;
    let beta = 0.5 * (p.wb - p.wa);
    let gamma = 0.5 * (p.wa + p.wb) - p.wm;
    let th = h * tau;
    let (m0, m1, m2) = moments(th);
    let inner = Complex64::new(alpha * m0 + gamma * m2, beta * m1);
    Complex64::new(0.0, -c * tau).exp() * inner * h
}

// ∫_{−1}^{1} ξ^k e^{−iθξ} dξ for k = 0, 1, 2; M1 is purely imaginary and
// returned as its imaginary part.
fn moments(th: f64) -> (f64, f64, f64) {
    if th.abs() < 0.05 {
        let t2 = th * th;
        let m0 = 2.0 * (1.0 - t2 / 6.0 + t2 * t2 / 120.0 - t2 * t2 * t2 / 5040.0);
        let m1 = -2.0 * th * (1.0 / 3.0 - t2 / 30.0 + t2 * t2 / 840.0 - t2 * t2 * t2 / 45360.0);
        let m2 = 2.0 * (1.0 / 3.0 - t2 / 10.0 + t2 * t2 / 168.0 - t2 * t2 * t2 / 6480.0);
        (m0, m1, m2)
    } else {
        let (s, c) = th.sin_cos();
        let m0 = 2.0 * s / th;
        let m1 = -2.0 * (s - th * c) / (th * th);
        let m2 = 2.0 * ((th * th - 2.0) * s + 2.0 * th * c) / (th * th * th);
        (m0, m1, m2)
    }
}

pub fn solve_laplace(spec: &BathSpec, omega0: f64, grid: &TimeGrid) -> Result<PropagatorSolution> {
    solve_laplace_with(spec, omega0, grid, &LaplaceOptions::default())
}

/// Evaluates on any grid (uniform or log-spaced).
pub fn solve_laplace_with(
    spec: &BathSpec,
    omega0: f64,
    grid: &TimeGrid,
    opts: &LaplaceOptions,
) -> Result<PropagatorSolution> {
    if spec.eta_s() == 0.0 {
        // No cut weight; the bare mode at z = −iω0 is the only singularity.
        let mode = Pole {
            frequency: omega0,
            residue: Complex64::new(1.0, 0.0),
        };
        let u = grid.samples().iter().map(|&t| mode.contribution(t)).collect();
        return PropagatorSolution::new(grid.clone(), u, Method::Laplace, vec![mode]);
    }
    let den = InversionDenominator::new(spec, omega0, opts.fallback)?;
    let poles = find_poles_with(&den)?;
    let cut = BranchCut::build(&den, opts)?;
    let u: Vec<Complex64> = grid
        .samples()
        .par_iter()
        .map(|&t| cut.eval(t) + poles.iter().map(|p| p.contribution(t)).sum::<Complex64>())
        .collect();
    PropagatorSolution::new(grid.clone(), u, Method::Laplace, poles)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moments_series_matches_closed_form() {
        for &th in &[0.049, 0.0499] {
            let (s0, s1, s2) = moments(th);
            let (s, c) = th.sin_cos();
            assert!((s0 - 2.0 * s / th).abs() < 1e-14);
            assert!((s1 + 2.0 * (s - th * c) / (th * th)).abs() < 1e-12);
            assert!((s2 - 2.0 * ((th * th - 2.0) * s + 2.0 * th * c) / th.powi(3)).abs() < 1e-9);
        }
    }

    #[test]
    fn filon_integrates_quadratics_exactly() {
        let p = Panel {
            a: 1.0,
            b: 3.0,
            wa: 1.0,
            wm: 4.0,
            wb: 9.0,
        };
        // q(x) = x², τ = 2.5: ∫₁³ x² e^{−2.5ix} dx by Simpson on a fine mesh.
        let tau = 2.5;
        let n = 20_000;
        let h = 2.0 / n as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..=n {
            let x = 1.0 + k as f64 * h;
            let w = if k == 0 || k == n {
                1.0
            } else if k % 2 == 1 {
                4.0
            } else {
                2.0
            };
            acc += w * x * x * Complex64::new(0.0, -x * tau).exp();
        }
        acc *= h / 3.0;
        assert!((filon(&p, tau) - acc).norm() < 1e-10);
    }

    #[test]
    fn no_pole_above_threshold() {
        let spec = BathSpec::new(1.0, 0.01, 1.0).unwrap();
        assert!(find_poles(&spec, 0.1).unwrap().is_empty());
    }

    #[test]
    fn single_pole_below_threshold() {
        let spec = BathSpec::new(1.0, 0.5, 1.0).unwrap();
        let poles = find_poles(&spec, 0.1).unwrap();
        assert_eq!(poles.len(), 1);
        let p = poles[0];
        assert!(p.frequency < 0.0);
        assert!(p.residue.re > 0.0 && p.residue.re < 1.0 && p.residue.im == 0.0);
    }

    #[test]
    fn sum_rule_holds() {
        for &(s, eta0) in &[(0.5, 0.5), (1.0, 0.01), (3.0, 0.5), (2.0, 0.2)] {
            let spec = BathSpec::new(s, eta0, 1.0).unwrap();
            let den = InversionDenominator::new(&spec, 0.1, Fallback::Enabled).unwrap();
            let poles = find_poles_with(&den).unwrap();
            let cut = BranchCut::build(&den, &LaplaceOptions::default()).unwrap();
            let z: f64 = poles.iter().map(|p| p.residue.re).sum();
            let total = z + cut.total_weight() + cut.tail_weight();
            assert!((total - 1.0).abs() < 1e-7, "s={s} eta0={eta0}: {total}");
        }
    }
}
