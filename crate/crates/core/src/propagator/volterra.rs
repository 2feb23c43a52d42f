//! Direct time stepping of the integro-differential equation.
//!
//! Implicit trapezoid rule for `u'` and trapezoid rule for the memory
//! integral. The equation is linear, so the implicit corrector is solved in
//! closed form. Successive step halving with Romberg extrapolation removes
//! the even-power error terms and supplies the convergence estimate.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::{Method, PropagatorSolution, TimeGrid};
use crate::bath::{correlation_samples, BathSpec};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct VolterraOptions {
    /// Largest internal step, in units of `τc = 1/ωc`.
    pub max_step: f64,
    /// Target for `max_t |R_k − R_{k−1}|` between successive Romberg
    /// diagonal entries.
    pub tolerance: f64,
    /// Levels computed before convergence is tested (at least 3).
    pub min_levels: usize,
    pub max_levels: usize,
}

impl Default for VolterraOptions {
    fn default() -> Self {
        Self {
            max_step: 0.05,
            tolerance: 1e-5,
            min_levels: 3,
            max_levels: 8,
        }
    }
}

pub fn solve_volterra(spec: &BathSpec, omega0: f64, grid: &TimeGrid) -> Result<PropagatorSolution> {
    solve_volterra_with(spec, omega0, grid, &VolterraOptions::default())
}

/// Solves on a uniform grid; internal steps subdivide the grid step.
pub fn solve_volterra_with(
    spec: &BathSpec,
    omega0: f64,
    grid: &TimeGrid,
    opts: &VolterraOptions,
) -> Result<PropagatorSolution> {
    let step = grid
        .uniform_step()
        .ok_or(Error::InvalidGrid("the Volterra solver needs a uniform grid"))?;
    if !omega0.is_finite() {
        return Err(Error::InvalidParameter(format!("omega0 = {omega0}")));
    }
    if !(opts.max_step > 0.0) || opts.min_levels < 2 || opts.max_levels < opts.min_levels {
        return Err(Error::InvalidParameter("Volterra options".into()));
    }
    let intervals = grid.len() - 1;
    let h_max = opts.max_step / spec.omega_c();
    let base = (step / h_max).ceil().max(1.0) as usize;

    // Romberg table over step halving: row k holds level k extrapolated
    // through h², h⁴, ... The scheme's error expands in even powers of h.
    let mut table: Vec<Vec<Vec<Complex64>>> = Vec::new();
    let mut last_change = f64::INFINITY;
    for level in 0..opts.max_levels {
        let sub = base << level;
        let h = step / sub as f64;
        let mut row = vec![trapezoid(spec, omega0, h, intervals * sub, sub)?];
        for j in 1..=level {
            let factor = 4f64.powi(j as i32);
            let prev = &table[level - 1][j - 1];
            let r: Vec<Complex64> = row[j - 1]
                .iter()
                .zip(prev)
                .map(|(f, c)| (factor * f - c) / (factor - 1.0))
                .collect();
            row.push(r);
        }
        if level > 0 {
            last_change = max_diff(&row[level], &table[level - 1][level - 1]);
        }
        table.push(row);
        if level + 1 >= opts.min_levels && last_change <= opts.tolerance {
            let mut u = table.pop().unwrap().pop().unwrap();
            u[0] = Complex64::new(1.0, 0.0);
            return PropagatorSolution::new(grid.clone(), u, Method::Volterra, Vec::new());
        }
    }
    Err(Error::NonConvergence {
        what: "Volterra step refinement",
        achieved: last_change,
        target: opts.tolerance,
    })
}

fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Fixed-step scheme on `n` steps of size `h`, returning every
/// `stride`-th sample.
pub(crate) fn trapezoid(spec: &BathSpec, omega0: f64, h: f64, n: usize, stride: usize) -> Result<Vec<Complex64>> {
    let g = correlation_samples(spec, h, n + 1)?;
    let mut history = History::new(&g);

    let i_w0 = Complex64::new(0.0, omega0);
    let g0 = g[0];
    let a_inv = 1.0 / (1.0 + 0.5 * h * (i_w0 + 0.5 * h * g0));
    let mut u_prev = Complex64::new(1.0, 0.0);
    let mut f_prev = -i_w0;
    // Trapezoid end weight on u_0.
    history.push(0, 0.5 * u_prev);
    let mut out = Vec::with_capacity(n / stride + 1);
    out.push(u_prev);

    for m in 1..=n {
        // S = g_m u_0 / 2 + Σ_{k=1}^{m−1} g_{m−k} u_k
        let s = history.sum(m);
        let u = (u_prev + 0.5 * h * f_prev - 0.5 * h * h * s) * a_inv;
        f_prev = -i_w0 * u - h * (s + 0.5 * g0 * u);
        u_prev = u;
        history.push(m, u);
        if m % stride == 0 {
            out.push(u);
        }
    }
    if out.iter().any(|z| !z.is_finite()) {
        return Err(Error::NonConvergence {
            what: "Volterra stepping (non-finite value)",
            achieved: f64::INFINITY,
            target: 0.0,
        });
    }
    Ok(out)
}

/// Block size below which history blocks are convolved directly.
const DIRECT_BLOCK: usize = 32;

/// Causal convolution `acc_p = Σ_{k<p} g_{p−k} w_k`, filled online.
///
/// Every pair `k < p` is assigned to the unique level at which `k` and `p`
/// fall in sibling blocks of size `B`: when the left block completes, its
/// contribution to the right sibling is added in one shot (by FFT for
/// large `B`). Total cost is `O(N log² N)`.
struct History<'a> {
    g: &'a [Complex64],
    w: Vec<Complex64>,
    acc: Vec<Complex64>,
    levels: Vec<FftLevel>,
}

struct FftLevel {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    /// Transform of `(0, g_1, …, g_{2B−1})`, pre-scaled by `1/2B`.
    kernel: Vec<Complex64>,
    buffer: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

impl<'a> History<'a> {
    fn new(g: &'a [Complex64]) -> Self {
        let len = g.len();
        let mut planner = FftPlanner::new();
        let mut levels = Vec::new();
        let mut block = 2 * DIRECT_BLOCK;
        while block < len {
            let size = 2 * block;
            let forward = planner.plan_fft_forward(size);
            let inverse = planner.plan_fft_inverse(size);
            let scale = 1.0 / size as f64;
            let mut kernel: Vec<Complex64> = (0..size)
                .map(|d| {
                    if d == 0 || d >= len {
                        Complex64::new(0.0, 0.0)
                    } else {
                        g[d] * scale
                    }
                })
                .collect();
            forward.process(&mut kernel);
            let scratch_len = forward.get_inplace_scratch_len().max(inverse.get_inplace_scratch_len());
            levels.push(FftLevel {
                forward,
                inverse,
                kernel,
                buffer: vec![Complex64::new(0.0, 0.0); size],
                scratch: vec![Complex64::new(0.0, 0.0); scratch_len],
            });
            block *= 2;
        }
        Self {
            g,
            w: Vec::with_capacity(len),
            acc: vec![Complex64::new(0.0, 0.0); len],
            levels,
        }
    }

    fn sum(&self, p: usize) -> Complex64 {
        self.acc[p]
    }

    /// Appends `w_m` and settles every block that `m` completes.
    fn push(&mut self, m: usize, value: Complex64) {
        debug_assert_eq!(self.w.len(), m);
        self.w.push(value);
        let len = self.acc.len();
        let done = m + 1;
        let mut block = 1;
        while done.is_multiple_of(block) && block < len {
            let index = done / block - 1;
            if index.is_multiple_of(2) {
                let a = done - block;
                let hi = (done + block).min(len);
                if done < hi {
                    if block <= DIRECT_BLOCK {
                        for p in done..hi {
                            let mut s = Complex64::new(0.0, 0.0);
                            for k in a..done {
                                s += self.g[p - k] * self.w[k];
                            }
                            self.acc[p] += s;
                        }
                    } else {
                        let level = &mut self.levels
                            [block.trailing_zeros() as usize - (2 * DIRECT_BLOCK).trailing_zeros() as usize];
                        let buf = &mut level.buffer;
                        buf[..block].copy_from_slice(&self.w[a..done]);
                        buf[block..].fill(Complex64::new(0.0, 0.0));
                        level.forward.process_with_scratch(buf, &mut level.scratch);
                        for (x, k) in buf.iter_mut().zip(&level.kernel) {
                            *x *= k;
                        }
                        level.inverse.process_with_scratch(buf, &mut level.scratch);
                        for (p, v) in (done..hi).zip(&buf[block..]) {
                            self.acc[p] += v;
                        }
                    }
                }
            }
            block *= 2;
        }
    }
}

/// Plain `O(N²)` reference for the history sums.
#[cfg(test)]
fn direct_history(g: &[Complex64], w: &[Complex64]) -> Vec<Complex64> {
    (0..w.len()).map(|p| (0..p).map(|k| g[p - k] * w[k]).sum()).collect()
}
