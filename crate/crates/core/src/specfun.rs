//! Exponential integrals, Dawson's integral and the gamma function.
//!
//! Only what the branch-cut denominators and the bath correlation need.
//! Every function is pure.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Positive zero of `Ei`.
const EI_ROOT: f64 = 0.372_507_410_781_366_6;

const EPS: f64 = 1e-16;

/// Principal-branch exponential integral `E1(z) = ∫₁^∞ e^{-zt}/t dt`.
///
/// The branch cut is the closed negative real axis; arguments with
/// `Im z == 0` and `Re z <= 0` are rejected. Approach the cut with a tiny
/// imaginary part instead: `E1(-x ± iδ) → -Ei(x) ∓ iπ`.
pub fn e1_complex(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain {
            func: "e1_complex",
            arg: format!("{z}"),
            reason: "non-finite argument",
        });
    }
    if z.im == 0.0 && z.re <= 0.0 {
        return Err(Error::Domain {
            func: "e1_complex",
            arg: format!("{z}"),
            reason: "on the branch cut",
        });
    }
    if z.re < -700.0 {
        return Err(Error::Overflow {
            func: "e1_complex",
            arg: format!("{z}"),
        });
    }
    let r = z.norm();
    // The series loses about (|z| + Re z)/ln 10 digits to cancellation.
    if r <= 2.0 || (z.re < 0.0 && r + z.re < 4.6) {
        Ok(e1_series(z))
    } else {
        e1_continued_fraction(z)
    }
}

fn e1_series(z: Complex64) -> Complex64 {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    let r = z.norm();
    for k in 1..10_000 {
        let kf = k as f64;
        term *= -z / kf;
        let add = term / kf;
        sum += add;
        if kf > r && add.norm() <= EPS * sum.norm() {
            break;
        }
    }
    -EULER_GAMMA - z.ln() - sum
}

// Modified Lentz evaluation of the even contraction
// E1(z) = e^{-z} / (z + 1 - 1²/(z + 3 - 2²/(z + 5 - ...))).
fn e1_continued_fraction(z: Complex64) -> Result<Complex64> {
    const TINY: f64 = 1e-300;
    let mut b = z + 1.0;
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..20_000 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = an * d + b;
        if d.norm() < TINY {
            d = Complex64::new(TINY, 0.0);
        }
        c = b + an / c;
        if c.norm() < TINY {
            c = Complex64::new(TINY, 0.0);
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if (del - 1.0).norm() < EPS {
            return Ok(h * (-z).exp());
        }
    }
    Err(Error::NonConvergence {
        what: "E1 continued fraction",
        achieved: f64::NAN,
        target: EPS,
    })
}

/// Principal-value exponential integral `Ei(x)` for `x > 0`.
pub fn ei_real(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            func: "ei_real",
            arg: format!("{x}"),
            reason: "requires x > 0",
        });
    }
    if x > 709.0 {
        return Err(Error::Overflow {
            func: "ei_real",
            arg: format!("{x}"),
        });
    }
    if (0.2..=0.6).contains(&x) {
        // Around the root the series cancels; integrate from the root instead.
        return Ok(quad::kronrod15_value(|t| t.exp() / t, EI_ROOT, x));
    }
    if x <= 40.0 {
        let mut term = 1.0;
        let mut sum = 0.0;
        for k in 1..500 {
            let kf = k as f64;
            term *= x / kf;
            let add = term / kf;
            sum += add;
            if add <= EPS * sum {
                break;
            }
        }
        return Ok(EULER_GAMMA + x.ln() + sum);
    }
    // Asymptotic series, truncated before the smallest term.
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        let next = term * k as f64 / x;
        if next > term {
            break;
        }
        term = next;
        sum += term;
        if term < EPS * sum {
            break;
        }
    }
    Ok(x.exp() / x * sum)
}

/// `Ei(x)` extended to negative arguments through `Ei(-y) = -E1(y)`.
pub(crate) fn ei_signed(x: f64) -> Result<f64> {
    if x > 0.0 {
        ei_real(x)
    } else {
        Ok(-e1_complex(Complex64::new(-x, 0.0))?.re)
    }
}

/// Dawson's integral `F(x) = e^{-x²} ∫₀ˣ e^{t²} dt`.
pub fn dawson(x: f64) -> f64 {
    let ax = x.abs();
    let v = if ax <= 7.0 {
        // e^{-x²} Σ x^{2k+1} / (k! (2k+1)): all terms positive.
        let x2 = ax * ax;
        let mut power = ax; // x^{2k+1}/k!
        let mut sum = ax;
        for k in 1..400 {
            let kf = k as f64;
            power *= x2 / kf;
            let add = power / (2.0 * kf + 1.0);
            sum += add;
            if add <= EPS * sum {
                break;
            }
        }
        (-x2).exp() * sum
    } else {
        // F(x) ~ Σ (2k-1)!! / (2^{k+1} x^{2k+1})
        let inv2x2 = 1.0 / (2.0 * ax * ax);
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..60 {
            let next = term * (2 * k - 1) as f64 * inv2x2;
            if next > term {
                break;
            }
            term = next;
            sum += term;
            if term < EPS * sum {
                break;
            }
        }
        sum / (2.0 * ax)
    };
    v.copysign(x)
}

/// Gamma function for positive real arguments.
pub fn gamma_real(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            func: "gamma_real",
            arg: format!("{x}"),
            reason: "requires x > 0",
        });
    }
    let g = statrs::function::gamma::gamma(x);
    if g.is_infinite() {
        return Err(Error::Overflow {
            func: "gamma_real",
            arg: format!("{x}"),
        });
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn e1_reference_values() {
        let v = e1_complex(Complex64::new(1.0, 0.0)).unwrap();
        assert!(rel(v.re, 0.219_383_934_395_520_27) < 1e-12);
        assert_eq!(v.im, 0.0);
        // continued-fraction branch
        let v = e1_complex(Complex64::new(5.0, 0.0)).unwrap();
        assert!(rel(v.re, 1.148_295_591_275_325_8e-3) < 1e-12, "{v}");
    }

    #[test]
    fn e1_rejects_branch_cut() {
        assert!(matches!(
            e1_complex(Complex64::new(-1.0, 0.0)),
            Err(Error::Domain { .. })
        ));
        assert!(e1_complex(Complex64::new(0.0, 0.0)).is_err());
        assert!(matches!(
            e1_complex(Complex64::new(-800.0, 1.0)),
            Err(Error::Overflow { .. })
        ));
    }

    #[test]
    fn e1_large_argument_asymptotics() {
        for &x in &[30.0, 100.0, 400.0] {
            let v = e1_complex(Complex64::new(x, 0.0)).unwrap();
            let ratio = v.re / ((-x).exp() / x);
            assert!((ratio - 1.0).abs() < 1.5 / x, "x={x} ratio={ratio}");
        }
    }

    #[test]
    fn e1_jump_across_negative_axis() {
        for &x in &[0.1, 0.5, 1.0, 3.0, 10.0, 35.0] {
            let ei = ei_real(x).unwrap();
            let above = e1_complex(Complex64::new(-x, 1e-15)).unwrap();
            let below = e1_complex(Complex64::new(-x, -1e-15)).unwrap();
            let scale = ei.abs().max(PI);
            assert!((above - Complex64::new(-ei, -PI)).norm() / scale < 1e-10, "x={x}");
            assert!((below - Complex64::new(-ei, PI)).norm() / scale < 1e-10, "x={x}");
        }
    }

    #[test]
    fn e1_derivative_matches_finite_difference() {
        let pts = [
            Complex64::new(0.3, 0.2),
            Complex64::new(1.5, -2.0),
            Complex64::new(4.0, 6.0),
            Complex64::new(-2.0, 0.5),
            Complex64::new(-1.0, 12.0),
        ];
        for &z in &pts {
            let h = 1e-5;
            let fd = (e1_complex(z + h).unwrap() - e1_complex(z - h).unwrap()) / (2.0 * h);
            let exact = -(-z).exp() / z;
            assert!((fd - exact).norm() / exact.norm() < 1e-6, "z={z}");
        }
    }

    #[test]
    fn ei_reference_values() {
        assert!(rel(ei_real(1.0).unwrap(), 1.895_117_816_355_936_8) < 1e-12);
        assert!(rel(ei_real(0.3).unwrap(), -0.302_668_539_265_825_9) < 1e-12);
        assert!(rel(ei_real(50.0).unwrap(), 1.058_563_689_713_169e20) < 1e-12);
        assert!(ei_real(EI_ROOT).unwrap().abs() < 1e-15);
        assert!(ei_real(0.0).is_err());
        assert!(ei_real(-1.0).is_err());
    }

    #[test]
    fn ei_small_argument_series() {
        for &x in &[1e-3, 0.05, 0.15] {
            let lhs = ei_real(x).unwrap() - x.ln() - EULER_GAMMA;
            let rhs: f64 = (1..30)
                .map(|k| x.powi(k) / (k as f64 * (1..=k).map(|j| j as f64).product::<f64>()))
                .sum();
            assert!((lhs - rhs).abs() < 1e-15, "x={x}");
        }
    }

    #[test]
    fn ei_continuous_at_method_switches() {
        for &x in &[0.2, 0.6, 40.0] {
            let lo = ei_real(x * (1.0 - 1e-12)).unwrap();
            let hi = ei_real(x * (1.0 + 1e-12)).unwrap();
            assert!(rel(lo, hi) < 1e-9, "x={x}");
        }
    }

    #[test]
    fn dawson_values() {
        assert_eq!(dawson(0.0), 0.0);
        assert!((dawson(0.924_138_873_004_59) - 0.541_044_224_635_18).abs() < 1e-12);
        assert!((dawson(-1.0) + 0.538_079_506_912_768_4).abs() < 1e-12);
        let x = 50.0;
        assert!((dawson(x) * 2.0 * x - 1.0).abs() < 1e-3);
    }

    #[test]
    fn dawson_satisfies_its_ode() {
        // F'(x) + 2x F(x) = 1
        for i in 0..40 {
            let x = -9.7 + 0.5 * i as f64;
            let h = 1e-3;
            let d = (8.0 * (dawson(x + h) - dawson(x - h)) - (dawson(x + 2.0 * h) - dawson(x - 2.0 * h))) / (12.0 * h);
            assert!((d + 2.0 * x * dawson(x) - 1.0).abs() < 1e-9, "x={x}");
        }
    }

    #[test]
    fn gamma_values() {
        assert!((gamma_real(1.0).unwrap() - 1.0).abs() < 1e-14);
        assert!(rel(gamma_real(1.5).unwrap(), PI.sqrt() / 2.0) < 1e-12);
        assert!(rel(gamma_real(4.0).unwrap(), 6.0) < 1e-12);
        assert!(gamma_real(0.0).is_err());
        assert!(gamma_real(-2.5).is_err());
    }
}
