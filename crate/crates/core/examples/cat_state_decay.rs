//! A single coherent-state qubit c1|α⟩ + c2|−α⟩ under amplitude damping:
//! even/odd density matrix, phase-error probability and the operator-sum
//! form.

use cohlab::qubit::{coherence_factor, evolve_cat, operator_sum, phase_error_prob, CatState};
use num_complex::Complex64;

fn main() -> cohlab::Result<()> {
    let alpha0 = Complex64::new(1.2, 0.0);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let state = CatState::new(Complex64::new(r, 0.0), Complex64::new(0.0, r), alpha0)?;
    println!(
        "{:>6} {:>8} {:>8} {:>10} {:>10} {:>10}",
        "|u|", "c", "p_e", "rho_ee", "|rho_eo|", "purity"
    );
    for m in [1.0, 0.9, 0.7, 0.5, 0.3, 0.1, 0.0] {
        let u = Complex64::new(m, 0.0);
        let rho = evolve_cat(&state, u).even_odd();
        let purity = (rho * rho).trace().re;
        println!(
            "{m:>6.2} {:>8.4} {:>8.4} {:>10.5} {:>10.5} {purity:>10.5}",
            coherence_factor(alpha0, u),
            phase_error_prob(alpha0, u),
            rho[(0, 0)].re,
            rho[(0, 1)].norm()
        );
        let mismatch = (rho - operator_sum(&state, u)).norm();
        assert!(mismatch < 1e-10, "operator-sum form disagrees by {mismatch:e}");
    }
    Ok(())
}
