//! Spreading each logical qubit over n modes without correction: the
//! phase-error rate grows with n and the channel gets worse.

use cohlab::codes::{bitflip_metrics, bitflip_p_e};
use cohlab::propagator::solve_laplace;
use cohlab::{BathSpec, TimeGrid};
use num_complex::Complex64;

fn main() -> cohlab::Result<()> {
    let alpha0 = Complex64::new(1.2, 0.0);
    let grid = TimeGrid::from_samples(vec![0.0, 10.0, 1e3])?;
    for s in [0.5, 1.0, 3.0] {
        let sol = solve_laplace(&BathSpec::new(s, 0.5, 1.0)?, 0.1, &grid)?;
        println!("eta0 = 0.5, s = {s}");
        for (&t, &u) in grid.samples().iter().zip(sol.u()).skip(1) {
            for n in [1, 3, 6, 9] {
                let m = bitflip_metrics(n, alpha0, u)?;
                println!(
                    "  t = {t:>6}, n = {n}: p_e = {:.4}, C = {:.4}, F = {:.4}",
                    bitflip_p_e(n, alpha0, u),
                    m.concurrence,
                    m.fidelity
                );
            }
        }
    }
    Ok(())
}
