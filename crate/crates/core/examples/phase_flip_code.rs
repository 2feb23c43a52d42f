//! Majority-vote phase-flip repetition code: corrected coherence c' and the
//! long-time channel quality as the code length grows.

use cohlab::codes::{corrected_c, corrected_channel_metrics};
use cohlab::propagator::solve_laplace;
use cohlab::qubit::phase_error_prob;
use cohlab::{BathSpec, TimeGrid};
use num_complex::Complex64;

fn main() -> cohlab::Result<()> {
    let alpha0 = Complex64::new(1.2, 0.0);
    println!("c' for p_e = 0.4:");
    for n in [1, 3, 9, 31, 101] {
        println!("  n = {n:>3}: {:.6}", corrected_c(n, 0.4)?);
    }
    let grid = TimeGrid::from_samples(vec![0.0, 1e3])?;
    for s in [0.5, 1.0, 3.0] {
        let u = solve_laplace(&BathSpec::new(s, 0.5, 1.0)?, 0.1, &grid)?.u()[1];
        println!(
            "eta0 = 0.5, s = {s}, t = 1000: p_e = {:.4}",
            phase_error_prob(alpha0, u)
        );
        for n in [1, 3, 9, 101] {
            let m = corrected_channel_metrics(alpha0, u, n)?;
            println!("  n = {n:>3}: C = {:.4}, F = {:.4}", m.concurrence, m.fidelity);
        }
    }
    Ok(())
}
