//! Concurrence and teleportation fidelity of the two-mode channel along the
//! exact u(t) for weak and strong coupling.

use cohlab::channel::{channel_metrics, cluster_state_density, wootters_concurrence};
use cohlab::propagator::solve_laplace;
use cohlab::{BathSpec, TimeGrid};
use num_complex::Complex64;

fn main() -> cohlab::Result<()> {
    let alpha0 = Complex64::new(1.2, 0.0);
    let grid = TimeGrid::log(1e4, 9, 1.0)?;
    for eta0 in [0.01, 0.5] {
        for s in [0.5, 1.0, 3.0] {
            let sol = solve_laplace(&BathSpec::new(s, eta0, 1.0)?, 0.1, &grid)?;
            println!("eta0 = {eta0}, s = {s}");
            println!("  {:>8} {:>8} {:>8} {:>8}", "t", "C", "F", "C_oracle");
            for (&t, &u) in grid.samples().iter().zip(sol.u()) {
                let m = channel_metrics(alpha0, u)?;
                let oracle = wootters_concurrence(&cluster_state_density(alpha0, u)?)?;
                println!("  {t:>8.0} {:>8.4} {:>8.4} {oracle:>8.4}", m.concurrence, m.fidelity);
            }
        }
    }
    Ok(())
}
