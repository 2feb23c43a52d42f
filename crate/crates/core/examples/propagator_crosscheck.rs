//! Solves u(t) by time stepping and by Laplace inversion for the six
//! standard baths and reports the largest disagreement on [0, 1000].

use std::time::Instant;

use cohlab::propagator::{solve_laplace, solve_volterra};
use cohlab::{BathSpec, TimeGrid};

fn main() -> cohlab::Result<()> {
    let omega0 = 0.1;
    let grid = TimeGrid::uniform(1000.0, 2001)?;
    println!(
        "{:>5} {:>6} {:>6} {:>12} {:>10} {:>10}",
        "s", "eta0", "poles", "max|du|", "volterra", "laplace"
    );
    for eta0 in [0.01, 0.5] {
        for s in [0.5, 1.0, 3.0] {
            let bath = BathSpec::new(s, eta0, 1.0)?;
            let t0 = Instant::now();
            let v = solve_volterra(&bath, omega0, &grid)?;
            let tv = t0.elapsed().as_secs_f64();
            let t0 = Instant::now();
            let l = solve_laplace(&bath, omega0, &grid)?;
            let tl = t0.elapsed().as_secs_f64();
            println!(
                "{s:>5} {eta0:>6} {:>6} {:>12.3e} {:>9.2}s {:>9.2}s",
                l.poles().len(),
                v.max_abs_difference(&l)?,
                tv,
                tl
            );
        }
    }
    Ok(())
}
