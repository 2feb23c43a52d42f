//! Strong coupling: the off-band pole of the resolvent and the non-decaying
//! part of u(t) it produces.

use cohlab::propagator::{find_poles, solve_laplace};
use cohlab::{BathSpec, TimeGrid};

fn main() -> cohlab::Result<()> {
    let omega0 = 0.1;
    let grid = TimeGrid::log(1e4, 9, 1.0)?;
    for s in [0.5, 1.0, 3.0] {
        let bath = BathSpec::new(s, 0.5, 1.0)?;
        for p in find_poles(&bath, omega0)? {
            println!(
                "s = {s}: pole at omega = {:.6}, residue {:.6}",
                p.frequency, p.residue.re
            );
        }
        let sol = solve_laplace(&bath, omega0, &grid)?;
        let trace: Vec<String> = sol.u().iter().map(|u| format!("{:.4}", u.norm())).collect();
        println!("  |u| at t = {:?}: {}", grid.samples(), trace.join(" "));
        println!("  steady modulus {:.6}", sol.steady_modulus());
    }
    Ok(())
}
