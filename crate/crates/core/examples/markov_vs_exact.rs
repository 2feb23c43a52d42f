//! Weak-coupling decay of |u(t)| against the Markov exponential at the bare
//! frequency and at the Lamb-shifted frequency.

use cohlab::bath::spectral_density;
use cohlab::propagator::{lamb_shift, markov_u, solve_volterra};
use cohlab::{BathSpec, TimeGrid};

fn main() -> cohlab::Result<()> {
    let omega0 = 0.1;
    let bath = BathSpec::new(1.0, 0.01, 1.0)?;
    let shifted = lamb_shift(&bath, omega0)?;
    let rate = spectral_density(&bath, shifted.omega0_prime)?;
    println!("omega0' = {:.5} (shift {:+.5})", shifted.omega0_prime, shifted.shift());
    println!(
        "J(omega0) = {:.5}, J(omega0') = {rate:.5}",
        spectral_density(&bath, omega0)?
    );

    let grid = TimeGrid::uniform(400.0, 801)?;
    let exact = solve_volterra(&bath, omega0, &grid)?;
    println!("{:>6} {:>10} {:>10} {:>10}", "t", "exact", "bare", "shifted");
    for (k, (&t, u)) in grid.samples().iter().zip(exact.u()).enumerate() {
        if k % 80 == 0 {
            let bare = markov_u(&bath, omega0, t)?.norm();
            println!(
                "{t:>6.0} {:>10.5} {bare:>10.5} {:>10.5}",
                u.norm(),
                (-0.5 * rate * t).exp()
            );
        }
    }
    Ok(())
}
