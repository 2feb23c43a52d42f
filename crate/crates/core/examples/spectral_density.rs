//! Spectral densities J(ω) and bath correlations g(t) for the sub-Ohmic,
//! Ohmic and super-Ohmic baths, with the bound-state threshold in ω0.

use cohlab::bath::{correlation, spectral_density};
use cohlab::BathSpec;

fn main() -> cohlab::Result<()> {
    let eta0 = 0.5;
    for s in [0.5, 1.0, 3.0] {
        let bath = BathSpec::new(s, eta0, 1.0)?;
        println!(
            "s = {s}: eta_s = {:.4}, bound state for omega0 < {:.4}",
            bath.eta_s(),
            bath.pole_threshold()?
        );
        println!("  peak J({s}) = {:.6} = 2 pi eta0", spectral_density(&bath, s)?);
        println!("  {:>6} {:>12}   {:>6} {:>24}", "omega", "J", "t", "g(t)");
        let omegas = [0.1, 0.5, 1.0, 2.0, 5.0, 10.0];
        let times = [0.0, 0.5, 1.0, 2.0, 5.0, 20.0];
        for (w, t) in omegas.into_iter().zip(times) {
            let g = correlation(&bath, t)?;
            println!(
                "  {w:>6.2} {:>12.6}   {t:>6.1} {:>11.6} {:+11.6}i",
                spectral_density(&bath, w)?,
                g.re,
                g.im
            );
        }
    }
    Ok(())
}
