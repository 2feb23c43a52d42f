//! The special functions behind the closed-form bath integrals.

use cohlab::specfun::{dawson, e1_complex, ei_real, gamma_real};
use num_complex::Complex64;

fn main() -> cohlab::Result<()> {
    for x in [0.5, 1.0, 2.0, 5.0] {
        println!(
            "x = {x}: Gamma = {:.12}, Ei = {:.12}, Dawson = {:.12}",
            gamma_real(x)?,
            ei_real(x)?,
            dawson(x)
        );
    }
    for z in [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.5, 2.0),
        Complex64::new(-2.0, 1e-3),
    ] {
        let e = e1_complex(z)?;
        println!("E1({z}) = {:.12} {:+.12}i", e.re, e.im);
    }
    Ok(())
}
