//! Sweeps the coupling strength and prints the terminal channel quality
//! from the long-format sweep table.

use cohlab::cli::{sweep_table, Overrides, RunConfig, Solver, SweepAxis};

fn main() -> cohlab::Result<()> {
    let cfg = RunConfig::load(
        None,
        &Overrides {
            s: Some(1.0),
            t_max: Some(500.0),
            solver: Some(Solver::Laplace),
            ..Default::default()
        },
    )?;
    let values = [0.0, 0.01, 0.05, 0.1, 0.2, 0.5, 1.0];
    let (table, _) = sweep_table(&cfg, SweepAxis::Eta0, &values)?;
    let col = |name: &str| table.column(name).expect("column");
    let (eta, t, conc, fid) = (col("eta0"), col("t"), col("C"), col("F"));
    let t_end = t.iter().cloned().fold(0.0, f64::max);
    println!("{:>6} {:>8} {:>8}   (t = {t_end})", "eta0", "C", "F");
    for k in (0..t.len()).filter(|&k| t[k] == t_end) {
        println!("{:>6} {:>8.4} {:>8.4}", eta[k], conc[k], fid[k]);
    }
    Ok(())
}
