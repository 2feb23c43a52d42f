use std::path::PathBuf;

use clap::{Parser, Subcommand};

use super::config::{parse_code, Overrides, Solver};
use crate::error::Result;

#[derive(Debug, Parser)]
#[command(name = "cohlab", version, about = "Non-Markovian dynamics of coherent-state qubits")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Flat `key = value` config file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// volterra, laplace or both.
    #[arg(long, global = true)]
    pub solver: Option<String>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub s: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub eta0: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub omega0: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub alpha0: Option<f64>,
    /// none, phase or bit.
    #[arg(long, global = true)]
    pub code: Option<String>,
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub tmax: Option<f64>,
    /// Samples of the uniform solver grid.
    #[arg(long, global = true)]
    pub points: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// u(t) from the configured solvers.
    Propagator,
    /// Concurrence and teleportation fidelity of the two-qubit channel.
    Channel,
    /// Fixed parameter bundle: 1a, 1b, 2a, 2b, 3, 4, 5 or 6.
    Figure { id: String },
    /// Long-format sweep over eta0, s, n, alpha0 or omega0.
    Sweep {
        axis: String,
        #[arg(required = true, value_delimiter = ',', allow_negative_numbers = true)]
        values: Vec<f64>,
    },
}

impl Cli {
    pub fn overrides(&self) -> Result<Overrides> {
        Ok(Overrides {
            s: self.s,
            eta0: self.eta0,
            omega0: self.omega0,
            alpha0: self.alpha0,
            t_max: self.tmax,
            points: self.points,
            code: self.code.as_deref().map(parse_code).transpose()?,
            n: self.n,
            solver: self.solver.as_deref().map(Solver::parse).transpose()?,
            out: self.out.clone(),
            ..Default::default()
        })
    }
}
