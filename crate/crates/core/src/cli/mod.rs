//! Command-line front end: config resolution, experiment orchestration and
//! CSV emission. The `cohlab` binary is a thin wrapper around [`run`].

pub mod args;
pub mod commands;
pub mod config;
pub mod csv;

pub use args::{Cli, Command};
pub use commands::{
    cmd_channel, cmd_figure, cmd_propagator, cmd_sweep, sweep_table, CommandOutput, SweepAxis, Trajectory,
};
pub use config::{Overrides, RunConfig, Solver};
pub use csv::CsvTable;

use crate::error::Result;

/// Executes a parsed command line.
pub fn run(cli: &Cli) -> Result<CommandOutput> {
    let cfg = RunConfig::load(cli.config.as_deref(), &cli.overrides()?)?;
    match &cli.command {
        Command::Propagator => cmd_propagator(&cfg),
        Command::Channel => cmd_channel(&cfg),
        Command::Figure { id } => cmd_figure(&cfg, id),
        Command::Sweep { axis, values } => cmd_sweep(&cfg, SweepAxis::parse(axis)?, values),
    }
}
