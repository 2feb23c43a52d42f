//! Regenerates a figure bundle as CSV files plus a plotting sidecar.
//!
//! Usage: `cargo run --release --example figure_export -- [ID] [DIR]`
//! (defaults: `1a`, `target/cohlab-figures`).

use std::path::PathBuf;

use cohlab::cli::{cmd_figure, Overrides, RunConfig};

fn main() -> cohlab::Result<()> {
    let mut args = std::env::args().skip(1);
    let id = args.next().unwrap_or_else(|| "1a".into());
    let out = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("target/cohlab-figures"));
    let cfg = RunConfig::load(
        None,
        &Overrides {
            out: Some(out),
            ..Default::default()
        },
    )?;
    let result = cmd_figure(&cfg, &id)?;
    for f in &result.files {
        println!("{}", f.display());
    }
    for f in &result.failures {
        eprintln!("tolerance: {f}");
    }
    Ok(())
}
