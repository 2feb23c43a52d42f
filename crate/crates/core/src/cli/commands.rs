use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rayon::prelude::*;

use super::config::{RunConfig, Solver};
use super::csv::CsvTable;
use crate::bath::{spectral_density, BathSpec};
use crate::codes::{bitflip_p_e, corrected_c, CodeConfig, CodeKind};
use crate::error::{Error, Result};
use crate::propagator::{solve_laplace, solve_volterra, TimeGrid};
use crate::qubit::phase_error_prob;

/// Largest accepted `max_t |u_volterra − u_laplace|` when both run.
pub const CROSS_SOLVER_TOL: f64 = 1e-3;

/// Caps the worker pool used by `figure` and `sweep`.
pub const THREADS_ENV: &str = "COHLAB_THREADS";

#[derive(Debug, Clone, Default)]
pub struct CommandOutput {
    pub files: Vec<PathBuf>,
    /// Internal tolerances that were missed; empty means success.
    pub failures: Vec<String>,
}

impl CommandOutput {
    fn absorb(&mut self, other: CommandOutput) {
        self.files.extend(other.files);
        self.failures.extend(other.failures);
    }
}

/// `u(t)` on the output axis from the requested solvers.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub volterra: Option<Vec<Complex64>>,
    pub laplace: Option<Vec<Complex64>>,
    /// `max_t |u_volterra − u_laplace|` when both ran.
    pub discrepancy: Option<f64>,
}

impl Trajectory {
    /// Laplace when available: it is evaluated on the output axis directly.
    pub fn primary(&self) -> &[Complex64] {
        self.laplace
            .as_deref()
            .or(self.volterra.as_deref())
            .expect("at least one solver ran")
    }

    fn failures(&self) -> Vec<String> {
        match self.discrepancy {
            Some(d) if !(d <= CROSS_SOLVER_TOL) => {
                vec![format!("cross-solver discrepancy {d:.3e} exceeds {CROSS_SOLVER_TOL:e}")]
            }
            _ => Vec::new(),
        }
    }

    fn footer(&self, table: &mut CsvTable) {
        if let Some(d) = self.discrepancy {
            let verdict = if d <= CROSS_SOLVER_TOL { "PASS" } else { "FAIL" };
            table.push_footer(format!("max |u_volterra - u_laplace| = {d:.3e}"));
            table.push_footer(format!("cross-solver tolerance {CROSS_SOLVER_TOL:e}: {verdict}"));
        }
    }
}

/// Source spacing for log-axis resampling, in units of `1/ωc`.
const RESAMPLE_STEP: f64 = 0.05;

pub fn output_grid(cfg: &RunConfig) -> Result<TimeGrid> {
    if cfg.log_output {
        TimeGrid::log(cfg.t_max(), cfg.output_points, cfg.t_min)
    } else {
        TimeGrid::uniform(cfg.t_max(), cfg.points)
    }
}

pub fn trajectory(cfg: &RunConfig) -> Result<Trajectory> {
    let bath = cfg.bath()?;
    let out = output_grid(cfg)?;
    let volterra = match cfg.solver {
        Solver::Laplace => None,
        _ => {
            let sol = if cfg.log_output {
                // Resample from the internal step so interpolation error
                // stays below the solver tolerance at early times.
                let step = cfg.t_max() / (cfg.points - 1) as f64;
                let refine = (step * cfg.omega_c / RESAMPLE_STEP).ceil().max(1.0) as usize;
                let dense = TimeGrid::uniform(cfg.t_max(), (cfg.points - 1) * refine + 1)?;
                solve_volterra(&bath, cfg.omega0, &dense)?.resample(&out)?
            } else {
                solve_volterra(&bath, cfg.omega0, &TimeGrid::uniform(cfg.t_max(), cfg.points)?)?
            };
            Some(sol.u().to_vec())
        }
    };
    let laplace = match cfg.solver {
        Solver::Volterra => None,
        _ => Some(solve_laplace(&bath, cfg.omega0, &out)?.u().to_vec()),
    };
    let discrepancy = match (&volterra, &laplace) {
        (Some(v), Some(l)) => Some(v.iter().zip(l).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)),
        _ => None,
    };
    Ok(Trajectory {
        times: out.samples().to_vec(),
        volterra,
        laplace,
        discrepancy,
    })
}

fn header(command: &str, cfg: &RunConfig) -> Vec<String> {
    let mut h = vec![format!("cohlab {} {command}", env!("CARGO_PKG_VERSION"))];
    h.extend(cfg.describe());
    h
}

fn tag(x: f64) -> String {
    format!("{x}")
}

fn bath_stem(cfg: &RunConfig) -> String {
    format!("s{}_eta{}", tag(cfg.s), tag(cfg.eta0))
}

fn code_stem(code: &CodeConfig) -> String {
    match code.kind() {
        CodeKind::None => String::new(),
        kind => format!("_{}{}", kind.as_str(), code.n()),
    }
}

fn push_u(row: &mut Vec<f64>, u: Complex64) {
    row.extend([u.re, u.im, u.norm()]);
}

/// Table of `t, Re u, Im u, |u|` per solver.
pub fn propagator_table(cfg: &RunConfig, traj: &Trajectory) -> CsvTable {
    let mut columns = vec!["t".to_string()];
    let solvers: Vec<(&str, &Vec<Complex64>)> = [("volterra", &traj.volterra), ("laplace", &traj.laplace)]
        .into_iter()
        .filter_map(|(name, u)| u.as_ref().map(|u| (name, u)))
        .collect();
    for (name, _) in &solvers {
        columns.extend([format!("re_u_{name}"), format!("im_u_{name}"), format!("abs_u_{name}")]);
    }
    let mut table = CsvTable::new(header("propagator", cfg), columns);
    for (k, &t) in traj.times.iter().enumerate() {
        let mut row = vec![t];
        for (_, u) in &solvers {
            push_u(&mut row, u[k]);
        }
        table.push_row(row);
    }
    traj.footer(&mut table);
    table
}

fn metric_columns(code: &CodeConfig) -> Vec<String> {
    let mut c: Vec<String> = ["C", "f_max", "F", "p_e"].iter().map(|s| s.to_string()).collect();
    match code.kind() {
        CodeKind::None => {}
        CodeKind::PhaseFlip => c.push("c_prime".into()),
        CodeKind::BitFlip => c.push("p_e_n".into()),
    }
    c
}

fn metric_row(alpha0: f64, code: &CodeConfig, u: Complex64) -> Result<Vec<f64>> {
    let a = Complex64::from(alpha0);
    let m = code.metrics(a, u)?;
    let p_e = phase_error_prob(a, u);
    let mut row = vec![m.concurrence, m.f_max, m.fidelity, p_e];
    match code.kind() {
        CodeKind::None => {}
        CodeKind::PhaseFlip => row.push(corrected_c(code.n(), p_e)?),
        CodeKind::BitFlip => row.push(bitflip_p_e(code.n(), a, u)),
    }
    Ok(row)
}

/// Table of `t, C, f_max, F, p_e` (plus the code column) from the primary
/// trajectory.
pub fn channel_table(cfg: &RunConfig, traj: &Trajectory) -> Result<CsvTable> {
    let mut columns = vec!["t".to_string()];
    columns.extend(metric_columns(&cfg.code));
    let mut table = CsvTable::new(header("channel", cfg), columns);
    for (&t, &u) in traj.times.iter().zip(traj.primary()) {
        let mut row = vec![t];
        row.extend(metric_row(cfg.alpha0, &cfg.code, u)?);
        table.push_row(row);
    }
    traj.footer(&mut table);
    Ok(table)
}

fn emit(table: &CsvTable, path: PathBuf, failures: Vec<String>) -> Result<CommandOutput> {
    table.write(&path)?;
    Ok(CommandOutput {
        files: vec![path],
        failures,
    })
}

pub fn cmd_propagator(cfg: &RunConfig) -> Result<CommandOutput> {
    let traj = trajectory(cfg)?;
    let path = cfg.out.join(format!("propagator_{}.csv", bath_stem(cfg)));
    emit(&propagator_table(cfg, &traj), path, traj.failures())
}

pub fn cmd_channel(cfg: &RunConfig) -> Result<CommandOutput> {
    let traj = trajectory(cfg)?;
    let path = cfg
        .out
        .join(format!("channel_{}{}.csv", bath_stem(cfg), code_stem(&cfg.code)));
    emit(&channel_table(cfg, &traj)?, path, traj.failures())
}

/// Runs `f` on a pool capped by [`THREADS_ENV`].
pub fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> Result<T> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::Config(format!("{THREADS_ENV} = `{v}` is not a positive integer")))?;
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Config(format!("worker pool: {e}")))?;
    Ok(pool.install(f))
}

pub const FIGURE_IDS: [&str; 8] = ["1a", "1b", "2a", "2b", "3", "4", "5", "6"];

const FIGURE_S: [f64; 3] = [0.5, 1.0, 3.0];

/// One computed curve set: a bath configuration and the codes drawn on it.
struct Panel {
    cfg: RunConfig,
    codes: Vec<CodeConfig>,
    propagator_only: bool,
}

fn figure_cfg(base: &RunConfig, s: f64, eta0: f64) -> RunConfig {
    RunConfig {
        s,
        eta0,
        omega_c: 1.0,
        omega0: 0.1,
        alpha0: 1.2,
        t_max: None,
        code: CodeConfig::none(),
        ..base.clone()
    }
}

fn figure_panels(base: &RunConfig, id: &str) -> Result<Vec<Panel>> {
    let (etas, kind, ns, propagator_only): (&[f64], CodeKind, &[usize], bool) = match id {
        "2a" => (&[0.01], CodeKind::None, &[1], true),
        "2b" => (&[0.5], CodeKind::None, &[1], true),
        "3" => (&[0.01, 0.5], CodeKind::None, &[1], false),
        "4" => (&[0.01], CodeKind::PhaseFlip, &[1, 3, 9, 101], false),
        "5" => (&[0.5], CodeKind::PhaseFlip, &[1, 3, 9, 101], false),
        "6" => (&[0.5], CodeKind::BitFlip, &[1, 3, 6, 9], false),
        other => return Err(Error::UnknownFigure(other.to_string())),
    };
    let mut panels = Vec::new();
    for &eta0 in etas {
        for &s in &FIGURE_S {
            let codes = ns
                .iter()
                .map(|&n| {
                    if n == 1 {
                        Ok(CodeConfig::none())
                    } else {
                        CodeConfig::new(kind, n)
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            panels.push(Panel {
                cfg: figure_cfg(base, s, eta0),
                codes,
                propagator_only,
            });
        }
    }
    Ok(panels)
}

fn spectral_figure(base: &RunConfig, id: &str) -> Result<CommandOutput> {
    let scaled = id == "1b";
    let mut out = CommandOutput::default();
    for &s in &FIGURE_S {
        let bath = BathSpec::new(s, 0.5, 1.0)?;
        let mut h = vec![format!("cohlab {} figure {id}", env!("CARGO_PKG_VERSION"))];
        h.extend([
            format!("s = {s}"),
            "eta0 = 0.5".to_string(),
            "omega_c = 1".to_string(),
            format!(
                "scaling = {}",
                if scaled { "eta_s = eta0 (e/s)^s" } else { "eta_s = eta0" }
            ),
        ]);
        let mut table = CsvTable::new(h, vec!["omega".into(), "J".into()]);
        for k in 0..=1000 {
            let w = k as f64 * 0.01;
            let j = if scaled {
                spectral_density(&bath, w)?
            } else {
                bath.spectral_density_unscaled(w)?
            };
            table.push_row(vec![w, j]);
        }
        let path = base.out.join(format!("fig{id}_s{}.csv", tag(s)));
        out.absorb(emit(&table, path, Vec::new())?);
    }
    out.files.push(write_recipe(base, id, &out.files)?);
    Ok(out)
}

fn recipe_text(id: &str, files: &[PathBuf]) -> String {
    let names: Vec<String> = files
        .iter()
        .filter_map(|p| p.file_name().map(|n| n.to_string_lossy().into_owned()))
        .collect();
    let (x, ys, xscale) = match id {
        "1a" | "1b" => ("omega", "J", "linear"),
        "2a" | "2b" => ("t", "abs_u_laplace (or abs_u_volterra)", "log"),
        _ => ("t", "C in the concurrence panels, F in the fidelity panels", "log"),
    };
    let mut s = format!("figure {id}\n");
    s.push_str("format: csv, '#' comment lines, one header row\n");
    s.push_str(&format!("x column: {x}\ny column: {ys}\n"));
    s.push_str(&format!(
        "x axis: {xscale} scale, units of 1/omega_c for t and omega_c for omega\n"
    ));
    s.push_str("y axis: linear scale\n");
    if matches!(id, "3" | "4" | "5" | "6") {
        s.push_str("reference line: F = 2/3 in the fidelity panels\n");
    }
    if id != "1a" && id != "1b" {
        s.push_str("log axis: skip the t = 0 row\n");
    }
    s.push_str("curves:\n");
    for n in names {
        s.push_str(&format!("  {n}\n"));
    }
    s
}

fn write_recipe(base: &RunConfig, id: &str, files: &[PathBuf]) -> Result<PathBuf> {
    let path = base.out.join(format!("fig{id}.plot.txt"));
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(&path, recipe_text(id, files))?;
    Ok(path)
}

/// Writes every curve of a figure with its fixed parameter bundle. Solver
/// settings and the output directory come from `base`.
pub fn cmd_figure(base: &RunConfig, id: &str) -> Result<CommandOutput> {
    if !FIGURE_IDS.contains(&id) {
        return Err(Error::UnknownFigure(id.to_string()));
    }
    if id == "1a" || id == "1b" {
        return spectral_figure(base, id);
    }
    let panels = figure_panels(base, id)?;
    let results: Vec<Result<CommandOutput>> = with_pool(|| panels.par_iter().map(|p| figure_panel(id, p)).collect())?;
    let mut out = CommandOutput::default();
    for r in results {
        out.absorb(r?);
    }
    out.files.push(write_recipe(base, id, &out.files)?);
    Ok(out)
}

fn figure_panel(id: &str, panel: &Panel) -> Result<CommandOutput> {
    let traj = trajectory(&panel.cfg)?;
    let mut out = CommandOutput {
        files: Vec::new(),
        failures: traj.failures(),
    };
    let dir: &Path = &panel.cfg.out;
    if panel.propagator_only {
        let path = dir.join(format!("fig{id}_s{}.csv", tag(panel.cfg.s)));
        propagator_table(&panel.cfg, &traj).write(&path)?;
        out.files.push(path);
        return Ok(out);
    }
    for code in &panel.codes {
        let cfg = RunConfig {
            code: *code,
            ..panel.cfg.clone()
        };
        let stem = match code.kind() {
            CodeKind::None => "n1".to_string(),
            _ => format!("n{}", code.n()),
        };
        let path = dir.join(format!("fig{id}_{}_{stem}.csv", bath_stem(&cfg)));
        channel_table(&cfg, &traj)?.write(&path)?;
        out.files.push(path);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    Eta0,
    S,
    N,
    Alpha0,
    Omega0,
}

impl SweepAxis {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "eta0" => Ok(SweepAxis::Eta0),
            "s" => Ok(SweepAxis::S),
            "n" => Ok(SweepAxis::N),
            "alpha0" => Ok(SweepAxis::Alpha0),
            "omega0" => Ok(SweepAxis::Omega0),
            other => Err(Error::UnknownAxis(other.to_string())),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            SweepAxis::Eta0 => "eta0",
            SweepAxis::S => "s",
            SweepAxis::N => "n",
            SweepAxis::Alpha0 => "alpha0",
            SweepAxis::Omega0 => "omega0",
        }
    }

    /// Whether changing this axis changes `u(t)`.
    fn moves_propagator(&self) -> bool {
        matches!(self, SweepAxis::Eta0 | SweepAxis::S | SweepAxis::Omega0)
    }
}

fn apply_axis(base: &RunConfig, axis: SweepAxis, value: f64) -> Result<RunConfig> {
    let mut cfg = base.clone();
    match axis {
        SweepAxis::Eta0 => cfg.eta0 = value,
        SweepAxis::S => cfg.s = value,
        SweepAxis::Alpha0 => cfg.alpha0 = value,
        SweepAxis::Omega0 => cfg.omega0 = value,
        SweepAxis::N => {
            if !(value >= 1.0 && value.fract() == 0.0) {
                return Err(Error::Config(format!(
                    "sweep value n = {value} is not a positive integer"
                )));
            }
            let kind = match base.code.kind() {
                CodeKind::None => CodeKind::PhaseFlip,
                k => k,
            };
            cfg.code = CodeConfig::new(kind, value as usize).map_err(|e| Error::Config(e.to_string()))?;
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Long-format sweep table keyed by `(value, t)`, rows in the order of
/// `values` and then time.
pub fn sweep_table(base: &RunConfig, axis: SweepAxis, values: &[f64]) -> Result<(CsvTable, Vec<String>)> {
    if values.is_empty() {
        return Err(Error::Config("sweep needs at least one value".into()));
    }
    let cfgs = values
        .iter()
        .map(|&v| apply_axis(base, axis, v))
        .collect::<Result<Vec<_>>>()?;
    // The propagator is shared across values when the axis does not move it.
    let trajectories: Vec<Trajectory> = if axis.moves_propagator() {
        with_pool(|| cfgs.par_iter().map(trajectory).collect::<Result<Vec<_>>>())??
    } else {
        vec![trajectory(&cfgs[0])?]
    };
    let code_columns = cfgs
        .iter()
        .map(|c| metric_columns(&c.code))
        .max_by_key(|c| c.len())
        .unwrap();
    let mut columns = vec![
        axis.as_str().to_string(),
        "t".into(),
        "re_u".into(),
        "im_u".into(),
        "abs_u".into(),
    ];
    columns.extend(code_columns.iter().cloned());
    let mut h = header("sweep", base);
    h.push(format!(
        "sweep {} = {}",
        axis.as_str(),
        values.iter().map(|v| tag(*v)).collect::<Vec<_>>().join(", ")
    ));
    let mut table = CsvTable::new(h, columns.clone());
    let mut failures = Vec::new();
    for (k, (cfg, &value)) in cfgs.iter().zip(values).enumerate() {
        let traj = &trajectories[if axis.moves_propagator() { k } else { 0 }];
        if axis.moves_propagator() || k == 0 {
            failures.extend(
                traj.failures()
                    .into_iter()
                    .map(|f| format!("{} = {value}: {f}", axis.as_str())),
            );
            if let Some(d) = traj.discrepancy {
                table.push_footer(format!(
                    "{} = {}: max |u_volterra - u_laplace| = {d:.3e}",
                    axis.as_str(),
                    tag(value)
                ));
            }
        }
        for (&t, &u) in traj.times.iter().zip(traj.primary()) {
            let mut row = vec![value, t];
            push_u(&mut row, u);
            let mut metrics = metric_row(cfg.alpha0, &cfg.code, u)?;
            metrics.resize(code_columns.len(), f64::NAN);
            row.extend(metrics);
            table.push_row(row);
        }
    }
    Ok((table, failures))
}

pub fn cmd_sweep(base: &RunConfig, axis: SweepAxis, values: &[f64]) -> Result<CommandOutput> {
    let (table, failures) = sweep_table(base, axis, values)?;
    let path = base.out.join(format!("sweep_{}.csv", axis.as_str()));
    emit(&table, path, failures)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::config::Overrides;

    fn quick(o: Overrides) -> RunConfig {
        RunConfig::resolve(&Overrides {
            t_max: Some(50.0),
            points: Some(501),
            output_points: Some(40),
            ..o
        })
        .unwrap()
    }

    #[test]
    fn uncoupled_modulus_is_one() {
        let cfg = quick(Overrides {
            eta0: Some(0.0),
            solver: Some(Solver::Volterra),
            ..Default::default()
        });
        let traj = trajectory(&cfg).unwrap();
        let t = propagator_table(&cfg, &traj);
        for v in t.column("abs_u_volterra").unwrap() {
            assert!((v - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn initial_row_matches_closed_form() {
        let cfg = quick(Overrides {
            eta0: Some(0.5),
            ..Default::default()
        });
        let traj = trajectory(&cfg).unwrap();
        assert!(traj.discrepancy.unwrap() < CROSS_SOLVER_TOL);
        let t = channel_table(&cfg, &traj).unwrap();
        let c = t.column("C").unwrap();
        assert!((c[0] - (2.0f64 * 1.44).tanh()).abs() < 1e-9);
    }

    #[test]
    fn axis_and_figure_ids() {
        assert!(matches!(SweepAxis::parse("omega_c"), Err(Error::UnknownAxis(_))));
        let base = RunConfig::default();
        assert!(matches!(cmd_figure(&base, "7"), Err(Error::UnknownFigure(_))));
        assert_eq!(figure_panels(&base, "5").unwrap().len(), 3);
        assert_eq!(figure_panels(&base, "3").unwrap().len(), 6);
    }

    #[test]
    fn alpha0_sweep_shares_the_propagator() {
        let cfg = quick(Overrides {
            eta0: Some(0.5),
            solver: Some(Solver::Laplace),
            ..Default::default()
        });
        let (t, _) = sweep_table(&cfg, SweepAxis::Alpha0, &[0.6, 1.2, 2.0]).unwrap();
        let rows = t.rows();
        assert_eq!(rows.len(), 3 * 40);
        for (k, a) in [0.6f64, 1.2, 2.0].iter().enumerate() {
            let row = &rows[k * 40];
            assert_eq!((row[0], row[1]), (*a, 0.0));
            assert!((row[5] - (2.0 * a * a).tanh()).abs() < 1e-9);
        }
    }
}
