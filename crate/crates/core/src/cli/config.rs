use std::path::{Path, PathBuf};

use crate::bath::BathSpec;
use crate::codes::{CodeConfig, CodeKind};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Solver {
    Volterra,
    Laplace,
    Both,
}

impl Solver {
    pub fn as_str(&self) -> &'static str {
        match self {
            Solver::Volterra => "volterra",
            Solver::Laplace => "laplace",
            Solver::Both => "both",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "volterra" => Ok(Solver::Volterra),
            "laplace" => Ok(Solver::Laplace),
            "both" => Ok(Solver::Both),
            other => Err(Error::Config(format!(
                "solver `{other}` (expected volterra, laplace or both)"
            ))),
        }
    }
}

pub fn parse_code(s: &str) -> Result<CodeKind> {
    match s {
        "none" => Ok(CodeKind::None),
        "phase" => Ok(CodeKind::PhaseFlip),
        "bit" => Ok(CodeKind::BitFlip),
        other => Err(Error::Config(format!("code `{other}` (expected none, phase or bit)"))),
    }
}

/// Values that may come from the config file or the command line; `None`
/// leaves the lower-precedence source in charge.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub s: Option<f64>,
    pub eta0: Option<f64>,
    pub omega_c: Option<f64>,
    pub omega0: Option<f64>,
    pub alpha0: Option<f64>,
    pub t_max: Option<f64>,
    pub points: Option<usize>,
    pub log_output: Option<bool>,
    pub output_points: Option<usize>,
    pub t_min: Option<f64>,
    pub code: Option<CodeKind>,
    pub n: Option<usize>,
    pub solver: Option<Solver>,
    pub out: Option<PathBuf>,
}

impl Overrides {
    fn layer(&mut self, top: &Overrides) {
        macro_rules! take {
            ($($f:ident),*) => {$(
                if top.$f.is_some() {
                    self.$f = top.$f.clone();
                }
            )*};
        }
        take!(
            s,
            eta0,
            omega_c,
            omega0,
            alpha0,
            t_max,
            points,
            log_output,
            output_points,
            t_min,
            code,
            n,
            solver,
            out
        );
    }
}

/// Fully resolved run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub s: f64,
    pub eta0: f64,
    pub omega_c: f64,
    pub omega0: f64,
    pub alpha0: f64,
    /// Explicit time window; see [`RunConfig::t_max`].
    pub t_max: Option<f64>,
    /// Samples of the uniform solver grid.
    pub points: usize,
    /// Resample output onto a log-spaced time axis.
    pub log_output: bool,
    pub output_points: usize,
    /// First nonzero time of the log axis.
    pub t_min: f64,
    pub code: CodeConfig,
    pub solver: Solver,
    pub out: PathBuf,
}

/// Weak coupling decays on `1/J(ω0)` and needs the longer window.
const WEAK_COUPLING_MAX: f64 = 0.1;

impl Default for RunConfig {
    fn default() -> Self {
        Self::resolve(&Overrides::default()).expect("defaults are valid")
    }
}

impl RunConfig {
    /// Defaults, then `file`, then `cli`.
    pub fn load(file: Option<&Path>, cli: &Overrides) -> Result<Self> {
        let mut merged = match file {
            Some(path) => {
                let text =
                    std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
                parse_config_text(&text).map_err(|e| prefixed(&path.display().to_string(), e))?
            }
            None => Overrides::default(),
        };
        merged.layer(cli);
        Self::resolve(&merged)
    }

    pub fn resolve(o: &Overrides) -> Result<Self> {
        let kind = o.code.unwrap_or(CodeKind::None);
        let n = o.n.unwrap_or(if kind == CodeKind::None { 1 } else { 3 });
        let cfg = Self {
            s: o.s.unwrap_or(1.0),
            eta0: o.eta0.unwrap_or(0.01),
            omega_c: o.omega_c.unwrap_or(1.0),
            omega0: o.omega0.unwrap_or(0.1),
            alpha0: o.alpha0.unwrap_or(1.2),
            t_max: o.t_max,
            points: o.points.unwrap_or(20_001),
            log_output: o.log_output.unwrap_or(true),
            output_points: o.output_points.unwrap_or(400),
            t_min: o.t_min.unwrap_or(1e-2),
            code: CodeConfig::new(kind, n).map_err(|e| Error::Config(e.to_string()))?,
            solver: o.solver.unwrap_or(Solver::Both),
            out: o.out.clone().unwrap_or_else(|| PathBuf::from("out")),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        let positive = [
            ("s", self.s),
            ("omega_c", self.omega_c),
            ("omega0", self.omega0),
            ("alpha0", self.alpha0),
            ("t_max", self.t_max()),
            ("t_min", self.t_min),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("field `{name}` must be positive, got {v}")));
            }
        }
        if !(self.eta0 >= 0.0 && self.eta0.is_finite()) {
            return Err(Error::Config(format!("field `eta0` must be >= 0, got {}", self.eta0)));
        }
        if self.points < 4 {
            return Err(Error::Config("field `points` must be at least 4".into()));
        }
        if self.output_points < 3 {
            return Err(Error::Config("field `output_points` must be at least 3".into()));
        }
        if self.log_output && self.t_min >= self.t_max() {
            return Err(Error::Config("field `t_min` must be below `t_max`".into()));
        }
        Ok(())
    }

    /// Time window in units of `1/ωc`: explicit value, else `10⁴` at weak
    /// coupling (`η0 <= 0.1`) and `10³` otherwise.
    pub fn t_max(&self) -> f64 {
        self.t_max
            .unwrap_or(if self.eta0 <= WEAK_COUPLING_MAX { 1e4 } else { 1e3 })
    }

    pub fn bath(&self) -> Result<BathSpec> {
        BathSpec::new(self.s, self.eta0, self.omega_c)
    }

    /// `key = value` lines recording every resolved field.
    pub fn describe(&self) -> Vec<String> {
        vec![
            format!("s = {}", self.s),
            format!("eta0 = {}", self.eta0),
            format!("omega_c = {}", self.omega_c),
            format!("omega0 = {}", self.omega0),
            format!("alpha0 = {}", self.alpha0),
            format!("t_max = {}", self.t_max()),
            format!("points = {}", self.points),
            format!("log_output = {}", self.log_output),
            format!("output_points = {}", self.output_points),
            format!("t_min = {}", self.t_min),
            format!("code = {}", self.code.kind().as_str()),
            format!("n = {}", self.code.n()),
            format!("solver = {}", self.solver.as_str()),
            format!("out = {}", self.out.display()),
        ]
    }
}

// Adds location context without repeating the error kind.
fn prefixed(prefix: &str, e: Error) -> Error {
    match e {
        Error::Config(m) => Error::Config(format!("{prefix}: {m}")),
        other => Error::Config(format!("{prefix}: {other}")),
    }
}

/// Parses a flat `key = value` file (TOML syntax, no tables).
pub fn parse_config_text(text: &str) -> Result<Overrides> {
    let table: toml::Table = text.parse().map_err(|e: toml::de::Error| {
        let line = e.span().map(|s| text[..s.start.min(text.len())].lines().count().max(1));
        match line {
            Some(l) => Error::Config(format!("line {l}: {}", e.message())),
            None => Error::Config(e.message().to_string()),
        }
    })?;
    let line_of = |key: &str| {
        text.lines()
            .position(|l| {
                let l = l.trim_start();
                l.strip_prefix(key)
                    .is_some_and(|rest| rest.trim_start().starts_with('='))
            })
            .map_or(0, |i| i + 1)
    };
    let mut o = Overrides::default();
    for (key, value) in &table {
        let bad = |expected: &str| {
            Error::Config(format!(
                "line {}: field `{key}`: expected {expected}, got {}",
                line_of(key),
                value.type_str()
            ))
        };
        let number = || -> Result<f64> {
            match value {
                toml::Value::Float(f) => Ok(*f),
                toml::Value::Integer(i) => Ok(*i as f64),
                _ => Err(bad("a number")),
            }
        };
        let count = || -> Result<usize> {
            match value {
                toml::Value::Integer(i) if *i >= 0 => Ok(*i as usize),
                _ => Err(bad("a non-negative integer")),
            }
        };
        let string = || -> Result<&str> { value.as_str().ok_or_else(|| bad("a string")) };
        let with_line = |e: Error| prefixed(&format!("line {}", line_of(key)), e);
        match key.as_str() {
            "s" => o.s = Some(number()?),
            "eta0" => o.eta0 = Some(number()?),
            "omega_c" => o.omega_c = Some(number()?),
            "omega0" => o.omega0 = Some(number()?),
            "alpha0" => o.alpha0 = Some(number()?),
            "t_max" | "tmax" => o.t_max = Some(number()?),
            "t_min" => o.t_min = Some(number()?),
            "points" => o.points = Some(count()?),
            "output_points" => o.output_points = Some(count()?),
            "n" => o.n = Some(count()?),
            "log_output" => o.log_output = Some(value.as_bool().ok_or_else(|| bad("a boolean"))?),
            "code" => o.code = Some(parse_code(string()?).map_err(with_line)?),
            "solver" => o.solver = Some(Solver::parse(string()?).map_err(with_line)?),
            "out" => o.out = Some(PathBuf::from(string()?)),
            other => {
                return Err(Error::Config(format!(
                    "line {}: unknown field `{other}`",
                    line_of(other)
                )))
            }
        }
    }
    Ok(o)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = RunConfig::default();
        assert_eq!((c.s, c.eta0, c.omega0, c.alpha0), (1.0, 0.01, 0.1, 1.2));
        assert_eq!(c.t_max(), 1e4);
        assert_eq!(c.code.kind(), CodeKind::None);
        let strong = RunConfig::resolve(&Overrides {
            eta0: Some(0.5),
            ..Default::default()
        })
        .unwrap();
        assert_eq!(strong.t_max(), 1e3);
    }

    #[test]
    fn precedence_cli_over_file_over_default() {
        let file = parse_config_text("s = 3\neta0 = 0.5\nalpha0 = 2\n").unwrap();
        let mut merged = file;
        merged.layer(&Overrides {
            eta0: Some(0.2),
            ..Default::default()
        });
        let c = RunConfig::resolve(&merged).unwrap();
        assert_eq!((c.s, c.eta0, c.alpha0, c.omega0), (3.0, 0.2, 2.0, 0.1));
    }

    #[test]
    fn diagnostics_name_line_and_field() {
        let err = parse_config_text("s = 1\neta0 = \"big\"\n").unwrap_err().to_string();
        assert!(err.contains("line 2") && err.contains("eta0"), "{err}");
        let err = parse_config_text("s = 1\n\nbogus = 2\n").unwrap_err().to_string();
        assert!(err.contains("line 3") && err.contains("bogus"), "{err}");
        let err = parse_config_text("s = 1\nsolver = \"magic\"\n")
            .unwrap_err()
            .to_string();
        assert!(err.contains("line 2") && err.contains("magic"), "{err}");
        let err = parse_config_text("s = = 1\n").unwrap_err().to_string();
        assert!(err.contains("line 1"), "{err}");
    }

    #[test]
    fn rejects_invalid_values() {
        let o = Overrides {
            code: Some(CodeKind::PhaseFlip),
            n: Some(4),
            ..Default::default()
        };
        assert!(RunConfig::resolve(&o).is_err());
        let o = Overrides {
            alpha0: Some(-1.0),
            ..Default::default()
        };
        assert!(RunConfig::resolve(&o).is_err());
    }
}
