use thiserror::Error;

/// Errors raised by the solvers, the state constructions and the CLI layer.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{func}: argument {arg} outside the domain ({reason})")]
    Domain {
        func: &'static str,
        arg: String,
        reason: &'static str,
    },

    #[error("{func}: result overflows for argument {arg}")]
    Overflow { func: &'static str, arg: String },

    #[error("no hand-derived inversion denominator for s = {s} and the generic fallback is disabled")]
    UnsupportedExponent { s: f64 },

    #[error("{what} did not converge (achieved error estimate {achieved:e}, target {target:e})")]
    NonConvergence {
        what: &'static str,
        achieved: f64,
        target: f64,
    },

    #[error("pole bracketing failed on the imaginary axis, scanned frequencies [{lo}, {hi}]")]
    PoleBracketing { lo: f64, hi: f64 },

    #[error("repetition code length must be odd, got n = {0}")]
    EvenCodeLength(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid time grid: {0}")]
    InvalidGrid(&'static str),

    #[error("eigen decomposition failed: {0}")]
    Eigen(&'static str),

    #[error("config error: {0}")]
    Config(String),

    #[error("unknown figure id `{0}` (expected one of 1a, 1b, 2a, 2b, 3, 4, 5, 6)")]
    UnknownFigure(String),

    #[error("unknown sweep axis `{0}` (expected one of eta0, s, n, alpha0, omega0)")]
    UnknownAxis(String),

    #[error("tolerance check failed: {0}")]
    Tolerance(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
