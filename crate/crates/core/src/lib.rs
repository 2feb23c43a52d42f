//! Exact non-Markovian dynamics of optical coherent-state qubits.
//!
//! A coherent-state mode coupled to a zero-temperature bosonic bath is
//! fully described by one complex function, the propagator `u(t)`, which
//! solves a memory-kernel equation of motion. This crate computes `u(t)`
//! two independent ways (direct time stepping and Laplace inversion with
//! a pole/branch-cut split), maps it onto single-qubit and two-qubit
//! states, and evaluates entanglement, teleportation fidelity and the
//! effect of repetition codes on a noisy two-qubit channel.
//!
//! ```
//! use cohlab::{bath::BathSpec, propagator, channel};
//! use num_complex::Complex64;
//!
//! let bath = BathSpec::new(3.0, 0.5, 1.0).unwrap();
//! let poles = propagator::find_poles(&bath, 0.1).unwrap();
//! assert_eq!(poles.len(), 1);
//!
//! // Long-time channel quality is set by the localized-mode residue.
//! let u_inf = Complex64::new(poles[0].residue.norm(), 0.0);
//! let alpha0 = Complex64::new(1.2, 0.0);
//! let f = channel::fef_closed(alpha0, u_inf);
//! assert!(channel::teleportation_fidelity(f).unwrap() < 2.0 / 3.0);
//! ```

// `!(x <= tol)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bath;
pub mod channel;
pub mod cli;
pub mod codes;
pub mod error;
pub mod propagator;
pub mod quad;
pub mod qubit;
pub mod specfun;

pub use bath::BathSpec;
pub use channel::{ChannelMetrics, TwoQubitState};
pub use codes::{CodeConfig, CodeKind};
pub use error::{Error, Result};
pub use propagator::{Method, PropagatorSolution, TimeGrid};
