//! Rényi-entropy uncertainty bounds for generalized quantum measurements.
//!
//! Given one or two POVMs and a state, this crate computes outcome
//! distributions, their Rényi entropies, and five entropic lower bounds:
//! the coupled two-measurement bound `-2 log2 f(M,N|rho)` for conjugate
//! orders `1/alpha + 1/beta = 2`, the single-measurement bound
//! `-log2 max_i tr(M_i rho)`, their uncoupled sum, and the two
//! state-independent bounds built from operator norms. See [`bounds`] for
//! the formulas.
//!
//! Modules, bottom up:
//!
//! - [`linalg`]: dense complex matrices, Hermitian eigensolver, PSD square
//!   root, spectral norm.
//! - [`quantum`]: kets, density matrices, POVMs and outcome distributions.
//! - [`entropy`]: Rényi/Shannon entropies and conjugate orders.
//! - [`bounds`]: the `f` and `phi` functionals, every bound, and
//!   [`bounds::check_instance`].
//! - [`sampling`]: seeded random states and POVMs.
//! - [`scenarios`]: the `|0>` vs `|+>` discrimination example.
//! - [`cli`]: instance files and the `check`, `paper-example` and `fuzz`
//!   commands.

#![forbid(unsafe_code)]

pub mod bounds;
pub mod cli;
pub mod entropy;
pub mod error;
pub mod linalg;
pub mod quantum;
pub mod sampling;
pub mod scenarios;

pub use error::{Error, Result};
