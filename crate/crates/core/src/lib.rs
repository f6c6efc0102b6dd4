//! Numerical laboratory for resonance scattering in rigged Hilbert spaces.
//!
//! Modules, bottom up:
//!
//! - [`funcgrid`]: grids, sampled functions, test families, quadrature weights.
//! - [`transforms`]: Fourier and Hilbert transforms with pinned conventions.
//! - [`hardy`]: Riesz projections, half-plane continuation, line norms and the
//!   space of positive-axis restrictions with two Hardy extensions.
//! - [`scattering`]: rational and Friedrichs S-matrices, resonance poles and decay.
//! - [`rhs`]: states, kets, Gamow functionals and the pathology demonstrations.
//! - [`cli`]: experiment driver and report writer behind the `hscat` binary.

pub mod cli;
pub mod error;
pub mod funcgrid;
pub mod hardy;
pub mod quadrature;
pub mod rhs;
pub mod scattering;
pub mod transforms;

pub use error::{Error, Result};
