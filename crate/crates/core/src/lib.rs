//! Nonlinear geometric acoustics of a van der Waals gas in an
//! exponentially stratified atmosphere.
//!
//! The crate computes the transport coefficients of the weakly nonlinear
//! amplitude equation
//!
//! ```text
//! σ_t + A(t) σ σ_ξ − B(t) σ² σ_ξ + g(t) σ + c = 0
//! ```
//!
//! for a vertically ascending plane wave, solves it by characteristics and
//! by a conservative finite-volume scheme, and locates wave breaking from
//! the Jacobian of the characteristic map.
//!
//! Module map:
//! - [`thermo`]: equation of state and closed-form nonlinearity parameters.
//! - [`hyperbolic`]: the 5×5 Euler system and eigen-algebra oracles.
//! - [`atmosphere`]: stratification profiles, rays, attenuation.
//! - [`transport`]: coefficients, amplitude, characteristics, breaking.
//! - [`fv`]: finite-volume solver for the amplitude equation.
//! - [`params`]: admissibility and the anchor time.
//! - [`cli`]: command-line front end.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod atmosphere;
pub mod cli;
pub mod error;
pub mod fv;
pub mod hyperbolic;
pub mod ode;
pub mod params;
pub mod thermo;
pub mod transport;

pub use error::{Error, Result};
