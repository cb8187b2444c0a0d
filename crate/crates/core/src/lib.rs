//! Discrete spectra of the conic oscillator `H0 = ½(−d²/dx² + |x|)` decorated
//! with zero-range interactions.
//!
//! Three perturbations are covered, each reduced to a scalar bound-state
//! equation in Airy functions:
//!
//! * [`delta`]: an attractive `−λ δ(x − x₀)` impurity, plus the inverse
//!   design problem of placing an impurity that reproduces two given levels;
//! * [`nonlocal`]: the renormalized rank-one `|δ′⟩⟨δ′|` interaction with
//!   coupling `β`, and its level crossings at `β₀ = −Ai(0)/Ai′(0)`;
//! * [`local`]: the local `−a δ(x) + b δ′(x)` interaction defined through a
//!   transfer matrix at the origin.
//!
//! The [`fd`] module is a brute-force finite-difference oracle used to
//! cross-check every analytic level.

// `!(x > 0.0)` style guards are deliberate: they reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Reference constants are written out to more digits than f64 holds.
#![allow(clippy::excessive_precision)]

pub mod airy;
pub mod delta;
mod eigen;
pub mod error;
pub mod fd;
pub mod local;
pub mod nonlocal;
pub mod numerics;
pub mod spectrum;

pub use eigen::{EigenResult, Level, LevelOrigin, Parity};
pub use error::{Result, SpectrumError};
