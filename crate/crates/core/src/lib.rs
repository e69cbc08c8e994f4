//! Exact algebra engine for the Fermat cubic and its cube-root tower.
//!
//! Layers, bottom up:
//! - [`coeff`]: exact coefficient domains (ℚ, ℚ(ζ₉), 𝔽ₚ, ℤ/pᴺ, ℤ).
//! - [`poly`]: sparse polynomials, Gröbner bases, certified membership, colons.
//! - [`tower`], [`charp`], [`isogeny`], [`padic_approx`]: the experiments.
//! - [`report`]: experiment registry and canonical reports.

pub mod coeff;
pub mod charp;
pub mod error;
pub mod isogeny;
pub mod padic_approx;
pub mod poly;
pub mod report;
pub mod sample;
pub mod tower;

pub use error::{Error, Result};
