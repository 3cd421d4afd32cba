//! Additive dilogarithms, infinitesimal regulators and the infinitesimal Chow
//! dilogarithm over truncated polynomial rings, in exact arithmetic.

pub mod algebra;
pub mod error;

pub use error::{Error, Result};
pub mod bloch;
pub mod kahler;
pub mod omega;
pub mod gen;
pub mod curve;
pub mod cycle;
pub mod suites;
