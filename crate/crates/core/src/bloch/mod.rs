//! Bloch symbols, wedges of units, the additive dilogarithm and the Milnor maps `λ_i`.

pub mod b2;
pub mod dilog;
pub mod milnor;
pub mod wedge;

pub use b2::{five_term, B2Elt, B2Tensor};
pub use dilog::{ell_i, ell_i_residue, ell_mr, ell_mr_pair, li_direct, li_mr, li_symbol};
pub use wedge::WedgeSum;
pub use milnor::{lambda_i_2, lambda_i_3};
