//! `Ω_{m,r}` on exponential generators, `ω_{m,r}` on pair liftings, reparametrizations.

pub mod generator;
pub mod homotopy;
pub mod pair;
pub mod reparam;

pub use generator::{expand_exponential, merge, omega_generators, omega_hat, Decomp, ExpGenerator, Slot};
pub use homotopy::{h_omega_35, h_omega_35_generators};
pub use pair::{omega_mr, omega_mr_pair, omega_mr_pair_termwise, res_omega_pair, PairWedge3};
pub use reparam::{reparam_const_taylor, reparam_exp_taylor, substitute_s, Reparam};
