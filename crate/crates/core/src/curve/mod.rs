//! `ℙ¹` over `k_m`: goodness, good local lifts, residues of good wedges and `ρ_{m,r}`.

pub mod cocycle;
pub mod model;
pub mod rho;

pub use cocycle::{res_b2_tensor, rho_curve_cocycle, rho_curve_cocycle_unchecked, validate_cocycle, Chart, CocycleChoices, CocycleData};
pub use model::{goodness_check, good_local_lift, res_good_wedge, restrict, Choices, CurveModel, Good, LocalChart, LocalLift, Padding};
pub use rho::{generic_lift, point_contribution, rho_curve_triple, support_points};
