//! Parametrized cycles in `□³` over `k[[t]]`: admissibility, boundaries and `ρ_{m,r} = l_{m,r}∘∂`.

pub mod boundary;
pub mod coord;
pub mod family;
pub mod regulator;

pub use boundary::{admissibility_check, boundary, AdmissibilityReport, BoundaryPoint, CycleSpec, Face, UChart, Violation, ViolationKind};
pub use coord::{CoordFn, TPoly};
pub use family::CycleRecipe;
pub use regulator::{congruence_experiment, l_mr_point_residue, l_mr_points, rho_cycle, CongruenceReport};
