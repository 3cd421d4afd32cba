//! Kähler forms, residues, and the absolute regulators `α_j`, `β_m(j)`, `M_{m,r}`, `L_{m,r}`.

pub mod form;
pub mod regulators;
pub mod residue;

pub use form::{d, dlog, Form1, Form2};
pub use regulators::{alpha_j, beta_m, l_mr, l_mr_rel, m_mr};
pub use residue::residue_form;
