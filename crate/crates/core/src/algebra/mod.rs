//! Exact arithmetic for the coefficient tower and truncated series in `t`.

pub mod base;
pub mod factor;
pub mod field;
pub mod hensel;
pub mod laurent;
pub mod linearize;
pub mod numfield;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod series;

pub use field::Field;
pub use laurent::{laurent_expand, Laurent};
pub use numfield::Nf;
pub use poly::Poly;
pub use ratfunc::{RatFunc, Var};
pub use rational::Q;
pub use series::TSeries;

/// `ℚ(s)`.
pub type Qs = RatFunc<Q>;
/// `ℚ(x)`.
pub type Qx = RatFunc<Q>;
/// `ℚ(x)(s)`.
pub type Qxs = RatFunc<RatFunc<Q>>;

/// The variable `s` of `ℚ(s)`.
pub fn qs_var() -> Qs {
    RatFunc::var(&Q::zero(), Var::S)
}

/// An element of `ℚ(s)` from a rational constant.
pub fn qs_const(q: Q) -> Qs {
    RatFunc::constant(q, Var::S)
}

/// The variable `x` of `ℚ(x)`.
pub fn qx_var() -> Qx {
    RatFunc::var(&Q::zero(), Var::X)
}

/// The variable `s` of `ℚ(x)(s)`.
pub fn qxs_var() -> Qxs {
    RatFunc::var(&RatFunc::constant(Q::zero(), Var::X), Var::S)
}

/// The element `x` of `ℚ(x)(s)`.
pub fn qxs_x() -> Qxs {
    RatFunc::constant(qx_var(), Var::S)
}
