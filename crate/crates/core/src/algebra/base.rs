//! Base fields `k ∈ {ℚ, ℚ(x)}` with their closed points on the `s`-line.

use std::fmt;

use super::factor::{factor_q, gcd_free_basis, squarefree_decomposition};
use super::field::Field;
use super::numfield::Nf;
use super::poly::Poly;
use super::ratfunc::{RatFunc, Var};
use super::rational::Q;
use crate::error::{Error, Result};

/// A closed point of `ℙ¹_k`: a monic irreducible `π(s)` or `∞`.
#[derive(Clone, Debug, PartialEq)]
pub enum Point<K: Field> {
    Finite(Poly<K>),
    Infinity,
}

impl<K: Field> fmt::Display for Point<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Finite(p) => write!(f, "{}", p.render("s")),
            Point::Infinity => write!(f, "inf"),
        }
    }
}

impl<K: Field> Point<K> {
    /// The rational point `s = a`.
    pub fn rational(a: &K) -> Self {
        Point::Finite(Poly::linear_root(a))
    }

    pub fn key(&self) -> String {
        self.to_string()
    }
}

/// A base field together with residue fields of its closed points.
pub trait BaseField: Field {
    /// Residue fields of closed points.
    type Res: Field;

    /// Name used in reports.
    fn base_name() -> &'static str;

    /// The root of `π` in its residue field.
    fn point_root(pi: &Poly<Self>) -> Result<Self::Res>;

    /// The residue field at a rational point (with root 0), used at `∞`.
    fn rational_res(ctx: &Self) -> Self::Res;

    /// Embed a base element into the residue field of `root`.
    fn embed(root: &Self::Res, a: &Self) -> Self::Res;

    /// Field trace down to the base.
    fn trace(e: &Self::Res) -> Self;

    /// Residue degree of the field containing `e`.
    fn res_degree(e: &Self::Res) -> usize;

    /// Closed points dividing the given polynomials.
    fn closed_points(polys: &[Poly<Self>]) -> Result<Vec<Poly<Self>>>;

    /// Normalized trace: trace divided by the residue degree.
    fn normalized_trace(e: &Self::Res) -> Self {
        Self::trace(e).scale(&Q::new(1, Self::res_degree(e) as i64))
    }
}

impl BaseField for Q {
    type Res = Nf;

    fn base_name() -> &'static str {
        "Q"
    }

    fn point_root(pi: &Poly<Q>) -> Result<Nf> {
        if pi.deg() == Some(1) {
            let p = pi.monic();
            return Ok(Nf::rational().from_q(&p.coeff(0).neg()));
        }
        let nf = Nf::field_unchecked(pi.monic(), "a");
        Ok(nf.gen())
    }

    fn rational_res(_ctx: &Q) -> Nf {
        Nf::rational().zero_like()
    }

    fn embed(root: &Nf, a: &Q) -> Nf {
        root.from_q(a)
    }

    fn trace(e: &Nf) -> Q {
        e.trace()
    }

    fn res_degree(e: &Nf) -> usize {
        e.degree()
    }

    fn closed_points(polys: &[Poly<Q>]) -> Result<Vec<Poly<Q>>> {
        let mut out: Vec<Poly<Q>> = Vec::new();
        for b in gcd_free_basis(polys) {
            for (f, _) in factor_q(&b) {
                if !out.contains(&f) {
                    out.push(f);
                }
            }
        }
        out.sort_by(super::factor::poly_order);
        Ok(out)
    }
}

impl BaseField for RatFunc<Q> {
    type Res = RatFunc<Q>;

    fn base_name() -> &'static str {
        "Qx"
    }

    fn point_root(pi: &Poly<Self>) -> Result<Self> {
        if pi.deg() != Some(1) {
            return Err(Error::Unsupported(format!(
                "closed point {} of degree > 1 over Q(x)",
                pi.render("s")
            )));
        }
        Ok(pi.coeff(0).div(&pi.coeff(1)).expect("nonzero").neg())
    }

    fn rational_res(ctx: &Self) -> Self {
        ctx.zero_like()
    }

    fn embed(_root: &Self, a: &Self) -> Self {
        a.clone()
    }

    fn trace(e: &Self) -> Self {
        e.clone()
    }

    fn res_degree(_e: &Self) -> usize {
        1
    }

    fn closed_points(polys: &[Poly<Self>]) -> Result<Vec<Poly<Self>>> {
        let mut out = Vec::new();
        for b in gcd_free_basis(polys) {
            for (f, _) in squarefree_decomposition(&b) {
                if f.deg() != Some(1) {
                    return Err(Error::Unsupported(format!(
                        "factor {} of degree > 1 over Q(x); only rational points are supported",
                        f.render("s")
                    )));
                }
                if !out.contains(&f) {
                    out.push(f);
                }
            }
        }
        out.sort_by_key(|p: &Poly<Self>| p.render("s"));
        Ok(out)
    }
}

/// Embed `K(s)` into `E(s)` for the residue field `E` of `root`.
pub fn embed_ratfunc<K: BaseField>(root: &K::Res, f: &RatFunc<K>) -> RatFunc<K::Res> {
    let z = root.zero_like();
    let n = f.num().map(&z, |a| K::embed(root, a));
    let d = f.den().map(&z, |a| K::embed(root, a));
    RatFunc::new(n, d, Var::S)
}

/// Substitute `s = 1/w` and return the result as a function of `w` (still tagged `s`).
pub fn invert_variable<E: Field>(f: &RatFunc<E>) -> RatFunc<E> {
    let dn = f.num().deg().unwrap_or(0);
    let dd = f.den().deg().unwrap_or(0);
    let one = f.coeff_ctx().one_like();
    let rn = pad_reverse(f.num(), dn);
    let rd = pad_reverse(f.den(), dd);
    if dd >= dn {
        RatFunc::new(rn.mul(&Poly::monomial(one, dd - dn)), rd, Var::S)
    } else {
        RatFunc::new(rn, rd.mul(&Poly::monomial(one, dn - dd)), Var::S)
    }
}

fn pad_reverse<E: Field>(p: &Poly<E>, deg: usize) -> Poly<E> {
    let mut c: Vec<E> = (0..=deg).map(|k| p.coeff(k)).collect();
    c.reverse();
    Poly::new(c, p.ctx().zero_like())
}
