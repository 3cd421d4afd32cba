use std::fmt;

use crate::algebra::base::{embed_ratfunc, invert_variable, BaseField, Point};
use crate::algebra::laurent::order_at;
use crate::algebra::{Field, Poly, RatFunc, TSeries, Var, Q};
use crate::bloch::WedgeSum;
use crate::error::{check_modulus, Error, Result};
use crate::gen::{Gen, Sample};

/// How a lift to higher t-precision is completed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Padding {
    Zero,
    Random(u64),
}

impl Padding {
    pub(crate) fn gen(&self, salt: u64) -> Option<Gen> {
        match self {
            Padding::Zero => None,
            Padding::Random(s) => Some(Gen::new(s.wrapping_mul(0x9e37_79b9).wrapping_add(salt))),
        }
    }
}

/// The free choices in the construction of `ρ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Choices {
    /// Completion of the generic lift `γ̃_η`.
    pub generic: Padding,
    /// Completion of the good local lifts `ũ`.
    pub local: Padding,
    /// Completion of the point lifts `𝔠̃`.
    pub point_lift: Padding,
}

impl Choices {
    /// Zero padding everywhere.
    pub fn canonical() -> Self {
        Choices { generic: Padding::Zero, local: Padding::Zero, point_lift: Padding::Zero }
    }

    /// Independent random paddings derived from one seed.
    pub fn random(seed: u64) -> Self {
        Choices {
            generic: Padding::Random(seed.wrapping_mul(3).wrapping_add(1)),
            local: Padding::Random(seed.wrapping_mul(5).wrapping_add(2)),
            point_lift: Padding::Random(seed.wrapping_mul(7).wrapping_add(3)),
        }
    }
}

/// `ℙ¹` over `k_m` with chosen lifts of closed points; unlisted points lift constantly.
#[derive(Clone, Debug)]
pub struct CurveModel<K: BaseField> {
    m: usize,
    r: usize,
    ctx: K,
    lifts: Vec<(Point<K>, TSeries<K::Res>)>,
}

impl<K: BaseField> CurveModel<K> {
    pub fn new(ctx: &K, m: usize, r: usize) -> Result<Self> {
        check_modulus(m, r)?;
        Ok(CurveModel { m, r, ctx: ctx.zero_like(), lifts: Vec::new() })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn ctx(&self) -> &K {
        &self.ctx
    }

    /// Same model at another target weight.
    pub fn with_r(&self, r: usize) -> Result<Self> {
        check_modulus(self.m, r)?;
        Ok(CurveModel { r, ..self.clone() })
    }

    /// The root of a point in its residue field (`w = 0` at `∞`).
    pub fn root(&self, pt: &Point<K>) -> Result<K::Res> {
        match pt {
            Point::Finite(pi) => K::point_root(pi),
            Point::Infinity => Ok(K::rational_res(&self.ctx)),
        }
    }

    /// Register `a(t)` as the lift of `pt`; `a(0)` must be the root of `pt`.
    pub fn with_lift(mut self, pt: Point<K>, lift: TSeries<K::Res>) -> Result<Self> {
        if lift.prec() < self.m {
            return Err(Error::PrecisionExceeded { needed: self.m, available: lift.prec() });
        }
        let root = self.root(&pt)?;
        if lift.c0() != &root {
            return Err(Error::NotGood {
                point: pt.to_string(),
                order: 0,
                detail: format!("lift {} does not reduce to the point", lift),
            });
        }
        let lift = lift.with_prec(self.m)?;
        self.lifts.retain(|(p, _)| p != &pt);
        self.lifts.push((pt, lift));
        Ok(self)
    }

    pub fn lifts(&self) -> &[(Point<K>, TSeries<K::Res>)] {
        &self.lifts
    }

    /// The lift of `pt` mod `t^m`.
    pub fn lift(&self, pt: &Point<K>) -> Result<TSeries<K::Res>> {
        if let Some((_, l)) = self.lifts.iter().find(|(p, _)| p == pt) {
            return Ok(l.clone());
        }
        Ok(TSeries::constant(self.root(pt)?, self.m))
    }

    /// Points with a non-constant lift.
    pub fn lifted_points(&self) -> Vec<Point<K>> {
        self.lifts.iter().filter(|(_, l)| !l.is_t_constant()).map(|(p, _)| p.clone()).collect()
    }
}

/// A closed point with its root and chosen lift, in the local coordinate
/// (`s - root`, or `w = 1/s` at `∞`).
#[derive(Clone, Debug)]
pub struct LocalChart<K: BaseField> {
    pub point: Point<K>,
    pub root: K::Res,
    /// Lift `b(t)` mod `t^m`.
    pub lift: TSeries<K::Res>,
    pub ctx: K,
}

impl<K: BaseField> LocalChart<K> {
    pub fn new(model: &CurveModel<K>, pt: &Point<K>) -> Result<Self> {
        Ok(LocalChart { point: pt.clone(), root: model.root(pt)?, lift: model.lift(pt)?, ctx: model.ctx().clone() })
    }

    /// A function of `s` in the local coordinate over the residue field.
    pub fn localize(&self, f: &RatFunc<K>) -> RatFunc<K::Res> {
        let e = embed_ratfunc::<K>(&self.root, f);
        match self.point {
            Point::Finite(_) => e,
            Point::Infinity => invert_variable(&e),
        }
    }

    pub fn localize_series(&self, f: &TSeries<RatFunc<K>>) -> TSeries<RatFunc<K::Res>> {
        let z = RatFunc::constant(self.root.zero_like(), Var::S);
        f.map_into(&z, |a| self.localize(a))
    }

    fn regular(&self, g: &RatFunc<K::Res>) -> bool {
        !g.den().eval(&self.root).is_zero()
    }

    /// `𝔰 = z - b(t)` for a lift `b` of the root.
    pub fn uniformizer(&self, b: &TSeries<K::Res>) -> TSeries<RatFunc<K::Res>> {
        let zero = self.root.zero_like();
        let c: Vec<RatFunc<K::Res>> = b
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, bi)| {
                if i == 0 {
                    RatFunc::from_poly(Poly::new(vec![bi.neg(), zero.one_like()], zero.clone()), Var::S)
                } else {
                    RatFunc::constant(bi.neg(), Var::S)
                }
            })
            .collect();
        let z = RatFunc::constant(zero, Var::S);
        TSeries::from_coeffs(c, &z, b.prec())
    }

}

impl<K: BaseField + Sample> LocalChart<K> {
    /// The lift completed to precision `r`.
    pub fn padded_lift(&self, r: usize, pad: &Padding, salt: u64) -> TSeries<K::Res> {
        match pad.gen(salt) {
            None => self.lift.pad(r),
            Some(mut g) => self.lift.pad_with(r, |_| K::embed(&self.root, &K::sample(&mut g, &self.ctx))),
        }
    }
}

/// Result of a goodness check: `f = u·𝔰^n` with `u` a unit of the local ring mod `t^m`.
#[derive(Clone, Debug, PartialEq)]
pub struct Good<E: Field> {
    pub n: i64,
    pub u: TSeries<RatFunc<E>>,
}

impl<E: Field> fmt::Display for Good<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n = {}, u = {}", self.n, self.u)
    }
}

/// Check that `f ∈ k(s)[t]/(t^m)` is good at `pt` with respect to the model's lift.
pub fn goodness_check<K: BaseField>(f: &TSeries<RatFunc<K>>, pt: &Point<K>, model: &CurveModel<K>) -> Result<Good<K::Res>> {
    let chart = LocalChart::new(model, pt)?;
    goodness_local(&chart, &chart.localize_series(&f.with_prec(model.m())?))
}

pub(crate) fn goodness_local<K: BaseField>(chart: &LocalChart<K>, f: &TSeries<RatFunc<K::Res>>) -> Result<Good<K::Res>> {
    if f.c0().is_zero() {
        return Err(Error::ZeroInput);
    }
    let n = order_at(f.c0(), &chart.root);
    let unif = chart.uniformizer(&chart.lift.with_prec(f.prec())?);
    let u = f.mul(&unif.powi(-n)?);
    for (i, c) in u.coeffs().iter().enumerate() {
        if !chart.regular(c) {
            return Err(Error::NotGood {
                point: chart.point.to_string(),
                order: i,
                detail: format!("t^{} coefficient {} of the cofactor has a pole", i, c),
            });
        }
    }
    Ok(Good { n, u })
}

/// A good local lift `ũ·𝔰̃^n` at precision `r`, with the lifted cofactor and lift used.
#[derive(Clone, Debug)]
pub struct LocalLift<E: Field> {
    pub n: i64,
    pub u: TSeries<RatFunc<E>>,
    /// `ũ·𝔰̃^n`.
    pub value: TSeries<RatFunc<E>>,
}

/// Lift a good element to precision `r`: zero-pad or randomly pad `u` with polynomials
/// in `z - root`, and multiply by `𝔰̃^n` for the completed lift `b̃`.
pub fn good_local_lift<K: BaseField + Sample>(
    chart: &LocalChart<K>,
    good: &Good<K::Res>,
    b: &TSeries<K::Res>,
    r: usize,
    pad: &Padding,
    salt: u64,
) -> Result<LocalLift<K::Res>> {
    let u = match pad.gen(salt) {
        None => good.u.pad(r),
        Some(mut g) => {
            let root = chart.root.clone();
            let ctx = chart.ctx.clone();
            good.u.pad_with(r, |_| {
                let a = K::embed(&root, &K::sample(&mut g, &ctx));
                let c = K::embed(&root, &K::sample(&mut g, &ctx));
                // a + c·(z - root)
                let p = Poly::new(vec![a.sub(&c.mul(&root)), c], root.zero_like());
                RatFunc::from_poly(p, Var::S)
            })
        }
    };
    let value = u.mul(&chart.uniformizer(b).powi(good.n)?);
    Ok(LocalLift { n: good.n, u, value })
}

/// `ū = u(b̃(t))`, the restriction of a local unit to the lifted point.
pub fn restrict<E: Field>(u: &TSeries<RatFunc<E>>, b: &TSeries<E>) -> Result<TSeries<E>> {
    let n = u.prec();
    let b = b.with_prec(n)?;
    let zero = b.c0().zero_like();
    let mut acc = TSeries::zero(&zero, n);
    for (i, c) in u.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let num = b.eval_poly(c.num());
        let den = b.eval_poly(c.den());
        let v = num.mul(&den.inv()?);
        acc = acc.add(&TSeries::monomial(zero.one_like(), i, n).mul(&v));
    }
    Ok(acc)
}

/// `res_𝔠̃` of `Σ c·f₁∧f₂∧f₃` with `f_k = u_k 𝔰̃^{n_k}`:
/// `n₁ ū₂∧ū₃ - n₂ ū₁∧ū₃ + n₃ ū₁∧ū₂`.
pub fn res_good_wedge<E: Field>(terms: &[(Q, [LocalLift<E>; 3])], b: &TSeries<E>) -> Result<WedgeSum<E>> {
    let mut out = Vec::new();
    for (c, f) in terms {
        let ub: Vec<TSeries<E>> = f.iter().map(|l| restrict(&l.u, b)).collect::<Result<_>>()?;
        let pick = [(0usize, 1usize, 2usize, 1i64), (1, 0, 2, -1), (2, 0, 1, 1)];
        for (k, a, bb, sign) in pick {
            let n = f[k].n * sign;
            if n != 0 {
                out.push((c.mul(&Q::int(n)), vec![ub[a].clone(), ub[bb].clone()]));
            }
        }
    }
    WedgeSum::from_terms(2, out)
}
