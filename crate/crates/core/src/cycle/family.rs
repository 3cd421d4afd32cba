//! Seeded admissible cycles and partners congruent to them mod `t^m`.

use super::boundary::CycleSpec;
use super::coord::{CoordFn, TPoly};
use crate::algebra::{Field, Poly, TSeries, Q};
use crate::error::Result;
use crate::gen::Gen;

/// `P(u, t)` given by its `t`-coefficients, raised to `e`.
#[derive(Clone, Debug)]
pub struct Factor {
    pub p: Vec<Poly<Q>>,
    pub e: i64,
}

/// `c(t)·Π P_k^{e_k}`.
#[derive(Clone, Debug)]
pub struct CoordRecipe {
    pub c: Vec<Q>,
    pub factors: Vec<Factor>,
}

#[derive(Clone, Debug)]
pub struct CycleRecipe {
    pub coords: [CoordRecipe; 3],
    /// Reparametrize by `u ↦ u + e·t^k`.
    pub shift: Option<(Q, usize)>,
    used: Vec<i64>,
}

fn zq() -> Q {
    Q::zero()
}

fn lin(a: &[Q]) -> Vec<Poly<Q>> {
    let mut p = vec![Poly::new(vec![a[0].neg(), Q::one()], zq())];
    p.extend(a[1..].iter().map(|x| Poly::constant(x.neg())));
    p
}

impl CycleRecipe {
    pub fn build(&self, n: usize) -> Result<CycleSpec> {
        let mut out = Vec::new();
        for cr in &self.coords {
            let mut num = TPoly::new(cr.c.iter().map(|x| Poly::constant(x.clone())).collect(), n);
            let mut den = TPoly::constant(Poly::one(&zq()), n);
            for f in &cr.factors {
                let tp = TPoly::new(f.p.clone(), n);
                for _ in 0..f.e.unsigned_abs() {
                    if f.e > 0 {
                        num = num.mul(&tp);
                    } else {
                        den = den.mul(&tp);
                    }
                }
            }
            let y = CoordFn::new(num, den)?;
            out.push(match &self.shift {
                Some((e, k)) => y.shift(e, *k)?,
                None => y,
            });
        }
        let coords: [CoordFn; 3] = out.try_into().expect("three coordinates");
        Ok(CycleSpec::new(coords))
    }

    fn fresh(&mut self, g: &mut Gen) -> Q {
        loop {
            let a = g.int(-9, 9);
            if !self.used.contains(&a) {
                self.used.push(a);
                return Q::int(a);
            }
        }
    }

    fn root(&mut self, g: &mut Gen, moving: bool) -> Vec<Q> {
        let a0 = self.fresh(g);
        if moving {
            vec![a0, g.q(), g.q()]
        } else {
            vec![a0]
        }
    }

    /// A random admissible cycle. With `moving = false` all data is `t`-constant.
    ///
    /// `y₁` is a Möbius function or `c·(u - a)^{±1}` (a face at `u = ∞`); `y₂`, `y₃`
    /// have balanced exponents, so they are finite and nonzero at `u = ∞`. At most one
    /// irreducible quadratic factor occurs. All roots at `t = 0` are distinct.
    pub fn random(g: &mut Gen, moving: bool) -> Self {
        let mut rec = CycleRecipe {
            coords: std::array::from_fn(|_| CoordRecipe { c: Vec::new(), factors: Vec::new() }),
            shift: None,
            used: Vec::new(),
        };
        let quad_in = if g.coin() { Some(g.usize(1, 2)) } else { None };
        for i in 0..3 {
            let mut c = vec![g.q_nonzero()];
            if moving {
                c.extend([g.q(), g.q()]);
            }
            let mut factors = Vec::new();
            if i == 0 {
                let a = rec.root(g, moving);
                if g.usize(0, 2) == 0 {
                    factors.push(Factor { p: lin(&a), e: if g.coin() { 1 } else { -1 } });
                } else {
                    let b = rec.root(g, moving);
                    factors.push(Factor { p: lin(&a), e: 1 });
                    factors.push(Factor { p: lin(&b), e: -1 });
                }
            } else if quad_in == Some(i) {
                let d = [2, 3, 5, -1, -2][g.usize(0, 4)];
                let h = Q::int(g.int(-3, 3));
                // (u - h)^2 - d
                let mut p = vec![Poly::new(vec![h.mul(&h).sub(&Q::int(d)), h.mul(&Q::int(-2)), Q::one()], zq())];
                if moving {
                    p.push(Poly::new(vec![g.q(), g.q()], zq()));
                }
                let e = if g.coin() { 1 } else { -1 };
                factors.push(Factor { p, e });
                for _ in 0..2 {
                    let a = rec.root(g, moving);
                    factors.push(Factor { p: lin(&a), e: -e });
                }
            } else {
                let k = g.usize(1, 2);
                for _ in 0..k {
                    for e in [1, -1] {
                        let a = rec.root(g, moving);
                        factors.push(Factor { p: lin(&a), e });
                    }
                }
            }
            rec.coords[i] = CoordRecipe { c, factors };
        }
        rec
    }

    /// A change invisible mod `t^level`: one or more of moving a root, scaling a
    /// coordinate by `exp(t^level·h(t))`, multiplying by `1 + t^level·p(u)/q(u)`, and
    /// reparametrizing by `u ↦ u + ε·t^level`.
    pub fn perturbed(&self, g: &mut Gen, level: usize, n: usize) -> Self {
        let mut out = self.clone();
        loop {
            let mut changed = false;
            if g.coin() {
                let i = g.usize(0, 2);
                let k = g.usize(0, out.coords[i].factors.len() - 1);
                let p = &mut out.coords[i].factors[k].p;
                if p.len() <= level {
                    p.resize(level + 1, Poly::zero(&zq()));
                }
                p[level] = p[level].add(&Poly::constant(g.q_nonzero()));
                changed = true;
            }
            if g.coin() {
                let i = g.usize(0, 2);
                let mut h = vec![Q::zero(); level];
                h.extend([g.q_nonzero(), g.q()]);
                let e = TSeries::from_coeffs(h, &zq(), n).exp().expect("nilpotent");
                let c = TSeries::from_coeffs(out.coords[i].c.clone(), &zq(), n).mul(&e);
                out.coords[i].c = c.coeffs().to_vec();
                changed = true;
            }
            if g.coin() {
                let i = g.usize(0, 2);
                let q = if g.coin() {
                    let b = out.fresh(g);
                    Poly::new(vec![b.neg(), Q::one()], zq())
                } else {
                    // u^2 + u + b stays irreducible for b ≥ 1
                    Poly::new(vec![Q::int(g.int(1, 4)), Q::one(), Q::one()], zq())
                };
                let deg = q.deg().unwrap_or(0);
                let mut num = vec![q.clone()];
                num.resize(level, Poly::zero(&zq()));
                let d = g.usize(0, deg);
                num.push(g.poly_q(d));
                out.coords[i].factors.push(Factor { p: num, e: 1 });
                out.coords[i].factors.push(Factor { p: vec![q], e: -1 });
                changed = true;
            }
            if g.coin() && out.shift.is_none() {
                out.shift = Some((g.q_nonzero(), level));
                changed = true;
            }
            if changed {
                return out;
            }
        }
    }

    /// Move one root by `t^level`.
    pub fn root_moved(&self, g: &mut Gen, level: usize) -> Self {
        let mut out = self.clone();
        let k = g.usize(0, out.coords[0].factors.len() - 1);
        let p = &mut out.coords[0].factors[k].p;
        if p.len() <= level {
            p.resize(level + 1, Poly::zero(&zq()));
        }
        p[level] = p[level].add(&Poly::constant(g.q_nonzero()));
        out
    }
}
