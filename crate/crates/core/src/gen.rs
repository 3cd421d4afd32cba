//! Seeded random inputs for randomized checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Field, Poly, Qs, RatFunc, TSeries, Var, Q};

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn usize(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..=hi)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    /// Small rational `p/q` with `|p| ≤ 5`, `1 ≤ q ≤ 3`.
    pub fn q(&mut self) -> Q {
        Q::new(self.int(-5, 5), self.int(1, 3))
    }

    pub fn q_nonzero(&mut self) -> Q {
        loop {
            let v = self.q();
            if !v.is_zero() {
                return v;
            }
        }
    }

    /// Rational not in `excluded`.
    pub fn q_avoiding(&mut self, excluded: &[Q]) -> Q {
        loop {
            let v = self.q();
            if !excluded.contains(&v) {
                return v;
            }
        }
    }

    pub fn poly_q(&mut self, deg: usize) -> Poly<Q> {
        let c: Vec<Q> = (0..=deg).map(|_| self.q()).collect();
        Poly::new(c, Q::zero())
    }

    /// Nonzero rational function in `s` with numerator and denominator degree `≤ deg`.
    pub fn qs(&mut self, deg: usize) -> Qs {
        loop {
            let (dn, dd) = (self.usize(0, deg), self.usize(0, deg));
            let n = self.poly_q(dn);
            let d = self.poly_q(dd);
            if n.is_zero() || d.is_zero() {
                continue;
            }
            return RatFunc::new(n, d, Var::S);
        }
    }

    /// Polynomial in `s` of degree exactly `deg` with small integer coefficients.
    pub fn qs_poly(&mut self, deg: usize) -> Qs {
        let mut c: Vec<Q> = (0..deg).map(|_| Q::int(self.int(-3, 3))).collect();
        c.push(self.q_nonzero());
        RatFunc::from_poly(Poly::new(c, Q::zero()), Var::S)
    }

    /// Unit of `ℚ(s)[t]/(t^n)` with `c0 ∉ {0, 1}`, so both `x` and `1 - x` are units.
    pub fn flat_qs(&mut self, n: usize) -> TSeries<Qs> {
        loop {
            let c0 = self.qs(1);
            if c0.is_one() {
                continue;
            }
            let mut c = vec![c0];
            for _ in 1..n {
                c.push(if self.coin() { self.qs(1) } else { c[0].zero_like() });
            }
            let z = c[0].zero_like();
            return TSeries::from_coeffs(c, &z, n);
        }
    }

    /// Like [`Gen::flat_qs`] with polynomial coefficients of degree `≤ 1` and small
    /// integer coefficients; `c0` is nonconstant.
    pub fn flat_qs_poly(&mut self, n: usize) -> TSeries<Qs> {
        let lin = |g: &mut Self| RatFunc::from_poly(Poly::new(vec![Q::int(g.int(-3, 3)), Q::int(g.int(-3, 3))], Q::zero()), Var::S);
        let mut c0 = lin(self);
        while c0.num().deg() != Some(1) {
            c0 = lin(self);
        }
        let z = c0.zero_like();
        let mut c = vec![c0];
        for _ in 1..n {
            c.push(if self.coin() { lin(self) } else { z.clone() });
        }
        TSeries::from_coeffs(c, &z, n)
    }

    pub fn unit_qs(&mut self, n: usize) -> TSeries<Qs> {
        self.flat_qs(n)
    }

    /// Unit series over `ℚ`.
    pub fn unit_q(&mut self, n: usize) -> TSeries<Q> {
        let mut c = vec![self.q_avoiding(&[Q::zero(), Q::one()])];
        for _ in 1..n {
            c.push(self.q());
        }
        TSeries::from_coeffs(c, &Q::zero(), n)
    }

    /// `x + t^m·(random)`, agreeing with `x` mod `t^m`.
    pub fn perturb_qs(&mut self, x: &TSeries<Qs>, m: usize) -> TSeries<Qs> {
        let n = x.prec();
        let mut c = x.coeffs().to_vec();
        for ci in c.iter_mut().take(n).skip(m) {
            *ci = ci.add(&self.qs(1));
        }
        TSeries::from_coeffs(c, x.ctx(), n)
    }
}

/// Small random elements of a base field.
pub trait Sample: Field {
    fn sample(g: &mut Gen, ctx: &Self) -> Self;
}

impl Sample for Q {
    fn sample(g: &mut Gen, _ctx: &Self) -> Self {
        g.q()
    }
}

impl Sample for RatFunc<Q> {
    /// An element of `ℚ(x)`: a rational constant or a linear polynomial in `x`.
    fn sample(g: &mut Gen, ctx: &Self) -> Self {
        let p = if g.coin() { g.poly_q(0) } else { g.poly_q(1) };
        RatFunc::from_poly(p, ctx.variable())
    }
}

impl Gen {
    /// Random polynomial in `s` over the base, of degree `≤ deg`.
    pub fn poly_over<K: Sample>(&mut self, ctx: &K, deg: usize) -> Poly<K> {
        let d = self.usize(0, deg);
        let c: Vec<K> = (0..=d).map(|_| K::sample(self, ctx)).collect();
        Poly::new(c, ctx.zero_like())
    }

    /// Random element of `K(s)` with a nonzero numerator.
    pub fn ratfunc_over<K: Sample>(&mut self, ctx: &K, deg: usize) -> RatFunc<K> {
        loop {
            let n = self.poly_over(ctx, deg);
            let d = self.poly_over(ctx, deg);
            if !n.is_zero() && !d.is_zero() {
                return RatFunc::new(n, d, Var::S);
            }
        }
    }
}
