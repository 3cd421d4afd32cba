use std::fmt;

use crate::algebra::numfield::Nf;
use crate::algebra::{Field, Poly, RatFunc, TSeries, Var, Q};
use crate::error::{Error, Result};

/// `Σ_k t^k P_k(u)` mod `t^n`, with `P_k ∈ ℚ[u]`.
#[derive(Clone, Debug, PartialEq)]
pub struct TPoly {
    c: Vec<Poly<Q>>,
    n: usize,
}

fn zq() -> Q {
    Q::zero()
}

impl TPoly {
    pub fn new(mut c: Vec<Poly<Q>>, n: usize) -> Self {
        c.truncate(n);
        while c.last().is_some_and(|p| p.is_zero()) {
            c.pop();
        }
        TPoly { c, n }
    }

    pub fn constant(p: Poly<Q>, n: usize) -> Self {
        TPoly::new(vec![p], n)
    }

    pub fn prec(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[Poly<Q>] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> Poly<Q> {
        self.c.get(k).cloned().unwrap_or_else(|| Poly::zero(&zq()))
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Largest `u`-degree over all `t`-coefficients.
    pub fn degree(&self) -> Option<usize> {
        self.c.iter().filter_map(|p| p.deg()).max()
    }

    pub fn is_u_constant(&self) -> bool {
        self.c.iter().all(|p| p.is_constant())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.n.min(o.n);
        let len = self.c.len().max(o.c.len());
        TPoly::new((0..len).map(|k| self.coeff(k).add(&o.coeff(k))).collect(), n)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        TPoly { c: self.c.iter().map(|p| p.neg()).collect(), n: self.n }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n.min(o.n);
        let mut c = vec![Poly::zero(&zq()); (self.c.len() + o.c.len()).min(n)];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                if i + j < n {
                    c[i + j] = c[i + j].add(&a.mul(b));
                }
            }
        }
        TPoly::new(c, n)
    }

    pub fn scale(&self, q: &Q) -> Self {
        TPoly::new(self.c.iter().map(|p| p.scale(q)).collect(), self.n)
    }

    pub fn with_prec(&self, n: usize) -> Self {
        TPoly::new(self.c.clone(), n.min(self.n))
    }

    /// `t ↦ λt`.
    pub fn star_scale(&self, lambda: &Q) -> Self {
        TPoly::new(self.c.iter().enumerate().map(|(k, p)| p.scale(&lambda.powi(k as i64))).collect(), self.n)
    }

    /// Common `t`-constant factor of all coefficients (monic; 1 if none).
    pub fn content(&self) -> Poly<Q> {
        let mut g = Poly::zero(&zq());
        for p in &self.c {
            g = g.gcd(p);
            if g.is_one() {
                break;
            }
        }
        if g.is_zero() {
            Poly::one(&zq())
        } else {
            g
        }
    }

    pub fn div_exact_poly(&self, g: &Poly<Q>) -> Self {
        TPoly::new(self.c.iter().map(|p| p.div_exact(g).expect("content divides")).collect(), self.n)
    }

    /// `v^d·P(1/v)`.
    pub fn reversed(&self, d: usize) -> Self {
        let c = self
            .c
            .iter()
            .map(|p| {
                let mut cs = p.coeffs().to_vec();
                cs.resize(d + 1, zq());
                cs.reverse();
                Poly::new(cs, zq())
            })
            .collect();
        TPoly::new(c, self.n)
    }

    /// `P(u₀(t))` for `u₀ ∈ k'[t]/(t^n)`.
    pub fn eval(&self, u0: &TSeries<Nf>, root: &Nf) -> TSeries<Nf> {
        let n = self.n.min(u0.prec());
        let z = root.zero_like();
        let mut acc = TSeries::zero(&z, n);
        for (k, p) in self.c.iter().enumerate().take(n) {
            let pe = p.map(&z, |q| root.from_q(q));
            acc = acc.add(&TSeries::monomial(root.one_like(), k, n).mul(&u0.with_prec(n).unwrap().eval_poly(&pe)));
        }
        acc
    }

    /// Coefficients over a residue field.
    pub fn over(&self, root: &Nf) -> Vec<Poly<Nf>> {
        let z = root.zero_like();
        self.c.iter().map(|p| p.map(&z, |q| root.from_q(q))).collect()
    }
}

/// A coordinate function `y = N/D` with `N, D ∈ ℚ[u][t]/(t^n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoordFn {
    pub num: TPoly,
    pub den: TPoly,
}

impl CoordFn {
    /// Reduce by the common `t`-constant factor; `D` gets a monic leading `t⁰` part.
    pub fn new(num: TPoly, den: TPoly) -> Result<Self> {
        if den.coeff(0).is_zero() {
            return Err(Error::NonUnit(format!("denominator {} vanishes at t = 0", render_tpoly(&den, "u"))));
        }
        let n = num.prec().min(den.prec());
        let (num, den) = (num.with_prec(n), den.with_prec(n));
        let g = num.content().gcd(&den.content());
        let (num, den) = if g.is_one() { (num, den) } else { (num.div_exact_poly(&g), den.div_exact_poly(&g)) };
        let l = den.coeff(0).lc().inv().expect("nonzero");
        Ok(CoordFn { num: num.scale(&l), den: den.scale(&l) })
    }

    pub fn prec(&self) -> usize {
        self.num.prec().min(self.den.prec())
    }

    pub fn constant(q: Q, n: usize) -> Self {
        CoordFn { num: TPoly::constant(Poly::constant(q), n), den: TPoly::constant(Poly::one(&zq()), n) }
    }

    /// The parameter `u`.
    pub fn var(n: usize) -> Self {
        CoordFn { num: TPoly::constant(Poly::var(&zq()), n), den: TPoly::constant(Poly::one(&zq()), n) }
    }

    /// A series in `t` with coefficients in `ℚ(u)`, cleared to one denominator.
    pub fn from_series(f: &TSeries<RatFunc<Q>>) -> Result<Self> {
        let mut l = Poly::one(&zq());
        for c in f.coeffs() {
            let d = c.den();
            let g = l.gcd(d);
            l = l.mul(&d.div_exact(&g).expect("gcd"));
        }
        let num = f.coeffs().iter().map(|c| c.num().mul(&l.div_exact(c.den()).expect("lcm"))).collect();
        CoordFn::new(TPoly::new(num, f.prec()), TPoly::constant(l, f.prec()))
    }

    /// The reverse: `t`-series in `ℚ(u)` (requires `D` to be a unit).
    pub fn to_series(&self) -> Result<TSeries<RatFunc<Q>>> {
        let z = RatFunc::constant(zq(), Var::S);
        let lift = |p: &TPoly| TSeries::from_coeffs(p.coeffs().iter().map(|c| RatFunc::from_poly(c.clone(), Var::S)).collect(), &z, p.prec());
        lift(&self.num).div(&lift(&self.den))
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        CoordFn::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.num.coeff(0).is_zero() {
            return Err(Error::NonUnit(self.to_string()));
        }
        CoordFn::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        CoordFn::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        CoordFn::new(self.num.mul(&o.den).sub(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn with_prec(&self, n: usize) -> Self {
        CoordFn { num: self.num.with_prec(n), den: self.den.with_prec(n) }
    }

    pub fn star_scale(&self, lambda: &Q) -> Self {
        CoordFn { num: self.num.star_scale(lambda), den: self.den.star_scale(lambda) }
    }

    /// Equality mod `t^m` after cross-multiplying.
    pub fn congruent(&self, o: &Self, m: usize) -> bool {
        self.num.mul(&o.den).sub(&o.num.mul(&self.den)).with_prec(m).is_zero()
    }

    pub fn is_u_constant(&self) -> bool {
        self.num.is_u_constant() && self.den.is_u_constant()
    }

    /// The same function in `v = 1/u`.
    pub fn at_infinity(&self) -> Result<Self> {
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        let n = self.prec();
        let vpow = |e: usize| TPoly::constant(Poly::monomial(Q::one(), e), n);
        let (num, den) = if dd >= dn {
            (self.num.reversed(dn).mul(&vpow(dd - dn)), self.den.reversed(dd))
        } else {
            (self.num.reversed(dn), self.den.reversed(dd).mul(&vpow(dn - dd)))
        };
        CoordFn::new(num, den)
    }
}

fn render_tpoly(p: &TPoly, var: &str) -> String {
    let mut parts = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let body = format!("({})", c.render(var));
        parts.push(match k {
            0 => body,
            1 => format!("{}*t", body),
            _ => format!("{}*t^{}", body, k),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

impl fmt::Display for CoordFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] / [{}] mod t^{}", render_tpoly(&self.num, "u"), render_tpoly(&self.den, "u"), self.prec())
    }
}

impl TPoly {
    /// `P(u + e·t^k)`, by Taylor expansion in `u`.
    pub fn shift(&self, e: &Q, k: usize) -> Self {
        if k == 0 {
            panic!("shift needs k >= 1");
        }
        let mut out = vec![Poly::zero(&zq()); self.n];
        for (i, p) in self.c.iter().enumerate() {
            let mut d = p.clone();
            let mut fact = Q::one();
            let mut j = 0;
            while !d.is_zero() && i + j * k < self.n {
                let term = d.scale(&e.powi(j as i64).mul(&fact.inv().expect("nonzero")));
                out[i + j * k] = out[i + j * k].add(&term);
                j += 1;
                fact = fact.mul(&Q::int(j as i64));
                d = d.derivative();
            }
        }
        TPoly::new(out, self.n)
    }
}

impl CoordFn {
    /// `y(u + e·t^k)`.
    pub fn shift(&self, e: &Q, k: usize) -> Result<Self> {
        CoordFn::new(self.num.shift(e, k), self.den.shift(e, k))
    }
}
