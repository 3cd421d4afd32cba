use std::fmt;

use super::field::{paren, Field};
use super::poly::Poly;
use super::rational::Q;

/// Name of the transcendental variable of a rational function field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    /// The curve coordinate `s`.
    S,
    /// The transcendental of the base field `ℚ(x)`.
    X,
    /// The parameter of a parametrized cycle.
    U,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::S => "s",
            Var::X => "x",
            Var::U => "u",
        }
    }
}

/// Reduced fraction `num/den` with `den` monic, over a coefficient field `F`.
#[derive(Clone, Debug)]
pub struct RatFunc<F: Field> {
    num: Poly<F>,
    den: Poly<F>,
    var: Var,
}

impl<F: Field> PartialEq for RatFunc<F> {
    fn eq(&self, o: &Self) -> bool {
        self.num == o.num && self.den == o.den
    }
}

impl<F: Field> RatFunc<F> {
    /// Build and reduce; panics if `den` is zero.
    pub fn new(num: Poly<F>, den: Poly<F>, var: Var) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc { den: Poly::one(num.ctx()), num, var };
        }
        let g = if den.is_constant() { Poly::one(num.ctx()) } else { num.gcd(&den) };
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd"), den.div_exact(&g).expect("gcd"))
        };
        let l = d.lc();
        if !l.is_one() {
            let li = l.inv().expect("nonzero");
            n = n.scale(&li);
            d = d.scale(&li);
        }
        RatFunc { num: n, den: d, var }
    }

    pub fn from_poly(p: Poly<F>, var: Var) -> Self {
        let one = Poly::one(p.ctx());
        RatFunc { num: p, den: one, var }
    }

    pub fn constant(a: F, var: Var) -> Self {
        RatFunc::from_poly(Poly::constant(a), var)
    }

    /// The variable itself.
    pub fn var(ctx: &F, var: Var) -> Self {
        RatFunc::from_poly(Poly::var(ctx), var)
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn variable(&self) -> Var {
        self.var
    }

    pub fn coeff_ctx(&self) -> &F {
        self.num.ctx()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Constant value if the function does not depend on the variable.
    pub fn as_constant(&self) -> Option<F> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(self.num.coeff(0).div(&self.den.coeff(0)).expect("den nonzero"))
        } else {
            None
        }
    }

    pub fn eval(&self, a: &F) -> Option<F> {
        self.num.eval(a).div(&self.den.eval(a))
    }

    /// Apply a derivation `D` given by its action on polynomials.
    fn derive_with(&self, dp: impl Fn(&Poly<F>) -> Poly<F>) -> Self {
        let dn = dp(&self.num);
        let dd = dp(&self.den);
        let n = dn.mul(&self.den).sub(&self.num.mul(&dd));
        let d = self.den.mul(&self.den);
        RatFunc::new(n, d, self.var)
    }

    fn same(&self, num: Poly<F>, den: Poly<F>) -> Self {
        RatFunc::new(num, den, self.var)
    }
}

impl<F: Field> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.var.name();
        let n = self.num.render(v);
        if self.den.is_one() {
            write!(f, "{}", n)
        } else {
            let d = self.den.render(v);
            let dd = if d.contains('*') || d.contains('^') || d.contains('/') {
                format!("({})", d)
            } else {
                paren(&d)
            };
            write!(f, "{}/{}", crate::algebra::field::paren_factor(&n).replace("((", "(").replace("))", ")"), dd)
        }
    }
}

fn exact<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    a.div_exact(b).expect("exact division")
}

impl<F: Field> RatFunc<F> {
    /// `self ± o` on reduced operands, cancelling only through the gcd of the denominators.
    fn add_reduced(&self, o: &Self, negate: bool) -> Self {
        let on = if negate { o.num.neg() } else { o.num.clone() };
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return RatFunc { num: on, den: o.den.clone(), var: self.var };
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc { num: self.num.add(&on), den: self.den.clone(), var: self.var };
        }
        let g = self.den.gcd(&o.den);
        if g.is_one() {
            let num = self.num.mul(&o.den).add(&on.mul(&self.den));
            return RatFunc { num, den: self.den.mul(&o.den), var: self.var };
        }
        let d1 = exact(&self.den, &g);
        let d2 = exact(&o.den, &g);
        let t = self.num.mul(&d2).add(&on.mul(&d1));
        if t.is_zero() {
            return self.zero_like();
        }
        let lcm = self.den.mul(&d2);
        let g2 = t.gcd(&g);
        if g2.is_one() {
            RatFunc { num: t, den: lcm, var: self.var }
        } else {
            RatFunc { num: exact(&t, &g2), den: exact(&lcm, &g2), var: self.var }
        }
    }
}

impl<F: Field> Field for RatFunc<F> {
    fn zero_like(&self) -> Self {
        RatFunc::from_poly(Poly::zero(self.coeff_ctx()), self.var)
    }
    fn one_like(&self) -> Self {
        RatFunc::from_poly(Poly::one(self.coeff_ctx()), self.var)
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        self.add_reduced(o, false)
    }
    fn sub(&self, o: &Self) -> Self {
        self.add_reduced(o, true)
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return self.zero_like();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc { num: self.num.mul(&o.num), den: self.den.clone(), var: self.var };
        }
        // cross-cancel, both inputs being reduced
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let (n1, d2) = if g1.is_one() { (self.num.clone(), o.den.clone()) } else { (exact(&self.num, &g1), exact(&o.den, &g1)) };
        let (n2, d1) = if g2.is_one() { (o.num.clone(), self.den.clone()) } else { (exact(&o.num, &g2), exact(&self.den, &g2)) };
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let l = den.lc();
        if l.is_one() {
            RatFunc { num, den, var: self.var }
        } else {
            let li = l.inv().expect("nonzero");
            RatFunc { num: num.scale(&li), den: den.scale(&li), var: self.var }
        }
    }
    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone(), var: self.var }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.same(self.den.clone(), self.num.clone()))
        }
    }
    fn from_q_like(&self, q: &Q) -> Self {
        RatFunc::constant(self.coeff_ctx().from_q_like(q), self.var)
    }
    fn scale(&self, q: &Q) -> Self {
        if q.is_zero() {
            return self.zero_like();
        }
        RatFunc { num: self.num.scale_q(q), den: self.den.clone(), var: self.var }
    }
    fn partial_s(&self) -> Self {
        if self.var == Var::S {
            self.derive_with(|p| p.derivative())
        } else {
            let z = self.coeff_ctx().clone();
            self.derive_with(|p| p.map(&z, |a| a.partial_s()))
        }
    }
    fn partial_x(&self) -> Self {
        if self.var == Var::X {
            self.derive_with(|p| p.derivative())
        } else {
            let z = self.coeff_ctx().clone();
            self.derive_with(|p| p.map(&z, |a| a.partial_x()))
        }
    }
    fn has_x(&self) -> bool {
        self.var == Var::X || self.coeff_ctx().has_x()
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
}
