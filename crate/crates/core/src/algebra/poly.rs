use super::field::{render_sum, Field};
use super::rational::Q;

/// Dense univariate polynomial over a field, trailing zeros trimmed.
#[derive(Clone, Debug)]
pub struct Poly<F: Field> {
    c: Vec<F>,
    zero: F,
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, o: &Self) -> bool {
        self.c == o.c
    }
}

impl<F: Field> Poly<F> {
    pub fn new(mut c: Vec<F>, zero: F) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        let zero = zero.zero_like();
        Poly { c, zero }
    }

    pub fn zero(ctx: &F) -> Self {
        Poly { c: vec![], zero: ctx.zero_like() }
    }

    pub fn one(ctx: &F) -> Self {
        Poly::constant(ctx.one_like())
    }

    pub fn constant(a: F) -> Self {
        let zero = a.zero_like();
        Poly::new(vec![a], zero)
    }

    /// The polynomial `var`.
    pub fn var(ctx: &F) -> Self {
        Poly::new(vec![ctx.zero_like(), ctx.one_like()], ctx.zero_like())
    }

    pub fn monomial(a: F, k: usize) -> Self {
        let zero = a.zero_like();
        let mut c = vec![zero.clone(); k];
        c.push(a);
        Poly::new(c, zero)
    }

    /// `var - a`.
    pub fn linear_root(a: &F) -> Self {
        Poly::new(vec![a.neg(), a.one_like()], a.zero_like())
    }

    pub fn ctx(&self) -> &F {
        &self.zero
    }

    pub fn coeffs(&self) -> &[F] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> F {
        self.c.get(k).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lc(&self) -> F {
        self.c.last().cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect();
        Poly::new(c, self.zero.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect();
        Poly::new(c, self.zero.clone())
    }

    pub fn neg(&self) -> Self {
        Poly { c: self.c.iter().map(|x| x.neg()).collect(), zero: self.zero.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(&self.zero);
        }
        let mut c = vec![self.zero.clone(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        Poly::new(c, self.zero.clone())
    }

    pub fn scale(&self, a: &F) -> Self {
        Poly::new(self.c.iter().map(|x| x.mul(a)).collect(), self.zero.clone())
    }

    pub fn scale_q(&self, q: &Q) -> Self {
        Poly::new(self.c.iter().map(|x| x.scale(q)).collect(), self.zero.clone())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Poly::one(&self.zero);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.deg().expect("division by zero polynomial");
        let inv_lc = d.lc().inv().expect("leading coefficient not invertible");
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Poly::zero(&self.zero), self.clone());
        }
        let mut q = vec![self.zero.clone(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let coef = r[k].mul(&inv_lc);
            if coef.is_zero() {
                continue;
            }
            for (j, dc) in d.c.iter().enumerate() {
                let idx = k - dd + j;
                r[idx] = r[idx].sub(&coef.mul(dc));
            }
            q[k - dd] = coef;
        }
        r.truncate(dd);
        (Poly::new(q, self.zero.clone()), Poly::new(r, self.zero.clone()))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Exact quotient; `None` if `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    pub fn monic(&self) -> Self {
        match self.c.last() {
            None => self.clone(),
            Some(l) => {
                let i = l.inv().expect("nonzero leading coefficient");
                self.scale(&i)
            }
        }
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.monic();
        }
        if o.is_zero() {
            return self.monic();
        }
        if self.is_constant() || o.is_constant() {
            return Poly::one(&self.zero);
        }
        let (mut a, mut b) = if self.c.len() >= o.c.len() { (self.monic(), o.monic()) } else { (o.monic(), self.monic()) };
        while !b.is_zero() {
            if b.is_constant() {
                return Poly::one(&self.zero);
            }
            let r = a.rem(&b).monic();
            a = b;
            b = r;
        }
        a
    }

    /// Extended Euclid: returns (g, u, v) with u*self + v*o = g, g monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let z = &self.zero;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(z), Poly::zero(z));
        let (mut t0, mut t1) = (Poly::zero(z), Poly::one(z));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = r1;
            r1 = r;
            let s2 = s0.sub(&q.mul(&s1));
            s0 = s1;
            s1 = s2;
            let t2 = t0.sub(&q.mul(&t1));
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let li = r0.lc().inv().expect("nonzero");
        (r0.scale(&li), s0.scale(&li), t0.scale(&li))
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| a.scale(&Q::int(k as i64)))
            .collect();
        Poly::new(c, self.zero.clone())
    }

    /// Apply a map to every coefficient (e.g. a coefficient derivation).
    pub fn map<G: Field>(&self, zero: &G, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.c.iter().map(f).collect(), zero.zero_like())
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = self.zero.clone();
        for a in self.c.iter().rev() {
            acc = acc.mul(x).add(a);
        }
        acc
    }

    /// Evaluate at an element of an extension ring via an embedding of the coefficients.
    pub fn eval_with<G: Field>(&self, x: &G, embed: impl Fn(&F) -> G) -> G {
        let mut acc = x.zero_like();
        for a in self.c.iter().rev() {
            acc = acc.mul(x).add(&embed(a));
        }
        acc
    }

    /// Reversed coefficient list of length `deg + 1` (`x^deg p(1/x)`).
    pub fn reverse(&self) -> Self {
        let mut c = self.c.clone();
        c.reverse();
        Poly::new(c, self.zero.clone())
    }

    /// Square-free part (char 0).
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    pub fn render(&self, var: &str) -> String {
        let mut terms = Vec::new();
        for (k, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{}^{}", var, k),
            };
            terms.push((a.to_string(), mono));
        }
        render_sum(&terms)
    }
}
