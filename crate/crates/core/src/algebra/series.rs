use std::fmt;

use super::field::{render_sum, Field};
use super::poly::Poly;
use super::rational::Q;
use crate::error::{Error, Result};

/// Element of `A[t]/(t^N)`; the vector length is the precision `N`.
#[derive(Clone, Debug)]
pub struct TSeries<F: Field> {
    c: Vec<F>,
    zero: F,
}

impl<F: Field> PartialEq for TSeries<F> {
    fn eq(&self, o: &Self) -> bool {
        self.c == o.c
    }
}

impl<F: Field> TSeries<F> {
    pub fn new(c: Vec<F>, ctx: &F) -> Self {
        TSeries { c, zero: ctx.zero_like() }
    }

    /// From the first coefficients, zero-padded to precision `n`.
    pub fn from_coeffs(mut c: Vec<F>, ctx: &F, n: usize) -> Self {
        c.resize(n, ctx.zero_like());
        TSeries::new(c, ctx)
    }

    pub fn zero(ctx: &F, n: usize) -> Self {
        TSeries { c: vec![ctx.zero_like(); n], zero: ctx.zero_like() }
    }

    pub fn constant(a: F, n: usize) -> Self {
        let z = a.zero_like();
        TSeries::from_coeffs(vec![a], &z, n)
    }

    pub fn one(ctx: &F, n: usize) -> Self {
        TSeries::constant(ctx.one_like(), n)
    }

    /// `a·t^k` at precision `n`.
    pub fn monomial(a: F, k: usize, n: usize) -> Self {
        let z = a.zero_like();
        let mut c = vec![z.clone(); n];
        if k < n {
            c[k] = a;
        }
        TSeries::new(c, &z)
    }

    pub fn prec(&self) -> usize {
        self.c.len()
    }

    pub fn ctx(&self) -> &F {
        &self.zero
    }

    pub fn coeffs(&self) -> &[F] {
        &self.c
    }

    /// Coefficient `t_i`; zero above the precision is not assumed.
    pub fn coeff(&self, i: usize) -> Result<F> {
        self.c.get(i).cloned().ok_or(Error::PrecisionExceeded { needed: i + 1, available: self.prec() })
    }

    pub fn c0(&self) -> &F {
        &self.c[0]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    /// No positive powers of `t`.
    pub fn is_t_constant(&self) -> bool {
        self.c.iter().skip(1).all(|x| x.is_zero())
    }

    pub fn is_unit(&self) -> bool {
        self.c.first().is_some_and(|x| !x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.is_t_constant()
    }

    /// Lowest `i` with nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    fn zip(&self, o: &Self, f: impl Fn(&F, &F) -> F) -> Self {
        let n = self.prec().min(o.prec());
        TSeries { c: (0..n).map(|i| f(&self.c[i], &o.c[i])).collect(), zero: self.zero.clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.add(b))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.sub(b))
    }

    pub fn neg(&self) -> Self {
        self.map(|a| a.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.prec().min(o.prec());
        let mut c = vec![self.zero.clone(); n];
        for i in 0..n {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                if o.c[j].is_zero() {
                    continue;
                }
                c[i + j] = c[i + j].add(&self.c[i].mul(&o.c[j]));
            }
        }
        TSeries { c, zero: self.zero.clone() }
    }

    pub fn scale(&self, a: &F) -> Self {
        self.map(|x| x.mul(a))
    }

    pub fn scale_q(&self, q: &Q) -> Self {
        self.map(|x| x.scale(q))
    }

    pub fn map(&self, f: impl Fn(&F) -> F) -> Self {
        TSeries { c: self.c.iter().map(f).collect(), zero: self.zero.clone() }
    }

    pub fn map_into<G: Field>(&self, ctx: &G, f: impl Fn(&F) -> G) -> TSeries<G> {
        TSeries { c: self.c.iter().map(f).collect(), zero: ctx.zero_like() }
    }

    pub fn inv(&self) -> Result<Self> {
        let a0i = self.c.first().and_then(|a| a.inv()).ok_or_else(|| Error::NonUnit(self.to_string()))?;
        let n = self.prec();
        let mut b = vec![self.zero.clone(); n];
        b[0] = a0i.clone();
        for k in 1..n {
            let mut acc = self.zero.clone();
            for j in 1..=k {
                if self.c[j].is_zero() {
                    continue;
                }
                acc = acc.add(&self.c[j].mul(&b[k - j]));
            }
            b[k] = acc.neg().mul(&a0i);
        }
        Ok(TSeries { c: b, zero: self.zero.clone() })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = TSeries::one(&self.zero, self.prec());
        let mut b = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    pub fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as usize))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs() as usize))
        }
    }

    /// Formal `d/dt`; the result is known to precision `N-1`.
    pub fn derivative_t(&self) -> Self {
        let c = self.c.iter().enumerate().skip(1).map(|(k, a)| a.scale(&Q::int(k as i64))).collect();
        TSeries { c, zero: self.zero.clone() }
    }

    /// Formal antiderivative with zero constant term, precision `N+1`.
    pub fn integral_t(&self) -> Self {
        let mut c = vec![self.zero.clone()];
        for (k, a) in self.c.iter().enumerate() {
            c.push(a.scale(&Q::new(1, k as i64 + 1)));
        }
        TSeries { c, zero: self.zero.clone() }
    }

    /// `log(a/a(0))`, computed as the integral of `a_t/a`.
    pub fn log_circ(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NonUnit(self.to_string()));
        }
        let n = self.prec();
        if n <= 1 {
            return Ok(TSeries::zero(&self.zero, n));
        }
        let at = self.derivative_t();
        let inv = self.with_prec(n - 1)?.inv()?;
        Ok(at.mul(&inv).integral_t())
    }

    /// `exp(u)` for `u(0) = 0`.
    pub fn exp(&self) -> Result<Self> {
        if !self.c.first().is_none_or(|x| x.is_zero()) {
            return Err(Error::NonNilpotentConstant(self.to_string()));
        }
        let n = self.prec();
        let mut e = vec![self.zero.clone(); n];
        if n == 0 {
            return Ok(TSeries { c: e, zero: self.zero.clone() });
        }
        e[0] = self.zero.one_like();
        for k in 1..n {
            let mut acc = self.zero.clone();
            for j in 1..=k {
                if self.c[j].is_zero() {
                    continue;
                }
                acc = acc.add(&self.c[j].mul(&e[k - j]).scale(&Q::int(j as i64)));
            }
            e[k] = acc.scale(&Q::new(1, k as i64));
        }
        Ok(TSeries { c: e, zero: self.zero.clone() })
    }

    /// `q|_a`: zero the coefficients of `t^i`, `i ≥ a`; precision unchanged.
    pub fn truncate_below(&self, a: usize) -> Result<Self> {
        if a > self.prec() {
            return Err(Error::PrecisionExceeded { needed: a, available: self.prec() });
        }
        let mut c = self.c.clone();
        for x in c.iter_mut().skip(a) {
            *x = self.zero.clone();
        }
        Ok(TSeries { c, zero: self.zero.clone() })
    }

    /// Reduce to precision `n ≤ N`.
    pub fn with_prec(&self, n: usize) -> Result<Self> {
        if n > self.prec() {
            return Err(Error::PrecisionExceeded { needed: n, available: self.prec() });
        }
        Ok(TSeries { c: self.c[..n].to_vec(), zero: self.zero.clone() })
    }

    /// Zero-padded lift to precision `n ≥ N`.
    pub fn pad(&self, n: usize) -> Self {
        let mut c = self.c.clone();
        if n > c.len() {
            c.resize(n, self.zero.clone());
        } else {
            c.truncate(n);
        }
        TSeries { c, zero: self.zero.clone() }
    }

    /// Lift to precision `n`, filling orders `N..n` with the given coefficients.
    pub fn pad_with(&self, n: usize, mut fill: impl FnMut(usize) -> F) -> Self {
        let mut c = self.c.clone();
        for i in c.len()..n {
            c.push(fill(i));
        }
        c.truncate(n);
        TSeries { c, zero: self.zero.clone() }
    }

    /// `λ⋆q`: multiply the `t^i` coefficient by `λ^i`.
    pub fn star_scale(&self, lambda: &F) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::NonUnit(lambda.to_string()));
        }
        let mut p = self.zero.one_like();
        let mut c = Vec::with_capacity(self.prec());
        for a in &self.c {
            c.push(a.mul(&p));
            p = p.mul(lambda);
        }
        Ok(TSeries { c, zero: self.zero.clone() })
    }

    pub fn partial_s(&self) -> Self {
        self.map(|a| a.partial_s())
    }

    pub fn partial_x(&self) -> Self {
        self.map(|a| a.partial_x())
    }

    /// Evaluate a polynomial over the coefficient field at this series.
    pub fn eval_poly(&self, p: &Poly<F>) -> Self {
        let mut acc = TSeries::zero(&self.zero, self.prec());
        for a in p.coeffs().iter().rev() {
            acc = acc.mul(self);
            acc.c[0] = acc.c[0].add(a);
        }
        acc
    }
}

impl<F: Field> fmt::Display for TSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{}", k),
            };
            terms.push((a.to_string(), mono));
        }
        if terms.is_empty() {
            write!(f, "O(t^{})", self.prec())
        } else {
            write!(f, "{} + O(t^{})", render_sum(&terms), self.prec())
        }
    }
}
