use std::fmt;

use super::field::{render_sum, Field};
use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::rational::Q;
use crate::error::{Error, Result};

/// Truncated Laurent series in a local coordinate `z`.
///
/// `c[k]` is the coefficient of `z^(val+k)`. With `prec = Some(p)` the value is
/// known modulo `z^p`; `None` marks an exact (finitely supported) value.
#[derive(Clone, Debug)]
pub struct Laurent<F: Field> {
    val: i64,
    c: Vec<F>,
    prec: Option<i64>,
    zero: F,
}

fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

impl<F: Field> Laurent<F> {
    /// Build from coefficients starting at `z^val`, normalizing leading zeros.
    pub fn new(val: i64, c: Vec<F>, prec: Option<i64>, zero: &F) -> Self {
        let mut l = Laurent { val, c, prec, zero: zero.zero_like() };
        l.normalize();
        l
    }

    pub fn exact(a: F) -> Self {
        let z = a.zero_like();
        Laurent::new(0, vec![a], None, &z)
    }

    pub fn monomial(a: F, k: i64) -> Self {
        let z = a.zero_like();
        Laurent::new(k, vec![a], None, &z)
    }

    fn normalize(&mut self) {
        if let Some(p) = self.prec {
            let keep = (p - self.val).max(0) as usize;
            self.c.truncate(keep);
        }
        let lead = self.c.iter().position(|x| !x.is_zero());
        match lead {
            Some(k) => {
                self.c.drain(..k);
                self.val += k as i64;
            }
            None => {
                self.c.clear();
                self.val = self.prec.unwrap_or(0);
            }
        }
        if self.prec.is_none() {
            while self.c.last().is_some_and(|x| x.is_zero()) {
                self.c.pop();
            }
        }
    }

    /// Valuation; for a value known to be zero only up to `z^p` this is `p`.
    pub fn valuation(&self) -> i64 {
        self.val
    }

    pub fn precision(&self) -> Option<i64> {
        self.prec
    }

    /// True if no nonzero coefficient is known.
    pub fn is_unknown_or_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Coefficient of `z^k`; `None` if beyond the precision.
    pub fn coeff(&self, k: i64) -> Option<F> {
        if let Some(p) = self.prec {
            if k >= p {
                return None;
            }
        }
        if k < self.val {
            return Some(self.zero.clone());
        }
        Some(self.c.get((k - self.val) as usize).cloned().unwrap_or_else(|| self.zero.clone()))
    }

    pub fn with_prec(&self, p: i64) -> Self {
        let np = min_prec(self.prec, Some(p));
        Laurent::new(self.val, self.c.clone(), np, &self.zero)
    }

    fn top(&self) -> i64 {
        self.val + self.c.len() as i64
    }

    fn combine(&self, o: &Self, f: impl Fn(&F, &F) -> F) -> Self {
        let prec = min_prec(self.prec, o.prec);
        let lo = self.val.min(o.val);
        let hi = match prec {
            Some(p) => p,
            None => self.top().max(o.top()),
        };
        let c = (lo..hi.max(lo))
            .map(|k| {
                let a = self.coeff(k).unwrap_or_else(|| self.zero.clone());
                let b = o.coeff(k).unwrap_or_else(|| self.zero.clone());
                f(&a, &b)
            })
            .collect();
        Laurent::new(lo, c, prec, &self.zero)
    }

    /// Leading coefficient, if a nonzero one is known.
    pub fn leading(&self) -> Option<&F> {
        self.c.first()
    }
}

impl<F: Field> PartialEq for Laurent<F> {
    /// Agreement on the common window.
    fn eq(&self, o: &Self) -> bool {
        let prec = min_prec(self.prec, o.prec);
        let lo = self.val.min(o.val);
        let hi = prec.unwrap_or_else(|| self.top().max(o.top()));
        (lo..hi).all(|k| self.coeff(k) == o.coeff(k))
    }
}

impl<F: Field> fmt::Display for Laurent<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(String, String)> = Vec::new();
        for (k, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let e = self.val + k as i64;
            let mono = match e {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{}", e),
            };
            terms.push((a.to_string(), mono));
        }
        let body = render_sum(&terms);
        match self.prec {
            None => write!(f, "{}", body),
            Some(p) if terms.is_empty() => write!(f, "O(z^{})", p),
            Some(p) => write!(f, "{} + O(z^{})", body, p),
        }
    }
}

impl<F: Field> Field for Laurent<F> {
    fn zero_like(&self) -> Self {
        Laurent { val: 0, c: vec![], prec: None, zero: self.zero.clone() }
    }
    fn one_like(&self) -> Self {
        Laurent::exact(self.zero.one_like())
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        self.combine(o, |a, b| a.add(b))
    }
    fn sub(&self, o: &Self) -> Self {
        self.combine(o, |a, b| a.sub(b))
    }
    fn mul(&self, o: &Self) -> Self {
        let prec = match (self.prec, o.prec) {
            (None, None) => None,
            (Some(p), None) => Some(p + o.val),
            (None, Some(q)) => Some(q + self.val),
            (Some(p), Some(q)) => Some((p + o.val).min(q + self.val)),
        };
        let val = self.val + o.val;
        let n = match prec {
            Some(p) => (p - val).max(0) as usize,
            None => (self.c.len() + o.c.len()).saturating_sub(1),
        };
        let mut c = vec![self.zero.clone(); n];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        Laurent::new(val, c, prec, &self.zero)
    }
    fn neg(&self) -> Self {
        Laurent { val: self.val, c: self.c.iter().map(|x| x.neg()).collect(), prec: self.prec, zero: self.zero.clone() }
    }
    fn inv(&self) -> Option<Self> {
        let a0 = self.c.first()?;
        let a0i = a0.inv()?;
        let v = self.val;
        // relative precision of the unit part
        let n = match self.prec {
            Some(p) => (p - v) as usize,
            None => {
                if self.c.len() == 1 {
                    return Some(Laurent::monomial(a0i, -v));
                }
                return None;
            }
        };
        let mut b = vec![self.zero.clone(); n];
        if n > 0 {
            b[0] = a0i.clone();
        }
        for k in 1..n {
            let mut acc = self.zero.clone();
            for j in 1..=k.min(self.c.len() - 1) {
                acc = acc.add(&self.c[j].mul(&b[k - j]));
            }
            b[k] = acc.neg().mul(&a0i);
        }
        Some(Laurent::new(-v, b, Some(-v + n as i64), &self.zero))
    }
    fn from_q_like(&self, q: &Q) -> Self {
        Laurent::exact(self.zero.from_q_like(q))
    }
    fn partial_s(&self) -> Self {
        // d/dz shifts exponents down by one; coefficient derivatives stay in place
        let mut out = vec![self.zero.clone(); self.c.len() + 1];
        for (k, a) in self.c.iter().enumerate() {
            let e = self.val + k as i64;
            out[k] = out[k].add(&a.scale(&Q::int(e)));
            out[k + 1] = out[k + 1].add(&a.partial_s());
        }
        Laurent::new(self.val - 1, out, self.prec.map(|p| p - 1), &self.zero)
    }
    fn partial_x(&self) -> Self {
        Laurent::new(self.val, self.c.iter().map(|a| a.partial_x()).collect(), self.prec, &self.zero)
    }
    fn has_x(&self) -> bool {
        self.zero.has_x()
    }
}

/// Laurent expansion of a rational function over `E` at `z = s - a` (or `z = 1/s`
/// when `at` is `None`), returning coefficients of `z^low ..= z^high`.
pub fn laurent_expand<E: Field>(f: &RatFunc<E>, at: Option<&E>, low: i64, high: i64) -> Result<Laurent<E>> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (n, d) = match at {
        Some(a) => (taylor_shift(f.num(), a), taylor_shift(f.den(), a)),
        None => {
            let dn = f.num().deg().unwrap() as i64;
            let dd = f.den().deg().unwrap() as i64;
            // f(1/w) = w^(dd-dn) rev(num)/rev(den)
            let rn = f.num().reverse();
            let rd = f.den().reverse();
            let sh = dd - dn;
            let (n, d) = if sh >= 0 {
                (rn.mul(&Poly::monomial(rn.ctx().one_like(), sh as usize)), rd)
            } else {
                (rn, rd.mul(&Poly::monomial(rd.ctx().one_like(), (-sh) as usize)))
            };
            (n, d)
        }
    };
    let vn = n.coeffs().iter().position(|c| !c.is_zero()).unwrap() as i64;
    let vd = d.coeffs().iter().position(|c| !c.is_zero()).unwrap() as i64;
    let v = vn - vd;
    if v < low || high < v {
        return Err(Error::WindowTooNarrow { low, high, needed: v });
    }
    let len = (high - v + 1) as usize;
    let nn: Vec<E> = n.coeffs()[vn as usize..].to_vec();
    let dd: Vec<E> = d.coeffs()[vd as usize..].to_vec();
    let d0i = dd[0].inv().expect("nonzero");
    let zero = f.coeff_ctx().zero_like();
    let mut out = vec![zero.clone(); len];
    for k in 0..len {
        let mut acc = nn.get(k).cloned().unwrap_or_else(|| zero.clone());
        for j in 1..=k.min(dd.len() - 1) {
            acc = acc.sub(&dd[j].mul(&out[k - j]));
        }
        out[k] = acc.mul(&d0i);
    }
    Ok(Laurent::new(v, out, Some(high + 1), &zero))
}

/// `p(a + z)` as a polynomial in `z`.
pub fn taylor_shift<E: Field>(p: &Poly<E>, a: &E) -> Poly<E> {
    let lin = Poly::new(vec![a.clone(), a.one_like()], a.zero_like());
    let mut acc = Poly::zero(a);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(&lin).add(&Poly::constant(c.clone()));
    }
    acc
}

/// Order of vanishing of a nonzero rational function at `s = a`.
pub fn order_at<E: Field>(f: &RatFunc<E>, a: &E) -> i64 {
    let lin = Poly::linear_root(a);
    let (kn, _) = super::factor::multiplicity(f.num(), &lin);
    let (kd, _) = super::factor::multiplicity(f.den(), &lin);
    kn as i64 - kd as i64
}

/// Order at `s = ∞` (as a function of `w = 1/s`).
pub fn order_at_infinity<E: Field>(f: &RatFunc<E>) -> i64 {
    f.den().deg().unwrap() as i64 - f.num().deg().unwrap() as i64
}

/// Residue of `f ds` at `s = a`.
pub fn residue_at<E: Field>(f: &RatFunc<E>, a: &E) -> E {
    if f.is_zero() {
        return a.zero_like();
    }
    let v = order_at(f, a);
    if v >= 0 {
        return a.zero_like();
    }
    let l = laurent_expand(f, Some(a), v, -1).expect("window sized by valuation");
    l.coeff(-1).expect("in window")
}

/// Residue of `f ds` at `s = ∞`, i.e. of `-f(1/w) w^-2 dw` at `w = 0`.
pub fn residue_at_infinity<E: Field>(f: &RatFunc<E>) -> E {
    let zero = f.coeff_ctx().zero_like();
    if f.is_zero() {
        return zero;
    }
    // res_{w=0} -f(1/w)/w^2 = -(coefficient of w^1 in f(1/w))
    let v = order_at_infinity(f);
    if v > 1 {
        return zero;
    }
    let l = laurent_expand(f, None, v, 1).expect("window sized by valuation");
    l.coeff(1).expect("in window").neg()
}
