//! Evaluation of parsed expressions into truncated series and cycle coordinates.

use std::collections::HashMap;

use infchow::algebra::{qs_const, qs_var, qxs_var, qxs_x, Field, Poly, Qs, Qxs, RatFunc, TSeries, Var, Q};
use infchow::bloch::b2::check_flat;
use infchow::bloch::{B2Elt, B2Tensor, WedgeSum};
use infchow::cycle::{CoordFn, TPoly};

use crate::expr::{self, Expr, Kind, Span, SyntaxError};

/// Coefficient fields `K(s)` that expressions evaluate into.
pub trait Coeffs: Field {
    fn s() -> Self;
    fn x() -> Option<Self>;
    fn q(q: &Q) -> Self;
}

impl Coeffs for Qs {
    fn s() -> Self {
        qs_var()
    }

    fn x() -> Option<Self> {
        None
    }

    fn q(q: &Q) -> Self {
        qs_const(q.clone())
    }
}

impl Coeffs for Qxs {
    fn s() -> Self {
        qxs_var()
    }

    fn x() -> Option<Self> {
        Some(qxs_x())
    }

    fn q(q: &Q) -> Self {
        RatFunc::constant(RatFunc::constant(q.clone(), Var::X), Var::S)
    }
}

/// Evaluation context: precision, the curve parameter name and `let` bindings.
pub struct Env<F: Field> {
    pub n: usize,
    /// `'s'`, or `'u'` for cycle parameters.
    pub param: char,
    pub bindings: HashMap<String, TSeries<F>>,
}

impl<F: Coeffs> Env<F> {
    pub fn new(n: usize) -> Self {
        Env { n, param: 's', bindings: HashMap::new() }
    }

    fn constant(&self, a: F) -> TSeries<F> {
        TSeries::constant(a, self.n)
    }

    pub fn eval(&self, e: &Expr) -> Result<TSeries<F>, SyntaxError> {
        let err = |msg: String| SyntaxError::new(e.span, msg);
        Ok(match &e.kind {
            Kind::Num(q) => self.constant(F::q(q)),
            Kind::Var('t') => TSeries::monomial(F::q(&Q::one()), 1, self.n),
            Kind::Var('x') => match F::x() {
                Some(x) => self.constant(x),
                None => return Err(err("'x' needs --base Qx".into())),
            },
            Kind::Var(c) if *c == self.param => self.constant(F::s()),
            Kind::Var(c) => return Err(err(format!("'{}' is not a variable here (the parameter is '{}')", c, self.param))),
            Kind::Name(n) => match self.bindings.get(n) {
                Some(v) => v.with_prec(self.n).map_err(|x| err(x.to_string()))?,
                None => return Err(err(format!("unbound name '{}'", n))),
            },
            Kind::Neg(a) => self.eval(a)?.neg(),
            Kind::Add(a, b) => self.eval(a)?.add(&self.eval(b)?),
            Kind::Sub(a, b) => self.eval(a)?.sub(&self.eval(b)?),
            Kind::Mul(a, b) => self.eval(a)?.mul(&self.eval(b)?),
            Kind::Div(a, b) => {
                let d = self.eval(b)?;
                if !d.is_unit() {
                    return Err(SyntaxError::new(b.span, format!("division by a non-unit: {}", d)));
                }
                self.eval(a)?.div(&d).map_err(|x| SyntaxError::new(b.span, x.to_string()))?
            }
            Kind::Pow(a, k) => {
                let v = self.eval(a)?;
                if *k < 0 && !v.is_unit() {
                    return Err(SyntaxError::new(a.span, format!("negative power of a non-unit: {}", v)));
                }
                v.powi(*k).map_err(|x| err(x.to_string()))?
            }
            Kind::Exp(a) => {
                let v = self.eval(a)?;
                if !v.c0().is_zero() {
                    return Err(SyntaxError::new(a.span, format!("exp argument has nonzero constant term {}", v.c0())));
                }
                v.exp().map_err(|x| err(x.to_string()))?
            }
        })
    }

    /// A unit entry of a wedge or symbol.
    fn unit(&self, e: &Expr) -> Result<TSeries<F>, SyntaxError> {
        let v = self.eval(e)?;
        if !v.is_unit() {
            return Err(SyntaxError::new(e.span, format!("not a unit: {}", v)));
        }
        Ok(v)
    }

    pub fn wedge_sum(&self, w: &expr::WedgeSum, arity: Option<usize>) -> Result<WedgeSum<F>, SyntaxError> {
        let k = w.terms[0].1.factors.len();
        let mut terms = Vec::new();
        for (c, t) in &w.terms {
            let want = arity.unwrap_or(k);
            if t.factors.len() != want {
                return Err(SyntaxError::new(t.span, format!("expected {} wedge factors, found {}", want, t.factors.len())));
            }
            let es = t.factors.iter().map(|e| self.unit(e)).collect::<Result<Vec<_>, _>>()?;
            terms.push((c.clone(), es));
        }
        WedgeSum::from_terms(arity.unwrap_or(k), terms).map_err(|x| SyntaxError::new(w.terms[0].1.span, x.to_string()))
    }

    fn symbol(&self, t: &expr::B2Term) -> Result<TSeries<F>, SyntaxError> {
        let x = self.eval(&t.x)?;
        check_flat(&x).map_err(|_| SyntaxError::new(t.x.span, format!("x(1-x) is not a unit for x = {}", x)))?;
        Ok(x)
    }

    pub fn b2(&self, b: &expr::B2Sum) -> Result<B2Elt<F>, SyntaxError> {
        let mut terms = Vec::new();
        for t in &b.terms {
            if let Some(y) = &t.y {
                return Err(SyntaxError::new(y.span, "expected a B2 element, found a tensor"));
            }
            terms.push((t.coef.clone(), self.symbol(t)?));
        }
        B2Elt::from_terms(terms).map_err(|x| SyntaxError::new(b.terms[0].span, x.to_string()))
    }

    pub fn b2_tensor(&self, b: &expr::B2Sum) -> Result<B2Tensor<F>, SyntaxError> {
        let mut terms = Vec::new();
        for t in &b.terms {
            let y = match &t.y {
                Some(y) => self.unit(y)?,
                None => return Err(SyntaxError::new(t.span, "expected [x](x)y")),
            };
            terms.push((t.coef.clone(), self.symbol(t)?, y));
        }
        B2Tensor::from_terms(terms).map_err(|x| SyntaxError::new(b.terms[0].span, x.to_string()))
    }
}

/// A polynomial in `s` with no `t`, made monic.
pub fn point_poly<K: Field>(env: &Env<RatFunc<K>>, e: &Expr) -> Result<Poly<K>, SyntaxError>
where
    RatFunc<K>: Coeffs,
{
    let v = env.eval(e)?;
    if !v.is_t_constant() {
        return Err(SyntaxError::new(e.span, "a point cannot depend on t"));
    }
    let f = v.c0();
    if !f.is_polynomial() || f.num().deg().unwrap_or(0) == 0 {
        return Err(SyntaxError::new(e.span, "a point is a nonconstant polynomial in s"));
    }
    Ok(f.num().monic())
}

/// Cycle coordinates: rational functions of `u` with coefficients in `ℚ[t]/(t^n)`.
pub struct CycleEnv {
    pub n: usize,
    pub bindings: HashMap<String, CoordFn>,
}

fn tconst(q: Q, n: usize) -> CoordFn {
    CoordFn::constant(q, n)
}

impl CycleEnv {
    pub fn eval(&self, e: &Expr) -> Result<CoordFn, SyntaxError> {
        let n = self.n;
        let err = |s: Span, msg: String| SyntaxError::new(s, msg);
        Ok(match &e.kind {
            Kind::Num(q) => tconst(q.clone(), n),
            Kind::Var('u') => CoordFn::var(n),
            Kind::Var('t') => {
                let one = Poly::one(&Q::zero());
                CoordFn::new(TPoly::new(vec![Poly::zero(&Q::zero()), one.clone()], n), TPoly::constant(one, n)).map_err(|x| err(e.span, x.to_string()))?
            }
            Kind::Var(c) => return Err(err(e.span, format!("'{}' is not a variable here (the parameter is 'u')", c))),
            Kind::Name(nm) => match self.bindings.get(nm) {
                Some(v) => v.with_prec(n),
                None => return Err(err(e.span, format!("unbound name '{}'", nm))),
            },
            Kind::Neg(a) => tconst(Q::zero(), n).sub(&self.eval(a)?).map_err(|x| err(e.span, x.to_string()))?,
            Kind::Add(a, b) => self.eval(a)?.add(&self.eval(b)?).map_err(|x| err(e.span, x.to_string()))?,
            Kind::Sub(a, b) => self.eval(a)?.sub(&self.eval(b)?).map_err(|x| err(e.span, x.to_string()))?,
            Kind::Mul(a, b) => self.eval(a)?.mul(&self.eval(b)?).map_err(|x| err(e.span, x.to_string()))?,
            Kind::Div(a, b) => self.eval(a)?.div(&self.eval(b)?).map_err(|x| err(b.span, format!("division by zero or by a multiple of t: {}", x)))?,
            Kind::Pow(a, k) => {
                let v = self.eval(a)?;
                let mut acc = tconst(Q::one(), n);
                for _ in 0..k.unsigned_abs() {
                    acc = if *k > 0 { acc.mul(&v) } else { acc.div(&v) }.map_err(|x| err(a.span, x.to_string()))?;
                }
                acc
            }
            Kind::Exp(a) => self.exp(a)?,
        })
    }

    /// `exp(N/D)` for `D` free of `t` and `N ≡ 0 mod t`.
    fn exp(&self, a: &Expr) -> Result<CoordFn, SyntaxError> {
        let n = self.n;
        let v = self.eval(a)?;
        let err = |msg: String| SyntaxError::new(a.span, msg);
        if !v.num.coeff(0).is_zero() {
            return Err(err(format!("exp argument has nonzero constant term {}", v.num.coeff(0).render("u"))));
        }
        if v.den.coeffs().len() > 1 {
            return Err(err("exp argument must have a t-free denominator".into()));
        }
        let d0 = v.den.coeff(0);
        // Σ_{k<n} N^k D^{n-1-k} / k!  over  D^{n-1}
        let mut num = TPoly::constant(Poly::zero(&Q::zero()), n);
        let mut nk = TPoly::constant(Poly::one(&Q::zero()), n);
        let mut fact = Q::one();
        for k in 0..n {
            let dpow = TPoly::constant(d0.pow(n - 1 - k), n);
            num = num.add(&nk.mul(&dpow).scale(&fact.inv().expect("nonzero")));
            nk = nk.mul(&v.num);
            fact = fact.mul(&Q::int(k as i64 + 1));
        }
        CoordFn::new(num, TPoly::constant(d0.pow(n.saturating_sub(1)), n)).map_err(|x| err(x.to_string()))
    }
}
