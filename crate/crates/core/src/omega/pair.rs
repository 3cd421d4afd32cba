use std::fmt;

use super::generator::{expand_exponential, merge, omega_generators, omega_hat_triple, Decomp, ExpGenerator};
use crate::algebra::base::{BaseField, Point};
use crate::algebra::{Field, RatFunc, TSeries, Q};
use crate::bloch::WedgeSum;
use crate::error::{check_modulus, Error, Result};
use crate::kahler::{residue_form, Form1};

/// A formal sum of pairs `(a₁,a₂)∧(b₁,b₂)∧(c₁,c₂)` with `a₁ ≡ a₂ mod t^m`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairWedge3<F: Field> {
    m: usize,
    terms: Vec<(Q, [(TSeries<F>, TSeries<F>); 3])>,
}

impl<F: Field> PairWedge3<F> {
    pub fn new(m: usize, terms: Vec<(Q, [(TSeries<F>, TSeries<F>); 3])>) -> Result<Self> {
        for (_, e) in &terms {
            for (a, b) in e {
                let n = a.prec().min(b.prec());
                if n < m {
                    return Err(Error::PrecisionExceeded { needed: m, available: n });
                }
                if a.with_prec(m)? != b.with_prec(m)? {
                    return Err(Error::NotInImage(format!("{} and {} differ mod t^{}", a, b, m)));
                }
                if !a.is_unit() {
                    return Err(Error::NonUnit(a.to_string()));
                }
            }
        }
        Ok(PairWedge3 { m, terms })
    }

    /// `(a₁,a₂)∧(b₁,b₂)∧(c₁,c₂)`.
    pub fn single(m: usize, e: [(TSeries<F>, TSeries<F>); 3]) -> Result<Self> {
        Self::new(m, vec![(Q::one(), e)])
    }

    /// The diagonal pair `(a,a)∧(b,b)∧(c,c)`-style embedding of a wedge.
    pub fn diagonal(m: usize, w: &WedgeSum<F>) -> Result<Self> {
        let terms = w
            .terms()
            .iter()
            .map(|(c, e)| (c.clone(), [(e[0].clone(), e[0].clone()), (e[1].clone(), e[1].clone()), (e[2].clone(), e[2].clone())]))
            .collect();
        Self::new(m, terms)
    }

    pub fn modulus(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &[(Q, [(TSeries<F>, TSeries<F>); 3])] {
        &self.terms
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.m, o.m);
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        PairWedge3 { m: self.m, terms }
    }

    pub fn scale(&self, q: &Q) -> Self {
        PairWedge3 { m: self.m, terms: self.terms.iter().map(|(c, e)| (c.mul(q), e.clone())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Q::int(-1)))
    }

    pub fn map_entries(&self, f: impl Fn(&TSeries<F>) -> Result<TSeries<F>>) -> Result<Self> {
        let mut terms = Vec::new();
        for (c, e) in &self.terms {
            let mut ne = e.clone();
            for (k, (a, b)) in e.iter().enumerate() {
                ne[k] = (f(a)?, f(b)?);
            }
            terms.push((c.clone(), ne));
        }
        Self::new(self.m, terms)
    }

    fn side(&self, k: usize) -> Result<WedgeSum<F>> {
        let terms = self
            .terms
            .iter()
            .map(|(c, e)| {
                let pick = |p: &(TSeries<F>, TSeries<F>)| if k == 0 { p.0.clone() } else { p.1.clone() };
                (c.clone(), vec![pick(&e[0]), pick(&e[1]), pick(&e[2])])
            })
            .collect();
        WedgeSum::from_terms(3, terms)
    }

    /// The `π₁` side.
    pub fn first(&self) -> Result<WedgeSum<F>> {
        self.side(0)
    }

    /// The `π₂` side.
    pub fn second(&self) -> Result<WedgeSum<F>> {
        self.side(1)
    }

    /// `s(q)`: the generator expansion of `π₁ - π₂` at precision `r`, after cancellation.
    pub fn generators(&self, r: usize) -> Result<Vec<ExpGenerator<F>>> {
        let cut = |w: WedgeSum<F>| w.map_entries(|x| x.with_prec(r));
        let g1 = expand_exponential(&cut(self.first()?)?)?;
        let mut g2 = expand_exponential(&cut(self.second()?)?)?;
        for g in &mut g2 {
            g.coef = g.coef.neg();
        }
        let mut all = g1;
        all.extend(g2);
        Ok(merge(&all))
    }

    fn ctx(&self) -> Option<F> {
        self.terms.first().map(|(_, e)| e[0].0.ctx().zero_like())
    }
}

impl<F: Field> fmt::Display for PairWedge3<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, e)| {
                let s: Vec<String> = e.iter().map(|(a, b)| format!("{{{}, {}}}", a, b)).collect();
                format!("{}*{}", c, s.join(" /\\ "))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Ω_{m,r}` on generators, as a relative 1-form.
pub fn omega_mr<F: Field>(gens: &[ExpGenerator<F>], m: usize, r: usize, ctx: &F) -> Result<Form1<F>> {
    check_modulus(m, r)?;
    Ok(Form1::ds(omega_generators(gens, m, r, ctx)?))
}

/// `ω_{m,r}(q) = Ω_{m,r}(s(q))`, via the full generator expansion of both sides.
pub fn omega_mr_pair<F: Field>(q: &PairWedge3<F>, r: usize) -> Result<Form1<F>> {
    let m = q.modulus();
    check_modulus(m, r)?;
    let ctx = match q.ctx() {
        Some(c) => c,
        None => return Err(Error::ZeroInput),
    };
    omega_mr(&q.generators(r)?, m, r, &ctx)
}

/// Termwise `ω_{m,r}`: for each pair term, `Ω̂(π₁) - Ω̂(π₂)` after checking that the
/// factors of order `< m` agree. Agrees with [`omega_mr_pair`] on valid pairs.
pub fn omega_mr_pair_termwise<F: Field>(q: &PairWedge3<F>, r: usize) -> Result<Form1<F>> {
    let m = q.modulus();
    check_modulus(m, r)?;
    let ctx = match q.ctx() {
        Some(c) => c,
        None => return Err(Error::ZeroInput),
    };
    let mut acc = ctx.zero_like();
    for (c, e) in q.terms() {
        let mut d1 = Vec::new();
        let mut d2 = Vec::new();
        for (a, b) in e {
            let da = Decomp::of(&a.with_prec(r)?)?;
            let db = Decomp::of(&b.with_prec(r)?)?;
            if !da.low_equal(&db, m) {
                return Err(Error::NotInImage(format!("{} and {} differ below t^{}", a, b, m)));
            }
            d1.push(da);
            d2.push(db);
        }
        let v = omega_hat_triple([&d1[0], &d1[1], &d1[2]], m, r)?.sub(&omega_hat_triple([&d2[0], &d2[1], &d2[2]], m, r)?);
        acc = acc.add(&v.scale(c));
    }
    Ok(Form1::ds(acc))
}

/// Residue of `ω_{m,r}(q)` at a closed point, for pairs over `K(s)`.
pub fn res_omega_pair<K: BaseField>(q: &PairWedge3<RatFunc<K>>, r: usize, at: &Point<K>) -> Result<K::Res> {
    let w = omega_mr_pair(q, r)?;
    residue_form(&w, at)
}
