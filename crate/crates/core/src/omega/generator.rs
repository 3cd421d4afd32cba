use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{Field, TSeries, Q};
use crate::bloch::WedgeSum;
use crate::error::{Error, Result};

/// One slot of a generator: a constant unit `c` or an exponential `e^{a t^x}`.
#[derive(Clone, Debug, PartialEq)]
pub enum Slot<F: Field> {
    Const(F),
    Exp(F, usize),
}

impl<F: Field> Slot<F> {
    pub fn order(&self) -> usize {
        match self {
            Slot::Const(_) => 0,
            Slot::Exp(_, x) => *x,
        }
    }

    fn key(&self) -> String {
        match self {
            Slot::Const(c) => format!("0:{}", c),
            Slot::Exp(a, x) => format!("{}:{}", x, a),
        }
    }

    /// The unit this slot denotes, at precision `n`.
    pub fn to_series(&self, n: usize) -> Result<TSeries<F>> {
        match self {
            Slot::Const(c) => Ok(TSeries::constant(c.clone(), n)),
            Slot::Exp(a, x) => TSeries::monomial(a.clone(), *x, n).exp(),
        }
    }

    /// `(y·b, db)` with the conventions `y b = 0`, `db = dlog c` for a constant slot.
    fn yb_db(&self) -> Result<(F, F)> {
        match self {
            Slot::Const(c) => {
                let ci = c.inv().ok_or_else(|| Error::NonUnit(c.to_string()))?;
                Ok((c.zero_like(), c.partial_s().mul(&ci)))
            }
            Slot::Exp(b, y) => Ok((b.scale(&Q::int(*y as i64)), b.partial_s())),
        }
    }

    fn value(&self) -> Option<&F> {
        match self {
            Slot::Exp(b, _) => Some(b),
            Slot::Const(_) => None,
        }
    }
}

impl<F: Field> fmt::Display for Slot<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slot::Const(c) => write!(f, "({})", c),
            Slot::Exp(a, 1) => write!(f, "exp(({})*t)", a),
            Slot::Exp(a, x) => write!(f, "exp(({})*t^{})", a, x),
        }
    }
}

/// `coef · slot₁∧slot₂∧slot₃`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpGenerator<F: Field> {
    pub coef: Q,
    pub slots: [Slot<F>; 3],
}

impl<F: Field> ExpGenerator<F> {
    pub fn new(coef: Q, slots: [Slot<F>; 3]) -> Self {
        ExpGenerator { coef, slots }
    }

    pub fn total_order(&self) -> usize {
        self.slots.iter().map(|s| s.order()).sum()
    }

    /// True if every slot has t-order `< m`.
    pub fn is_low(&self, m: usize) -> bool {
        self.slots.iter().all(|s| s.order() < m)
    }

    /// Trivial in `Λ³(R^×)⊗ℚ`: a zero exponent, a unit constant, or a repeated slot.
    fn is_trivial(&self) -> bool {
        let dead = self.slots.iter().any(|s| match s {
            Slot::Const(c) => c.is_one(),
            Slot::Exp(a, _) => a.is_zero(),
        });
        dead || self.coef.is_zero()
    }

    /// `Ω_{m,r}` on this generator: rotate the slot of order `≥ m` to the front and
    /// apply `a(y b·dc - z c·db)`; zero unless the total order is `r`.
    pub fn omega(&self, m: usize, r: usize) -> Result<F> {
        let ctx = match &self.slots[0] {
            Slot::Const(c) | Slot::Exp(c, _) => c.zero_like(),
        };
        if self.is_trivial() || self.total_order() != r {
            if self.is_low(m) && !self.is_trivial() {
                return Err(Error::NotInImage(self.to_string()));
            }
            return Ok(ctx);
        }
        let p = self.slots.iter().position(|s| s.order() >= m).ok_or_else(|| Error::NotInImage(self.to_string()))?;
        let a = self.slots[p].value().expect("order ≥ m slot is exponential");
        let s2 = &self.slots[(p + 1) % 3];
        let s3 = &self.slots[(p + 2) % 3];
        let (yb, db) = s2.yb_db()?;
        let (zc, dc) = s3.yb_db()?;
        let v = a.mul(&yb.mul(&dc).sub(&zc.mul(&db)));
        Ok(v.scale(&self.coef))
    }
}

impl<F: Field> fmt::Display for ExpGenerator<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*{} /\\ {} /\\ {}", self.coef, self.slots[0], self.slots[1], self.slots[2])
    }
}

/// Sort slots with sign, drop trivial generators and merge equal ones.
pub fn merge<F: Field>(gens: &[ExpGenerator<F>]) -> Vec<ExpGenerator<F>> {
    let mut acc: BTreeMap<String, ExpGenerator<F>> = BTreeMap::new();
    for g in gens {
        if g.is_trivial() {
            continue;
        }
        let mut keyed: Vec<(String, Slot<F>)> = g.slots.iter().map(|s| (s.key(), s.clone())).collect();
        let mut sign = 1i64;
        for i in 1..3 {
            let mut j = i;
            while j > 0 && keyed[j - 1].0 > keyed[j].0 {
                keyed.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if keyed[0].0 == keyed[1].0 || keyed[1].0 == keyed[2].0 {
            continue;
        }
        let key = format!("{}|{}|{}", keyed[0].0, keyed[1].0, keyed[2].0);
        let coef = g.coef.mul(&Q::int(sign));
        let slots = [keyed[0].1.clone(), keyed[1].1.clone(), keyed[2].1.clone()];
        acc.entry(key)
            .and_modify(|e| e.coef = e.coef.add(&coef))
            .or_insert(ExpGenerator { coef, slots });
    }
    acc.into_values().filter(|g| !g.coef.is_zero()).collect()
}

/// Canonical factorization `a = a(0)·∏_{1≤i<N} e^{ℓ_i(a) t^i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomp<F: Field> {
    pub c0: F,
    /// `ell[i] = ℓ_i(a)`, with `ell[0] = 0`.
    pub ell: Vec<F>,
}

impl<F: Field> Decomp<F> {
    pub fn of(a: &TSeries<F>) -> Result<Self> {
        Ok(Decomp { c0: a.c0().clone(), ell: a.log_circ()?.coeffs().to_vec() })
    }

    pub fn slots(&self) -> Vec<Slot<F>> {
        let mut v = vec![Slot::Const(self.c0.clone())];
        for (i, a) in self.ell.iter().enumerate().skip(1) {
            if !a.is_zero() {
                v.push(Slot::Exp(a.clone(), i));
            }
        }
        v
    }

    /// Agreement of the factors of order `< m`.
    pub fn low_equal(&self, o: &Self, m: usize) -> bool {
        self.c0 == o.c0 && (1..m).all(|i| self.ell.get(i) == o.ell.get(i))
    }
}

/// Trilinear expansion of a 3-wedge into exponential generators.
pub fn expand_exponential<F: Field>(w: &WedgeSum<F>) -> Result<Vec<ExpGenerator<F>>> {
    assert_eq!(w.arity(), 3, "expand_exponential takes 3-wedges");
    let mut out = Vec::new();
    for (c, e) in w.terms() {
        let s: Vec<Vec<Slot<F>>> = e.iter().map(|x| Decomp::of(x).map(|d| d.slots())).collect::<Result<_>>()?;
        for a in &s[0] {
            for b in &s[1] {
                for d in &s[2] {
                    out.push(ExpGenerator::new(c.clone(), [a.clone(), b.clone(), d.clone()]));
                }
            }
        }
    }
    Ok(merge(&out))
}

/// `Ω_{m,r}` on a list of generators (merged first). Fails with `NotInImage` if a
/// generator with every slot of order `< m` survives.
pub fn omega_generators<F: Field>(gens: &[ExpGenerator<F>], m: usize, r: usize, ctx: &F) -> Result<F> {
    let mut acc = ctx.zero_like();
    for g in merge(gens) {
        if g.is_low(m) {
            return Err(Error::NotInImage(g.to_string()));
        }
        acc = acc.add(&g.omega(m, r)?);
    }
    Ok(acc)
}

/// `Ω̂` on a triple of decomposed units: the generator formula summed over the
/// weight-`r` generators having a slot of order `≥ m`; low generators contribute 0.
pub fn omega_hat_triple<F: Field>(d: [&Decomp<F>; 3], m: usize, r: usize) -> Result<F> {
    let mut acc = d[0].c0.zero_like();
    for p in 0..3 {
        let hi = d[p];
        let d2 = d[(p + 1) % 3];
        let d3 = d[(p + 2) % 3];
        for x in m..r {
            let a = match hi.ell.get(x) {
                Some(a) if !a.is_zero() => a,
                _ => continue,
            };
            let rest = r - x;
            // y + z = rest with 0 meaning the constant slot
            for y in 0..=rest {
                let z = rest - y;
                let s2 = if y == 0 { Slot::Const(d2.c0.clone()) } else { Slot::Exp(d2.ell[y].clone(), y) };
                let s3 = if z == 0 { Slot::Const(d3.c0.clone()) } else { Slot::Exp(d3.ell[z].clone(), z) };
                let g = ExpGenerator::new(Q::one(), [Slot::Exp(a.clone(), x), s2, s3]);
                if g.is_trivial() {
                    continue;
                }
                acc = acc.add(&g.omega(m, r)?);
            }
        }
    }
    Ok(acc)
}

/// `Ω̂` extended linearly to a 3-wedge of units at precision `≥ r`.
pub fn omega_hat<F: Field>(w: &WedgeSum<F>, m: usize, r: usize, ctx: &F) -> Result<F> {
    let mut acc = ctx.zero_like();
    for (c, e) in w.terms() {
        let d: Vec<Decomp<F>> = e.iter().map(|x| Decomp::of(&x.with_prec(r)?)).collect::<Result<_>>()?;
        acc = acc.add(&omega_hat_triple([&d[0], &d[1], &d[2]], m, r)?.scale(c));
    }
    Ok(acc)
}
