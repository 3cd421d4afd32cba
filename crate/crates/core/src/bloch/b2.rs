use std::collections::BTreeMap;
use std::fmt;

use super::wedge::WedgeSum;
use crate::algebra::field::paren_factor;
use crate::algebra::{Field, TSeries, Q};
use crate::error::{Error, Result};

/// Check `x(1-x)` is a unit.
pub fn check_flat<F: Field>(x: &TSeries<F>) -> Result<()> {
    let one = x.ctx().one_like();
    if x.c0().is_zero() || x.c0().sub(&one).is_zero() {
        return Err(Error::FlatViolation(x.to_string()));
    }
    Ok(())
}

/// `1 - x`.
pub fn one_minus<F: Field>(x: &TSeries<F>) -> TSeries<F> {
    TSeries::one(x.ctx(), x.prec()).sub(x)
}

/// ℚ-combination of Bloch symbols `[x]`.
#[derive(Clone, Debug, PartialEq)]
pub struct B2Elt<F: Field> {
    terms: Vec<(Q, TSeries<F>)>,
}

/// ℚ-combination of `[x]⊗y`.
#[derive(Clone, Debug, PartialEq)]
pub struct B2Tensor<F: Field> {
    terms: Vec<(Q, TSeries<F>, TSeries<F>)>,
}

impl<F: Field> B2Elt<F> {
    pub fn zero() -> Self {
        B2Elt { terms: Vec::new() }
    }

    pub fn symbol(x: TSeries<F>) -> Result<Self> {
        B2Elt::from_terms(vec![(Q::one(), x)])
    }

    pub fn from_terms(terms: Vec<(Q, TSeries<F>)>) -> Result<Self> {
        for (_, x) in &terms {
            check_flat(x)?;
        }
        Ok(B2Elt { terms }.merged())
    }

    fn merged(self) -> Self {
        let mut acc: BTreeMap<String, (Q, TSeries<F>)> = BTreeMap::new();
        for (c, x) in self.terms {
            let e = acc.entry(x.to_string()).or_insert_with(|| (Q::zero(), x.clone()));
            e.0 = e.0.add(&c);
        }
        B2Elt { terms: acc.into_values().filter(|(c, _)| !c.is_zero()).collect() }
    }

    pub fn terms(&self) -> &[(Q, TSeries<F>)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut t = self.terms.clone();
        t.extend(o.terms.iter().cloned());
        B2Elt { terms: t }.merged()
    }

    pub fn scale(&self, q: &Q) -> Self {
        B2Elt { terms: self.terms.iter().map(|(c, x)| (c.mul(q), x.clone())).collect() }.merged()
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Q::int(-1)))
    }

    pub fn map_entries<G: Field>(&self, f: impl Fn(&TSeries<F>) -> Result<TSeries<G>>) -> Result<B2Elt<G>> {
        let mut t = Vec::new();
        for (c, x) in &self.terms {
            t.push((c.clone(), f(x)?));
        }
        B2Elt::from_terms(t)
    }

    /// `δ[x] = (1-x)∧x`.
    pub fn delta(&self) -> WedgeSum<F> {
        let terms = self.terms.iter().map(|(c, x)| (c.clone(), vec![one_minus(x), x.clone()])).collect();
        WedgeSum::from_terms(2, terms).expect("flat entries are units")
    }

    /// `[x]⊗y` for each symbol.
    pub fn tensor(&self, y: &TSeries<F>) -> Result<B2Tensor<F>> {
        B2Tensor::from_terms(self.terms.iter().map(|(c, x)| (c.clone(), x.clone(), y.clone())).collect())
    }
}

impl<F: Field> B2Tensor<F> {
    pub fn zero() -> Self {
        B2Tensor { terms: Vec::new() }
    }

    pub fn from_terms(terms: Vec<(Q, TSeries<F>, TSeries<F>)>) -> Result<Self> {
        for (_, x, y) in &terms {
            check_flat(x)?;
            if !y.is_unit() {
                return Err(Error::NonUnit(y.to_string()));
            }
        }
        Ok(B2Tensor { terms }.merged())
    }

    fn merged(self) -> Self {
        let mut acc: BTreeMap<(String, String), (Q, TSeries<F>, TSeries<F>)> = BTreeMap::new();
        for (c, x, y) in self.terms {
            let e = acc.entry((x.to_string(), y.to_string())).or_insert_with(|| (Q::zero(), x.clone(), y.clone()));
            e.0 = e.0.add(&c);
        }
        B2Tensor { terms: acc.into_values().filter(|(c, _, _)| !c.is_zero()).collect() }
    }

    pub fn terms(&self) -> &[(Q, TSeries<F>, TSeries<F>)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut t = self.terms.clone();
        t.extend(o.terms.iter().cloned());
        B2Tensor { terms: t }.merged()
    }

    pub fn scale(&self, q: &Q) -> Self {
        B2Tensor { terms: self.terms.iter().map(|(c, x, y)| (c.mul(q), x.clone(), y.clone())).collect() }.merged()
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Q::int(-1)))
    }

    pub fn map_entries<G: Field>(&self, f: impl Fn(&TSeries<F>) -> Result<TSeries<G>>) -> Result<B2Tensor<G>> {
        let mut t = Vec::new();
        for (c, x, y) in &self.terms {
            t.push((c.clone(), f(x)?, f(y)?));
        }
        B2Tensor::from_terms(t)
    }

    /// `[x]⊗y ↦ (1-x)∧x∧y`.
    pub fn delta(&self) -> WedgeSum<F> {
        let terms =
            self.terms.iter().map(|(c, x, y)| (c.clone(), vec![one_minus(x), x.clone(), y.clone()])).collect();
        WedgeSum::from_terms(3, terms).expect("flat entries are units")
    }
}

/// `[x] - [y] + [y/x] - [(1-x⁻¹)/(1-y⁻¹)] + [(1-x)/(1-y)]`.
pub fn five_term<F: Field>(x: &TSeries<F>, y: &TSeries<F>) -> Result<B2Elt<F>> {
    let one = TSeries::one(x.ctx(), x.prec().min(y.prec()));
    let xi = x.inv()?;
    let yi = y.inv()?;
    let a3 = y.mul(&xi);
    let a4 = one.sub(&xi).div(&one.sub(&yi))?;
    let a5 = one.sub(x).div(&one.sub(y))?;
    B2Elt::from_terms(vec![
        (Q::one(), x.clone()),
        (Q::int(-1), y.clone()),
        (Q::one(), a3),
        (Q::int(-1), a4),
        (Q::one(), a5),
    ])
}

impl<F: Field> fmt::Display for B2Elt<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<(Q, String)> = self.terms.iter().map(|(c, x)| (c.clone(), format!("[{}]", x))).collect();
        write_sum(f, &parts)
    }
}

impl<F: Field> fmt::Display for B2Tensor<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<(Q, String)> =
            self.terms.iter().map(|(c, x, y)| (c.clone(), format!("[{}](x)({})", x, y))).collect();
        write_sum(f, &parts)
    }
}

fn write_sum(f: &mut fmt::Formatter<'_>, parts: &[(Q, String)]) -> fmt::Result {
    if parts.is_empty() {
        return write!(f, "0");
    }
    for (i, (c, body)) in parts.iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        let piece = if a.is_one() { body.clone() } else { format!("{}*{}", paren_factor(&a.to_string()), body) };
        match (i, neg) {
            (0, true) => write!(f, "-{}", piece)?,
            (0, false) => write!(f, "{}", piece)?,
            (_, true) => write!(f, " - {}", piece)?,
            (_, false) => write!(f, " + {}", piece)?,
        }
    }
    Ok(())
}
