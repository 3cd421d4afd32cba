use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::field::paren_factor;
use crate::algebra::{Field, TSeries, Q};
use crate::error::{Error, Result};

/// Formal ℚ-combination of wedges `u₁∧…∧uₙ` of units, in antisymmetry normal form.
#[derive(Clone, Debug, PartialEq)]
pub struct WedgeSum<F: Field> {
    n: usize,
    terms: Vec<(Q, Vec<TSeries<F>>)>,
}

impl<F: Field> WedgeSum<F> {
    pub fn zero(n: usize) -> Self {
        WedgeSum { n, terms: Vec::new() }
    }

    /// Single generator `coef · u₁∧…∧uₙ`.
    pub fn generator(coef: Q, entries: Vec<TSeries<F>>) -> Result<Self> {
        let mut w = WedgeSum::zero(entries.len());
        w.push(coef, entries)?;
        Ok(w.normalized())
    }

    pub fn from_terms(n: usize, terms: Vec<(Q, Vec<TSeries<F>>)>) -> Result<Self> {
        let mut w = WedgeSum::zero(n);
        for (c, e) in terms {
            w.push(c, e)?;
        }
        Ok(w.normalized())
    }

    fn push(&mut self, coef: Q, entries: Vec<TSeries<F>>) -> Result<()> {
        assert_eq!(entries.len(), self.n, "wedge arity");
        for e in &entries {
            if !e.is_unit() {
                return Err(Error::NonUnit(e.to_string()));
            }
        }
        self.terms.push((coef, entries));
        Ok(())
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(Q, Vec<TSeries<F>>)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sort entries inside each generator with sign, drop repeated or trivial entries, merge.
    pub fn normalized(&self) -> Self {
        let mut acc: BTreeMap<String, (Q, Vec<TSeries<F>>)> = BTreeMap::new();
        for (c, e) in &self.terms {
            if c.is_zero() || e.iter().any(|x| x.is_one()) {
                continue;
            }
            let mut keyed: Vec<(String, TSeries<F>)> = e.iter().map(|x| (x.to_string(), x.clone())).collect();
            // insertion sort counting transpositions
            let mut sign = 1i64;
            for i in 1..keyed.len() {
                let mut j = i;
                while j > 0 && keyed[j - 1].0 > keyed[j].0 {
                    keyed.swap(j - 1, j);
                    sign = -sign;
                    j -= 1;
                }
            }
            if keyed.windows(2).any(|w| w[0].0 == w[1].0) {
                continue;
            }
            let key = keyed.iter().map(|k| k.0.as_str()).collect::<Vec<_>>().join(" /\\ ");
            let coef = c.mul(&Q::int(sign));
            let entry = acc.entry(key).or_insert_with(|| (Q::zero(), keyed.iter().map(|k| k.1.clone()).collect()));
            entry.0 = entry.0.add(&coef);
        }
        let terms = acc.into_values().filter(|(c, _)| !c.is_zero()).collect();
        WedgeSum { n: self.n, terms }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n, "wedge arity");
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        WedgeSum { n: self.n, terms }.normalized()
    }

    pub fn scale(&self, q: &Q) -> Self {
        WedgeSum { n: self.n, terms: self.terms.iter().map(|(c, e)| (c.mul(q), e.clone())).collect() }.normalized()
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Q::int(-1)))
    }

    /// Apply a map to every entry (truncation, ⋆-action, reparametrization, ...).
    pub fn map_entries(&self, f: impl Fn(&TSeries<F>) -> Result<TSeries<F>>) -> Result<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (c, e) in &self.terms {
            terms.push((c.clone(), e.iter().map(&f).collect::<Result<Vec<_>>>()?));
        }
        WedgeSum::from_terms(self.n, terms)
    }

    /// Apply a map changing the coefficient domain.
    pub fn map_into<G: Field>(&self, f: impl Fn(&TSeries<F>) -> Result<TSeries<G>>) -> Result<WedgeSum<G>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (c, e) in &self.terms {
            terms.push((c.clone(), e.iter().map(&f).collect::<Result<Vec<_>>>()?));
        }
        WedgeSum::from_terms(self.n, terms)
    }

    /// Minimum precision among entries.
    pub fn precision(&self) -> Option<usize> {
        self.terms.iter().flat_map(|(_, e)| e.iter().map(|x| x.prec())).min()
    }
}

impl<F: Field> fmt::Display for WedgeSum<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, e)) in self.terms.iter().enumerate() {
            let body = e.iter().map(|x| format!("({})", x)).collect::<Vec<_>>().join(" /\\ ");
            let neg = c.is_negative();
            let a = c.abs();
            let piece = if a.is_one() { body } else { format!("{}*{}", paren_factor(&a.to_string()), body) };
            match (i, neg) {
                (0, true) => write!(f, "-{}", piece)?,
                (0, false) => write!(f, "{}", piece)?,
                (_, true) => write!(f, " - {}", piece)?,
                (_, false) => write!(f, " + {}", piece)?,
            }
        }
        Ok(())
    }
}
