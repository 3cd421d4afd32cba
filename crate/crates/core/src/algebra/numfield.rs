use std::fmt;
use std::sync::Arc;

use super::factor::is_irreducible;
use super::field::Field;
use super::poly::Poly;
use super::rational::Q;
use crate::error::{Error, Result};

/// Defining data of a simple extension `ℚ[a]/(π)`.
#[derive(Debug, PartialEq)]
pub struct NfDef {
    pub modulus: Poly<Q>,
    pub name: String,
}

/// Element of a simple number field, stored as a reduced polynomial in the generator.
#[derive(Clone, Debug)]
pub struct Nf {
    v: Poly<Q>,
    def: Arc<NfDef>,
}

impl PartialEq for Nf {
    fn eq(&self, o: &Self) -> bool {
        self.v == o.v && (Arc::ptr_eq(&self.def, &o.def) || self.def.modulus == o.def.modulus)
    }
}

impl Nf {
    /// Declare `ℚ[name]/(π)`; `π` must be monic irreducible of degree ≥ 1.
    pub fn field(modulus: Poly<Q>, name: &str) -> Result<Nf> {
        match modulus.deg() {
            None | Some(0) => return Err(Error::Unsupported("extension of degree 0".into())),
            _ => {}
        }
        if !modulus.lc().is_one() {
            return Err(Error::Unsupported(format!("modulus {} is not monic", modulus.render(name))));
        }
        if !is_irreducible(&modulus) {
            return Err(Error::Unsupported(format!("modulus {} is reducible", modulus.render(name))));
        }
        Ok(Nf::field_unchecked(modulus, name))
    }

    /// As `field`, for a modulus already known to be irreducible.
    pub fn field_unchecked(modulus: Poly<Q>, name: &str) -> Nf {
        Nf { v: Poly::zero(&Q::zero()), def: Arc::new(NfDef { modulus, name: name.to_string() }) }
    }

    /// The rational field presented as `ℚ[a]/(a)`.
    pub fn rational() -> Nf {
        Nf::field_unchecked(Poly::var(&Q::zero()), "a")
    }

    pub fn def(&self) -> &NfDef {
        &self.def
    }

    pub fn degree(&self) -> usize {
        self.def.modulus.deg().unwrap_or(0)
    }

    pub fn modulus(&self) -> &Poly<Q> {
        &self.def.modulus
    }

    pub fn gen(&self) -> Nf {
        self.from_poly(Poly::var(&Q::zero()))
    }

    pub fn from_poly(&self, p: Poly<Q>) -> Nf {
        Nf { v: p.rem(&self.def.modulus), def: self.def.clone() }
    }

    pub fn from_q(&self, q: &Q) -> Nf {
        Nf { v: Poly::constant(q.clone()), def: self.def.clone() }
    }

    pub fn poly(&self) -> &Poly<Q> {
        &self.v
    }

    /// Rational value, if the element lies in ℚ.
    pub fn as_rational(&self) -> Option<Q> {
        if self.v.is_constant() {
            Some(self.v.coeff(0))
        } else {
            None
        }
    }

    /// Field trace to ℚ: sum of the diagonal of the multiplication matrix.
    pub fn trace(&self) -> Q {
        let n = self.degree();
        let mut acc = Q::zero();
        let mut basis = Poly::one(&Q::zero());
        let x = Poly::var(&Q::zero());
        for i in 0..n {
            let prod = self.v.mul(&basis).rem(&self.def.modulus);
            acc = acc.add(&prod.coeff(i));
            basis = basis.mul(&x).rem(&self.def.modulus);
        }
        acc
    }

    /// Trace divided by the degree.
    pub fn normalized_trace(&self) -> Q {
        self.trace().div(&Q::int(self.degree() as i64)).expect("degree ≥ 1")
    }
}

impl fmt::Display for Nf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v.render(&self.def.name))
    }
}

impl Field for Nf {
    fn zero_like(&self) -> Self {
        Nf { v: Poly::zero(&Q::zero()), def: self.def.clone() }
    }
    fn one_like(&self) -> Self {
        self.from_q(&Q::one())
    }
    fn is_zero(&self) -> bool {
        self.v.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        Nf { v: self.v.add(&o.v), def: self.def.clone() }
    }
    fn sub(&self, o: &Self) -> Self {
        Nf { v: self.v.sub(&o.v), def: self.def.clone() }
    }
    fn mul(&self, o: &Self) -> Self {
        if self.v.is_zero() || o.v.is_zero() {
            return self.zero_like();
        }
        if self.v.is_constant() && o.v.is_constant() {
            return self.from_q(&self.v.coeff(0).mul(&o.v.coeff(0)));
        }
        if self.v.is_constant() || o.v.is_constant() {
            return Nf { v: self.v.mul(&o.v), def: self.def.clone() };
        }
        self.from_poly(self.v.mul(&o.v))
    }
    fn neg(&self) -> Self {
        Nf { v: self.v.neg(), def: self.def.clone() }
    }
    fn inv(&self) -> Option<Self> {
        if self.v.is_zero() {
            return None;
        }
        if self.v.is_constant() {
            return Some(self.from_q(&self.v.coeff(0).inv()?));
        }
        let (g, u, _) = self.v.xgcd(&self.def.modulus);
        debug_assert!(g.is_one(), "modulus not irreducible");
        Some(self.from_poly(u))
    }
    fn from_q_like(&self, q: &Q) -> Self {
        self.from_q(q)
    }
    fn partial_s(&self) -> Self {
        self.zero_like()
    }
    fn partial_x(&self) -> Self {
        self.zero_like()
    }
    fn scale(&self, q: &Q) -> Self {
        Nf { v: self.v.scale(q), def: self.def.clone() }
    }
    fn is_one(&self) -> bool {
        self.v.is_one()
    }
}
