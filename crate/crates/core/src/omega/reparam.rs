use crate::algebra::{Field, TSeries, Q};
use crate::bloch::WedgeSum;
use crate::error::{Error, Result};

use super::pair::PairWedge3;

/// `f(s + Δ) = Σ_k ∂_s^k f · Δ^k / k!` for `Δ` of positive t-order.
pub fn substitute_s<F: Field>(f: &TSeries<F>, delta: &TSeries<F>) -> Result<TSeries<F>> {
    let n = f.prec().min(delta.prec());
    if !delta.c0().is_zero() {
        return Err(Error::NonNilpotentConstant(delta.to_string()));
    }
    let f = f.with_prec(n)?;
    let delta = delta.with_prec(n)?;
    let mut acc = f.clone();
    let mut deriv = f;
    let mut pw = TSeries::one(delta.ctx(), n);
    let mut fact = Q::one();
    for k in 1..n {
        pw = pw.mul(&delta);
        if pw.is_zero() {
            break;
        }
        deriv = deriv.partial_s();
        fact = fact.mul(&Q::int(k as i64));
        acc = acc.add(&deriv.mul(&pw).scale_q(&fact.inv().expect("k! ≠ 0")));
    }
    Ok(acc)
}

/// The automorphism `s ↦ s + Δ(t)` of `K[t]/(t^n)`, identity mod `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct Reparam<F: Field> {
    delta: TSeries<F>,
}

impl<F: Field> Reparam<F> {
    /// `σ(s) = s + α t^w`.
    pub fn new(w: usize, alpha: F, n: usize) -> Result<Self> {
        if w == 0 {
            return Err(Error::NonNilpotentConstant(format!("reparametrization of order 0 by {}", alpha)));
        }
        Ok(Reparam { delta: TSeries::monomial(alpha, w, n) })
    }

    pub fn from_delta(delta: TSeries<F>) -> Result<Self> {
        if !delta.c0().is_zero() {
            return Err(Error::NonNilpotentConstant(delta.to_string()));
        }
        Ok(Reparam { delta })
    }

    pub fn delta(&self) -> &TSeries<F> {
        &self.delta
    }

    pub fn apply(&self, f: &TSeries<F>) -> Result<TSeries<F>> {
        let n = f.prec();
        if self.delta.prec() < n {
            return Err(Error::PrecisionExceeded { needed: n, available: self.delta.prec() });
        }
        substitute_s(f, &self.delta.with_prec(n)?)
    }

    pub fn apply_wedge(&self, w: &WedgeSum<F>) -> Result<WedgeSum<F>> {
        w.map_entries(|x| self.apply(x))
    }

    pub fn apply_pair(&self, q: &PairWedge3<F>) -> Result<PairWedge3<F>> {
        q.map_entries(|x| self.apply(x))
    }

    /// `σ∘ρ`: first `ρ`, then `σ`, as maps on functions.
    pub fn compose(&self, rho: &Self) -> Result<Self> {
        // (σ∘ρ)(s) = σ(s + Δ_ρ) = s + Δ_σ + σ(Δ_ρ)
        let d = self.delta.add(&self.apply(&rho.delta)?);
        Reparam::from_delta(d)
    }

    /// The inverse automorphism, via the fixed point `Δ' = -σ^{-1}`-substituted `Δ`.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.delta.prec();
        let mut d = self.delta.neg();
        for _ in 0..n {
            // σ^{-1}(s) = s + d must satisfy d = -Δ(s + d)
            let next = substitute_s(&self.delta, &d)?.neg();
            if next == d {
                break;
            }
            d = next;
        }
        Reparam::from_delta(d)
    }
}

/// `σ(e^{a t^x}) = exp(Σ_i α^i a^{(i)}/i! t^{x+iw})`, the displayed Taylor sum, with
/// the logarithmic-derivative convention `a^{(i)} = ∂^{i-1}(c'/c)` when `a = log c`.
pub fn reparam_exp_taylor<F: Field>(a: &F, x: usize, w: usize, alpha: &F, n: usize) -> Result<TSeries<F>> {
    let mut c = vec![a.zero_like(); n];
    let mut der = a.clone();
    let mut ap = a.one_like();
    let mut fact = Q::one();
    let mut i = 0;
    while x + i * w < n {
        c[x + i * w] = c[x + i * w].add(&der.mul(&ap).scale(&fact.inv().expect("nonzero")));
        i += 1;
        der = der.partial_s();
        ap = ap.mul(alpha);
        fact = fact.mul(&Q::int(i as i64));
    }
    TSeries::from_coeffs(c, a, n).exp()
}

/// Same for a constant slot `c`: `σ(c) = c·exp(Σ_{i≥1} α^i ∂^{i-1}(c'/c)/i! t^{iw})`.
pub fn reparam_const_taylor<F: Field>(cst: &F, w: usize, alpha: &F, n: usize) -> Result<TSeries<F>> {
    let ci = cst.inv().ok_or_else(|| Error::NonUnit(cst.to_string()))?;
    let mut c = vec![cst.zero_like(); n];
    let mut der = cst.partial_s().mul(&ci);
    let mut ap = alpha.clone();
    let mut fact = Q::one();
    let mut i = 1;
    while i * w < n {
        c[i * w] = der.mul(&ap).scale(&fact.inv().expect("nonzero"));
        i += 1;
        der = der.partial_s();
        ap = ap.mul(alpha);
        fact = fact.mul(&Q::int(i as i64));
    }
    Ok(TSeries::from_coeffs(c, cst, n).exp()?.scale(cst))
}
