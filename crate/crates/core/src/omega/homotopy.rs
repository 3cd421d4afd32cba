use super::generator::{ExpGenerator, Slot};
use super::pair::PairWedge3;
use super::reparam::Reparam;
use crate::algebra::{Field, Q};
use crate::error::{Error, Result};

/// `hΩ_{3,5}(θ)` for `θ = θ_s ∂/∂s`: `ab·θ(dc/c)` on `e^{at³}∧e^{bt}∧c`, zero on other shapes.
pub fn h_omega_35_generators<F: Field>(gens: &[ExpGenerator<F>], theta: &F) -> Result<F> {
    let mut acc = theta.zero_like();
    for g in gens {
        let p = match g.slots.iter().position(|s| s.order() == 3) {
            Some(p) => p,
            None => continue,
        };
        let s2 = &g.slots[(p + 1) % 3];
        let s3 = &g.slots[(p + 2) % 3];
        let (b, c, sign) = match (s2, s3) {
            (Slot::Exp(b, 1), Slot::Const(c)) => (b, c, 1),
            (Slot::Const(c), Slot::Exp(b, 1)) => (b, c, -1),
            _ => continue,
        };
        let a = match &g.slots[p] {
            Slot::Exp(a, _) => a,
            Slot::Const(_) => unreachable!(),
        };
        let ci = c.inv().ok_or_else(|| Error::NonUnit(c.to_string()))?;
        let v = a.mul(b).mul(theta).mul(&c.partial_s().mul(&ci));
        acc = acc.add(&v.scale(&g.coef.mul(&Q::int(sign))));
    }
    Ok(acc)
}

/// `hω_{3,5}(id,σ)(q) = -hΩ_{3,5}(θ)(s(σ^{-1} q))`. The derivation `θ` is the order-one
/// part of `σ^{-1}`; with this convention `d(hω) = ω_id - ω_σ`, where `ω_σ = ω∘σ^{-1}`.
pub fn h_omega_35<F: Field>(sigma: &Reparam<F>, q: &PairWedge3<F>) -> Result<F> {
    if q.modulus() != 3 {
        return Err(Error::BadModulus { m: q.modulus(), r: 5 });
    }
    let inv = sigma.inverse()?;
    let theta = inv.delta().coeff(1)?;
    let pulled = inv.apply_pair(q)?;
    Ok(h_omega_35_generators(&pulled.generators(5)?, &theta)?.neg())
}
