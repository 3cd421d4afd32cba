use super::boundary::{boundary, BoundaryPoint, CycleSpec};
use crate::algebra::base::BaseField;
use crate::algebra::{Field, TSeries, Q};
use crate::bloch::{ell_i_residue, ell_mr_pair};
use crate::error::{check_modulus, Error, Result};

/// `Σ_{1≤i≤r-m} i·(ℓ_{r-i}∧ℓ_i)(y₁∧y₂)` with each `ℓ_i` read off `res t^{-i} dlog y`.
pub fn l_mr_point_residue<F: Field>(a: &TSeries<F>, b: &TSeries<F>, m: usize, r: usize) -> Result<F> {
    check_modulus(m, r)?;
    let mut acc = a.c0().zero_like();
    for i in 1..=r - m {
        let t = ell_i_residue(a, r - i)?.mul(&ell_i_residue(b, i)?).sub(&ell_i_residue(a, i)?.mul(&ell_i_residue(b, r - i)?));
        acc = acc.add(&t.scale(&Q::int(i as i64)));
    }
    Ok(acc)
}

/// `Σ sign·mult·Tr ℓ_{m,r}(y₁∧y₂)` over boundary points.
pub fn l_mr_points(pts: &[BoundaryPoint], m: usize, r: usize) -> Result<Q> {
    check_modulus(m, r)?;
    let mut acc = Q::zero();
    for p in pts {
        let v = ell_mr_pair(&p.coords[0], &p.coords[1], m, r)?;
        acc = acc.add(&Q::trace(&v).mul(&Q::int(p.sign * p.mult as i64)));
    }
    Ok(acc)
}

/// `ρ_{m,r} = l_{m,r}∘∂`.
pub fn rho_cycle(z: &CycleSpec, m: usize, r: usize) -> Result<Q> {
    check_modulus(m, r)?;
    if z.prec() < r {
        return Err(Error::PrecisionExceeded { needed: r, available: z.prec() });
    }
    let pts = boundary(z)?;
    Ok(l_mr_points(&pts, m, r)?.mul(&z.orientation))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CongruenceReport {
    pub m: usize,
    pub r: usize,
    pub rho1: Q,
    pub rho2: Q,
}

impl CongruenceReport {
    pub fn equal(&self) -> bool {
        self.rho1 == self.rho2
    }
}

/// Both regulator values of two cycles that agree mod `t^m`. The smoothness and
/// normal-crossings part of the hypothesis is assumed, not checked.
pub fn congruence_experiment(z1: &CycleSpec, z2: &CycleSpec, m: usize, r: usize) -> Result<CongruenceReport> {
    for (k, (a, b)) in z1.coords.iter().zip(z2.coords.iter()).enumerate() {
        if !a.congruent(b, m) {
            return Err(Error::NotCongruent(format!("y{} differs mod t^{}", k + 1, m)));
        }
    }
    if z1.orientation != z2.orientation {
        return Err(Error::NotCongruent("orientations differ".into()));
    }
    Ok(CongruenceReport { m, r, rho1: rho_cycle(z1, m, r)?, rho2: rho_cycle(z2, m, r)? })
}
