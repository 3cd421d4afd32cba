use super::b2::{check_flat, B2Elt};
use super::wedge::WedgeSum;
use crate::algebra::{Field, TSeries, Q};
use crate::error::{check_modulus, Error, Result};

/// `ℓ_i(a) = t_i(log°(a))`.
pub fn ell_i<F: Field>(a: &TSeries<F>, i: usize) -> Result<F> {
    if i >= a.prec() {
        return Err(Error::PrecisionExceeded { needed: i + 1, available: a.prec() });
    }
    a.log_circ()?.coeff(i)
}

/// All `ℓ_i(a)` for `0 ≤ i < N` (with `ℓ_0 = 0`).
pub fn ells<F: Field>(a: &TSeries<F>) -> Result<Vec<F>> {
    Ok(a.log_circ()?.coeffs().to_vec())
}

/// `ℓ_{m,r}` on `a∧b` from the lists of `ℓ_i`.
pub fn ell_mr_from_ells<F: Field>(la: &[F], lb: &[F], m: usize, r: usize) -> F {
    let mut acc = la[0].zero_like();
    for i in 1..=r - m {
        let w = Q::int(i as i64);
        let t = la[r - i].mul(&lb[i]).sub(&la[i].mul(&lb[r - i]));
        acc = acc.add(&t.scale(&w));
    }
    acc
}

/// `ℓ_{m,r}(a∧b) = Σ_{1≤i≤r-m} i(ℓ_{r-i}(a)ℓ_i(b) - ℓ_i(a)ℓ_{r-i}(b))`.
pub fn ell_mr_pair<F: Field>(a: &TSeries<F>, b: &TSeries<F>, m: usize, r: usize) -> Result<F> {
    check_modulus(m, r)?;
    for x in [a, b] {
        if x.prec() < r {
            return Err(Error::PrecisionExceeded { needed: r, available: x.prec() });
        }
    }
    let la = ells(&a.with_prec(r)?)?;
    let lb = ells(&b.with_prec(r)?)?;
    Ok(ell_mr_from_ells(&la, &lb, m, r))
}

/// `ℓ_{m,r}` extended linearly to a 2-wedge sum.
pub fn ell_mr<F: Field>(w: &WedgeSum<F>, m: usize, r: usize, ctx: &F) -> Result<F> {
    assert_eq!(w.arity(), 2, "ell_mr takes 2-wedges");
    check_modulus(m, r)?;
    let mut acc = ctx.zero_like();
    for (c, e) in w.terms() {
        acc = acc.add(&ell_mr_pair(&e[0], &e[1], m, r)?.scale(c));
    }
    Ok(acc)
}

/// Zero-padded lift of `x mod t^m` to precision `r`.
pub fn lift_mod<F: Field>(x: &TSeries<F>, m: usize, r: usize) -> Result<TSeries<F>> {
    Ok(x.with_prec(m)?.pad(r))
}

/// `ℓi_{m,r}([x]) = ℓ_{m,r}(δ[x̃])` with `x̃` the zero-padded lift of `x mod t^m`.
pub fn li_symbol<F: Field>(x: &TSeries<F>, m: usize, r: usize) -> Result<F> {
    check_flat(x)?;
    if r == m {
        return Ok(x.ctx().zero_like());
    }
    let xl = lift_mod(x, m, r)?;
    let one = TSeries::one(x.ctx(), r);
    ell_mr_pair(&one.sub(&xl), &xl, m, r)
}

/// `ℓi_{m,r}` on a B₂ combination (`ℓi_{m,m} = 0`).
pub fn li_mr<F: Field>(e: &B2Elt<F>, m: usize, r: usize, ctx: &F) -> Result<F> {
    if r != m {
        check_modulus(m, r)?;
    }
    let mut acc = ctx.zero_like();
    for (c, x) in e.terms() {
        acc = acc.add(&li_symbol(x, m, r)?.scale(c));
    }
    Ok(acc)
}

/// Direct formula `t_{r-1}(log°(1 - s e^{u|_m}) · (u|_m)_t |_{r-m})` for `x = s e^u`.
pub fn li_direct<F: Field>(x: &TSeries<F>, m: usize, r: usize) -> Result<F> {
    check_flat(x)?;
    check_modulus(m, r)?;
    let s0 = x.c0().clone();
    let u = x.with_prec(m)?.log_circ()?.pad(r);
    let e = TSeries::constant(s0, r).mul(&u.exp()?);
    let v = TSeries::one(x.ctx(), r).sub(&e);
    let lv = v.log_circ()?;
    let ut = u.derivative_t().truncate_below(r - m)?.pad(r);
    lv.mul(&ut).coeff(r - 1)
}

/// `(1/i) res_{t=0} t^{-i} dlog(y)`, computed from `y_t / y` without the logarithm.
pub fn ell_i_residue<F: Field>(y: &TSeries<F>, i: usize) -> Result<F> {
    if i == 0 || i >= y.prec() {
        return Err(Error::PrecisionExceeded { needed: i + 1, available: y.prec() });
    }
    let n = y.prec();
    let yt = y.derivative_t();
    let q = yt.mul(&y.with_prec(n - 1)?.inv()?);
    Ok(q.coeff(i - 1)?.scale(&Q::new(1, i as i64)))
}
