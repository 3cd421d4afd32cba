use super::form::{d, dlog, Form1};
use crate::bloch::b2::{check_flat, one_minus, B2Elt, B2Tensor};
use crate::bloch::dilog::{ells, li_symbol, lift_mod};
use crate::bloch::wedge::WedgeSum;
use crate::algebra::{Field, TSeries, Q};
use crate::error::{check_modulus, Error, Result};

fn ells_at<F: Field>(a: &TSeries<F>, n: usize) -> Result<Vec<F>> {
    if a.prec() < n {
        return Err(Error::PrecisionExceeded { needed: n, available: a.prec() });
    }
    ells(&a.with_prec(n)?)
}

/// `α_j(a∧b) = Σ_{1≤i≤j-1} i (dℓ_{j-i}(a)ℓ_i(b) - dℓ_{j-i}(b)ℓ_i(a))`.
pub fn alpha_j_pair<F: Field>(a: &TSeries<F>, b: &TSeries<F>, j: usize) -> Result<Form1<F>> {
    let la = ells_at(a, j)?;
    let lb = ells_at(b, j)?;
    let mut acc = Form1::zero(a.ctx());
    for i in 1..j {
        let t = d(&la[j - i]).mul(&lb[i]).sub(&d(&lb[j - i]).mul(&la[i]));
        acc = acc.add(&t.scale(&Q::int(i as i64)));
    }
    Ok(acc)
}

/// `α_j` extended linearly to 2-wedges.
pub fn alpha_j<F: Field>(w: &WedgeSum<F>, j: usize, ctx: &F) -> Result<Form1<F>> {
    let mut acc = Form1::zero(ctx);
    for (c, e) in w.terms() {
        acc = acc.add(&alpha_j_pair(&e[0], &e[1], j)?.scale(c));
    }
    Ok(acc)
}

/// `β_m(j)([x]) = dℓi_{m,j}(x) + Σ_{a+b=j, 1≤a,b<m} b (dℓ_a∧ℓ_b)(δ[x])`.
pub fn beta_symbol<F: Field>(x: &TSeries<F>, m: usize, j: usize) -> Result<Form1<F>> {
    check_flat(x)?;
    let li = li_symbol(x, m, j)?;
    let mut acc = d(&li);
    let xl = lift_mod(x, m, m)?;
    let lx = ells(&xl)?;
    let l1x = ells(&one_minus(&xl))?;
    for a in 1..m {
        if a >= j {
            break;
        }
        let b = j - a;
        if b == 0 || b >= m {
            continue;
        }
        let t = d(&l1x[a]).mul(&lx[b]).sub(&d(&lx[a]).mul(&l1x[b]));
        acc = acc.add(&t.scale(&Q::int(b as i64)));
    }
    Ok(acc)
}

pub fn beta_m<F: Field>(e: &B2Elt<F>, m: usize, j: usize, ctx: &F) -> Result<Form1<F>> {
    let mut acc = Form1::zero(ctx);
    for (c, x) in e.terms() {
        acc = acc.add(&beta_symbol(x, m, j)?.scale(c));
    }
    Ok(acc)
}

/// `L_{m,r}` on B₂⊗units over `R_m` (inputs are reduced mod `t^m` first).
pub fn l_mr<F: Field>(e: &B2Tensor<F>, m: usize, r: usize, ctx: &F) -> Result<Form1<F>> {
    check_modulus(m, r)?;
    let mut acc = Form1::zero(ctx);
    for (c, x, y) in e.terms() {
        let y = lift_mod(y, m, m)?;
        let ly = ells(&y)?;
        let dl0 = dlog(y.c0()).ok_or_else(|| Error::NonUnit(y.to_string()))?;
        let mut term = dl0.mul(&li_symbol(x, m, r)?);
        for j in m..r {
            let w = Q::new((r - j) as i64, j as i64);
            let beta = beta_symbol(x, m, j)?;
            term = term.sub(&beta.mul(&ly[r - j]).scale(&w));
            term = term.add(&d(&ly[r - j]).mul(&li_symbol(x, m, j)?));
        }
        acc = acc.add(&term.scale(c));
    }
    Ok(acc)
}

/// `L_{m,r}` followed by the projection to relative differentials.
pub fn l_mr_rel<F: Field>(e: &B2Tensor<F>, m: usize, r: usize, ctx: &F) -> Result<Form1<F>> {
    Ok(l_mr(e, m, r, ctx)?.relative())
}

/// `M_{m,r} = ℓi_{m,r}⊗dℓ_0 - Σ_{m≤j<r} (r-j)/j (α_j∘δ)⊗ℓ_{r-j}` on data over `R_r`.
pub fn m_mr<F: Field>(e: &B2Tensor<F>, m: usize, r: usize, ctx: &F) -> Result<Form1<F>> {
    check_modulus(m, r)?;
    let mut acc = Form1::zero(ctx);
    for (c, x, y) in e.terms() {
        let ly = ells_at(y, r)?;
        let dl0 = dlog(y.c0()).ok_or_else(|| Error::NonUnit(y.to_string()))?;
        let mut term = dl0.mul(&li_symbol(x, m, r)?);
        let xr = x.with_prec(r)?;
        let one_x = one_minus(&xr);
        for j in m..r {
            let w = Q::new((r - j) as i64, j as i64);
            let a = alpha_j_pair(&one_x, &xr, j)?;
            term = term.sub(&a.mul(&ly[r - j]).scale(&w));
        }
        acc = acc.add(&term.scale(c));
    }
    Ok(acc)
}
