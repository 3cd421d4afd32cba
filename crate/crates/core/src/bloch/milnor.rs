use super::wedge::WedgeSum;
use crate::algebra::{Field, TSeries};
use crate::error::{Error, Result};
use crate::kahler::form::{Form1, Form2};

/// `(α_t, ∂_s α, ∂_x α)` for `α = log a`, as series.
struct LogData<F: Field> {
    t: TSeries<F>,
    s: TSeries<F>,
    x: TSeries<F>,
}

fn log_data<F: Field>(a: &TSeries<F>, r: usize) -> Result<LogData<F>> {
    let a = a.with_prec(r)?;
    let ai = a.inv()?;
    let t = a.derivative_t().mul(&ai.with_prec(r - 1)?);
    let s = a.partial_s().mul(&ai);
    let has_x = a.ctx().has_x();
    let x = if has_x { a.partial_x().mul(&ai) } else { TSeries::zero(a.ctx(), r) };
    Ok(LogData { t, s, x })
}

fn check(i: usize, r: usize, w_prec: Option<usize>) -> Result<()> {
    if i == 0 || i >= r {
        return Err(Error::PrecisionExceeded { needed: i + 1, available: r });
    }
    if let Some(p) = w_prec {
        if p < r {
            return Err(Error::PrecisionExceeded { needed: r, available: p });
        }
    }
    Ok(())
}

/// `λ_i` on a 2-wedge: `t_{i-1}(α_t dβ - β_t dα)`, a 1-form.
pub fn lambda_i_2<F: Field>(w: &WedgeSum<F>, i: usize, r: usize, ctx: &F) -> Result<Form1<F>> {
    assert_eq!(w.arity(), 2);
    check(i, r, w.precision())?;
    let mut acc = Form1::zero(ctx);
    for (c, e) in w.terms() {
        let a = log_data(&e[0], r)?;
        let b = log_data(&e[1], r)?;
        let ds = a.t.mul(&b.s.with_prec(r - 1)?).sub(&b.t.mul(&a.s.with_prec(r - 1)?));
        let dx = a.t.mul(&b.x.with_prec(r - 1)?).sub(&b.t.mul(&a.x.with_prec(r - 1)?));
        let f = Form1 { ds: ds.coeff(i - 1)?, dx: dx.coeff(i - 1)? };
        acc = acc.add(&f.scale(c));
    }
    Ok(acc)
}

/// `λ_i` on a 3-wedge: `t_{i-1}(α_t dβ∧dγ - β_t dα∧dγ + γ_t dα∧dβ)`, a 2-form.
pub fn lambda_i_3<F: Field>(w: &WedgeSum<F>, i: usize, r: usize, ctx: &F) -> Result<Form2<F>> {
    assert_eq!(w.arity(), 3);
    check(i, r, w.precision())?;
    let mut acc = Form2::zero(ctx);
    for (c, e) in w.terms() {
        let l: Vec<LogData<F>> = e.iter().map(|x| log_data(x, r)).collect::<Result<_>>()?;
        let wedge = |p: &LogData<F>, q: &LogData<F>| -> Result<TSeries<F>> {
            p.s.mul(&q.x).sub(&p.x.mul(&q.s)).with_prec(r - 1)
        };
        let v = l[0]
            .t
            .mul(&wedge(&l[1], &l[2])?)
            .sub(&l[1].t.mul(&wedge(&l[0], &l[2])?))
            .add(&l[2].t.mul(&wedge(&l[0], &l[1])?));
        acc = acc.add(&Form2 { dsdx: v.coeff(i - 1)? }.scale(c));
    }
    Ok(acc)
}
