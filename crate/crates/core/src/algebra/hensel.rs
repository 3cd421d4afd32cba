use super::field::Field;
use super::poly::Poly;
use super::series::TSeries;
use crate::error::{Error, Result};

/// The root `b(t)` with `b(0) = b0` of `P(s,t) = Σ_i P_i(s) t^i`, to t-precision `n`.
/// `b0` must be a simple root of `P_0`.
pub fn hensel_root<E: Field>(p: &[Poly<E>], b0: &E, n: usize) -> Result<TSeries<E>> {
    let z = b0.zero_like();
    let p0 = p.first().ok_or(Error::ZeroInput)?;
    if !p0.eval(b0).is_zero() {
        return Err(Error::MultipleRoot(format!("{} is not a root", b0)));
    }
    if p0.derivative().eval(b0).is_zero() {
        return Err(Error::MultipleRoot(format!("root {} of {} is not simple", b0, p0.render("s"))));
    }
    let dp: Vec<Poly<E>> = p.iter().map(|q| q.derivative()).collect();
    let eval = |polys: &[Poly<E>], b: &TSeries<E>| -> TSeries<E> {
        let mut acc = TSeries::zero(&z, n);
        for (i, q) in polys.iter().enumerate().take(n) {
            let v = b.eval_poly(q);
            let shifted = TSeries::monomial(z.one_like(), i, n).mul(&v);
            acc = acc.add(&shifted);
        }
        acc
    };
    let mut b = TSeries::constant(b0.clone(), n);
    let mut k = 1;
    while k < 2 * n {
        let v = eval(p, &b);
        if v.is_zero() {
            break;
        }
        let d = eval(&dp, &b);
        b = b.sub(&v.mul(&d.inv()?));
        k *= 2;
    }
    debug_assert!(eval(p, &b).is_zero());
    Ok(b)
}
