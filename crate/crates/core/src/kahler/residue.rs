use super::form::Form1;
use crate::algebra::base::{embed_ratfunc, BaseField, Point};
use crate::algebra::laurent::{residue_at, residue_at_infinity};
use crate::algebra::RatFunc;
use crate::error::Result;

/// Residue of the `ds`-part of a 1-form over `K(s)` at a closed point, valued in its
/// residue field. Callers apply a trace if they want a base value.
pub fn residue_form<K: BaseField>(w: &Form1<RatFunc<K>>, at: &Point<K>) -> Result<K::Res> {
    match at {
        Point::Finite(pi) => {
            let root = K::point_root(pi)?;
            let f = embed_ratfunc::<K>(&root, &w.ds);
            Ok(residue_at(&f, &root))
        }
        Point::Infinity => {
            let root = K::rational_res(w.ds.coeff_ctx());
            let f = embed_ratfunc::<K>(&root, &w.ds);
            Ok(residue_at_infinity(&f))
        }
    }
}

/// Closed points where a rational 1-form can have a residue (poles), plus `∞`.
pub fn pole_points<K: BaseField>(w: &Form1<RatFunc<K>>) -> Result<Vec<Point<K>>> {
    let mut pts: Vec<Point<K>> =
        K::closed_points(&[w.ds.den().clone()])?.into_iter().map(Point::Finite).collect();
    pts.push(Point::Infinity);
    Ok(pts)
}

/// Sum of traced residues over all poles and `∞` (zero by the residue theorem).
pub fn residue_sum<K: BaseField>(w: &Form1<RatFunc<K>>) -> Result<K> {
    let mut acc = w.ds.coeff_ctx().zero_like();
    for p in pole_points(w)? {
        acc = acc.add(&K::trace(&residue_form(w, &p)?));
    }
    Ok(acc)
}
