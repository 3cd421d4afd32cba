use super::model::{good_local_lift, goodness_local, res_good_wedge, Choices, CurveModel, LocalChart, LocalLift};
use crate::algebra::base::{BaseField, Point};
use crate::algebra::laurent::residue_at;
use crate::algebra::{Field, Poly, RatFunc, TSeries, Q};
use crate::bloch::{ell_mr, WedgeSum};
use crate::error::{Error, Result};
use crate::gen::Sample;
use crate::omega::generator::omega_hat;

/// Complete `f` mod `t^m` to precision `r`, by zeros or by random elements of `k(s)`.
pub fn generic_lift<K: BaseField + Sample>(
    f: &TSeries<RatFunc<K>>,
    m: usize,
    r: usize,
    ch: &Choices,
    salt: u64,
    ctx: &K,
) -> Result<TSeries<RatFunc<K>>> {
    let f = f.with_prec(m)?;
    Ok(match ch.generic.gen(salt) {
        None => f.pad(r),
        Some(mut g) => f.pad_with(r, |_| g.ratfunc_over(ctx, 1)),
    })
}

fn salt_of(pt_key: &str, k: u64) -> u64 {
    let mut h: u64 = 1469598103934665603;
    for b in pt_key.bytes() {
        h = (h ^ b as u64).wrapping_mul(1099511628211);
    }
    h ^ k.wrapping_mul(0x1000_0001)
}

/// Closed points where some `t`-coefficient of the given series has a pole or where the
/// constant term vanishes, plus points with non-constant lifts and `∞`.
pub fn support_points<K: BaseField>(series: &[TSeries<RatFunc<K>>], model: &CurveModel<K>) -> Result<Vec<Point<K>>> {
    let mut polys: Vec<Poly<K>> = Vec::new();
    for f in series {
        polys.push(f.c0().num().clone());
        for c in f.coeffs() {
            polys.push(c.den().clone());
        }
    }
    for p in model.lifted_points() {
        if let Point::Finite(pi) = p {
            polys.push(pi);
        }
    }
    let mut pts: Vec<Point<K>> = K::closed_points(&polys)?.into_iter().map(Point::Finite).collect();
    pts.push(Point::Infinity);
    Ok(pts)
}

/// Local data at one point for a wedge of generic lifts: the good local lifts of the
/// reductions, the completed point lift, and both sides localized.
pub(crate) struct PointData<K: BaseField> {
    pub chart: LocalChart<K>,
    pub b: TSeries<K::Res>,
}

impl<K: BaseField + Sample> PointData<K> {
    pub fn new(model: &CurveModel<K>, pt: &Point<K>, ch: &Choices) -> Result<Self> {
        let chart = LocalChart::new(model, pt)?;
        let b = chart.padded_lift(model.r(), &ch.point_lift, salt_of(&pt.key(), 0));
        Ok(PointData { chart, b })
    }

    /// Good local lift of `f mod t^m` (`f` given over `k(s)`).
    pub fn local_lift(&self, f: &TSeries<RatFunc<K>>, model: &CurveModel<K>, ch: &Choices, salt: u64) -> Result<LocalLift<K::Res>> {
        let loc = self.chart.localize_series(&f.with_prec(model.m())?);
        let good = goodness_local(&self.chart, &loc)?;
        good_local_lift(&self.chart, &good, &self.b, model.r(), &ch.local, salt_of(&self.chart.point.key(), salt))
    }

    /// `res_c` of the ds-coefficient of a form over the local coordinate.
    pub fn residue(&self, w: &RatFunc<K::Res>) -> K::Res {
        residue_at(w, &self.chart.root)
    }
}

/// `Tr(ℓ_{m,r}(res γ̃_c) + res_c ω(γ̃_η, γ̃_c))` at one point, before the trace.
pub fn point_contribution<K: BaseField + Sample>(
    generic: &[TSeries<RatFunc<K>>; 3],
    model: &CurveModel<K>,
    pt: &Point<K>,
    ch: &Choices,
) -> Result<K::Res> {
    let (m, r) = (model.m(), model.r());
    let pd = PointData::new(model, pt, ch)?;
    let lifts: Vec<LocalLift<K::Res>> = generic
        .iter()
        .enumerate()
        .map(|(k, f)| pd.local_lift(f, model, ch, k as u64 + 1))
        .collect::<Result<_>>()?;
    let lifts: [LocalLift<K::Res>; 3] = [lifts[0].clone(), lifts[1].clone(), lifts[2].clone()];
    let res = res_good_wedge(&[(Q::one(), lifts.clone())], &pd.b)?;
    let term1 = ell_mr(&res, m, r, &pd.chart.root.zero_like())?;
    let g: Vec<TSeries<_>> = generic.iter().map(|f| pd.chart.localize_series(f)).collect();
    let side1 = WedgeSum::generator(Q::one(), g)?;
    let side2 = WedgeSum::generator(Q::one(), lifts.iter().map(|l| l.value.clone()).collect())?;
    let zero = side1.terms()[0].1[0].ctx().zero_like();
    let w = omega_hat(&side1, m, r, &zero)?.sub(&omega_hat(&side2, m, r, &zero)?);
    Ok(term1.add(&pd.residue(&w)))
}

/// `ρ_{m,r}` of a triple of good functions on `ℙ¹` over `k_m`.
pub fn rho_curve_triple<K: BaseField + Sample>(f: &[TSeries<RatFunc<K>>; 3], model: &CurveModel<K>, ch: &Choices) -> Result<K> {
    let (m, r) = (model.m(), model.r());
    for x in f {
        if x.prec() < m {
            return Err(Error::PrecisionExceeded { needed: m, available: x.prec() });
        }
        if x.c0().is_zero() {
            return Err(Error::ZeroInput);
        }
    }
    let generic: Vec<TSeries<RatFunc<K>>> = f
        .iter()
        .enumerate()
        .map(|(k, x)| generic_lift(x, m, r, ch, 100 + k as u64, model.ctx()))
        .collect::<Result<_>>()?;
    let generic = [generic[0].clone(), generic[1].clone(), generic[2].clone()];
    let mut acc = model.ctx().zero_like();
    for pt in support_points(&generic, model)? {
        acc = acc.add(&K::trace(&point_contribution(&generic, model, &pt, ch)?));
    }
    Ok(acc)
}
