use super::model::{goodness_local, res_good_wedge, restrict, Choices, CurveModel, LocalChart, LocalLift, Padding};
use super::rho::{generic_lift, support_points, PointData};
use crate::algebra::base::{BaseField, Point};
use crate::algebra::linearize::{wedges_equal, Linearize};
use crate::algebra::{Field, RatFunc, TSeries, Var, Q};
use crate::bloch::b2::one_minus;
use crate::bloch::{ell_mr, li_mr, B2Elt, B2Tensor, WedgeSum};
use crate::error::{Error, Result};
use crate::gen::Sample;
use crate::kahler::l_mr;
use crate::omega::generator::omega_hat;

type Fn_<K> = RatFunc<K>;

/// One chart `U_i = ℙ¹ ∖ removed` of a cover with its data `γ_i` and `ε_{i,c}`.
#[derive(Clone, Debug)]
pub struct Chart<K: BaseField> {
    pub removed: Vec<Point<K>>,
    /// `γ_i`, entries in `k(s)[t]/(t^m)`.
    pub gamma: WedgeSum<Fn_<K>>,
    /// Nonzero `ε_{i,c} ∈ B₂(k(c)_m)`.
    pub eps: Vec<(Point<K>, B2Elt<K::Res>)>,
}

/// Čech cocycle data: charts plus `β_{ij}` for `i < j`.
#[derive(Clone, Debug)]
pub struct CocycleData<K: BaseField> {
    pub charts: Vec<Chart<K>>,
    pub beta: Vec<((usize, usize), B2Tensor<Fn_<K>>)>,
}

/// The free choices for `ρ` on cocycles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CocycleChoices {
    /// The chart `i` whose generic lift is used.
    pub base: usize,
    /// `j_c`: first chart containing `c` (`Zero`), or a random one.
    pub pick: Padding,
    pub lifts: Choices,
}

impl CocycleChoices {
    pub fn canonical() -> Self {
        CocycleChoices { base: 0, pick: Padding::Zero, lifts: Choices::canonical() }
    }
}

impl<K: BaseField> CocycleData<K> {
    /// Single chart `U = ℙ¹` carrying a global wedge.
    pub fn global(gamma: WedgeSum<Fn_<K>>) -> Self {
        CocycleData { charts: vec![Chart { removed: Vec::new(), gamma, eps: Vec::new() }], beta: Vec::new() }
    }

    pub fn contains(&self, i: usize, pt: &Point<K>) -> bool {
        !self.charts[i].removed.contains(pt)
    }

    /// `β_{ij}` with `β_{ji} = -β_{ij}` and `β_{ii} = 0`.
    pub fn beta(&self, i: usize, j: usize) -> B2Tensor<Fn_<K>> {
        if i == j {
            return B2Tensor::zero();
        }
        let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
        match self.beta.iter().find(|(k, _)| *k == (a, b)) {
            Some((_, x)) => x.scale(&Q::int(sign)),
            None => B2Tensor::zero(),
        }
    }

    pub fn eps(&self, i: usize, pt: &Point<K>) -> B2Elt<K::Res> {
        self.charts[i].eps.iter().find(|(p, _)| p == pt).map(|(_, e)| e.clone()).unwrap_or_else(B2Elt::zero)
    }

    fn all_series(&self) -> Vec<TSeries<Fn_<K>>> {
        let mut out = Vec::new();
        for c in &self.charts {
            for (_, e) in c.gamma.terms() {
                out.extend(e.iter().cloned());
            }
        }
        for (_, b) in &self.beta {
            for (_, x, y) in b.terms() {
                out.push(x.clone());
                out.push(one_minus(x));
                out.push(y.clone());
            }
        }
        out
    }

    /// Points where any datum can contribute.
    fn support(&self, model: &CurveModel<K>, extra: &[TSeries<Fn_<K>>]) -> Result<Vec<Point<K>>> {
        let mut series = self.all_series();
        series.extend(extra.iter().cloned());
        let mut pts = support_points(&series, model)?;
        for c in &self.charts {
            for p in c.removed.iter().chain(c.eps.iter().map(|(p, _)| p)) {
                if !pts.contains(p) {
                    pts.push(p.clone());
                }
            }
        }
        Ok(pts)
    }
}

fn violation(condition: u8, detail: String) -> Error {
    Error::CocycleViolation { condition, detail }
}

/// `res_𝔠([x]⊗y) = v(y)·[x̄]` when `x` and `1-x` are units at `c`, else 0.
pub fn res_b2_tensor<K: BaseField>(
    beta: &B2Tensor<Fn_<K>>,
    chart: &LocalChart<K>,
    m: usize,
) -> Result<B2Elt<K::Res>> {
    let mut out = Vec::new();
    for (c, x, y) in beta.terms() {
        let xl = chart.localize_series(&x.with_prec(m)?);
        let gx = goodness_local(chart, &xl)?;
        let g1 = goodness_local(chart, &chart.localize_series(&one_minus(&x.with_prec(m)?)))?;
        let gy = goodness_local(chart, &chart.localize_series(&y.with_prec(m)?))?;
        if gx.n != 0 || g1.n != 0 || gy.n == 0 {
            continue;
        }
        out.push((c.mul(&Q::int(gy.n)), restrict(&gx.u, &chart.lift)?));
    }
    B2Elt::from_terms(out)
}

fn b2_equal_infinitesimal<E: Field>(a: &B2Elt<E>, b: &B2Elt<E>, m: usize, ctx: &E) -> Result<bool> {
    for r in m + 1..2 * m {
        if li_mr(a, m, r, ctx)? != li_mr(b, m, r, ctx)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Check goodness and the three cocycle conditions exactly. Condition (ii) compares the
/// infinitesimal parts (all `ℓi_{m,r'}`), condition (iii) uses `δ` and all `L_{m,r'}`.
pub fn validate_cocycle<K: BaseField + Linearize>(d: &CocycleData<K>, model: &CurveModel<K>) -> Result<()> {
    let m = model.m();
    let n = d.charts.len();
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let pts = d.support(model, &[])?;
    for p in &pts {
        if !(0..n).any(|i| d.contains(i, p)) {
            return Err(violation(0, format!("point {} is not covered", p)));
        }
    }
    // goodness on each chart and overlap
    for p in &pts {
        let chart = LocalChart::new(model, p)?;
        for i in 0..n {
            if !d.contains(i, p) {
                continue;
            }
            for (_, e) in d.charts[i].gamma.terms() {
                for x in e {
                    goodness_local(&chart, &chart.localize_series(&x.with_prec(m)?))?;
                }
            }
            for j in i + 1..n {
                if !d.contains(j, p) {
                    continue;
                }
                for (_, x, y) in d.beta(i, j).terms() {
                    for f in [x.clone(), one_minus(x), y.clone()] {
                        goodness_local(&chart, &chart.localize_series(&f.with_prec(m)?))?;
                    }
                }
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let lhs = d.beta(i, j).delta();
            let rhs = d.charts[j].gamma.sub(&d.charts[i].gamma);
            if !wedges_equal(&lhs, &rhs, m)? {
                return Err(violation(1, format!("delta(beta_{}{}) != gamma_{} - gamma_{}", i, j, j, i)));
            }
            for p in &pts {
                if !d.contains(i, p) || !d.contains(j, p) {
                    continue;
                }
                let chart = LocalChart::new(model, p)?;
                let res = res_b2_tensor(&d.beta(i, j), &chart, m)?;
                let want = d.eps(j, p).sub(&d.eps(i, p));
                if !b2_equal_infinitesimal(&res, &want, m, &chart.root.zero_like())? {
                    return Err(violation(2, format!("res_{}(beta_{}{}) != eps_{} - eps_{}", p, i, j, j, i)));
                }
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let s = d.beta(j, k).sub(&d.beta(i, k)).add(&d.beta(i, j));
                if s.is_zero() {
                    continue;
                }
                let fz = RatFunc::constant(model.ctx().zero_like(), Var::S);
                let ok = wedges_equal(&s.delta(), &WedgeSum::zero(3), m)?
                    && (m + 1..2 * m).all(|r| l_mr(&s, m, r, &fz).map(|f| f.is_zero()).unwrap_or(false));
                if !ok {
                    return Err(violation(3, format!("beta_{}{} - beta_{}{} + beta_{}{} != 0", j, k, i, k, i, j)));
                }
            }
        }
    }
    Ok(())
}

/// `ρ_{m,r}` on validated cocycle data.
pub fn rho_curve_cocycle<K: BaseField + Sample + Linearize>(
    d: &CocycleData<K>,
    model: &CurveModel<K>,
    ch: &CocycleChoices,
) -> Result<K> {
    validate_cocycle(d, model)?;
    rho_curve_cocycle_unchecked(d, model, ch)
}

/// As [`rho_curve_cocycle`] without validation.
pub fn rho_curve_cocycle_unchecked<K: BaseField + Sample>(
    d: &CocycleData<K>,
    model: &CurveModel<K>,
    ch: &CocycleChoices,
) -> Result<K> {
    let (m, r) = (model.m(), model.r());
    let n = d.charts.len();
    let i = ch.base;
    if i >= n {
        return Err(Error::Unsupported(format!("base chart {} of {}", i, n)));
    }
    let lc = &ch.lifts;
    let lift_wedge = |w: &WedgeSum<Fn_<K>>, salt: u64| -> Result<WedgeSum<Fn_<K>>> {
        let mut k = 0u64;
        let mut terms = Vec::new();
        for (c, e) in w.terms() {
            let mut le = Vec::new();
            for x in e {
                k += 1;
                le.push(generic_lift(x, m, r, lc, salt + k, model.ctx())?);
            }
            terms.push((c.clone(), le));
        }
        WedgeSum::from_terms(w.arity(), terms)
    };
    let gamma_i = lift_wedge(&d.charts[i].gamma, 1000)?;
    // δ of generic lifts of β_{ji}, for every j
    let mut dbeta = Vec::new();
    for j in 0..n {
        let b = d.beta(j, i);
        let mut terms = Vec::new();
        for (k, (c, x, y)) in b.terms().iter().enumerate() {
            let xt = generic_lift(x, m, r, lc, 5000 + 100 * j as u64 + 2 * k as u64, model.ctx())?;
            let yt = generic_lift(y, m, r, lc, 5001 + 100 * j as u64 + 2 * k as u64, model.ctx())?;
            terms.push((c.clone(), vec![one_minus(&xt), xt, yt]));
        }
        dbeta.push(WedgeSum::from_terms(3, terms)?);
    }
    let mut extra = Vec::new();
    for w in std::iter::once(&gamma_i).chain(dbeta.iter()) {
        for (_, e) in w.terms() {
            extra.extend(e.iter().cloned());
        }
    }
    let mut pick = ch.pick.gen(77);
    let mut acc = model.ctx().zero_like();
    for pt in d.support(model, &extra)? {
        let containing: Vec<usize> = (0..n).filter(|&j| d.contains(j, &pt)).collect();
        let j = if d.contains(i, &pt) && pick.is_none() {
            i
        } else {
            match (&mut pick, containing.is_empty()) {
                (_, true) => return Err(violation(0, format!("point {} is not covered", pt))),
                (None, false) => containing[0],
                (Some(g), false) => containing[g.usize(0, containing.len() - 1)],
            }
        };
        let pd = PointData::new(model, &pt, lc)?;
        let zero = pd.chart.root.zero_like();
        // good local lift of γ_j
        let mut local_terms: Vec<(Q, [LocalLift<K::Res>; 3])> = Vec::new();
        let mut salt = 1u64;
        for (c, e) in d.charts[j].gamma.terms() {
            let mut ls = Vec::new();
            for x in e {
                ls.push(pd.local_lift(x, model, lc, salt)?);
                salt += 1;
            }
            local_terms.push((c.clone(), [ls[0].clone(), ls[1].clone(), ls[2].clone()]));
        }
        let res = res_good_wedge(&local_terms, &pd.b)?;
        let term1 = ell_mr(&res, m, r, &zero)?;
        let term_eps = li_mr(&d.eps(j, &pt), m, r, &zero)?;
        let side1 = gamma_i.sub(&dbeta[j]);
        let side1 = side1.map_into(|x| Ok(pd.chart.localize_series(x)))?;
        let side2_terms = local_terms
            .iter()
            .map(|(c, ls)| (c.clone(), ls.iter().map(|l| l.value.clone()).collect()))
            .collect();
        let side2 = WedgeSum::from_terms(3, side2_terms)?;
        let fz = RatFunc::constant(zero.clone(), Var::S);
        let w = omega_hat(&side1, m, r, &fz)?.sub(&omega_hat(&side2, m, r, &fz)?);
        let v = term1.sub(&term_eps).add(&pd.residue(&w));
        acc = acc.add(&K::trace(&v));
    }
    Ok(acc)
}
