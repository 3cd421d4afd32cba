//! Seeded randomized checks of the main identities, grouped into named suites.
//!
//! Every suite is deterministic given [`SuiteParams::seed`]. A check records how many
//! trials passed and how many were nontrivial (nonzero on at least one side), so that
//! a vanishing identity is not confirmed on zero inputs only.

use std::fmt;

use crate::algebra::base::Point;
use crate::algebra::numfield::Nf;
use crate::algebra::{qs_const, qs_var, qx_var, Field, Poly, Qs, Qx, TSeries, Q};
use crate::bloch::{ell_i, ell_i_residue, ell_mr, ell_mr_pair, five_term, lambda_i_2, li_direct, li_mr, li_symbol, B2Elt, B2Tensor, WedgeSum};
use crate::curve::{
    res_b2_tensor, res_good_wedge, rho_curve_cocycle, rho_curve_triple, Chart, Choices, CocycleChoices, CocycleData, CurveModel, LocalChart, LocalLift, Padding,
};
use crate::cycle::{congruence_experiment, l_mr_point_residue, rho_cycle, CycleRecipe};
use crate::error::{Error, Result};
use crate::gen::Gen;
use crate::kahler::residue::pole_points;
use crate::kahler::{d, dlog, l_mr, residue_form, Form1};
use crate::omega::{h_omega_35, omega_mr_pair, res_omega_pair, PairWedge3, Reparam};

/// The moduli `(m, r)` exercised by default.
pub const MODULI: [(usize, usize); 6] = [(2, 3), (3, 4), (3, 5), (4, 5), (4, 6), (4, 7)];

/// Star-action scalars.
pub const LAMBDAS: [(i64, i64); 4] = [(2, 1), (3, 1), (-1, 1), (1, 2)];

/// Suite names accepted by [`run_suite`], with the identity each one checks.
pub const SUITES: [(&str, &str); 11] = [
    ("fiveterm", "li_{m,r} kills the five-term relation"),
    ("starweight", "li, L, omega and rho have star-weight r"),
    ("boundary", "L on [x](x)x, omega on relative delta-images and rho on coboundaries vanish"),
    ("omega", "the pair pipeline reproduces a(yb dc - zc db) on exponential generators"),
    ("reparam", "residues of omega are invariant under s -> s + a t^w"),
    ("residue", "res omega(q) = l(res q1) - l(res q2) on good pairs"),
    ("independence", "rho on curves does not depend on lifting, padding or chart choices"),
    ("milnor", "lambda_i agree on 2{1+t^2/2, x} and {1+t/x, 1+xt} at r = 3"),
    ("homotopy", "d(h omega_{3,5}) is the difference of omega for two liftings"),
    ("cycle", "cycles congruent mod t^m have equal rho; a sub-t^m change is detected"),
    ("oracles", "li via delta equals the direct formula; residue and coefficient paths of l_i agree"),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn new(suite: &str) -> Self {
        SuiteReport { suite: suite.to_string(), checks: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    /// Run `trials` trials of `f`, which returns `(holds, nontrivial)`. With `need`
    /// set, at least one trial must be nontrivial.
    fn tally(&mut self, name: String, trials: usize, need: bool, mut f: impl FnMut(usize) -> Result<(bool, bool)>) {
        let (mut ok, mut nz) = (0, 0);
        let mut first = None;
        for k in 0..trials {
            match f(k) {
                Ok((holds, nontrivial)) => {
                    ok += holds as usize;
                    nz += nontrivial as usize;
                    if !holds && first.is_none() {
                        first = Some(format!("trial {} does not hold", k));
                    }
                }
                Err(e) => {
                    if first.is_none() {
                        first = Some(format!("trial {}: {}", k, e));
                    }
                }
            }
        }
        let passed = ok == trials && (!need || nz > 0);
        let mut detail = format!("{}/{} hold, {} nontrivial", ok, trials, nz);
        if let Some(f) = first {
            detail = format!("{}; {}", detail, f);
        } else if !passed {
            detail = format!("{}; all trials trivial", detail);
        }
        self.push(name, passed, detail);
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail)?;
        }
        let bad = self.failures().count();
        write!(f, "{}: {} checks, {} failed", self.suite, self.checks.len(), bad)
    }
}

#[derive(Clone, Debug)]
pub struct SuiteParams {
    pub seed: u64,
    pub moduli: Vec<(usize, usize)>,
    /// Overrides every per-check trial count.
    pub trials: Option<usize>,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams { seed: 0, moduli: MODULI.to_vec(), trials: None }
    }
}

impl SuiteParams {
    fn n(&self, default: usize) -> usize {
        self.trials.unwrap_or(default)
    }

    fn gen(&self, tag: u64, m: usize, r: usize) -> Gen {
        Gen::new(self.seed.wrapping_mul(0x9e37_79b9).wrapping_add(tag * 10_000 + 100 * m as u64 + r as u64))
    }

    /// Modulus for the `k`-th trial of a check that is spread over all moduli.
    fn cycled(&self, k: usize) -> (usize, usize) {
        self.moduli[k % self.moduli.len()]
    }
}

pub fn run_suite(name: &str, p: &SuiteParams) -> Result<SuiteReport> {
    if p.moduli.is_empty() {
        return Err(Error::Unsupported("no moduli given".into()));
    }
    for &(m, r) in &p.moduli {
        crate::error::check_modulus(m, r)?;
    }
    Ok(match name {
        "fiveterm" => fiveterm(p),
        "starweight" => starweight(p),
        "boundary" => boundary(p),
        "omega" => omega_formula(p),
        "reparam" => reparam(p),
        "residue" => residue(p),
        "independence" => independence(p),
        "milnor" => milnor(p),
        "homotopy" => homotopy(p),
        "cycle" => cycle(p),
        "oracles" => oracles(p),
        _ => return Err(Error::Unsupported(format!("unknown suite {}", name))),
    })
}

fn zs() -> Qs {
    qs_const(Q::zero())
}

fn lam(k: usize) -> Q {
    Q::new(LAMBDAS[k].0, LAMBDAS[k].1)
}

fn ser(cs: Vec<Qs>, n: usize) -> TSeries<Qs> {
    TSeries::from_coeffs(cs, &zs(), n)
}

fn nser(cs: Vec<Q>, n: usize) -> TSeries<Nf> {
    let k = Nf::rational();
    TSeries::from_coeffs(cs.iter().map(|q| k.from_q(q)).collect(), &k.zero_like(), n)
}

/// `s - a - e·t`.
fn moving(a: &Q, e: &Q, n: usize) -> TSeries<Qs> {
    ser(vec![qs_var().sub(&qs_const(a.clone())), qs_const(e.neg())], n)
}

/// Retry until the five-term combination exists (all entries flat).
fn random_five_term<F: Field>(mut draw: impl FnMut() -> TSeries<F>) -> Result<(TSeries<F>, B2Elt<F>)> {
    loop {
        let x = draw();
        let y = draw();
        match five_term(&x, &y) {
            Ok(e) => return Ok((x, e)),
            Err(Error::FlatViolation(_)) | Err(Error::NonUnit(_)) => continue,
            Err(e) => return Err(e),
        }
    }
}

/// A random element of `(A, I)^×⊗Λ²` for `I = (t^m)`, built from flat units.
pub fn random_pair(g: &mut Gen, m: usize, r: usize, terms: usize) -> Result<PairWedge3<Qs>> {
    let mut ts = Vec::new();
    for _ in 0..terms {
        let e = [(); 3].map(|_| {
            let a = g.flat_qs(r);
            let b = if g.coin() { g.perturb_qs(&a, m) } else { a.clone() };
            (a, b)
        });
        ts.push((Q::int(g.int(1, 2)), e));
    }
    PairWedge3::new(m, ts)
}

/// Three products of moving linear factors `s - a - e·t` on `ℙ¹`, with the model lifting
/// each `a` to `a + e·t`.
#[derive(Clone, Debug)]
pub struct Triple {
    pub f: [TSeries<Qs>; 3],
    pub model: CurveModel<Q>,
}

pub fn random_triple(g: &mut Gen, m: usize, r: usize) -> Result<Triple> {
    let npts = g.usize(2, 4);
    let mut pts: Vec<(Q, Q)> = Vec::new();
    while pts.len() < npts {
        let a = Q::int(g.int(-4, 4));
        if pts.iter().all(|(b, _)| b != &a) {
            pts.push((a, g.q()));
        }
    }
    let mut model = CurveModel::new(&Q::zero(), m, r)?;
    for (a, e) in &pts {
        model = model.with_lift(Point::rational(a), nser(vec![a.clone(), e.clone()], m))?;
    }
    let mut mk = || -> Result<TSeries<Qs>> {
        let mut f = ser(vec![qs_const(g.q_nonzero()), qs_const(g.q()), qs_const(g.q())], m);
        for (a, e) in &pts {
            let n = g.int(-1, 2);
            f = f.mul(&moving(a, e, m).powi(n)?);
        }
        Ok(f)
    };
    let f = [mk()?, mk()?, mk()?];
    Ok(Triple { f, model })
}

/// `s ∧ (1 - s) ∧ (s - 2 + t)` with `2` lifted to `2 - t`.
pub fn worked_triple(m: usize) -> Result<Triple> {
    let two = Q::int(2);
    let model = CurveModel::new(&Q::zero(), m, m + 1)?.with_lift(Point::rational(&two), nser(vec![two.clone(), Q::int(-1)], m))?;
    let f = [ser(vec![qs_var()], m), ser(vec![qs_const(Q::one()).sub(&qs_var())], m), moving(&two, &Q::int(-1), m)];
    Ok(Triple { f, model })
}

/// `s ∧ (1 - s) ∧ (s - 2 + t)/(s - 2)` with the given lift of `2`.
pub fn stated_worked_triple(m: usize, lift: &[Q]) -> Result<Triple> {
    let two = Q::int(2);
    let model = CurveModel::new(&Q::zero(), m, m + 1)?.with_lift(Point::rational(&two), nser(lift.to_vec(), m))?;
    let third = moving(&two, &Q::int(-1), m).mul(&ser(vec![qs_var().sub(&qs_const(two.clone())).inv().expect("nonzero")], m));
    let f = [ser(vec![qs_var()], m), ser(vec![qs_const(Q::one()).sub(&qs_var())], m), third];
    Ok(Triple { f, model })
}

/// Two-chart cocycle data on `ℙ¹` (charts `ℙ¹∖{∞}` and `ℙ¹∖{0}`) built from
/// `α_i = [x]⊗y_i`: `γ_i = δα_i + Γ`, `ε_{i,c} = res_c α_i`, `β₀₁ = α₁ - α₀`.
/// Without the global triple `Γ` the data is a coboundary.
#[derive(Clone, Debug)]
pub struct TwoCharts {
    pub data: CocycleData<Q>,
    pub model: CurveModel<Q>,
    pub global: [TSeries<Qs>; 3],
}

pub fn two_charts(g: &mut Gen, m: usize, r: usize, with_global: bool) -> Result<TwoCharts> {
    let s = qs_var();
    let c = qs_const;
    let cc = Q::int(g.int(2, 4));
    let e = g.q_nonzero();
    // x = c·s + t·e vanishes on the lift -te/c of 0; 1 - x on the lift (1 - te)/c of 1/c
    let x = ser(vec![s.scale(&cc), c(e.clone())], m);
    let z0 = e.neg().mul(&cc.inv().expect("nonzero"));
    let p1 = cc.inv().expect("nonzero");
    let three = Q::int(3);
    let model = CurveModel::new(&Q::zero(), m, r)?
        .with_lift(Point::rational(&Q::zero()), nser(vec![Q::zero(), z0.clone()], m))?
        .with_lift(Point::rational(&p1), nser(vec![p1.clone(), z0.clone()], m))?
        .with_lift(Point::rational(&three), nser(vec![three.clone(), Q::one()], m))?;
    let roots = [Q::int(-1), Q::int(-2), Q::int(5)];
    let mut pp = |k: usize| -> Qs {
        let mut p = c(g.q_nonzero());
        for a in roots.iter().take(k) {
            p = p.mul(&s.sub(&c(a.clone())));
        }
        p
    };
    let p0 = pp(2);
    let p1s = pp(3);
    // y₀ regular off ∞, y₁ regular off 0
    let q0 = c(g.q()).add(&c(g.q()).mul(&s));
    let q1 = c(g.q()).add(&c(g.q_nonzero()).mul(&s.inv().expect("nonzero")));
    let y0 = ser(vec![p0.clone(), p0.mul(&q0)], m);
    let y1 = ser(vec![p1s.clone(), p1s.mul(&q1)], m);
    let a0 = B2Tensor::from_terms(vec![(Q::one(), x.clone(), y0)])?;
    let a1 = B2Tensor::from_terms(vec![(Q::one(), x.clone(), y1)])?;
    let global = [x.clone(), ser(vec![s.sub(&c(three.clone())), c(Q::int(-1))], m), ser(vec![s.add(&c(Q::int(7))), s.add(&c(Q::int(7))).scale(&g.q_nonzero())], m)];
    let gw = if with_global { WedgeSum::generator(Q::one(), global.to_vec())? } else { WedgeSum::zero(3) };
    let eps = |a: &B2Tensor<Qs>, pts: &[Point<Q>]| -> Result<Vec<(Point<Q>, B2Elt<Nf>)>> {
        let mut out = Vec::new();
        for p in pts {
            let chart = LocalChart::new(&model, p)?;
            let e = res_b2_tensor(a, &chart, m)?;
            if !e.is_zero() {
                out.push((p.clone(), e));
            }
        }
        Ok(out)
    };
    let finite: Vec<Point<Q>> = [Q::zero(), p1, three, Q::int(-1), Q::int(-2), Q::int(5)].iter().map(Point::rational).collect();
    let mut pts1 = finite[1..].to_vec();
    pts1.push(Point::Infinity);
    let charts = vec![
        Chart { removed: vec![Point::Infinity], gamma: a0.delta().add(&gw), eps: eps(&a0, &finite)? },
        Chart { removed: vec![Point::rational(&Q::zero())], gamma: a1.delta().add(&gw), eps: eps(&a1, &pts1)? },
    ];
    let data = CocycleData { charts, beta: vec![((0, 1), a1.sub(&a0))] };
    Ok(TwoCharts { data, model, global })
}

/// A unit of `ℚ[s]_(s)[t]/(t^n)` with linear coefficients.
fn local_unit(g: &mut Gen, n: usize) -> TSeries<Qs> {
    let cs = (0..n)
        .map(|i| {
            let a = if i == 0 { g.q_nonzero() } else { g.q() };
            qs_const(a).add(&qs_const(g.q()).mul(&qs_var()))
        })
        .collect();
    ser(cs, n)
}

fn local_lift(u: &TSeries<Qs>, n: i64, b: &TSeries<Q>) -> Result<LocalLift<Q>> {
    let unif = ser(
        b.coeffs().iter().enumerate().map(|(i, x)| if i == 0 { qs_var().sub(&qs_const(x.clone())) } else { qs_const(x.neg()) }).collect(),
        b.prec(),
    );
    Ok(LocalLift { n, u: u.clone(), value: u.mul(&unif.powi(n)?) })
}

/// Compare `res_0 ω(q)` with `ℓ_{m,r}(res π₁q) - ℓ_{m,r}(res π₂q)` on a random good pair
/// at `s = 0`, with lifts `b` and `b + t^m·e` of the point.
pub fn good_pair_residue_trial(g: &mut Gen, m: usize, r: usize) -> Result<(Q, Q)> {
    let b = TSeries::from_coeffs((0..r).map(|i| if i == 0 { Q::zero() } else { g.q() }).collect(), &Q::zero(), r);
    let b2 = b.add(&TSeries::monomial(g.q_nonzero(), m, r));
    let mut first = Vec::new();
    let mut second = Vec::new();
    for _ in 0..3 {
        let n = g.int(-1, 2);
        let u = local_unit(g, r);
        let u2 = u.add(&local_unit(g, r).mul(&TSeries::monomial(qs_const(Q::one()), m, r)));
        first.push(local_lift(&u, n, &b)?);
        second.push(local_lift(&u2, n, &b2)?);
    }
    let pairs = [0, 1, 2].map(|k| (first[k].value.clone(), second[k].value.clone()));
    let q = PairWedge3::single(m, pairs)?;
    let lhs = res_omega_pair(&q, r, &Point::rational(&Q::zero()))?;
    let arr = |v: &Vec<LocalLift<Q>>| [v[0].clone(), v[1].clone(), v[2].clone()];
    let r1 = res_good_wedge(&[(Q::one(), arr(&first))], &b)?;
    let r2 = res_good_wedge(&[(Q::one(), arr(&second))], &b2)?;
    let rhs = ell_mr(&r1, m, r, &Q::zero())?.sub(&ell_mr(&r2, m, r, &Q::zero())?);
    let lhs = lhs.as_rational().ok_or_else(|| Error::Unsupported("residue at a rational point is not rational".into()))?;
    Ok((lhs, rhs))
}

fn star_triple(t: &Triple, l: &Q, m: usize, r: usize) -> Result<Triple> {
    let lq = qs_const(l.clone());
    let f = [t.f[0].star_scale(&lq)?, t.f[1].star_scale(&lq)?, t.f[2].star_scale(&lq)?];
    let mut model = CurveModel::new(&Q::zero(), m, r)?;
    for (p, lift) in t.model.lifts() {
        let ln = lift.c0().from_q(l);
        model = model.with_lift(p.clone(), lift.star_scale(&ln)?)?;
    }
    Ok(Triple { f, model })
}

fn fiveterm(p: &SuiteParams) -> SuiteReport {
    let mut rep = SuiteReport::new("fiveterm");
    let n = p.n(100);
    for &(m, r) in &p.moduli {
        let mut g = p.gen(1, m, r);
        rep.tally(format!("five-term over Q, (m,r)=({},{})", m, r), n, true, |_| {
            let (x, e) = random_five_term(|| g.unit_q(r))?;
            Ok((li_mr(&e, m, r, &Q::zero())?.is_zero(), !li_symbol(&x, m, r)?.is_zero()))
        });
        let mut g = p.gen(2, m, r);
        rep.tally(format!("five-term over Q(s), (m,r)=({},{})", m, r), n, true, |_| {
            let (x, e) = random_five_term(|| g.flat_qs_poly(r))?;
            Ok((li_mr(&e, m, r, &zs())?.is_zero(), !li_symbol(&x, m, r)?.is_zero()))
        });
    }
    rep
}

/// Draw until the flag reports a nonzero value, at most five times; keeps the last draw.
fn redraw<T>(mut draw: impl FnMut() -> Result<(T, bool)>) -> Result<T> {
    let mut last = draw()?;
    for _ in 1..5 {
        if last.1 {
            break;
        }
        last = draw()?;
    }
    Ok(last.0)
}

fn starweight(p: &SuiteParams) -> SuiteReport {
    let mut rep = SuiteReport::new("starweight");
    for &(m, r) in &p.moduli {
        let pw = |l: &Q| l.powi(r as i64);
        let mut g = p.gen(10, m, r);
        rep.tally(format!("li, (m,r)=({},{})", m, r), p.n(10), true, |_| {
            let (x, v) = redraw(|| {
                let x = g.flat_qs(r);
                let v = li_symbol(&x, m, r)?;
                let nz = !v.is_zero();
                Ok(((x, v), nz))
            })?;
            let mut ok = true;
            for k in 0..LAMBDAS.len() {
                let l = lam(k);
                ok &= li_symbol(&x.star_scale(&qs_const(l.clone()))?, m, r)? == v.scale(&pw(&l));
            }
            Ok((ok, !v.is_zero()))
        });
        let mut g = p.gen(11, m, r);
        rep.tally(format!("L, (m,r)=({},{})", m, r), p.n(5), true, |_| {
            let (e, v) = redraw(|| {
                let e = B2Tensor::from_terms(vec![(Q::one(), g.flat_qs(m), g.flat_qs(m))])?;
                let v = l_mr(&e, m, r, &zs())?;
                let nz = !v.is_zero();
                Ok(((e, v), nz))
            })?;
            let mut ok = true;
            for k in 0..LAMBDAS.len() {
                let l = lam(k);
                let es = e.map_entries(|x| x.star_scale(&qs_const(l.clone())))?;
                ok &= l_mr(&es, m, r, &zs())? == v.scale(&pw(&l));
            }
            Ok((ok, !v.is_zero()))
        });
        let mut g = p.gen(12, m, r);
        rep.tally(format!("omega, (m,r)=({},{})", m, r), p.n(5), true, |_| {
            let q = random_pair(&mut g, m, r, 1)?;
            let v = omega_mr_pair(&q, r)?;
            let mut ok = true;
            for k in 0..LAMBDAS.len() {
                let l = lam(k);
                let qs = q.map_entries(|x| x.star_scale(&qs_const(l.clone())))?;
                ok &= omega_mr_pair(&qs, r)? == v.scale(&pw(&l));
            }
            Ok((ok, !v.is_zero()))
        });
        let mut g = p.gen(13, m, r);
        rep.tally(format!("rho on curves, (m,r)=({},{})", m, r), p.n(1), true, |_| {
            let (t, v) = redraw(|| {
                let t = random_triple(&mut g, m, r)?;
                let v = rho_curve_triple(&t.f, &t.model, &Choices::canonical())?;
                let nz = !v.is_zero();
                Ok(((t, v), nz))
            })?;
            let mut ok = true;
            for k in 0..LAMBDAS.len() {
                let l = lam(k);
                let ts = star_triple(&t, &l, m, r)?;
                ok &= rho_curve_triple(&ts.f, &ts.model, &Choices::canonical())? == v.mul(&pw(&l));
            }
            Ok((ok, !v.is_zero()))
        });
        let mut g = p.gen(14, m, r);
        rep.tally(format!("rho on cycles, (m,r)=({},{})", m, r), p.n(2), true, |_| {
            let z = CycleRecipe::random(&mut g, true).build(r)?;
            let v = rho_cycle(&z, m, r)?;
            let mut ok = true;
            for k in 0..LAMBDAS.len() {
                let l = lam(k);
                ok &= rho_cycle(&z.star_scale(&l), m, r)? == v.mul(&pw(&l));
            }
            Ok((ok, !v.is_zero()))
        });
    }
    rep
}

fn boundary(p: &SuiteParams) -> SuiteReport {
    let mut rep = SuiteReport::new("boundary");
    for &(m, r) in &p.moduli {
        let mut g = p.gen(20, m, r);
        rep.tally(format!("L([x](x)x) = 0, (m,r)=({},{})", m, r), p.n(50), true, |_| {
            let x = g.flat_qs(m);
            let v = l_mr(&B2Tensor::from_terms(vec![(Q::one(), x.clone(), x.clone())])?, m, r, &zs())?;
            Ok((v.is_zero(), !li_symbol(&x, m, r)?.is_zero()))
        });
    }
    let mut g = p.gen(21, 0, 0);
    rep.tally("omega on relative delta-images".into(), p.n(50), true, |k| {
        let (m, r) = p.cycled(k);
        let x1 = g.flat_qs(r);
        let x2 = g.perturb_qs(&x1, m);
        let y1 = g.flat_qs(r);
        let y2 = g.perturb_qs(&y1, m);
        let one = TSeries::one(&zs(), r);
        // the same entries with the pairing broken are generically nonzero
        let control = PairWedge3::single(m, [(one.sub(&x1), one.sub(&x1)), (x1.clone(), x2.clone()), (y1.clone(), y2.clone())])?;
        let q = PairWedge3::single(m, [(one.sub(&x1), one.sub(&x2)), (x1, x2), (y1, y2)])?;
        Ok((omega_mr_pair(&q, r)?.is_zero(), !omega_mr_pair(&control, r)?.is_zero()))
    });
    let mut g = p.gen(22, 0, 0);
    rep.tally("rho on coboundary cocycles".into(), p.n(10), false, |k| {
        let (m, r) = p.cycled(k);
        let tc = two_charts(&mut g, m, r, false)?;
        let mut ok = true;
        for base in 0..2 {
            let ch = CocycleChoices { base, ..CocycleChoices::canonical() };
            ok &= rho_curve_cocycle(&tc.data, &tc.model, &ch)?.is_zero();
        }
        Ok((ok, true))
    });
    rep
}

/// `e^{a t^x}` or, for `x = 0`, the constant `a`.
fn slot(a: &Qs, x: usize, n: usize) -> Result<TSeries<Qs>> {
    if x == 0 {
        Ok(TSeries::constant(a.clone(), n))
    } else {
        TSeries::monomial(a.clone(), x, n).exp()
    }
}

/// `a(y·b·dc - z·c·db)` with `dc = dlog c` for a constant slot.
pub fn omega_generator_formula(a: &Qs, b: (&Qs, usize), c: (&Qs, usize), x: usize, r: usize) -> Result<Form1<Qs>> {
    if x + b.1 + c.1 != r {
        return Ok(Form1::zero(&zs()));
    }
    let diff = |v: &Qs, k: usize| -> Result<Form1<Qs>> {
        if k == 0 {
            dlog(v).ok_or_else(|| Error::NonUnit(v.to_string()))
        } else {
            Ok(d(v))
        }
    };
    let t1 = diff(c.0, c.1)?.mul(b.0).scale(&Q::int(b.1 as i64));
    let t2 = diff(b.0, b.1)?.mul(c.0).scale(&Q::int(c.1 as i64));
    Ok(t1.sub(&t2).mul(a))
}

fn omega_formula(p: &SuiteParams) -> SuiteReport {
    let mut rep = SuiteReport::new("omega");
    let mut g = p.gen(30, 0, 0);
    let mut cases = [0usize; 4];
    rep.tally("pair pipeline vs a(yb dc - zc db)".into(), p.n(100), true, |k| {
        let (m, r) = p.cycled(k);
        let x = g.usize(m, r - 1);
        // k mod 4 fixes which of y, z vanish
        let pick = |g: &mut Gen, zero: bool| if zero { 0 } else { g.usize(1, r - 1) };
        let (yz, zz) = (k % 4 == 1 || k % 4 == 3, k % 4 >= 2);
        let mut y = pick(&mut g, yz);
        let mut z = pick(&mut g, zz);
        // most trials land on total weight r, where the value can be nonzero
        if g.usize(0, 3) > 0 && x < r {
            let rest = r - x;
            match (yz, zz) {
                (false, false) if rest >= 2 => {
                    y = g.usize(1, rest - 1);
                    z = rest - y;
                }
                (true, false) => z = rest,
                (false, true) => y = rest,
                _ => {}
            }
        }
        cases[(y == 0) as usize + 2 * (z == 0) as usize] += 1;
        let (a, b, c) = (g.qs(1), g.qs(1), g.qs(1));
        let one = TSeries::one(&zs(), r);
        let e = [(slot(&a, x, r)?, one), (slot(&b, y, r)?, slot(&b, y, r)?), (slot(&c, z, r)?, slot(&c, z, r)?)];
        let got = omega_mr_pair(&PairWedge3::single(m, e)?, r)?;
        let want = omega_generator_formula(&a, (&b, y), (&c, z), x, r)?;
        Ok((got == want, !want.is_zero()))
    });
    let all = cases.iter().all(|&c| c > 0);
    rep.push(
        "y = 0 and z = 0 cases covered",
        all,
        format!("y,z > 0: {}; y = 0: {}; z = 0: {}; both 0: {}", cases[0], cases[1], cases[2], cases[3]),
    );
    rep
}

fn residues_vanish(w: &Form1<Qs>) -> Result<bool> {
    for pt in pole_points(w)? {
        if !residue_form(w, &pt)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn has_residue(w: &Form1<Qs>) -> Result<bool> {
    Ok(!residues_vanish(w)?)
}

fn reparam(p: &SuiteParams) -> SuiteReport {
    let mut rep = SuiteReport::new("reparam");
    for &(m, r) in &p.moduli {
        for w in 1..=r {
            let mut g = p.gen(40 + w as u64, m, r);
            rep.tally(format!("residues under s -> s + a t^{}, (m,r)=({},{})", w, m, r), p.n(25), false, |_| {
                let q = random_pair(&mut g, m, r, 1)?;
                let sig = Reparam::new(w, g.qs(1), r)?;
                let base = omega_mr_pair(&q, r)?;
                let diff = omega_mr_pair(&sig.apply_pair(&q)?, r)?.sub(&base);
                Ok((residues_vanish(&diff)?, has_residue(&base)?))
            });
        }
        if r == m + 1 {
            let mut g = p.gen(49, m, r);
            rep.tally(format!("full forms agree, (m,r)=({},{})", m, r), p.n(25), true, |_| {
                let q = random_pair(&mut g, m, r, 1)?;
                let sig = Reparam::new(g.usize(1, r), g.qs(1), r)?;
                let base = omega_mr_pair(&q, r)?;
                Ok((omega_mr_pair(&sig.apply_pair(&q)?, r)? == base, !base.is_zero()))
            });
        }
    }
    rep
}

fn residue(p: &SuiteParams) -> SuiteReport {
    let mut rep = SuiteReport::new("residue");
    for &(m, r) in &p.moduli {
        let mut g = p.gen(50, m, r);
        rep.tally(format!("good-pair residue identity, (m,r)=({},{})", m, r), p.n(50), true, |_| {
            let (lhs, rhs) = good_pair_residue_trial(&mut g, m, r)?;
            Ok((lhs == rhs, !rhs.is_zero()))
        });
    }
    rep
}

/// Canonical choices and four seeded random ones.
fn choice_sets(seed: u64) -> Vec<Choices> {
    let mut v = vec![Choices::canonical()];
    v.extend((1..=4).map(|k| Choices::random(seed * 10 + k)));
    v
}

fn cocycle_choice_sets(seed: u64) -> Vec<CocycleChoices> {
    let mut v = vec![CocycleChoices::canonical()];
    for k in 1..=4u64 {
        let pick = if k % 2 == 0 { Padding::Zero } else { Padding::Random(seed * 10 + k) };
        v.push(CocycleChoices { base: (k % 2) as usize, pick, lifts: Choices::random(seed * 10 + k) });
    }
    v
}

fn all_equal(vals: &[Q]) -> bool {
    vals.windows(2).all(|w| w[0] == w[1])
}

fn independence(p: &SuiteParams) -> SuiteReport {
    let mut rep = SuiteReport::new("independence");
    let seed = p.seed;
    // the stated triple: its third entry has no good lift at s = 2
    for (label, lift) in [("2 - t", vec![Q::int(2), Q::int(-1)]), ("2", vec![Q::int(2)])] {
        let res = stated_worked_triple(2, &lift).and_then(|t| rho_curve_triple(&t.f, &t.model, &Choices::canonical()));
        let detail = match &res {
            Ok(v) => format!("rho = {}", v),
            Err(e) => format!("no value: {}", e),
        };
        rep.push(format!("stated worked triple s, 1-s, (s-2+t)/(s-2), lift {}", label), res.is_ok(), detail);
    }
    let wt = worked_triple(2);
    let vals: Result<Vec<Q>> = wt.and_then(|t| choice_sets(seed).iter().map(|ch| rho_curve_triple(&t.f, &t.model, ch)).collect());
    match vals {
        Ok(v) => rep.push("worked triple s, 1-s, s-2+t with 2 -> 2-t, (2,3)", all_equal(&v), format!("values {}", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))),
        Err(e) => rep.push("worked triple s, 1-s, s-2+t with 2 -> 2-t, (2,3)", false, e.to_string()),
    }
    let mut g = p.gen(60, 0, 0);
    rep.tally("random triples x 5 choice sets".into(), p.n(6), true, |k| {
        let (m, r) = p.cycled(k);
        let t = random_triple(&mut g, m, r)?;
        let v: Vec<Q> = choice_sets(seed + k as u64).iter().map(|ch| rho_curve_triple(&t.f, &t.model, ch)).collect::<Result<_>>()?;
        Ok((all_equal(&v), !v[0].is_zero()))
    });
    let mut g = p.gen(61, 0, 0);
    rep.tally("two-chart cocycles x 5 choice sets".into(), p.n(2), true, |k| {
        let (m, r) = p.cycled(k);
        let tc = two_charts(&mut g, m, r, true)?;
        let mut v: Vec<Q> = cocycle_choice_sets(seed + k as u64).iter().map(|ch| rho_curve_cocycle(&tc.data, &tc.model, ch)).collect::<Result<_>>()?;
        v.push(rho_curve_triple(&tc.global, &tc.model, &Choices::canonical())?);
        Ok((all_equal(&v), !v[0].is_zero()))
    });
    rep
}

/// `λ_i` of `2{1 + t²/2, x}` and of `{1 + t/x, 1 + xt}` over `ℚ(x)` at `r = 3`.
pub fn milnor_pair(i: usize) -> Result<(Form1<Qx>, Form1<Qx>)> {
    let r = 3;
    let x = qx_var();
    let z = x.zero_like();
    let one = z.one_like();
    let ser = |c: Vec<Qx>| TSeries::from_coeffs(c, &z, r);
    let lhs = WedgeSum::generator(Q::int(2), vec![ser(vec![one.clone(), z.clone(), one.scale(&Q::new(1, 2))]), ser(vec![x.clone()])])?;
    let rhs = WedgeSum::generator(Q::one(), vec![ser(vec![one.clone(), x.inv().expect("nonzero")]), ser(vec![one.clone(), x.clone()])])?;
    Ok((lambda_i_2(&lhs, i, r, &z)?, lambda_i_2(&rhs, i, r, &z)?))
}

fn milnor(_p: &SuiteParams) -> SuiteReport {
    let mut rep = SuiteReport::new("milnor");
    for i in 1..=2 {
        match milnor_pair(i) {
            Ok((a, b)) => rep.push(format!("lambda_{} at r = 3", i), a == b, format!("lambda_{} = {}", i, a)),
            Err(e) => rep.push(format!("lambda_{} at r = 3", i), false, e.to_string()),
        }
    }
    rep
}

fn homotopy(p: &SuiteParams) -> SuiteReport {
    let mut rep = SuiteReport::new("homotopy");
    let mut g = p.gen(70, 3, 5);
    rep.tally("d(h omega_{3,5}) = omega_id - omega_sigma".into(), p.n(25), true, |_| {
        let terms = g.usize(1, 2);
        let q = random_pair(&mut g, 3, 5, terms)?;
        let sig = Reparam::new(1, g.qs(1), 5)?;
        let h = h_omega_35(&sig, &q)?;
        let lhs = d(&h);
        let rhs = omega_mr_pair(&q, 5)?.sub(&omega_mr_pair(&sig.inverse()?.apply_pair(&q)?, 5)?);
        Ok((lhs == rhs, !rhs.is_zero()))
    });
    rep
}

fn cycle(p: &SuiteParams) -> SuiteReport {
    let mut rep = SuiteReport::new("cycle");
    for &(m, r) in &p.moduli {
        if m > 4 {
            continue;
        }
        let n = p.n(20);
        rep.tally(format!("congruent pairs, (m,r)=({},{})", m, r), n, true, |k| {
            let mut g = p.gen(80 + k as u64, m, r);
            let rec = CycleRecipe::random(&mut g, true);
            let z1 = rec.build(r)?;
            let z2 = rec.perturbed(&mut g, m, r).build(r)?;
            let rep = congruence_experiment(&z1, &z2, m, r)?;
            Ok((rep.equal(), !rep.rho1.is_zero()))
        });
        let mut witness = None;
        for k in 0..n.max(20) {
            let mut g = p.gen(90 + k as u64, m, r);
            let rec = CycleRecipe::random(&mut g, true);
            let found = (|| -> Result<Option<(Q, Q)>> {
                let z1 = rec.build(r)?;
                let z2 = rec.root_moved(&mut g, m - 1).build(r)?;
                if !matches!(congruence_experiment(&z1, &z2, m, r), Err(Error::NotCongruent(_))) {
                    return Ok(None);
                }
                let (a, b) = (rho_cycle(&z1, m, r)?, rho_cycle(&z2, m, r)?);
                Ok(if a != b { Some((a, b)) } else { None })
            })();
            if let Ok(Some(v)) = found {
                witness = Some((k, v));
                break;
            }
        }
        match witness {
            Some((k, (a, b))) => rep.push(format!("t^{} perturbation witness, (m,r)=({},{})", m - 1, m, r), true, format!("instance {}: {} vs {}", k, a, b)),
            None => rep.push(format!("t^{} perturbation witness, (m,r)=({},{})", m - 1, m, r), false, "no instance changes rho"),
        }
    }
    rep
}

fn oracles(p: &SuiteParams) -> SuiteReport {
    let mut rep = SuiteReport::new("oracles");
    let mut g = p.gen(100, 0, 0);
    rep.tally("li via delta vs direct formula".into(), p.n(100), true, |k| {
        let (m, r) = p.cycled(k);
        if k % 2 == 0 {
            let x = g.unit_q(r);
            let v = li_symbol(&x, m, r)?;
            Ok((v == li_direct(&x, m, r)?, !v.is_zero()))
        } else {
            let x = g.flat_qs(r);
            let v = li_symbol(&x, m, r)?;
            Ok((v == li_direct(&x, m, r)?, !v.is_zero()))
        }
    });
    let mut g = p.gen(101, 0, 0);
    let kf = match Nf::field(Poly::new(vec![Q::int(-2), Q::zero(), Q::one()], Q::zero()), "a") {
        Ok(k) => k,
        Err(e) => {
            rep.push("l_i via residues vs coefficients over Q(sqrt 2)", false, e.to_string());
            return rep;
        }
    };
    rep.tally("l_i via residues vs coefficients over Q(sqrt 2)".into(), p.n(100), true, |k| {
        let (m, r) = p.cycled(k);
        let unit = |g: &mut Gen| {
            let cs: Vec<Nf> = (0..r)
                .map(|i| {
                    let v = kf.from_q(&g.q()).add(&kf.gen().scale(&g.q()));
                    if i == 0 && v.is_zero() {
                        kf.one_like()
                    } else {
                        v
                    }
                })
                .collect();
            TSeries::from_coeffs(cs, &kf.zero_like(), r)
        };
        let a = unit(&mut g);
        let b = unit(&mut g);
        let mut ok = true;
        for i in 1..r {
            ok &= ell_i_residue(&a, i)? == ell_i(&a, i)?;
        }
        let v = ell_mr_pair(&a, &b, m, r)?;
        ok &= l_mr_point_residue(&a, &b, m, r)? == v;
        Ok((ok, !v.is_zero()))
    });
    rep
}
