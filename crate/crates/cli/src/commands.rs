use std::collections::HashMap;

use infchow::algebra::base::{BaseField, Point};
use infchow::algebra::{Field, Qx, RatFunc, TSeries, Var, Q};
use infchow::bloch::{ell_mr, li_mr, B2Elt, WedgeSum};
use infchow::curve::{rho_curve_cocycle, rho_curve_triple, Chart, Choices, CocycleChoices, CocycleData, CurveModel, Padding};
use infchow::cycle::{congruence_experiment, rho_cycle, CycleSpec};
use infchow::gen::Sample;
use infchow::kahler::l_mr;
use infchow::omega::{expand_exponential, omega_mr, omega_mr_pair, omega_mr_pair_termwise, res_omega_pair, PairWedge3};
use infchow::suites::{run_suite, SuiteParams, MODULI};

use crate::doc::{parse_document, Document, PointAst, Src, Stmt};
use crate::eval::{point_poly, Coeffs, CycleEnv, Env};
use crate::expr::{parse_b2_sum, parse_expr, parse_wedge_sum};
use crate::report::{CheckLine, Report};
use crate::InputError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Base {
    Q,
    Qx,
}

impl Base {
    pub fn name(self) -> &'static str {
        match self {
            Base::Q => "Q",
            Base::Qx => "Qx",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Opts {
    pub m: Option<usize>,
    pub r: Option<usize>,
    pub prec: Option<usize>,
    pub base: Option<Base>,
    pub seed: u64,
    pub trials: Option<usize>,
}

#[derive(Clone, Debug)]
pub enum Command {
    Li(String),
    Lmr(String),
    LmrForm(String),
    Omega(String, Option<String>),
    ResOmega(String, String, String),
    RhoCurve(String),
    RhoCocycle(String),
    RhoCycle(String),
    Congruence(String, String),
    Verify(String),
}

type Res<T> = Result<T, InputError>;

fn kernel(e: infchow::Error) -> InputError {
    InputError(e.to_string())
}

/// Base fields the front end can evaluate over.
pub trait CliBase: BaseField + Sample {
    fn ctx() -> Self;
}

impl CliBase for Q {
    fn ctx() -> Self {
        Q::zero()
    }
}

impl CliBase for Qx {
    fn ctx() -> Self {
        RatFunc::constant(Q::zero(), Var::X)
    }
}

struct Modulus {
    m: usize,
    r: usize,
}

fn modulus(o: &Opts, doc: Option<&Document>) -> Res<Modulus> {
    let m = o.m.or(doc.and_then(|d| d.m())).ok_or_else(|| InputError("m is required (--m or an 'm' line)".into()))?;
    let r = o.r.or(doc.and_then(|d| d.r())).ok_or_else(|| InputError("r is required (--r or an 'r' line)".into()))?;
    infchow::error::check_modulus(m, r).map_err(kernel)?;
    Ok(Modulus { m, r })
}

fn base_of(o: &Opts, doc: Option<&Document>) -> Base {
    o.base.unwrap_or(match doc.and_then(|d| d.base()) {
        Some("Qx") => Base::Qx,
        _ => Base::Q,
    })
}

fn read_doc(path: &str) -> Res<Document> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {}", path, e)))?;
    parse_document(path, &text)
}

pub fn run(cmd: &Command, o: &Opts) -> Res<Report> {
    match cmd {
        Command::Verify(suite) => verify(suite, o),
        Command::RhoCocycle(path) => {
            let doc = read_doc(path)?;
            match base_of(o, Some(&doc)) {
                Base::Q => rho_cocycle(path, &doc, o),
                Base::Qx => Err(InputError("rho-cocycle validates cocycles by linear algebra over Q; base Qx is not supported".into())),
            }
        }
        Command::RhoCycle(path) => {
            let doc = read_doc(path)?;
            rho_cycle_cmd(path, &doc, o)
        }
        Command::Congruence(p1, p2) => congruence(p1, p2, o),
        Command::RhoCurve(path) => {
            let doc = read_doc(path)?;
            match base_of(o, Some(&doc)) {
                Base::Q => rho_curve::<Q>(path, &doc, o),
                Base::Qx => rho_curve::<Qx>(path, &doc, o),
            }
        }
        _ => match base_of(o, None) {
            Base::Q => raw::<Q>(cmd, o),
            Base::Qx => raw::<Qx>(cmd, o),
        },
    }
}

fn std_params(r: Report, md: &Modulus, n: usize, base: Base) -> Report {
    r.param("m", md.m).param("r", md.r).param("prec", n).param("base", base.name())
}

/// Commands on expressions given as arguments.
fn raw<K: CliBase>(cmd: &Command, o: &Opts) -> Res<Report>
where
    RatFunc<K>: Coeffs,
{
    let md = modulus(o, None)?;
    let (m, r) = (md.m, md.r);
    let n = o.prec.unwrap_or(r);
    if n < r {
        return Err(InputError(format!("--prec {} is below r = {}", n, r)));
    }
    let env: Env<RatFunc<K>> = Env::new(n);
    let ctx = RatFunc::<K>::q(&Q::zero());
    let base = o.base.unwrap_or(Base::Q);
    let wedge = |k: usize, text: &str, arity: usize| -> Res<WedgeSum<RatFunc<K>>> {
        let src = Src::arg(k, text);
        let ast = parse_wedge_sum(text).map_err(|e| src.error(e))?;
        env.wedge_sum(&ast, Some(arity)).map_err(|e| src.error(e))
    };
    let b2 = |text: &str| -> Res<_> {
        let src = Src::arg(1, text);
        let ast = parse_b2_sum(text).map_err(|e| src.error(e))?;
        Ok((ast, src))
    };
    let rep = match cmd {
        Command::Li(text) => {
            let (ast, src) = b2(text)?;
            let e = env.b2(&ast).map_err(|e| src.error(e))?;
            let v = li_mr(&e, m, r, &ctx).map_err(kernel)?;
            Report::new("li", v.to_string()).param("input", ast.to_string())
        }
        Command::Lmr(text) => {
            let w = wedge(1, text, 2)?;
            let v = ell_mr(&w, m, r, &ctx).map_err(kernel)?;
            Report::new("lmr", v.to_string()).param("input", text.as_str())
        }
        Command::LmrForm(text) => {
            let (ast, src) = b2(text)?;
            let e = env.b2_tensor(&ast).map_err(|e| src.error(e))?;
            let v = l_mr(&e, m, r, &ctx).map_err(kernel)?;
            Report::new("Lmr", form(&v.to_string())).param("input", ast.to_string())
        }
        Command::Omega(a, None) => {
            let w = wedge(1, a, 3)?;
            let gens = expand_exponential(&w).map_err(kernel)?;
            let v = omega_mr(&gens, m, r, &ctx).map_err(kernel)?;
            Report::new("omega", form(&v.to_string())).param("input", a.as_str())
        }
        Command::Omega(a, Some(b)) => {
            let q = pair(m, &wedge(1, a, 3)?, &wedge(2, b, 3)?)?;
            let v = omega_mr_pair(&q, r).map_err(kernel)?;
            let tw = omega_mr_pair_termwise(&q, r).map_err(kernel)?;
            Report::new("omega", form(&v.to_string()))
                .param("input", vec![a.clone(), b.clone()])
                .check(CheckLine::new("termwise evaluation agrees", v == tw, tw.to_string()))
        }
        Command::ResOmega(a, b, at) => {
            let q = pair(m, &wedge(1, a, 3)?, &wedge(2, b, 3)?)?;
            let pt = point::<K>(&env, &Src { origin: "--at".into(), line: at.clone(), offset: 0 }, at)?;
            let v = res_omega_pair(&q, r, &pt).map_err(kernel)?;
            Report::new("res-omega", v.to_string()).param("input", vec![a.clone(), b.clone()]).param("at", pt.to_string())
        }
        _ => unreachable!("document commands are dispatched elsewhere"),
    };
    Ok(std_params(rep, &md, n, base))
}

/// A zero form prints as `0`.
fn form(s: &str) -> String {
    if s.is_empty() {
        "0".into()
    } else {
        s.to_string()
    }
}

/// Pairs `(a_k, b_k)` taken termwise from two wedge sums with equal coefficients.
fn pair<F: Field>(m: usize, a: &WedgeSum<F>, b: &WedgeSum<F>) -> Res<PairWedge3<F>> {
    if a.terms().len() != b.terms().len() {
        return Err(InputError(format!("pair components have {} and {} terms", a.terms().len(), b.terms().len())));
    }
    let mut terms = Vec::new();
    for ((c1, e1), (c2, e2)) in a.terms().iter().zip(b.terms()) {
        if c1 != c2 {
            return Err(InputError(format!("pair components have coefficients {} and {}", c1, c2)));
        }
        terms.push((c1.clone(), [(e1[0].clone(), e2[0].clone()), (e1[1].clone(), e2[1].clone()), (e1[2].clone(), e2[2].clone())]));
    }
    PairWedge3::new(m, terms).map_err(kernel)
}

fn point<K: CliBase>(env: &Env<RatFunc<K>>, src: &Src, text: &str) -> Res<Point<K>>
where
    RatFunc<K>: Coeffs,
{
    if text.trim() == "inf" {
        return Ok(Point::Infinity);
    }
    let e = parse_expr(text).map_err(|e| src.error(e))?;
    point_ast(env, src, &PointAst::At(e))
}

fn point_ast<K: CliBase>(env: &Env<RatFunc<K>>, src: &Src, p: &PointAst) -> Res<Point<K>>
where
    RatFunc<K>: Coeffs,
{
    match p {
        PointAst::Inf => Ok(Point::Infinity),
        PointAst::At(e) => {
            // a bare constant `a` means the rational point s = a
            let v = env.eval(e).map_err(|x| src.error(x))?;
            if v.is_t_constant() {
                if let Some(a) = v.c0().as_constant() {
                    return Ok(Point::rational(&a));
                }
            }
            let pi = point_poly(env, e).map_err(|x| src.error(x))?;
            K::point_root(&pi).map_err(|x| src.whole(x.to_string()))?;
            Ok(Point::Finite(pi))
        }
    }
}

/// `K`-coefficients of a `t`-series, embedded into the residue field at `root`.
fn to_res<K: CliBase>(f: &TSeries<RatFunc<K>>, root: &K::Res) -> Result<TSeries<K::Res>, String> {
    let mut c = Vec::new();
    for x in f.coeffs() {
        match x.as_constant() {
            Some(a) => c.push(K::embed(root, &a)),
            None => return Err(format!("coefficients must be constants, found {}", x)),
        }
    }
    Ok(TSeries::from_coeffs(c, &root.zero_like(), f.prec()))
}

/// Bindings, in order, plus the evaluation environment.
fn curve_env<K: CliBase>(doc: &Document, n: usize) -> Res<Env<RatFunc<K>>>
where
    RatFunc<K>: Coeffs,
{
    let mut env: Env<RatFunc<K>> = Env::new(n);
    for (st, src) in &doc.stmts {
        if let Stmt::Let(name, e) = st {
            let v = env.eval(e).map_err(|x| src.error(x))?;
            env.bindings.insert(name.clone(), v);
        }
    }
    Ok(env)
}

fn model<K: CliBase>(doc: &Document, env: &Env<RatFunc<K>>, md: &Modulus) -> Res<CurveModel<K>>
where
    RatFunc<K>: Coeffs,
{
    let mut model = CurveModel::new(&K::ctx(), md.m, md.r).map_err(kernel)?;
    for (st, src) in &doc.stmts {
        if let Stmt::Lift(p, e) = st {
            let pt = point_ast(env, src, p)?;
            if let Point::Finite(pi) = &pt {
                if pi.deg() != Some(1) {
                    return Err(src.whole("lifts are supported at rational points and inf only"));
                }
            }
            let root = model.root(&pt).map_err(|x| src.whole(x.to_string()))?;
            let f = env.eval(e).map_err(|x| src.error(x))?;
            let lift = to_res::<K>(&f, &root).map_err(|x| src.whole(x))?;
            model = model.with_lift(pt, lift).map_err(|x| src.whole(x.to_string()))?;
        }
    }
    Ok(model)
}

fn choices(doc: &Document) -> Choices {
    match doc.stmts.iter().filter_map(|(s, _)| if let Stmt::Choices(c) = s { Some(*c) } else { None }).next_back() {
        Some(Some(seed)) => Choices::random(seed),
        _ => Choices::canonical(),
    }
}

fn doc_prec(o: &Opts, doc: &Document, default: usize) -> usize {
    o.prec.or(doc.prec()).unwrap_or(default)
}

fn rho_curve<K: CliBase>(path: &str, doc: &Document, o: &Opts) -> Res<Report>
where
    RatFunc<K>: Coeffs,
{
    let md = modulus(o, Some(doc))?;
    let n = doc_prec(o, doc, md.m);
    if n < md.m {
        return Err(InputError(format!("precision {} is below m = {}", n, md.m)));
    }
    let env = curve_env::<K>(doc, n)?;
    let model = model(doc, &env, &md)?;
    let mut triples = Vec::new();
    for (st, src) in &doc.stmts {
        if let Stmt::Triple(w) = st {
            let ws = env.wedge_sum(w, Some(3)).map_err(|x| src.error(x))?;
            for (c, e) in ws.terms() {
                triples.push((c.clone(), [e[0].clone(), e[1].clone(), e[2].clone()]));
            }
        }
    }
    if triples.is_empty() {
        return Err(InputError(format!("{}: no 'triple' line", path)));
    }
    let eval = |ch: &Choices| -> Res<K> {
        let mut acc = K::ctx();
        for (c, f) in &triples {
            acc = acc.add(&rho_curve_triple(f, &model, ch).map_err(kernel)?.scale(c));
        }
        Ok(acc)
    };
    let ch = choices(doc);
    let v = eval(&ch)?;
    let alt = eval(&Choices::random(o.seed))?;
    let rep = Report::new("rho-curve", v.to_string())
        .param("document", path)
        .param("seed", o.seed)
        .check(CheckLine::new(format!("same value under random choices (seed {})", o.seed), alt == v, alt.to_string()));
    Ok(std_params(rep, &md, n, base_of(o, Some(doc))))
}

fn rho_cocycle(path: &str, doc: &Document, o: &Opts) -> Res<Report> {
    let md = modulus(o, Some(doc))?;
    let n = doc_prec(o, doc, md.m);
    if n < md.m {
        return Err(InputError(format!("precision {} is below m = {}", n, md.m)));
    }
    let env = curve_env::<Q>(doc, n)?;
    let model = model(doc, &env, &md)?;
    let mut charts: Vec<Option<Chart<Q>>> = Vec::new();
    let mut beta = Vec::new();
    let mut base_chart = 0;
    let mut pick = Padding::Zero;
    let chart_mut = |charts: &mut Vec<Option<Chart<Q>>>, i: usize, src: &Src| -> Res<()> {
        match charts.get(i) {
            Some(Some(_)) => Ok(()),
            _ => Err(src.whole(format!("chart {} is not declared", i))),
        }
    };
    for (st, src) in &doc.stmts {
        match st {
            Stmt::Chart(i, pts) => {
                if *i != charts.len() {
                    return Err(src.whole(format!("charts are declared in order; expected chart {}", charts.len())));
                }
                let mut removed = Vec::new();
                for (p, s) in pts {
                    removed.push(point_ast(&env, s, p)?);
                }
                charts.push(Some(Chart { removed, gamma: WedgeSum::zero(3), eps: Vec::new() }));
            }
            Stmt::Gamma(i, w) => {
                chart_mut(&mut charts, *i, src)?;
                let g = env.wedge_sum(w, Some(3)).map_err(|x| src.error(x))?;
                let c = charts[*i].as_mut().expect("declared");
                c.gamma = c.gamma.add(&g);
            }
            Stmt::Eps(i, p, b) => {
                chart_mut(&mut charts, *i, src)?;
                let pt = point_ast(&env, src, p)?;
                let root = model.root(&pt).map_err(|x| src.whole(x.to_string()))?;
                let e = env.b2(b).map_err(|x| src.error(x))?;
                let e: B2Elt<_> = e.map_entries(|x| to_res::<Q>(x, &root).map_err(infchow::Error::Unsupported)).map_err(|x| src.whole(x.to_string()))?;
                charts[*i].as_mut().expect("declared").eps.push((pt, e));
            }
            Stmt::Beta(i, j, b) => {
                chart_mut(&mut charts, *i, src)?;
                chart_mut(&mut charts, *j, src)?;
                if i >= j {
                    return Err(src.whole("beta I J needs I < J"));
                }
                beta.push(((*i, *j), env.b2_tensor(b).map_err(|x| src.error(x))?));
            }
            Stmt::BaseChart(i) => base_chart = *i,
            Stmt::Pick(p) => pick = p.map_or(Padding::Zero, Padding::Random),
            _ => {}
        }
    }
    let charts: Vec<Chart<Q>> = charts.into_iter().flatten().collect();
    if charts.is_empty() {
        return Err(InputError(format!("{}: no 'chart' line", path)));
    }
    if base_chart >= charts.len() {
        return Err(InputError(format!("basechart {} out of range", base_chart)));
    }
    let data = CocycleData { charts, beta };
    let ch = CocycleChoices { base: base_chart, pick, lifts: choices(doc) };
    let v = rho_curve_cocycle(&data, &model, &ch).map_err(kernel)?;
    let mut rep = Report::new("rho-cocycle", v.to_string()).param("document", path).param("seed", o.seed);
    for i in 0..data.charts.len() {
        if i == base_chart {
            continue;
        }
        let alt = CocycleChoices { base: i, pick: Padding::Random(o.seed), lifts: Choices::random(o.seed) };
        let w = rho_curve_cocycle(&data, &model, &alt).map_err(kernel)?;
        rep = rep.check(CheckLine::new(format!("same value from chart {} under random choices (seed {})", i, o.seed), w == v, w.to_string()));
    }
    Ok(std_params(rep, &md, n, Base::Q))
}

fn cycle_spec(doc: &Document, n: usize) -> Res<CycleSpec> {
    let mut env = CycleEnv { n, bindings: HashMap::new() };
    let mut coords = None;
    let mut orientation = Q::one();
    for (st, src) in &doc.stmts {
        match st {
            Stmt::Let(name, e) => {
                let v = env.eval(e).map_err(|x| src.error(x))?;
                env.bindings.insert(name.clone(), v);
            }
            Stmt::Cycle(es) => {
                let mut out = Vec::new();
                for e in es {
                    out.push(env.eval(e).map_err(|x| src.error(x))?);
                }
                coords = Some(out);
            }
            Stmt::Orientation(q) => orientation = q.clone(),
            Stmt::Base(b) if b != "Q" => return Err(src.whole("cycles are supported over Q only")),
            Stmt::Triple(_) | Stmt::Lift(..) | Stmt::Chart(..) | Stmt::Gamma(..) | Stmt::Eps(..) | Stmt::Beta(..) => {
                return Err(src.whole("not a cycle statement"))
            }
            _ => {}
        }
    }
    let coords = coords.ok_or_else(|| InputError("no 'cycle' line".into()))?;
    let coords: [_; 3] = coords.try_into().expect("three coordinates");
    Ok(CycleSpec { coords, orientation })
}

fn rho_cycle_cmd(path: &str, doc: &Document, o: &Opts) -> Res<Report> {
    let md = modulus(o, Some(doc))?;
    let n = doc_prec(o, doc, md.r);
    let z = cycle_spec(doc, n)?;
    let v = rho_cycle(&z, md.m, md.r).map_err(kernel)?;
    let sw = rho_cycle(&z.swapped(0, 1), md.m, md.r).map_err(kernel)?;
    let rep = Report::new("rho-cycle", v.to_string())
        .param("document", path)
        .check(CheckLine::new("swapping y1 and y2 negates the value", sw == v.neg(), sw.to_string()));
    Ok(std_params(rep, &md, n, Base::Q))
}

fn congruence(p1: &str, p2: &str, o: &Opts) -> Res<Report> {
    let (d1, d2) = (read_doc(p1)?, read_doc(p2)?);
    let md = modulus(o, Some(&d1))?;
    let md2 = modulus(o, Some(&d2))?;
    if (md.m, md.r) != (md2.m, md2.r) {
        return Err(InputError(format!("documents disagree on (m, r): ({}, {}) and ({}, {})", md.m, md.r, md2.m, md2.r)));
    }
    let n = o.prec.unwrap_or_else(|| d1.prec().unwrap_or(md.r).min(d2.prec().unwrap_or(md.r)));
    let (z1, z2) = (cycle_spec(&d1, n)?, cycle_spec(&d2, n)?);
    let (out, congruent) = match congruence_experiment(&z1, &z2, md.m, md.r) {
        Ok(rep) => (rep, None),
        Err(infchow::Error::NotCongruent(why)) => {
            let rho1 = rho_cycle(&z1, md.m, md.r).map_err(kernel)?;
            let rho2 = rho_cycle(&z2, md.m, md.r).map_err(kernel)?;
            (infchow::cycle::CongruenceReport { m: md.m, r: md.r, rho1, rho2 }, Some(why))
        }
        Err(e) => return Err(kernel(e)),
    };
    let agree = match &congruent {
        None => CheckLine::new("regulator values agree", out.equal(), format!("{} != {}", out.rho1, out.rho2)),
        Some(_) => CheckLine::new("regulator values agree (not expected)", out.equal(), format!("{} != {}", out.rho1, out.rho2)),
    };
    let rep = Report::new("congruence", format!("{} {}", out.rho1, out.rho2))
        .param("documents", vec![p1.to_string(), p2.to_string()])
        .check(CheckLine::new(format!("congruent mod t^{}", md.m), congruent.is_none(), congruent.clone().unwrap_or_default()))
        .check(agree);
    Ok(std_params(rep, &md, n, Base::Q))
}

fn verify(suite: &str, o: &Opts) -> Res<Report> {
    let moduli = match (o.m, o.r) {
        (Some(m), Some(r)) => vec![(m, r)],
        (None, None) => MODULI.to_vec(),
        (Some(m), None) => MODULI.iter().copied().filter(|x| x.0 == m).collect(),
        (None, Some(r)) => MODULI.iter().copied().filter(|x| x.1 == r).collect(),
    };
    let p = SuiteParams { seed: o.seed, moduli: moduli.clone(), trials: o.trials };
    let rep = run_suite(suite, &p).map_err(kernel)?;
    let mut out = Report::new("verify", if rep.passed() { "pass" } else { "fail" })
        .param("suite", suite)
        .param("seed", o.seed)
        .param("moduli", moduli.iter().map(|(m, r)| vec![*m, *r]).collect::<Vec<_>>())
        .param("trials", o.trials.map_or(serde_json::Value::Null, |t| t.into()));
    for c in &rep.checks {
        out = out.check(CheckLine::new(c.name.clone(), c.passed, c.detail.clone()));
    }
    out.text = Some(rep.to_string());
    Ok(out)
}
