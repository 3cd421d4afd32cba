use infchow::algebra::base::{BaseField, Point};
use infchow::algebra::hensel::hensel_root;
use infchow::algebra::numfield::Nf;
use infchow::algebra::{qs_const, qs_var, Field, Poly, Qs, TSeries, Q};
use infchow::bloch::WedgeSum;
use infchow::curve::*;
use infchow::gen::Gen;
use infchow::omega::Reparam;
use infchow::suites::{good_pair_residue_trial, random_triple, two_charts, worked_triple};
use infchow::Error;

fn s() -> Qs {
    qs_var()
}

fn c(q: Q) -> Qs {
    qs_const(q)
}

fn ser(cs: Vec<Qs>, n: usize) -> TSeries<Qs> {
    TSeries::from_coeffs(cs, &c(Q::zero()), n)
}

fn nf(q: Q) -> Nf {
    Nf::rational().from_q(&q)
}

fn nser(cs: Vec<Q>, n: usize) -> TSeries<Nf> {
    TSeries::from_coeffs(cs.into_iter().map(nf).collect(), &nf(Q::zero()), n)
}

/// `s - a - e·t`.
fn moving(a: &Q, e: &Q, n: usize) -> TSeries<Qs> {
    ser(vec![s().sub(&c(a.clone())), c(e.neg())], n)
}

#[test]
fn goodness_examples() {
    let model = CurveModel::new(&Q::zero(), 2, 3).unwrap();
    let g = goodness_check(&ser(vec![s()], 2), &Point::rational(&Q::zero()), &model).unwrap();
    assert_eq!(g.n, 1);
    assert!(g.u.is_one());

    // 1 + ts at infinity: (w + t)/w
    let e = goodness_check(&ser(vec![c(Q::one()), s()], 2), &Point::Infinity, &model);
    assert!(matches!(e, Err(Error::NotGood { order: 1, .. })));

    // (s-2+t)/(s-2) at s = 2 is not good for either lift: the denominator s-2 = 𝔰 - t
    let f = ser(vec![c(Q::one()), s().sub(&c(Q::int(2))).inv().unwrap()], 2);
    let p2 = Point::rational(&Q::int(2));
    assert!(matches!(goodness_check(&f, &p2, &model), Err(Error::NotGood { order: 1, .. })));
    let moved = model.clone().with_lift(p2.clone(), nser(vec![Q::int(2), Q::int(-1)], 2)).unwrap();
    assert!(matches!(goodness_check(&f, &p2, &moved), Err(Error::NotGood { .. })));

    // s - 2 + t is good at 2 for the lift 2 - t, with cofactor 1
    let g = goodness_check(&moving(&Q::int(2), &Q::int(-1), 2), &p2, &moved).unwrap();
    assert_eq!(g.n, 1);
    assert!(g.u.is_one());
    assert!(goodness_check(&moving(&Q::int(2), &Q::int(-1), 2), &p2, &model).is_err());
}

#[test]
fn lift_must_reduce_to_point() {
    let model = CurveModel::new(&Q::zero(), 2, 3).unwrap();
    let e = model.with_lift(Point::rational(&Q::int(2)), nser(vec![Q::int(3), Q::one()], 2));
    assert!(matches!(e, Err(Error::NotGood { .. })));
}

#[test]
fn good_local_lift_reduces_to_local_image() {
    let mut g = Gen::new(4);
    for _ in 0..5 {
        let t = random_triple(&mut g, 2, 3).unwrap();
        for (p, _) in t.model.lifts() {
            let chart = LocalChart::new(&t.model, p).unwrap();
            for f in &t.f {
                let good = goodness_check(f, p, &t.model).unwrap();
                let b = chart.padded_lift(3, &Padding::Random(9), 1);
                let l = good_local_lift(&chart, &good, &b, 3, &Padding::Random(5), 2).unwrap();
                assert_eq!(l.value.with_prec(2).unwrap(), chart.localize_series(f));
            }
        }
    }
}

#[test]
fn residue_of_good_wedge_example() {
    // s²(1+t) ∧ s ∧ 3 at s = 0 with constant lift, r = 3
    let model = CurveModel::new(&Q::zero(), 2, 3).unwrap();
    let p0 = Point::rational(&Q::zero());
    let chart = LocalChart::new(&model, &p0).unwrap();
    let b = chart.padded_lift(3, &Padding::Zero, 0);
    let f = [
        ser(vec![s().mul(&s()), s().mul(&s())], 3),
        ser(vec![s()], 3),
        ser(vec![c(Q::int(3))], 3),
    ];
    let lifts: Vec<LocalLift<Nf>> = f
        .iter()
        .map(|x| {
            let good = goodness_check(&x.with_prec(2).unwrap(), &p0, &model).unwrap();
            good_local_lift(&chart, &good, &b, 3, &Padding::Zero, 0).unwrap()
        })
        .collect();
    assert_eq!((lifts[0].n, lifts[1].n, lifts[2].n), (2, 1, 0));
    let res = res_good_wedge(&[(Q::one(), [lifts[0].clone(), lifts[1].clone(), lifts[2].clone()])], &b).unwrap();
    let want = WedgeSum::generator(Q::int(-1), vec![nser(vec![Q::one(), Q::one()], 3), nser(vec![Q::int(3)], 3)])
        .unwrap();
    assert_eq!(res.normalized(), want.normalized());
}

#[test]
fn residue_of_units_vanishes() {
    let model = CurveModel::new(&Q::zero(), 2, 3).unwrap();
    let p1 = Point::rational(&Q::one());
    let chart = LocalChart::new(&model, &p1).unwrap();
    let b = chart.padded_lift(3, &Padding::Zero, 0);
    let f = [ser(vec![s(), c(Q::int(2))], 2), ser(vec![s().add(&c(Q::one()))], 2), ser(vec![c(Q::int(5))], 2)];
    let lifts: Vec<LocalLift<Nf>> = f
        .iter()
        .map(|x| good_local_lift(&chart, &goodness_check(x, &p1, &model).unwrap(), &b, 3, &Padding::Zero, 0).unwrap())
        .collect();
    let res = res_good_wedge(&[(Q::one(), [lifts[0].clone(), lifts[1].clone(), lifts[2].clone()])], &b).unwrap();
    assert!(res.is_zero());
}

#[test]
fn worked_triple_is_choice_independent() {
    let t = worked_triple(2).unwrap();
    let v = rho_curve_triple(&t.f, &t.model, &Choices::canonical()).unwrap();
    for seed in 1..=4 {
        assert_eq!(rho_curve_triple(&t.f, &t.model, &Choices::random(seed)).unwrap(), v);
    }
    // frozen after the independence check above
    assert_eq!(v, Q::new(-1, 8));
}

#[test]
fn rho_is_choice_independent_on_random_triples() {
    let mut g = Gen::new(21);
    for (m, r) in [(2, 3), (3, 4), (3, 5)] {
        for _ in 0..3 {
            let t = random_triple(&mut g, m, r).unwrap();
            let v = rho_curve_triple(&t.f, &t.model, &Choices::canonical()).unwrap();
            for seed in 1..=3 {
                assert_eq!(rho_curve_triple(&t.f, &t.model, &Choices::random(seed)).unwrap(), v, "m={} r={}", m, r);
            }
        }
    }
}

#[test]
fn rho_of_t_constant_triple_is_zero() {
    let model = CurveModel::new(&Q::zero(), 2, 3).unwrap();
    let f = [
        ser(vec![s()], 2),
        ser(vec![c(Q::one()).sub(&s())], 2),
        ser(vec![s().add(&c(Q::int(3))).mul(&s().sub(&c(Q::int(5))))], 2),
    ];
    assert!(rho_curve_triple(&f, &model, &Choices::canonical()).unwrap().is_zero());
    assert!(rho_curve_triple(&f, &model, &Choices::random(3)).unwrap().is_zero());
}

#[test]
fn rho_star_weight() {
    let mut g = Gen::new(8);
    for (m, r) in [(2, 3), (3, 5)] {
        let t = random_triple(&mut g, m, r).unwrap();
        let v = rho_curve_triple(&t.f, &t.model, &Choices::canonical()).unwrap();
        let lam = Q::int(3);
        let f: Vec<TSeries<Qs>> = t.f.iter().map(|x| x.star_scale(&c(lam.clone())).unwrap()).collect();
        let mut model = CurveModel::new(&Q::zero(), m, r).unwrap();
        for (p, l) in t.model.lifts() {
            model = model.with_lift(p.clone(), l.star_scale(&nf(lam.clone())).unwrap()).unwrap();
        }
        let w = rho_curve_triple(&[f[0].clone(), f[1].clone(), f[2].clone()], &model, &Choices::canonical()).unwrap();
        assert_eq!(w, v.mul(&lam.powi(r as i64)));
    }
}

#[test]
fn rho_is_antisymmetric() {
    let mut g = Gen::new(13);
    let t = random_triple(&mut g, 2, 3).unwrap();
    let v = rho_curve_triple(&t.f, &t.model, &Choices::canonical()).unwrap();
    let sw = [t.f[1].clone(), t.f[0].clone(), t.f[2].clone()];
    assert_eq!(rho_curve_triple(&sw, &t.model, &Choices::canonical()).unwrap(), v.neg());
    let cyc = [t.f[1].clone(), t.f[2].clone(), t.f[0].clone()];
    assert_eq!(rho_curve_triple(&cyc, &t.model, &Choices::canonical()).unwrap(), v);
}

#[test]
fn off_support_points_contribute_nothing() {
    let mut g = Gen::new(17);
    let t = random_triple(&mut g, 2, 3).unwrap();
    let generic = t.f.clone().map(|x| x.pad(3));
    for a in [7, 11, -9] {
        let pt = Point::rational(&Q::int(a));
        let v = point_contribution(&generic, &t.model, &pt, &Choices::canonical()).unwrap();
        assert!(v.is_zero());
    }
}

#[test]
fn rho_invariant_under_translation() {
    let mut g = Gen::new(29);
    for (m, r, w) in [(2, 3, 1), (2, 3, 2), (3, 5, 1), (3, 4, 2)] {
        let t = random_triple(&mut g, m, r).unwrap();
        let v = rho_curve_triple(&t.f, &t.model, &Choices::canonical()).unwrap();
        let alpha = g.q_nonzero();
        let sigma = Reparam::new(w, c(alpha.clone()), m).unwrap();
        let f: Vec<TSeries<Qs>> = t.f.iter().map(|x| sigma.apply(x).unwrap()).collect();
        let shift = TSeries::monomial(nf(alpha), w, m);
        let mut model = CurveModel::new(&Q::zero(), m, r).unwrap();
        for (p, l) in t.model.lifts() {
            model = model.with_lift(p.clone(), l.sub(&shift)).unwrap();
        }
        let u = rho_curve_triple(&[f[0].clone(), f[1].clone(), f[2].clone()], &model, &Choices::canonical()).unwrap();
        assert_eq!(u, v, "m={} r={} w={}", m, r, w);
    }
}

#[test]
fn rho_with_a_quadratic_point() {
    // s² - 2 - t, good at the closed point s² = 2 for its Hensel lift
    let m = 2;
    let pi = Poly::new(vec![Q::int(-2), Q::zero(), Q::one()], Q::zero());
    let root = <Q as BaseField>::point_root(&pi).unwrap();
    let z = root.zero_like();
    let p0 = pi.map(&z, |q| root.from_q(q));
    let p1 = Poly::constant(root.from_q(&Q::int(-1)));
    let b = hensel_root(&[p0, p1], &root, m).unwrap();
    let model = CurveModel::new(&Q::zero(), m, 3)
        .unwrap()
        .with_lift(Point::Finite(pi), b)
        .unwrap();
    let q = ser(vec![s().mul(&s()).sub(&c(Q::int(2))), c(Q::int(-1))], m);
    let f = [q, ser(vec![s().add(&c(Q::one()))], m), ser(vec![c(Q::int(3)), c(Q::one())], m)];
    let v = rho_curve_triple(&f, &model, &Choices::canonical()).unwrap();
    for seed in 1..=3 {
        assert_eq!(rho_curve_triple(&f, &model, &Choices::random(seed)).unwrap(), v);
    }
}

#[test]
fn single_chart_cocycle_is_the_triple() {
    let mut g = Gen::new(31);
    for (m, r) in [(2, 3), (3, 5)] {
        let t = random_triple(&mut g, m, r).unwrap();
        let v = rho_curve_triple(&t.f, &t.model, &Choices::canonical()).unwrap();
        let d = CocycleData::global(WedgeSum::generator(Q::one(), t.f.to_vec()).unwrap());
        assert_eq!(rho_curve_cocycle(&d, &t.model, &CocycleChoices::canonical()).unwrap(), v);
        let ch = CocycleChoices { base: 0, pick: Padding::Random(2), lifts: Choices::random(6) };
        assert_eq!(rho_curve_cocycle(&d, &t.model, &ch).unwrap(), v);
    }
}

#[test]
fn coboundaries_have_zero_rho() {
    let mut g = Gen::new(41);
    for (m, r) in [(2, 3), (3, 4)] {
        let tc = two_charts(&mut g, m, r, false).unwrap();
        for base in 0..2 {
            let ch = CocycleChoices { base, ..CocycleChoices::canonical() };
            assert!(rho_curve_cocycle(&tc.data, &tc.model, &ch).unwrap().is_zero(), "m={} r={} base={}", m, r, base);
        }
    }
}

#[test]
fn two_chart_rho_is_choice_independent() {
    let mut g = Gen::new(43);
    for (m, r) in [(2, 3), (3, 5)] {
        let tc = two_charts(&mut g, m, r, true).unwrap();
        let want = rho_curve_triple(&tc.global, &tc.model, &Choices::canonical()).unwrap();
        for base in 0..2 {
            for (pick, lifts) in [(Padding::Zero, Choices::canonical()), (Padding::Random(3), Choices::random(4))] {
                let ch = CocycleChoices { base, pick, lifts };
                assert_eq!(rho_curve_cocycle(&tc.data, &tc.model, &ch).unwrap(), want, "m={} r={} base={}", m, r, base);
            }
        }
    }
}

#[test]
fn cocycle_violations_are_reported() {
    let mut g = Gen::new(47);
    let tc = two_charts(&mut g, 2, 3, true).unwrap();
    let mut bad = tc.data.clone();
    bad.beta[0].1 = bad.beta[0].1.scale(&Q::int(2));
    let e = rho_curve_cocycle(&bad, &tc.model, &CocycleChoices::canonical());
    assert!(matches!(e, Err(Error::CocycleViolation { condition: 1, .. })), "{:?}", e);
    let mut bad = tc.data.clone();
    bad.charts[1].eps.clear();
    let e = rho_curve_cocycle(&bad, &tc.model, &CocycleChoices::canonical());
    assert!(matches!(e, Err(Error::CocycleViolation { condition: 2, .. })), "{:?}", e);
}

#[test]
fn residue_of_omega_on_good_pairs() {
    let mut g = Gen::new(53);
    let mut nonzero = 0;
    for (m, r) in [(2, 3), (3, 4), (3, 5)] {
        for _ in 0..4 {
            let (lhs, rhs) = good_pair_residue_trial(&mut g, m, r).unwrap();
            assert_eq!(lhs, rhs, "m={} r={}", m, r);
            nonzero += !rhs.is_zero() as usize;
        }
    }
    assert!(nonzero >= 6, "{}", nonzero);
}

#[test]
fn full_trace_is_needed_at_nonrational_points() {
    // same data as rho_with_a_quadratic_point; per-point sums with the normalized trace
    let m = 2;
    let pi = Poly::new(vec![Q::int(-2), Q::zero(), Q::one()], Q::zero());
    let root = <Q as BaseField>::point_root(&pi).unwrap();
    let z = root.zero_like();
    let p0 = pi.map(&z, |q| root.from_q(q));
    let p1 = Poly::constant(root.from_q(&Q::int(-1)));
    let b = hensel_root(&[p0, p1], &root, m).unwrap();
    let model = CurveModel::new(&Q::zero(), m, 3).unwrap().with_lift(Point::Finite(pi), b).unwrap();
    let q = ser(vec![s().mul(&s()).sub(&c(Q::int(2))), c(Q::int(-1))], m);
    let f = [q, ser(vec![s().add(&c(Q::one()))], m), ser(vec![c(Q::int(3)), c(Q::one())], m)];
    let sums = |ch: &Choices| -> (Q, Q) {
        let generic = [0, 1, 2].map(|k| generic_lift(&f[k], m, 3, ch, 100 + k as u64, &Q::zero()).unwrap());
        let mut full = Q::zero();
        let mut norm = Q::zero();
        for pt in support_points(&generic, &model).unwrap() {
            let v = point_contribution(&generic, &model, &pt, ch).unwrap();
            full = full.add(&<Q as BaseField>::trace(&v));
            norm = norm.add(&<Q as BaseField>::normalized_trace(&v));
        }
        (full, norm)
    };
    let (f0, n0) = sums(&Choices::canonical());
    let mut normalized_moves = false;
    for seed in 1..=4 {
        let (f1, n1) = sums(&Choices::random(seed));
        assert_eq!(f1, f0);
        normalized_moves |= n1 != n0;
    }
    assert!(normalized_moves);
}
