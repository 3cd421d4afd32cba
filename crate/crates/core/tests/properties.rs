use infchow::algebra::laurent::order_at;
use infchow::algebra::{qxs_var, qxs_x, Field, Nf, Poly, Qs, RatFunc, TSeries, Var, Q};
use infchow::bloch::{ell_mr, five_term, li_mr, WedgeSum};
use infchow::kahler::residue::residue_sum;
use infchow::kahler::{d, Form1};
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Q> {
    (-9i64..=9, 1i64..=4).prop_map(|(a, b)| Q::new(a, b))
}

fn nonzero() -> impl Strategy<Value = Q> {
    rat().prop_filter("nonzero", |q| !q.is_zero())
}

fn series(n: usize) -> impl Strategy<Value = TSeries<Q>> {
    prop::collection::vec(rat(), n).prop_map(move |c| TSeries::from_coeffs(c, &Q::zero(), n))
}

fn unit(n: usize) -> impl Strategy<Value = TSeries<Q>> {
    (nonzero(), prop::collection::vec(rat(), n - 1)).prop_map(move |(a, mut c)| {
        c.insert(0, a);
        TSeries::from_coeffs(c, &Q::zero(), n)
    })
}

fn poly(deg: usize) -> impl Strategy<Value = Poly<Q>> {
    prop::collection::vec(rat(), 1..=deg + 1).prop_map(|c| Poly::new(c, Q::zero()))
}

fn ratfunc() -> impl Strategy<Value = Qs> {
    (poly(3), poly(3))
        .prop_filter("nonzero", |(a, b)| !a.is_zero() && !b.is_zero())
        .prop_map(|(a, b)| RatFunc::new(a, b, Var::S))
}

fn sqrt2(a: &Q, b: &Q) -> Nf {
    let f = Nf::field_unchecked(Poly::new(vec![Q::int(-2), Q::zero(), Q::one()], Q::zero()), "a");
    f.from_q(a).add(&f.gen().mul(&f.from_q(b)))
}

proptest! {
    #[test]
    fn series_ring_axioms(a in series(4), b in series(4), c in series(4)) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn units_invert(a in unit(5)) {
        prop_assert!(a.mul(&a.inv().unwrap()).is_one());
    }

    #[test]
    fn exp_inverts_log_circ(a in unit(5)) {
        let l = a.log_circ().unwrap();
        prop_assert!(l.c0().is_zero());
        let back = l.exp().unwrap().scale(a.c0());
        prop_assert_eq!(back, a);
    }

    #[test]
    fn log_circ_is_additive(a in unit(4), b in unit(4)) {
        prop_assert_eq!(a.mul(&b).log_circ().unwrap(), a.log_circ().unwrap().add(&b.log_circ().unwrap()));
    }

    #[test]
    fn star_scale_is_a_morphism(a in series(4), b in series(4), l in nonzero(), k in nonzero()) {
        prop_assert_eq!(a.mul(&b).star_scale(&l).unwrap(), a.star_scale(&l).unwrap().mul(&b.star_scale(&l).unwrap()));
        prop_assert_eq!(a.add(&b).star_scale(&l).unwrap(), a.star_scale(&l).unwrap().add(&b.star_scale(&l).unwrap()));
        prop_assert_eq!(a.star_scale(&k).unwrap().star_scale(&l).unwrap(), a.star_scale(&k.mul(&l)).unwrap());
    }

    #[test]
    fn truncate_below_is_idempotent(a in series(5), k in 0usize..=5) {
        let t = a.truncate_below(k).unwrap();
        prop_assert_eq!(t.truncate_below(k).unwrap(), t.clone());
        prop_assert_eq!(t.with_prec(k).unwrap(), a.with_prec(k).unwrap());
    }

    #[test]
    fn trace_is_linear(a in rat(), b in rat(), c in rat(), e in rat(), k in rat()) {
        let x = sqrt2(&a, &b);
        let y = sqrt2(&c, &e);
        prop_assert_eq!(x.add(&y).trace(), x.trace().add(&y.trace()));
        prop_assert_eq!(x.scale(&k).trace(), x.trace().mul(&k));
        prop_assert_eq!(x.trace(), a.mul(&Q::int(2)));
    }

    #[test]
    fn order_is_additive(f in ratfunc(), g in ratfunc(), a in rat()) {
        prop_assert_eq!(order_at(&f.mul(&g), &a), order_at(&f, &a) + order_at(&g, &a));
    }

    #[test]
    fn wedge_normalization_is_idempotent(a in unit(3), b in unit(3), c in unit(3), k in nonzero()) {
        let w = WedgeSum::from_terms(2, vec![(k.clone(), vec![a.clone(), b.clone()]), (Q::one(), vec![b.clone(), c.clone()])]).unwrap();
        let n = w.normalized();
        prop_assert_eq!(n.normalized(), n);
        let anti = WedgeSum::from_terms(2, vec![(Q::one(), vec![a.clone(), b.clone()]), (Q::one(), vec![b, a])]).unwrap();
        prop_assert!(anti.is_zero());
    }

    #[test]
    fn ell_mr_ignores_higher_orders(a in unit(4), b in unit(4)) {
        let w4 = WedgeSum::generator(Q::one(), vec![a.clone(), b.clone()]).unwrap();
        let w3 = WedgeSum::generator(Q::one(), vec![a.with_prec(3).unwrap(), b.with_prec(3).unwrap()]).unwrap();
        prop_assert_eq!(ell_mr(&w4, 2, 3, &Q::zero()).unwrap(), ell_mr(&w3, 2, 3, &Q::zero()).unwrap());
    }

    #[test]
    fn ell_mr_is_antisymmetric(a in unit(3), b in unit(3)) {
        let ab = WedgeSum::generator(Q::one(), vec![a.clone(), b.clone()]).unwrap();
        let ba = WedgeSum::generator(Q::one(), vec![b, a]).unwrap();
        prop_assert_eq!(ell_mr(&ab, 2, 3, &Q::zero()).unwrap(), ell_mr(&ba, 2, 3, &Q::zero()).unwrap().neg());
    }

    #[test]
    fn li_kills_five_term(x in unit(3), y in unit(3)) {
        if let Ok(e) = five_term(&x, &y) {
            prop_assert_eq!(li_mr(&e, 2, 3, &Q::zero()).unwrap(), Q::zero());
        }
    }

    #[test]
    fn dd_vanishes(p in poly(2), q in poly(2), c in nonzero()) {
        // f(s, x) = p(s) + c·x·q(s)
        let s = qxs_var();
        let x = qxs_x();
        let lift = |p: &Poly<Q>| p.eval_with(&s, |a| s.one_like().scale(a));
        let f = lift(&p).add(&x.mul(&lift(&q)).scale(&c));
        let df = d(&f);
        let ddf: Form1<_> = Form1 { ds: df.ds.partial_x(), dx: df.dx.partial_s() };
        prop_assert_eq!(ddf.ds, ddf.dx);
        prop_assert!(df.wedge(&df).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn residues_sum_to_zero(f in ratfunc()) {
        prop_assert_eq!(residue_sum(&Form1::ds(f)).unwrap(), Q::zero());
    }
}
