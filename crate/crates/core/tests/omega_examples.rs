use infchow::algebra::base::Point;
use infchow::algebra::{qs_const, qs_var, Field, Qs, TSeries, Q};
use infchow::bloch::{lambda_i_2, lambda_i_3, WedgeSum};
use infchow::gen::Gen;
use infchow::kahler::{d, residue_form, Form1};
use infchow::kahler::residue::pole_points;
use infchow::omega::*;
use infchow::suites::random_pair;
use infchow::Error;

fn s() -> Qs {
    qs_var()
}

fn c(n: i64) -> Qs {
    qs_const(Q::int(n))
}

fn ex(a: Qs, x: usize) -> Slot<Qs> {
    Slot::Exp(a, x)
}

fn gen3(a: Slot<Qs>, b: Slot<Qs>, cc: Slot<Qs>) -> Vec<ExpGenerator<Qs>> {
    vec![ExpGenerator::new(Q::one(), [a, b, cc])]
}

fn exp_ser(a: Qs, x: usize, n: usize) -> TSeries<Qs> {
    TSeries::monomial(a, x, n).exp().unwrap()
}

fn cst(a: Qs, n: usize) -> TSeries<Qs> {
    TSeries::constant(a, n)
}

#[test]
fn omega_generator_formula() {
    let z = c(0);
    let v = omega_mr(&gen3(ex(s(), 2), ex(s().mul(&s()), 1), Slot::Const(s())), 2, 3, &z).unwrap();
    assert_eq!(v, Form1::ds(s().mul(&s())));
    let v = omega_mr(&gen3(ex(c(1), 3), ex(s(), 1), ex(s().mul(&s()), 1)), 3, 5, &z).unwrap();
    assert_eq!(v, Form1::ds(s().mul(&s())));
    let v = omega_mr(&gen3(ex(c(1), 2), Slot::Const(c(2)), Slot::Const(c(3))), 2, 3, &z).unwrap();
    assert!(v.is_zero());
}

#[test]
fn omega_rejects_low_generators() {
    let z = c(0);
    let e = omega_mr(&gen3(ex(c(1), 1), ex(s(), 1), Slot::Const(s())), 2, 3, &z);
    assert!(matches!(e, Err(Error::NotInImage(_))));
}

#[test]
fn slot_rotation_is_sign_free() {
    let z = c(0);
    let a = omega_mr(&gen3(ex(s(), 2), ex(c(3), 1), Slot::Const(s())), 2, 3, &z).unwrap();
    let b = omega_mr(&gen3(ex(c(3), 1), Slot::Const(s()), ex(s(), 2)), 2, 3, &z).unwrap();
    let cswap = omega_mr(&gen3(ex(c(3), 1), ex(s(), 2), Slot::Const(s())), 2, 3, &z).unwrap();
    assert_eq!(a, b);
    assert_eq!(a, cswap.neg());
}

#[test]
fn omega_pair_example() {
    let n = 3;
    let sp = TSeries::from_coeffs(vec![s(), c(0), c(1)], &c(0), n);
    let one_s = cst(c(1).sub(&s()), n);
    let e = exp_ser(s(), 1, n);
    let q = PairWedge3::single(2, [(sp, cst(s(), n)), (one_s.clone(), one_s), (e.clone(), e)]).unwrap();
    let want = Form1::ds(c(1).div(&c(1).sub(&s())).unwrap());
    assert_eq!(omega_mr_pair(&q, 3).unwrap(), want);
    assert_eq!(omega_mr_pair_termwise(&q, 3).unwrap(), want);
    assert_eq!(res_omega_pair(&q, 3, &Point::rational(&Q::zero())).unwrap().as_rational().unwrap(), Q::zero());
}

#[test]
fn omega_identical_pair_vanishes() {
    let mut g = Gen::new(11);
    for _ in 0..5 {
        let e = [(); 3].map(|_| {
            let a = g.flat_qs(4);
            (a.clone(), a)
        });
        let q = PairWedge3::single(3, e).unwrap();
        assert!(omega_mr_pair(&q, 4).unwrap().is_zero());
    }
}

#[test]
fn pair_must_agree_mod_tm() {
    let n = 3;
    let a = TSeries::from_coeffs(vec![s(), c(1)], &c(0), n);
    let r = PairWedge3::single(2, [(a, cst(s(), n)), (cst(c(2), n), cst(c(2), n)), (cst(c(3), n), cst(c(3), n))]);
    assert!(matches!(r, Err(Error::NotInImage(_))));
}

#[test]
fn termwise_matches_generator_route() {
    let mut g = Gen::new(5);
    for (m, r) in [(2, 3), (3, 4), (3, 5)] {
        for _ in 0..3 {
            let q = random_pair(&mut g, m, r, 2).unwrap();
            assert_eq!(omega_mr_pair(&q, r).unwrap(), omega_mr_pair_termwise(&q, r).unwrap());
        }
    }
}

#[test]
fn expansion_preserves_lambda() {
    let mut g = Gen::new(7);
    let r = 4;
    for _ in 0..3 {
        let e: Vec<TSeries<Qs>> = (0..3).map(|_| g.flat_qs(r)).collect();
        let w = WedgeSum::generator(Q::one(), e).unwrap();
        let gens = expand_exponential(&w).unwrap();
        let mut terms = Vec::new();
        for gg in &gens {
            let ser: Vec<TSeries<Qs>> = gg.slots.iter().map(|sl| sl.to_series(r).unwrap()).collect();
            terms.push((gg.coef.clone(), ser));
        }
        let back = WedgeSum::from_terms(3, terms).unwrap();
        for i in 1..r {
            assert_eq!(lambda_i_3(&w, i, r, &c(0)).unwrap(), lambda_i_3(&back, i, r, &c(0)).unwrap());
        }
    }
    // 2-wedge slot check through λ_i on the first two slots of a constant third
    let a = g.flat_qs(r);
    let b = g.flat_qs(r);
    let w2 = WedgeSum::generator(Q::one(), vec![a, b]).unwrap();
    assert!(lambda_i_2(&w2, 1, r, &c(0)).is_ok());
}

#[test]
fn star_weight() {
    let mut g = Gen::new(9);
    let z = c(0);
    for _ in 0..5 {
        let lam = g.q_nonzero();
        let a = g.qs(1);
        let b = g.qs(1);
        let cc = g.qs(1);
        let (m, r) = (3, 5);
        let base = gen3(ex(a.clone(), 3), ex(b.clone(), 1), ex(cc.clone(), 1));
        let scaled = gen3(
            ex(a.scale(&lam.powi(3)), 3),
            ex(b.scale(&lam), 1),
            ex(cc.scale(&lam), 1),
        );
        let lhs = omega_mr(&scaled, m, r, &z).unwrap();
        let rhs = omega_mr(&base, m, r, &z).unwrap().scale(&lam.powi(r as i64));
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn reparam_basic() {
    let n = 4;
    let id = Reparam::new(2, c(0), n).unwrap();
    let x = TSeries::from_coeffs(vec![s(), s().mul(&s()), c(3)], &c(0), n);
    assert_eq!(id.apply(&x).unwrap(), x);
    let sh = Reparam::new(1, c(1), n).unwrap();
    let want = TSeries::from_coeffs(vec![s(), c(1)], &c(0), n);
    assert_eq!(sh.apply(&cst(s(), n)).unwrap(), want);
}

#[test]
fn reparam_matches_taylor_sums() {
    let mut g = Gen::new(13);
    let n = 6;
    for _ in 0..5 {
        let w = g.usize(1, 3);
        let alpha = g.qs(1);
        let a = g.qs(2);
        let x = g.usize(1, 3);
        let sig = Reparam::new(w, alpha.clone(), n).unwrap();
        let lhs = sig.apply(&exp_ser(a.clone(), x, n)).unwrap();
        assert_eq!(lhs, reparam_exp_taylor(&a, x, w, &alpha, n).unwrap());
        let lhs = sig.apply(&cst(a.clone(), n)).unwrap();
        assert_eq!(lhs, reparam_const_taylor(&a, w, &alpha, n).unwrap());
    }
}

#[test]
fn reparam_inverse_and_compose() {
    let mut g = Gen::new(17);
    let n = 5;
    for _ in 0..4 {
        let sig = Reparam::new(g.usize(1, 2), g.qs(1), n).unwrap();
        let inv = sig.inverse().unwrap();
        let x = g.flat_qs(n);
        assert_eq!(sig.apply(&inv.apply(&x).unwrap()).unwrap(), x);
        assert_eq!(inv.apply(&sig.apply(&x).unwrap()).unwrap(), x);
        let rho = Reparam::new(1, g.qs(1), n).unwrap();
        let both = sig.compose(&rho).unwrap();
        assert_eq!(both.apply(&x).unwrap(), sig.apply(&rho.apply(&x).unwrap()).unwrap());
    }
}

fn residues_vanish(w: &Form1<Qs>) {
    for p in pole_points(w).unwrap() {
        assert!(residue_form(w, &p).unwrap().is_zero(), "nonzero residue at {}", p);
    }
}

#[test]
fn residue_invariance_under_reparam() {
    let mut g = Gen::new(21);
    for trial in 0..25 {
        let (m, r) = [(2, 3), (3, 4), (3, 5)][trial % 3];
        let q = random_pair(&mut g, m, r, 1).unwrap();
        let sig = Reparam::new(g.usize(1, r - 1), g.qs(1), r).unwrap();
        let diff = omega_mr_pair(&sig.apply_pair(&q).unwrap(), r).unwrap().sub(&omega_mr_pair(&q, r).unwrap());
        residues_vanish(&diff);
    }
}

#[test]
fn full_invariance_when_r_is_m_plus_one() {
    let mut g = Gen::new(23);
    for (m, r) in [(2, 3), (3, 4)] {
        for _ in 0..4 {
            let q = random_pair(&mut g, m, r, 1).unwrap();
            let sig = Reparam::new(g.usize(1, 2), g.qs(1), r).unwrap();
            assert_eq!(omega_mr_pair(&sig.apply_pair(&q).unwrap(), r).unwrap(), omega_mr_pair(&q, r).unwrap());
        }
    }
}

#[test]
fn high_order_reparam_kills_generators() {
    let mut g = Gen::new(29);
    for (m, r) in [(2, 3), (3, 4), (3, 5)] {
        for _ in 0..4 {
            let w = g.usize(m, r - 1);
            let sig = Reparam::new(w, g.qs(1), r).unwrap();
            let e = [(); 3].map(|_| {
                let a = if g.coin() { exp_ser(g.qs(1), g.usize(1, r - 1), r) } else { cst(g.qs(1), r) };
                (sig.apply(&a).unwrap(), a)
            });
            let q = PairWedge3::single(m, e).unwrap();
            assert!(omega_mr_pair(&q, r).unwrap().is_zero());
        }
    }
}

#[test]
fn omega_vanishes_on_relative_delta_images() {
    let mut g = Gen::new(31);
    for (m, r) in [(2, 3), (3, 4), (3, 5)] {
        for _ in 0..4 {
            let x1 = g.flat_qs(r);
            let x2 = g.perturb_qs(&x1, m);
            let y1 = g.flat_qs(r);
            let y2 = g.perturb_qs(&y1, m);
            let one = TSeries::one(&c(0), r);
            let q = PairWedge3::single(m, [(one.sub(&x1), one.sub(&x2)), (x1, x2), (y1, y2)]).unwrap();
            assert!(omega_mr_pair(&q, r).unwrap().is_zero());
        }
    }
}

#[test]
fn h_omega_generator_values() {
    let a = s();
    let b = c(2);
    let cc = c(1).sub(&s());
    let theta = c(1);
    let v = h_omega_35_generators(&gen3(ex(a.clone(), 3), ex(b.clone(), 1), Slot::Const(cc.clone())), &theta).unwrap();
    let want = a.mul(&b).mul(&cc.partial_s().div(&cc).unwrap());
    assert_eq!(v, want);
    let v = h_omega_35_generators(&gen3(ex(a.clone(), 3), Slot::Const(cc.clone()), ex(b.clone(), 1)), &theta).unwrap();
    assert_eq!(v, want.neg());
    let v = h_omega_35_generators(&gen3(ex(a.clone(), 4), ex(b, 1), Slot::Const(cc.clone())), &theta).unwrap();
    assert!(v.is_zero());
    let v = h_omega_35_generators(&gen3(ex(a, 3), ex(s(), 2), Slot::Const(cc)), &theta).unwrap();
    assert!(v.is_zero());
}

#[test]
fn h_omega_is_a_primitive() {
    let mut g = Gen::new(37);
    for _ in 0..10 {
        let q = random_pair(&mut g, 3, 5, 1).unwrap();
        let sig = Reparam::new(1, g.qs(1), 5).unwrap();
        let h = h_omega_35(&sig, &q).unwrap();
        let om_id = omega_mr_pair(&q, 5).unwrap();
        let om_sig = omega_mr_pair(&sig.inverse().unwrap().apply_pair(&q).unwrap(), 5).unwrap();
        assert_eq!(d(&h), om_id.sub(&om_sig));
    }
}

#[test]
fn omega_depends_on_splitting_beyond_m_plus_one() {
    let mut g = Gen::new(37);
    let mut found = false;
    for _ in 0..20 {
        let q = random_pair(&mut g, 3, 5, 1).unwrap();
        let sig = Reparam::new(1, g.qs(1), 5).unwrap();
        let diff = omega_mr_pair(&sig.apply_pair(&q).unwrap(), 5).unwrap().sub(&omega_mr_pair(&q, 5).unwrap());
        if !diff.is_zero() {
            residues_vanish(&diff);
            found = true;
            break;
        }
    }
    assert!(found, "no witness among 20 random pairs");
}
