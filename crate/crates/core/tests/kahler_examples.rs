use infchow::algebra::base::Point;
use infchow::algebra::{qs_const, qs_var, qxs_var, qxs_x, Field, Poly, TSeries, Q};
use infchow::bloch::{li_mr, B2Elt, B2Tensor};
use infchow::kahler::regulators::beta_m;
use infchow::kahler::residue::residue_sum;
use infchow::kahler::{alpha_j, d, dlog, l_mr, residue_form, Form1};

fn q(n: i64) -> Q {
    Q::int(n)
}

#[test]
fn d_examples() {
    let s = qs_var();
    assert_eq!(d(&s.mul(&s)), Form1::ds(s.scale(&q(2))));
    assert!(d(&qs_const(q(7))).is_zero());
    let (s, x) = (qxs_var(), qxs_x());
    assert_eq!(d(&x.mul(&s)), Form1 { ds: x.clone(), dx: s.clone() });
}

#[test]
fn dlog_examples() {
    let s = qs_var();
    assert_eq!(dlog(&s), Some(Form1::ds(s.inv().unwrap())));
    assert!(dlog(&s.zero_like()).is_none());
}

#[test]
fn alpha_of_constant_symbol() {
    let x = TSeries::monomial(q(1), 1, 3).exp().unwrap().scale(&q(2));
    let e = B2Elt::symbol(x).unwrap();
    assert!(alpha_j(&e.delta(), 2, &Q::zero()).unwrap().is_zero());
}

#[test]
fn beta_of_constant_symbol() {
    let s = qs_var();
    let e = B2Elt::symbol(TSeries::constant(s.clone(), 3)).unwrap();
    assert!(beta_m(&e, 2, 2, &s.zero_like()).unwrap().is_zero());
}

#[test]
fn residues_on_q() {
    let s = qs_var();
    let ds_over_s = Form1::ds(s.inv().unwrap());
    assert_eq!(residue_form(&ds_over_s, &Point::rational(&q(0))).unwrap().as_rational(), Some(q(1)));
    assert_eq!(residue_form(&ds_over_s, &Point::Infinity).unwrap().as_rational(), Some(q(-1)));
    let sq = Form1::ds(s.mul(&s));
    assert_eq!(residue_form(&sq, &Point::rational(&q(0))).unwrap().as_rational(), Some(q(0)));
    let one = s.one_like();
    let w = Form1::ds(one.div(&s.mul(&one.sub(&s))).unwrap());
    assert_eq!(residue_sum(&w).unwrap(), q(0));
}

#[test]
fn residue_at_degree_two_point() {
    // Res_α ds/(s²-2) = 1/(2α), Res_α s ds/(s²-2) = 1/2
    let s = qs_var();
    let pi = s.mul(&s).sub(&qs_const(q(2)));
    let at = Point::Finite(Poly::new(vec![q(-2), q(0), q(1)], Q::zero()));
    let r1 = residue_form(&Form1::ds(pi.inv().unwrap()), &at).unwrap();
    assert_eq!(r1.trace(), q(0));
    let r2 = residue_form(&Form1::ds(s.div(&pi).unwrap()), &at).unwrap();
    assert_eq!(r2.trace(), q(1));
    assert_eq!(r2.normalized_trace(), Q::new(1, 2));
}

#[test]
fn l_mr_on_reflection_pair() {
    // δ([y] + [1-y]) = 0, so only the dilogarithm term survives
    let s = qs_var();
    let one = s.one_like();
    let y = TSeries::monomial(one.clone(), 1, 3).exp().unwrap().scale(&s);
    let z = TSeries::one(&s, 3).sub(&y);
    let e = B2Elt::from_terms(vec![(Q::one(), y), (Q::one(), z)]).unwrap();
    assert!(e.delta().is_zero());
    let b = one.add(&s);
    let tens = e.tensor(&TSeries::constant(b.clone(), 3)).unwrap();
    let got = l_mr(&tens, 2, 3, &s.zero_like()).unwrap();
    let li = li_mr(&e, 2, 3, &s.zero_like()).unwrap();
    assert_eq!(got, dlog(&b).unwrap().mul(&li));
}

#[test]
fn l_mr_tensor_terms_add() {
    let s = qs_var();
    let y = TSeries::monomial(s.one_like(), 1, 2).exp().unwrap().scale(&s);
    let b1 = TSeries::constant(s.clone(), 2);
    let b2 = TSeries::constant(s.one_like().add(&s), 2);
    let one = B2Tensor::from_terms(vec![(Q::one(), y.clone(), b1.clone())]).unwrap();
    let two = B2Tensor::from_terms(vec![(Q::one(), y.clone(), b2.clone())]).unwrap();
    let both = B2Tensor::from_terms(vec![(Q::one(), y, b1.mul(&b2))]).unwrap();
    let ctx = s.zero_like();
    let sum = l_mr(&one, 2, 3, &ctx).unwrap().add(&l_mr(&two, 2, 3, &ctx).unwrap());
    assert_eq!(l_mr(&both, 2, 3, &ctx).unwrap(), sum);
}
