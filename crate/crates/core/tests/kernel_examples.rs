use infchow::algebra::{qs_const, qs_var, Field, Qs, TSeries, Q};
use infchow::bloch::{ell_i, ell_mr, li_direct, li_mr, B2Elt, B2Tensor, WedgeSum};
use infchow::kahler::{alpha_j, l_mr, Form1};

fn q(n: i64) -> Q {
    Q::int(n)
}

fn qser(c: &[Q], n: usize) -> TSeries<Q> {
    TSeries::from_coeffs(c.to_vec(), &Q::zero(), n)
}

fn exp_mono(a: Q, k: usize, n: usize) -> TSeries<Q> {
    TSeries::monomial(a, k, n).exp().unwrap()
}

#[test]
fn log_circ_mercator() {
    let a = qser(&[q(2), q(2)], 4);
    let l = a.log_circ().unwrap();
    assert_eq!(l.coeffs(), &[q(0), q(1), Q::new(-1, 2), Q::new(1, 3)]);
}

#[test]
fn log_circ_of_two_exp_minus_one() {
    let x = exp_mono(q(1), 1, 3).scale(&q(2));
    let v = x.sub(&TSeries::one(&Q::zero(), 3));
    let l = v.log_circ().unwrap();
    assert_eq!(l.coeffs(), &[q(0), q(2), q(-1)]);
}

#[test]
fn ell_examples() {
    let x = exp_mono(q(1), 1, 3).scale(&q(2));
    assert_eq!(ell_i(&x, 1).unwrap(), q(1));
    let one_minus = TSeries::one(&Q::zero(), 3).sub(&x);
    assert_eq!(ell_i(&one_minus, 2).unwrap(), q(-1));
}

#[test]
fn ell_mr_examples() {
    let a = exp_mono(q(3), 2, 3);
    let b = exp_mono(q(5), 1, 3);
    let w = WedgeSum::generator(Q::one(), vec![a, b]).unwrap();
    assert_eq!(ell_mr(&w, 2, 3, &Q::zero()).unwrap(), q(15));
    let a = exp_mono(q(1), 1, 3);
    let b = exp_mono(q(1), 2, 3);
    let w = WedgeSum::generator(Q::one(), vec![a, b]).unwrap();
    assert_eq!(ell_mr(&w, 2, 3, &Q::zero()).unwrap(), q(-1));
}

#[test]
fn li_two_exp_t() {
    let x = exp_mono(q(1), 1, 3).scale(&q(2));
    let e = B2Elt::symbol(x.clone()).unwrap();
    assert_eq!(li_mr(&e, 2, 3, &Q::zero()).unwrap(), q(-1));
    assert_eq!(li_direct(&x, 2, 3).unwrap(), q(-1));
}

fn s_exp_t(n: usize) -> TSeries<Qs> {
    let s = qs_var();
    TSeries::monomial(s.one_like(), 1, n).exp().unwrap().scale(&s)
}

fn closed(num_den: (Qs, Qs)) -> Qs {
    num_den.0.div(&num_den.1).unwrap()
}

#[test]
fn li_s_exp_t_closed_form() {
    let s = qs_var();
    let x = s_exp_t(3);
    let e = B2Elt::symbol(x.clone()).unwrap();
    let one = s.one_like();
    let expect = closed((s.neg(), one.sub(&s).mul(&one.sub(&s)).scale(&q(2))));
    assert_eq!(li_mr(&e, 2, 3, &qs_const(q(0))).unwrap(), expect);
    assert_eq!(li_direct(&x, 2, 3).unwrap(), expect);
}

#[test]
fn alpha_two_of_delta() {
    let s = qs_var();
    let one = s.one_like();
    let e = B2Elt::symbol(s_exp_t(3)).unwrap();
    let a = alpha_j(&e.delta(), 2, &s.zero_like()).unwrap();
    let expect = closed((one.neg(), one.sub(&s).mul(&one.sub(&s))));
    assert_eq!(a, Form1::ds(expect));
}

#[test]
fn l23_examples() {
    let s = qs_var();
    let one = s.one_like();
    let x = s_exp_t(2);
    let e = B2Tensor::from_terms(vec![(Q::one(), x.clone(), TSeries::constant(s.clone(), 2))]).unwrap();
    let v = l_mr(&e, 2, 3, &s.zero_like()).unwrap();
    let den = one.sub(&s).mul(&one.sub(&s)).scale(&q(2));
    assert_eq!(v, Form1::ds(closed((one.neg(), den.clone()))));
    let u = qs_const(q(7));
    let y = TSeries::monomial(u.clone(), 1, 2).exp().unwrap();
    let e = B2Tensor::from_terms(vec![(Q::one(), x, y)]).unwrap();
    let v = l_mr(&e, 2, 3, &s.zero_like()).unwrap();
    assert_eq!(v, Form1::ds(closed((u, den))));
}
