use infchow::algebra::laurent::{order_at, residue_at, residue_at_infinity};
use infchow::algebra::{laurent_expand, qs_const, qs_var, Field, Nf, Poly, TSeries, Q};

fn q(n: i64) -> Q {
    Q::int(n)
}

fn qser(c: &[Q], n: usize) -> TSeries<Q> {
    TSeries::from_coeffs(c.to_vec(), &Q::zero(), n)
}

fn sqrt2() -> Nf {
    let pi = Poly::new(vec![q(-2), q(0), q(1)], Q::zero());
    Nf::field(pi, "a").unwrap().gen()
}

#[test]
fn log_circ_of_constant_vanishes() {
    let l = TSeries::constant(q(5), 4).log_circ().unwrap();
    assert!(l.is_zero());
}

#[test]
fn exp_examples() {
    assert!(TSeries::zero(&Q::zero(), 4).exp().unwrap().is_one());
    let e = TSeries::monomial(q(1), 1, 4).exp().unwrap();
    assert_eq!(e.coeffs(), &[q(1), q(1), Q::new(1, 2), Q::new(1, 6)]);
}

#[test]
fn exp_rejects_nonzero_constant() {
    assert!(qser(&[q(1), q(1)], 3).exp().is_err());
}

#[test]
fn truncate_below_examples() {
    let a = qser(&[q(1), q(2), q(3)], 3);
    assert_eq!(a.truncate_below(2).unwrap().coeffs(), &[q(1), q(2), q(0)]);
    assert_eq!(a.truncate_below(3).unwrap(), a);
    assert!(a.truncate_below(4).is_err());
}

#[test]
fn star_scale_examples() {
    let a = qser(&[q(1), q(1), q(1)], 3);
    assert_eq!(a.star_scale(&q(2)).unwrap().coeffs(), &[q(1), q(2), q(4)]);
    assert!(a.star_scale(&q(0)).is_err());
}

#[test]
fn traces_over_sqrt2() {
    let a = sqrt2();
    assert_eq!(a.normalized_trace(), q(0));
    assert_eq!(a.mul(&a).normalized_trace(), q(2));
    assert_eq!(a.mul(&a).trace(), q(4));
    assert_eq!(a.from_q(&Q::new(3, 7)).normalized_trace(), Q::new(3, 7));
}

#[test]
fn reducible_modulus_rejected() {
    let pi = Poly::new(vec![q(-1), q(0), q(1)], Q::zero());
    assert!(Nf::field(pi, "a").is_err());
}

#[test]
fn laurent_geometric() {
    let one = qs_const(q(1));
    let f = one.div(&one.sub(&qs_var())).unwrap();
    let l = laurent_expand(&f, Some(&q(0)), 0, 3).unwrap();
    assert_eq!(l.valuation(), 0);
    for k in 0..=3 {
        assert_eq!(l.coeff(k), Some(q(1)));
    }
}

#[test]
fn laurent_at_infinity() {
    let l = laurent_expand(&qs_var(), None, -2, 2).unwrap();
    assert_eq!(l.valuation(), -1);
    assert_eq!(l.coeff(-1), Some(q(1)));
    assert_eq!(l.coeff(0), Some(q(0)));
}

#[test]
fn laurent_window_too_narrow() {
    let f = qs_const(q(1)).div(&qs_var()).unwrap();
    assert!(laurent_expand(&f, Some(&q(0)), 0, 2).is_err());
}

#[test]
fn residues_of_partial_fractions() {
    // 1/(s(1-s)) = 1/s + 1/(1-s)
    let s = qs_var();
    let one = s.one_like();
    let f = one.div(&s.mul(&one.sub(&s))).unwrap();
    assert_eq!(residue_at(&f, &q(0)), q(1));
    assert_eq!(residue_at(&f, &q(1)), q(-1));
    assert_eq!(residue_at_infinity(&f), q(0));
    assert_eq!(order_at(&f, &q(0)), -1);
    assert_eq!(order_at(&f, &q(2)), 0);
}
