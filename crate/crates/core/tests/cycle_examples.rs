use infchow::algebra::numfield::Nf;
use infchow::algebra::{qs_const, qs_var, Field, Poly, Qs, TSeries, Q};
use infchow::bloch::{ell_i, ell_i_residue, ell_mr_pair};
use infchow::cycle::*;
use infchow::gen::Gen;
use infchow::Error;

const MODULI: [(usize, usize); 6] = [(2, 3), (3, 4), (3, 5), (4, 5), (4, 6), (4, 7)];

fn u() -> Qs {
    qs_var()
}

fn c(q: i64) -> Qs {
    qs_const(Q::int(q))
}

/// A coordinate from its `t`-coefficients in `ℚ(u)`.
fn y(cs: Vec<Qs>, n: usize) -> CoordFn {
    CoordFn::from_series(&TSeries::from_coeffs(cs, &c(0), n)).unwrap()
}

/// `(u - a)/(u - b)`.
fn mob(a: i64, b: i64, n: usize) -> CoordFn {
    y(vec![u().sub(&c(a)).div(&u().sub(&c(b))).unwrap()], n)
}

fn cycle(a: CoordFn, b: CoordFn, d: CoordFn) -> CycleSpec {
    CycleSpec::new([a, b, d])
}

fn nf(q: Q) -> Nf {
    Nf::rational().from_q(&q)
}

fn nser(cs: Vec<Q>, n: usize) -> TSeries<Nf> {
    TSeries::from_coeffs(cs.into_iter().map(nf).collect(), &nf(Q::zero()), n)
}

fn moving_cycle(seed: u64, n: usize) -> CycleSpec {
    CycleRecipe::random(&mut Gen::new(seed), true).build(n).unwrap()
}

#[test]
fn boundary_of_the_parameter() {
    let z = cycle(y(vec![u()], 4), mob(2, 3, 4), mob(-2, -3, 4));
    let pts = boundary(&z).unwrap();
    let at0: Vec<_> = pts.iter().filter(|p| p.face == (1, Face::Zero)).collect();
    assert_eq!(at0.len(), 1);
    let p = at0[0];
    assert_eq!(p.modulus, Poly::var(&Q::zero()));
    assert_eq!(p.param.c0().degree(), 1);
    assert!(p.param.is_zero());
    assert_eq!(p.coords[0], nser(vec![Q::new(2, 3)], 4));
    // y₁ = ∞ at u = ∞, where y₂ = y₃ = 1: off □³
    let rep = admissibility_check(&z).unwrap();
    assert!(rep.is_admissible());
    assert!(rep.excluded.iter().any(|e| e.contains("u = inf")));
}

#[test]
fn hensel_lift_of_a_quadratic_face() {
    let n = 5;
    let y1 = y(vec![u().mul(&u()).sub(&c(2)), c(-1)], n);
    let z = cycle(y1.clone(), mob(1, -1, n), mob(3, -3, n));
    let pts = boundary(&z).unwrap();
    let p = pts.iter().find(|p| p.face == (1, Face::Zero)).unwrap();
    assert_eq!(p.modulus, Poly::new(vec![Q::int(-2), Q::zero(), Q::one()], Q::zero()));
    let alpha = p.param.c0().clone();
    assert_eq!(alpha.mul(&alpha).as_rational(), Some(Q::int(2)));
    // u₀ = α + t/(2α) + O(t²)
    let c1 = p.param.coeff(1).unwrap();
    assert!(c1.mul(&alpha).scale(&Q::int(2)).is_one());
    // the lifted root kills the numerator exactly mod t^5
    assert!(y1.num.eval(&p.param, &alpha).is_zero());
    assert_eq!(p.sign, 1);
}

#[test]
fn exponential_pair_example() {
    let n = 3;
    let t = Q::zero();
    let a = nser(vec![Q::zero(), Q::zero(), Q::int(3)], n).exp().unwrap();
    let b = nser(vec![Q::zero(), Q::int(5)], n).exp().unwrap();
    let pt = BoundaryPoint {
        face: (3, Face::Zero),
        chart: UChart::Finite,
        modulus: Poly::var(&t),
        param: nser(vec![Q::zero()], n),
        coords: [a.clone(), b.clone()],
        sign: 1,
        mult: 1,
    };
    assert_eq!(l_mr_points(std::slice::from_ref(&pt), 2, 3).unwrap(), Q::int(15));
    assert_eq!(l_mr_point_residue(&a, &b, 2, 3).unwrap().as_rational(), Some(Q::int(15)));
    let flat = BoundaryPoint { coords: [nser(vec![Q::int(2)], n), nser(vec![Q::int(7)], n)], ..pt };
    assert_eq!(l_mr_points(&[flat], 2, 3).unwrap(), Q::zero());
}

#[test]
fn residue_path_matches_coefficients() {
    let mut g = Gen::new(11);
    let k = Nf::field(Poly::new(vec![Q::int(-2), Q::zero(), Q::one()], Q::zero()), "a").unwrap();
    for trial in 0..100 {
        let (m, r) = MODULI[trial % MODULI.len()];
        let unit = |g: &mut Gen| {
            let cs: Vec<Nf> = (0..r)
                .map(|i| {
                    let v = k.from_q(&g.q()).add(&k.gen().scale(&g.q()));
                    if i == 0 && v.is_zero() {
                        k.one_like()
                    } else {
                        v
                    }
                })
                .collect();
            TSeries::from_coeffs(cs, &k.zero_like(), r)
        };
        let a = unit(&mut g);
        let b = unit(&mut g);
        for i in 1..r {
            assert_eq!(ell_i_residue(&a, i).unwrap(), ell_i(&a, i).unwrap());
        }
        assert_eq!(l_mr_point_residue(&a, &b, m, r).unwrap(), ell_mr_pair(&a, &b, m, r).unwrap());
    }
}

#[test]
fn t_constant_cycles_have_zero_regulator() {
    for seed in 0..10 {
        let z = CycleRecipe::random(&mut Gen::new(seed), false).build(7).unwrap();
        let pts = boundary(&z).unwrap();
        assert!(!pts.is_empty());
        for p in &pts {
            assert!(p.param.is_t_constant() && p.coords.iter().all(|c| c.is_t_constant()));
        }
        for (m, r) in MODULI {
            assert_eq!(rho_cycle(&z, m, r).unwrap(), Q::zero());
        }
    }
}

/// `ℓ_{m,r}(a ∧ (1-a))` for `a = s₀ + t`, from the closed forms of `ℓ_i`.
fn demo_by_hand(s0: &Q, m: usize, r: usize) -> Q {
    let one = Q::one();
    let la = |i: usize| {
        let sign = if i % 2 == 1 { one.clone() } else { one.neg() };
        sign.mul(&Q::int(i as i64).mul(&s0.powi(i as i64)).inv().unwrap())
    };
    let lb = |i: usize| Q::int(i as i64).mul(&one.sub(s0).powi(i as i64)).inv().unwrap().neg();
    let mut acc = Q::zero();
    for i in 1..=r - m {
        let t = la(r - i).mul(&lb(i)).sub(&la(i).mul(&lb(r - i)));
        acc = acc.add(&t.mul(&Q::int(i as i64)));
    }
    acc
}

/// `(u, 1-u, 1-a/u)` with `a = s₀ + t`: only the face `y₃ = 0` at `u = a` lies on `□³`.
fn demo_cycle(s0: &Q, n: usize) -> CycleSpec {
    let a = qs_const(s0.clone());
    let y3 = y(vec![c(1).sub(&a.div(&u()).unwrap()), u().inv().unwrap().neg()], n);
    cycle(y(vec![u()], n), y(vec![c(1).sub(&u())], n), y3)
}

#[test]
fn demo_cycle_matches_hand_evaluation() {
    for s0 in [Q::int(3), Q::int(-1), Q::new(1, 2), Q::int(2), Q::new(-5, 3)] {
        let z = demo_cycle(&s0, 7);
        let rep = admissibility_check(&z).unwrap();
        assert!(rep.is_admissible(), "{:?}", rep.violations);
        assert_eq!(rep.excluded.len(), 5);
        let pts = boundary(&z).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].face, (3, Face::Zero));
        assert_eq!(pts[0].sign, 1);
        for (m, r) in MODULI {
            assert_eq!(rho_cycle(&z, m, r).unwrap(), demo_by_hand(&s0, m, r));
        }
    }
    assert_eq!(rho_cycle(&demo_cycle(&Q::int(3), 3), 2, 3).unwrap(), Q::new(1, 72));
}

#[test]
fn linear_third_coordinate_meets_a_face_at_infinity() {
    // (u, 1-u, 1-(s₀+t)u): at u = ∞ all three coordinates are ∞
    let n = 3;
    let a = c(3);
    let z = cycle(y(vec![u()], n), y(vec![c(1).sub(&u())], n), y(vec![c(1).sub(&a.mul(&u())), u().neg()], n));
    let rep = admissibility_check(&z).unwrap();
    assert!(rep.violations.iter().any(|v| v.kind == ViolationKind::ProperIntersection && v.point == "u = inf"));
    assert!(matches!(rho_cycle(&z, 2, 3), Err(Error::NotAdmissible(_))));
}

#[test]
fn admissibility_violations() {
    let n = 4;
    let z = cycle(y(vec![u()], n), y(vec![c(1).sub(&u())], n), y(vec![c(3)], n));
    let rep = admissibility_check(&z).unwrap();
    assert_eq!(rep.violations.len(), 1);
    assert_eq!(rep.violations[0].kind, ViolationKind::Degenerate);

    // u - t and u - 2t collide at t = 0
    let y1 = y(vec![u().div(&u().sub(&c(1))).unwrap(), u().sub(&c(1)).inv().unwrap().neg()], n);
    let y2 = y(vec![u().div(&u().sub(&c(2))).unwrap(), u().sub(&c(2)).inv().unwrap().scale(&Q::int(-2))], n);
    let z = cycle(y1, y2, mob(3, 4, n));
    let rep = admissibility_check(&z).unwrap();
    let v = rep.violations.iter().find(|v| v.face == Some((1, Face::Zero))).unwrap();
    assert_eq!(v.kind, ViolationKind::FiniteReduction);
    assert!(v.to_string().contains("y1=0"));

    // y₂ vanishes on the whole face y₁ = 0
    let z = cycle(y(vec![u()], n), mob(0, 1, n), mob(3, 4, n));
    let rep = admissibility_check(&z).unwrap();
    assert!(rep.violations.iter().any(|v| v.kind == ViolationKind::ProperIntersection));

    // u² - t has a double root at t = 0
    let z = cycle(y(vec![u().mul(&u()), c(-1)], n), mob(2, 3, n), mob(4, 5, n));
    let rep = admissibility_check(&z).unwrap();
    assert_eq!(rep.violations[0].kind, ViolationKind::MultipleRoot);
    assert!(matches!(rho_cycle(&z, 2, 3), Err(Error::MultipleRoot(_))));
    assert!(matches!(rho_cycle(&moving_cycle(1, 2), 2, 3), Err(Error::PrecisionExceeded { .. })));
}

#[test]
fn exact_double_root_counts_twice() {
    let n = 5;
    let moving = |a: i64, b: i64| y(vec![u().sub(&c(a)).div(&u().sub(&c(b))).unwrap(), u().sub(&c(b)).inv().unwrap()], n);
    let z1 = cycle(y(vec![u()], n), moving(2, 3), moving(-1, 5));
    let z2 = cycle(y(vec![u().mul(&u())], n), moving(2, 3), moving(-1, 5));
    let r1 = rho_cycle(&z1, 3, 4).unwrap();
    assert!(!r1.is_zero());
    assert_eq!(rho_cycle(&z2, 3, 4).unwrap(), r1.mul(&Q::int(2)));
}

#[test]
fn swapping_coordinates_negates() {
    let mut nonzero = 0;
    for seed in 0..8 {
        let z = moving_cycle(seed, 5);
        for (m, r) in [(2, 3), (3, 5)] {
            let v = rho_cycle(&z, m, r).unwrap();
            for (i, j) in [(0, 1), (1, 2), (0, 2)] {
                assert_eq!(rho_cycle(&z.swapped(i, j), m, r).unwrap(), v.neg());
            }
            nonzero += usize::from(!v.is_zero());
        }
    }
    assert!(nonzero >= 8);
}

#[test]
fn star_weight() {
    for seed in 0..6 {
        let z = moving_cycle(100 + seed, 7);
        for (m, r) in MODULI {
            let v = rho_cycle(&z, m, r).unwrap();
            for lambda in [Q::int(2), Q::int(3), Q::int(-1), Q::new(1, 2)] {
                let w = rho_cycle(&z.star_scale(&lambda), m, r).unwrap();
                assert_eq!(w, v.mul(&lambda.powi(r as i64)));
            }
        }
    }
}

#[test]
fn congruent_cycles_have_equal_regulators() {
    for (m, r) in MODULI {
        let mut nonzero = 0;
        for seed in 0..20u64 {
            let mut g = Gen::new(1000 * m as u64 + 10 * r as u64 + seed);
            let rec = CycleRecipe::random(&mut g, true);
            let z1 = rec.build(r).unwrap();
            let z2 = rec.perturbed(&mut g, m, r).build(r).unwrap();
            let rep = congruence_experiment(&z1, &z2, m, r).unwrap();
            assert!(rep.equal(), "(m,r)=({m},{r}) seed {seed}: {} vs {}", rep.rho1, rep.rho2);
            nonzero += usize::from(!rep.rho1.is_zero());
        }
        assert!(nonzero >= 10, "({m},{r}): only {nonzero} nonzero values");
    }
}

#[test]
fn perturbation_below_the_modulus_is_detected() {
    for (m, r) in MODULI {
        let found = (0..20u64).any(|seed| {
            let mut g = Gen::new(seed);
            let rec = CycleRecipe::random(&mut g, true);
            let z1 = rec.build(r).unwrap();
            let z2 = rec.root_moved(&mut g, m - 1).build(r).unwrap();
            assert!(matches!(congruence_experiment(&z1, &z2, m, r), Err(Error::NotCongruent(_))));
            rho_cycle(&z1, m, r).unwrap() != rho_cycle(&z2, m, r).unwrap()
        });
        assert!(found, "no witness at ({m},{r})");
    }
}

#[test]
fn identical_cycles_are_congruent() {
    let z = moving_cycle(5, 4);
    let rep = congruence_experiment(&z, &z, 2, 3).unwrap();
    assert!(rep.equal());
}
