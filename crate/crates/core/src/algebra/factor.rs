//! Factorization helpers over ℚ and gcd-free bases over any field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::Field;
use super::poly::Poly;
use super::rational::Q;

/// Yun's square-free decomposition: `p = lc · ∏ f_k^k` with `f_k` monic, square-free, coprime.
pub fn squarefree_decomposition<F: Field>(p: &Poly<F>) -> Vec<(Poly<F>, usize)> {
    let mut out = Vec::new();
    if p.is_constant() {
        return out;
    }
    let p = p.monic();
    let dp = p.derivative();
    let mut a = p.gcd(&dp);
    let mut b = p.div_exact(&a).expect("gcd");
    let mut c = dp.div_exact(&a).expect("gcd");
    let mut d = c.sub(&b.derivative());
    let mut k = 1;
    while !b.is_constant() {
        a = b.gcd(&d);
        if !a.is_constant() {
            out.push((a.monic(), k));
        }
        b = b.div_exact(&a).expect("gcd");
        c = d.div_exact(&a).expect("gcd");
        d = c.sub(&b.derivative());
        k += 1;
    }
    out
}

/// Integer coefficients of `c·p` with content 1 and positive leading coefficient.
pub fn primitive_integer(p: &Poly<Q>) -> Vec<BigInt> {
    let den = Q::common_denominator(p.coeffs());
    let mut v: Vec<BigInt> = p.coeffs().iter().map(|c| (c.numer() * &den) / c.denom()).collect();
    let mut g = BigInt::zero();
    for c in &v {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return v;
    }
    if v.last().is_some_and(|l| l.is_negative()) {
        g = -g;
    }
    for c in v.iter_mut() {
        *c = &*c / &g;
    }
    v
}

fn int_poly(v: &[BigInt]) -> Poly<Q> {
    Poly::new(v.iter().map(|c| Q::from_bigint(c.clone())).collect(), Q::zero())
}

fn eval_int(v: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in v.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Positive divisors of a nonzero integer by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut m = n.clone();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut e = 0;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e > 0 {
            primes.push((p.clone(), e));
        }
        p += 1;
    }
    if m > BigInt::one() {
        primes.push((m, 1));
    }
    let mut out = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for d in &out {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Rational roots of a nonzero polynomial over ℚ (without multiplicity).
pub fn rational_roots(p: &Poly<Q>) -> Vec<Q> {
    let mut roots = Vec::new();
    if p.is_constant() {
        return roots;
    }
    let mut v = primitive_integer(p);
    let mut shift = 0;
    while v.first().is_some_and(|c| c.is_zero()) {
        v.remove(0);
        shift += 1;
    }
    if shift > 0 {
        roots.push(Q::zero());
    }
    if v.len() <= 1 {
        return roots;
    }
    let a0 = v[0].clone();
    let an = v.last().unwrap().clone();
    let pq = int_poly(&v);
    for num in divisors(&a0) {
        for den in divisors(&an) {
            for sgn in [1, -1] {
                let r = Q::from_big(num.clone() * sgn, den.clone());
                if !roots.contains(&r) && pq.eval(&r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots
}

/// Lagrange interpolation through `(xs[i], ys[i])`.
fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> Poly<Q> {
    let z = Q::zero();
    let mut acc = Poly::zero(&z);
    for i in 0..xs.len() {
        let mut term = Poly::constant(Q::from_bigint(ys[i].clone()));
        for j in 0..xs.len() {
            if i == j {
                continue;
            }
            let xj = Q::from_bigint(xs[j].clone());
            let denom = Q::from_bigint(&xs[i] - &xs[j]);
            term = term.mul(&Poly::linear_root(&xj)).scale(&denom.inv().unwrap());
        }
        acc = acc.add(&term);
    }
    acc
}

/// Find a nontrivial factor of a primitive square-free integer polynomial
/// by Kronecker's method, trying degrees up to `deg/2`.
fn kronecker_split(v: &[BigInt]) -> Option<Poly<Q>> {
    let n = v.len() - 1;
    let f = int_poly(v);
    // Evaluation points with small nonzero values.
    let mut cands: Vec<(BigInt, BigInt)> = (-12i64..=12)
        .map(BigInt::from)
        .map(|x| {
            let y = eval_int(v, &x);
            (x, y)
        })
        .filter(|(_, y)| !y.is_zero())
        .collect();
    cands.sort_by(|a, b| a.1.abs().cmp(&b.1.abs()).then(a.0.cmp(&b.0)));
    for d in 1..=n / 2 {
        if cands.len() < d + 1 {
            return None;
        }
        let pts: Vec<BigInt> = cands[..=d].iter().map(|c| c.0.clone()).collect();
        let divs: Vec<Vec<BigInt>> = cands[..=d]
            .iter()
            .enumerate()
            .map(|(k, (_, y))| {
                let pos = divisors(y);
                if k == 0 {
                    pos
                } else {
                    pos.iter().flat_map(|q| [q.clone(), -q.clone()]).collect()
                }
            })
            .collect();
        let mut idx = vec![0usize; d + 1];
        loop {
            let ys: Vec<BigInt> = (0..=d).map(|k| divs[k][idx[k]].clone()).collect();
            let g = interpolate(&pts, &ys);
            if g.deg() == Some(d) && g.coeffs().iter().all(|c| c.is_integer()) {
                if let Some(_q) = f.div_exact(&g) {
                    return Some(g.monic());
                }
            }
            let mut k = 0;
            loop {
                if k > d {
                    break;
                }
                idx[k] += 1;
                if idx[k] < divs[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k > d {
                break;
            }
        }
    }
    None
}

fn factor_squarefree(p: &Poly<Q>, out: &mut Vec<Poly<Q>>) {
    let p = p.monic();
    match p.deg() {
        None | Some(0) => {}
        Some(1) => out.push(p),
        Some(_) => {
            if let Some(r) = rational_roots(&p).first() {
                let lin = Poly::linear_root(r);
                out.push(lin.clone());
                factor_squarefree(&p.div_exact(&lin).expect("root"), out);
                return;
            }
            if p.deg().unwrap() <= 3 {
                out.push(p);
                return;
            }
            let v = primitive_integer(&p);
            match kronecker_split(&v) {
                Some(g) => {
                    let h = p.div_exact(&g).expect("factor");
                    factor_squarefree(&g, out);
                    factor_squarefree(&h, out);
                }
                None => out.push(p),
            }
        }
    }
}

/// Monic irreducible factorization over ℚ, sorted by degree then coefficients.
pub fn factor_q(p: &Poly<Q>) -> Vec<(Poly<Q>, usize)> {
    let mut out = Vec::new();
    for (f, k) in squarefree_decomposition(p) {
        let mut fs = Vec::new();
        factor_squarefree(&f, &mut fs);
        out.extend(fs.into_iter().map(|g| (g, k)));
    }
    out.sort_by(|a, b| poly_order(&a.0, &b.0));
    out
}

pub(crate) fn poly_order(a: &Poly<Q>, b: &Poly<Q>) -> std::cmp::Ordering {
    a.deg().cmp(&b.deg()).then_with(|| {
        for k in (0..a.coeffs().len()).rev() {
            let c = a.coeff(k).cmp(&b.coeff(k));
            if c != std::cmp::Ordering::Equal {
                return c;
            }
        }
        std::cmp::Ordering::Equal
    })
}

pub fn is_irreducible(p: &Poly<Q>) -> bool {
    let f = factor_q(p);
    f.len() == 1 && f[0].1 == 1
}

/// Pairwise coprime monic non-constant polynomials generating the same multiplicative
/// monoid (up to constants) as `polys`.
pub fn gcd_free_basis<F: Field>(polys: &[Poly<F>]) -> Vec<Poly<F>> {
    let mut basis: Vec<Poly<F>> = Vec::new();
    for p in polys {
        if p.is_zero() || p.is_constant() {
            continue;
        }
        let mut pending = vec![p.monic()];
        while let Some(mut q) = pending.pop() {
            if q.is_constant() {
                continue;
            }
            let mut i = 0;
            while i < basis.len() {
                let g = basis[i].gcd(&q);
                if g.is_constant() {
                    i += 1;
                    continue;
                }
                let b = basis.swap_remove(i);
                let b1 = b.div_exact(&g).expect("gcd");
                q = q.div_exact(&g).expect("gcd");
                pending.push(g);
                pending.push(b1);
                i = 0;
                if q.is_constant() {
                    break;
                }
            }
            if !q.is_constant() {
                // split q against its own repeated factors
                let sf = q.squarefree_part();
                if sf != q {
                    pending.push(sf.clone());
                    pending.push(q.div_exact(&sf).expect("sf"));
                } else {
                    basis.push(q);
                }
            }
        }
    }
    basis
}

/// Exponent of `b` in `p` and the cofactor.
pub fn multiplicity<F: Field>(p: &Poly<F>, b: &Poly<F>) -> (usize, Poly<F>) {
    let mut k = 0;
    let mut q = p.clone();
    while let Some(next) = q.div_exact(b) {
        if q.is_zero() {
            break;
        }
        q = next;
        k += 1;
    }
    (k, q)
}

/// Pairwise coprime integers > 1 generating the same multiplicative monoid as `vals`.
pub fn gcd_free_integers(vals: &[BigInt]) -> Vec<BigInt> {
    let mut basis: Vec<BigInt> = Vec::new();
    for v in vals {
        let mut pending = vec![v.abs()];
        while let Some(mut q) = pending.pop() {
            if q <= BigInt::one() {
                continue;
            }
            let mut i = 0;
            while i < basis.len() {
                let g = basis[i].gcd(&q);
                if g.is_one() {
                    i += 1;
                    continue;
                }
                let b = basis.swap_remove(i);
                q /= &g;
                pending.push(&b / &g);
                pending.push(g);
                i = 0;
                if q.is_one() {
                    break;
                }
            }
            if q > BigInt::one() {
                basis.push(q);
            }
        }
    }
    basis.sort();
    basis
}

/// Exponent vector of `|n|` over a gcd-free integer basis containing its support.
pub fn integer_exponents(n: &BigInt, basis: &[BigInt]) -> Vec<i64> {
    let mut m = n.abs();
    let mut out = Vec::with_capacity(basis.len());
    for b in basis {
        let mut e = 0;
        while (&m % b).is_zero() && !m.is_zero() {
            m /= b;
            e += 1;
        }
        out.push(e);
    }
    debug_assert!(m.is_one(), "basis does not cover {}", n);
    out
}
