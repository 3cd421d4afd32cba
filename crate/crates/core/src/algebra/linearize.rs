//! Injective ℚ-linear coordinates for `F^×⊗ℚ`, for `F` as a ℚ-vector space, and for
//! exterior powers of truncated units. Used to compare wedges exactly.

use std::collections::BTreeMap;

use super::factor::{gcd_free_basis, gcd_free_integers, integer_exponents, multiplicity};
use super::field::Field;
use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::rational::Q;
use super::series::TSeries;
use crate::bloch::WedgeSum;
use crate::error::Result;

pub type Coords = BTreeMap<String, Q>;

fn push(c: &mut Coords, k: String, v: Q) {
    if v.is_zero() {
        return;
    }
    let e = c.entry(k).or_insert_with(Q::zero);
    *e = e.add(&v);
    if e.is_zero() {
        let k: Vec<String> = c.iter().filter(|(_, v)| v.is_zero()).map(|(k, _)| k.clone()).collect();
        for k in k {
            c.remove(&k);
        }
    }
}

pub trait Linearize: Field {
    /// Coordinates of each value in `F^×⊗ℚ`; jointly injective on the list.
    fn mult_coords(vals: &[Self]) -> Vec<Coords>;
    /// Coordinates of each value in `F` over ℚ; jointly injective on the list.
    fn add_coords(vals: &[Self]) -> Vec<Coords>;
}

impl Linearize for Q {
    fn mult_coords(vals: &[Self]) -> Vec<Coords> {
        let mut ints = Vec::new();
        for v in vals {
            ints.push(v.numer().clone());
            ints.push(v.denom().clone());
        }
        let basis = gcd_free_integers(&ints);
        vals.iter()
            .map(|v| {
                let n = integer_exponents(v.numer(), &basis);
                let d = integer_exponents(v.denom(), &basis);
                let mut c = Coords::new();
                for (k, b) in basis.iter().enumerate() {
                    push(&mut c, format!("{}", b), Q::int(n[k] - d[k]));
                }
                c
            })
            .collect()
    }

    fn add_coords(vals: &[Self]) -> Vec<Coords> {
        vals.iter()
            .map(|v| {
                let mut c = Coords::new();
                push(&mut c, "1".into(), v.clone());
                c
            })
            .collect()
    }
}

impl<F: Linearize> Linearize for RatFunc<F> {
    fn mult_coords(vals: &[Self]) -> Vec<Coords> {
        if vals.is_empty() {
            return Vec::new();
        }
        let var = vals[0].variable().name();
        let lcs: Vec<F> = vals.iter().map(|v| v.num().lc()).collect();
        let inner = F::mult_coords(&lcs);
        let mut polys = Vec::new();
        for v in vals {
            polys.push(v.num().clone());
            polys.push(v.den().clone());
        }
        let basis: Vec<Poly<F>> = gcd_free_basis(&polys).into_iter().map(|b| b.monic()).collect();
        vals.iter()
            .zip(inner)
            .map(|(v, ic)| {
                let mut c = Coords::new();
                for (k, q) in ic {
                    push(&mut c, format!("c({})", k), q);
                }
                for b in &basis {
                    let (en, _) = multiplicity(v.num(), b);
                    let (ed, _) = multiplicity(v.den(), b);
                    push(&mut c, format!("{}:{}", var, b.render(var)), Q::int(en as i64 - ed as i64));
                }
                c
            })
            .collect()
    }

    fn add_coords(vals: &[Self]) -> Vec<Coords> {
        if vals.is_empty() {
            return Vec::new();
        }
        let ctx = vals[0].coeff_ctx().clone();
        let mut den = Poly::one(&ctx);
        for v in vals {
            let g = den.gcd(v.den());
            den = den.mul(&v.den().div_exact(&g).expect("gcd"));
        }
        let nums: Vec<Poly<F>> =
            vals.iter().map(|v| v.num().mul(&den.div_exact(v.den()).expect("lcm"))).collect();
        let mut flat = Vec::new();
        let mut index = Vec::new();
        for (i, n) in nums.iter().enumerate() {
            for (k, a) in n.coeffs().iter().enumerate() {
                flat.push(a.clone());
                index.push((i, k));
            }
        }
        let inner = F::add_coords(&flat);
        let mut out = vec![Coords::new(); vals.len()];
        for ((i, k), ic) in index.into_iter().zip(inner) {
            for (key, q) in ic {
                push(&mut out[i], format!("{}^{}:{}", vals[0].variable().name(), k, key), q);
            }
        }
        out
    }
}

/// Coordinates of units of `F[t]/(t^m)` in `(F^×⊗ℚ) ⊕ ⊕_{1≤i<m} F`, via `a(0)` and `ℓ_i(a)`.
pub fn unit_coords<F: Linearize>(units: &[TSeries<F>], m: usize) -> Result<Vec<Coords>> {
    let mut out = vec![Coords::new(); units.len()];
    let c0: Vec<F> = units.iter().map(|u| u.c0().clone()).collect();
    for (o, c) in out.iter_mut().zip(F::mult_coords(&c0)) {
        for (k, q) in c {
            push(o, format!("0|{}", k), q);
        }
    }
    let logs: Vec<TSeries<F>> = units.iter().map(|u| u.with_prec(m)?.log_circ()).collect::<Result<_>>()?;
    for i in 1..m {
        let li: Vec<F> = logs.iter().map(|l| l.coeffs()[i].clone()).collect();
        for (o, c) in out.iter_mut().zip(F::add_coords(&li)) {
            for (k, q) in c {
                push(o, format!("{}|{}", i, k), q);
            }
        }
    }
    Ok(out)
}

/// Sparse coordinates of exterior products: key is the sorted list of basis keys.
pub type WedgeCoords = BTreeMap<Vec<String>, Q>;

fn wedge_vectors(vs: &[&Coords], coef: &Q, out: &mut WedgeCoords) {
    fn rec(vs: &[&Coords], chosen: &mut Vec<String>, val: Q, out: &mut WedgeCoords) {
        if chosen.len() == vs.len() {
            let mut keys = chosen.clone();
            let mut sign = 1i64;
            for i in 1..keys.len() {
                let mut j = i;
                while j > 0 && keys[j - 1] > keys[j] {
                    keys.swap(j - 1, j);
                    sign = -sign;
                    j -= 1;
                }
            }
            if keys.windows(2).any(|w| w[0] == w[1]) {
                return;
            }
            let e = out.entry(keys).or_insert_with(Q::zero);
            *e = e.add(&val.mul(&Q::int(sign)));
            return;
        }
        for (k, q) in vs[chosen.len()] {
            chosen.push(k.clone());
            rec(vs, chosen, val.mul(q), out);
            chosen.pop();
        }
    }
    rec(vs, &mut Vec::new(), coef.clone(), out);
}

/// Jointly linearize several wedge sums of units at precision `m`.
pub fn linearize_wedges<F: Linearize>(ws: &[&WedgeSum<F>], m: usize) -> Result<Vec<WedgeCoords>> {
    let mut all = Vec::new();
    for w in ws {
        for (_, e) in w.terms() {
            all.extend(e.iter().cloned());
        }
    }
    let coords = unit_coords(&all, m)?;
    let mut idx = 0;
    let mut out = Vec::new();
    for w in ws {
        let mut acc = WedgeCoords::new();
        for (c, e) in w.terms() {
            let vs: Vec<&Coords> = (0..e.len()).map(|k| &coords[idx + k]).collect();
            idx += e.len();
            wedge_vectors(&vs, c, &mut acc);
        }
        acc.retain(|_, v| !v.is_zero());
        out.push(acc);
    }
    Ok(out)
}

/// `a = b` in `Λⁿ((F[t]/t^m)^×)⊗ℚ`.
pub fn wedges_equal<F: Linearize>(a: &WedgeSum<F>, b: &WedgeSum<F>, m: usize) -> Result<bool> {
    let v = linearize_wedges(&[a, b], m)?;
    Ok(v[0] == v[1])
}
