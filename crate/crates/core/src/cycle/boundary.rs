use std::fmt;

use super::coord::{CoordFn, TPoly};
use crate::algebra::base::BaseField;
use crate::algebra::factor::factor_q;
use crate::algebra::hensel::hensel_root;
use crate::algebra::numfield::Nf;
use crate::algebra::{Field, Poly, TSeries, Q};
use crate::error::{Error, Result};

/// A parametrized cycle `u ↦ (y₁, y₂, y₃)` in `□³` over `k[[t]]`, with a coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct CycleSpec {
    pub coords: [CoordFn; 3],
    pub orientation: Q,
}

impl CycleSpec {
    pub fn new(coords: [CoordFn; 3]) -> Self {
        CycleSpec { coords, orientation: Q::one() }
    }

    /// Common `t`-precision of the coordinates.
    pub fn prec(&self) -> usize {
        self.coords.iter().map(|c| c.prec()).min().unwrap_or(0)
    }

    pub fn star_scale(&self, lambda: &Q) -> Self {
        CycleSpec { coords: self.coords.clone().map(|c| c.star_scale(lambda)), orientation: self.orientation.clone() }
    }

    /// Swap two coordinates.
    pub fn swapped(&self, i: usize, j: usize) -> Self {
        let mut c = self.coords.clone();
        c.swap(i, j);
        CycleSpec { coords: c, orientation: self.orientation.clone() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Face {
    Zero,
    Infinity,
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Face::Zero => write!(f, "0"),
            Face::Infinity => write!(f, "inf"),
        }
    }
}

/// Which affine chart of the parameter line: `u`, or `v = 1/u` near `u = ∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UChart {
    Finite,
    Infinity,
}

/// A point of `∂Z` in `□²`: the face it lies on, its lifted parameter and the two
/// surviving coordinates in increasing index order.
#[derive(Clone, Debug)]
pub struct BoundaryPoint {
    /// `(i, a)` for the face `y_i = a`, `i ∈ {1,2,3}`.
    pub face: (usize, Face),
    pub chart: UChart,
    /// Minimal polynomial of the reduction of the parameter (in `u`, or in `v` at infinity).
    pub modulus: Poly<Q>,
    pub param: TSeries<Nf>,
    pub coords: [TSeries<Nf>; 2],
    pub sign: i64,
    pub mult: usize,
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = if self.chart == UChart::Finite { "u" } else { "v" };
        write!(
            f,
            "y{}={} at {} = {} [{}]: ({}, {}) sign {}",
            self.face.0,
            self.face.1,
            var,
            self.param,
            self.modulus.render(var),
            self.coords[0],
            self.coords[1],
            self.sign * self.mult as i64
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// A coordinate is constant in `u`, or identically 0, 1 or ∞.
    Degenerate,
    /// Another coordinate is 0 or ∞ along a face point.
    ProperIntersection,
    /// Another coordinate becomes 0 or ∞ only at `t = 0`.
    FiniteReduction,
    /// The face root is not simple at `t = 0`.
    MultipleRoot,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub face: Option<(usize, Face)>,
    pub point: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.face {
            Some((i, a)) => write!(f, "{:?} on face y{}={} at {}: {}", self.kind, i, a, self.point, self.detail),
            None => write!(f, "{:?}: {}", self.kind, self.detail),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct AdmissibilityReport {
    pub violations: Vec<Violation>,
    /// Face points where another coordinate is 1: not on `□³`.
    pub excluded: Vec<String>,
    pub points: usize,
}

impl AdmissibilityReport {
    pub fn is_admissible(&self) -> bool {
        self.violations.is_empty()
    }
}

struct FacePoint {
    modulus: Poly<Q>,
    root: Nf,
    param: TSeries<Nf>,
    mult: usize,
}

fn point_name(chart: UChart, modulus: &Poly<Q>) -> String {
    match chart {
        UChart::Finite => format!("root of {}", modulus.render("u")),
        UChart::Infinity => "u = inf".to_string(),
    }
}

/// Roots of `p` over `k[[t]]` in one chart: exact `t`-constant factors with their
/// multiplicities, and Hensel lifts of the simple roots of the rest at `t = 0`.
/// In the chart at infinity only points over `v = 0` are kept.
fn face_roots(p: &TPoly, chart: UChart, n: usize) -> std::result::Result<Vec<FacePoint>, (Poly<Q>, String)> {
    let keep = |pi: &Poly<Q>| chart == UChart::Finite || pi == &Poly::var(&Q::zero());
    let mut out = Vec::new();
    let g = p.content();
    for (pi, e) in factor_q(&g) {
        if !keep(&pi) {
            continue;
        }
        let root = Q::point_root(&pi).map_err(|e| (pi.clone(), e.to_string()))?;
        out.push(FacePoint { modulus: pi, param: TSeries::constant(root.clone(), n), root, mult: e });
    }
    let rest = p.div_exact_poly(&g);
    let r0 = rest.coeff(0);
    if r0.is_constant() {
        return Ok(out);
    }
    for (pi, e) in factor_q(&r0) {
        if !keep(&pi) {
            continue;
        }
        if e > 1 {
            return Err((pi, format!("root of multiplicity {} at t = 0", e)));
        }
        let root = Q::point_root(&pi).map_err(|e| (pi.clone(), e.to_string()))?;
        let param = hensel_root(&rest.over(&root), &root, n).map_err(|e| (pi.clone(), e.to_string()))?;
        out.push(FacePoint { modulus: pi, root, param, mult: 1 });
    }
    Ok(out)
}

/// Walk all face points of both charts, collecting boundary points and violations.
fn scan(z: &CycleSpec) -> Result<(Vec<BoundaryPoint>, AdmissibilityReport)> {
    let n = z.prec();
    let mut report = AdmissibilityReport::default();
    for (i, y) in z.coords.iter().enumerate() {
        let one = y.num.sub(&y.den).is_zero();
        if y.num.is_zero() || one || y.is_u_constant() {
            report.violations.push(Violation {
                kind: ViolationKind::Degenerate,
                face: None,
                point: String::new(),
                detail: format!("coordinate y{} = {} is constant in u", i + 1, y),
            });
        }
    }
    if !report.is_admissible() {
        return Ok((Vec::new(), report));
    }
    let mut points = Vec::new();
    for chart in [UChart::Finite, UChart::Infinity] {
        let ys: Vec<CoordFn> = match chart {
            UChart::Finite => z.coords.to_vec(),
            UChart::Infinity => z.coords.iter().map(|c| c.at_infinity()).collect::<Result<_>>()?,
        };
        for i in 0..3 {
            for face in [Face::Zero, Face::Infinity] {
                let p = if face == Face::Zero { &ys[i].num } else { &ys[i].den };
                let label = Some((i + 1, face));
                let roots = match face_roots(p, chart, n) {
                    Ok(r) => r,
                    Err((pi, detail)) => {
                        report.violations.push(Violation {
                            kind: ViolationKind::MultipleRoot,
                            face: label,
                            point: point_name(chart, &pi),
                            detail,
                        });
                        continue;
                    }
                };
                'points: for fp in roots {
                    report.points += 1;
                    let name = point_name(chart, &fp.modulus);
                    let others: Vec<usize> = (0..3).filter(|&j| j != i).collect();
                    let mut vals = Vec::new();
                    for &j in &others {
                        let nv = ys[j].num.eval(&fp.param, &fp.root);
                        let dv = ys[j].den.eval(&fp.param, &fp.root);
                        if nv.sub(&dv).is_zero() {
                            report.excluded.push(format!("y{}={} at {} (y{} = 1)", i + 1, face, name, j + 1));
                            continue 'points;
                        }
                        vals.push((j, nv, dv));
                    }
                    let mut coords = Vec::new();
                    for (j, nv, dv) in vals {
                        for (v, what) in [(&nv, "0"), (&dv, "inf")] {
                            if v.c0().is_zero() {
                                let (kind, when) = if v.is_zero() {
                                    (ViolationKind::ProperIntersection, "")
                                } else {
                                    (ViolationKind::FiniteReduction, " at t = 0")
                                };
                                report.violations.push(Violation {
                                    kind,
                                    face: label,
                                    point: name.clone(),
                                    detail: format!("y{} = {}{}", j + 1, what, when),
                                });
                                continue 'points;
                            }
                        }
                        coords.push(nv.mul(&dv.inv()?));
                    }
                    let i1 = (i + 1) as i64;
                    let parity = if i1 % 2 == 0 { 1 } else { -1 };
                    let sign = if face == Face::Infinity { parity } else { -parity };
                    points.push(BoundaryPoint {
                        face: (i + 1, face),
                        chart,
                        modulus: fp.modulus,
                        param: fp.param,
                        coords: [coords[0].clone(), coords[1].clone()],
                        sign,
                        mult: fp.mult,
                    });
                }
            }
        }
    }
    Ok((points, report))
}

/// Check admissibility and finite reduction of a parametrized cycle.
pub fn admissibility_check(z: &CycleSpec) -> Result<AdmissibilityReport> {
    Ok(scan(z)?.1)
}

/// `∂Z = Σ_i (-1)^i (∂_i^∞ - ∂_i^0)` as a list of points with signs and multiplicities.
pub fn boundary(z: &CycleSpec) -> Result<Vec<BoundaryPoint>> {
    let (points, report) = scan(z)?;
    if let Some(v) = report.violations.first() {
        return Err(match v.kind {
            ViolationKind::MultipleRoot => Error::MultipleRoot(v.to_string()),
            _ => Error::NotAdmissible(v.to_string()),
        });
    }
    Ok(points)
}
