//! Plane conics over K: construction of the case-3(b) conic, a complete
//! K-point decision over Q (small search, then diagonalization plus
//! Legendre's theorem with a Holzer-bounded constructive search), a rational
//! parametrization through a known point, and a bounded fallback search over
//! number fields.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{
    big_prime_factors, exact_sqrt, isqrt, legendre_symbol, rationals_of_height, squarefree_part,
};
use crate::numberfield::{FieldElement, NumberField};
use crate::Error;

/// cXX X^2 + cXY XY + cYY Y^2 + cX X + cY Y + c1 = 0 over K.
#[derive(Debug, Clone, PartialEq)]
pub struct Conic {
    pub field: Arc<NumberField>,
    pub cxx: FieldElement,
    pub cxy: FieldElement,
    pub cyy: FieldElement,
    pub cx: FieldElement,
    pub cy: FieldElement,
    pub c1: FieldElement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConicStatus {
    PointFound,
    NoPoint,
    Unknown,
}

#[derive(Debug, Clone)]
pub struct ConicVerdict {
    pub status: ConicStatus,
    pub point: Option<(FieldElement, FieldElement)>,
    pub certificate: String,
}

impl Conic {
    pub fn eval(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        self.cxx
            .mul(x)
            .mul(x)
            .add(&self.cxy.mul(x).mul(y))
            .add(&self.cyy.mul(y).mul(y))
            .add(&self.cx.mul(x))
            .add(&self.cy.mul(y))
            .add(&self.c1)
    }

    /// Quadratic part must not vanish identically.
    pub fn is_quadratic(&self) -> bool {
        !(self.cxx.is_zero() && self.cxy.is_zero() && self.cyy.is_zero())
    }

    pub fn to_text(&self) -> String {
        let field = &self.field;
        let terms: [(&FieldElement, &str); 6] = [
            (&self.cxx, "X^2"),
            (&self.cxy, "X*Y"),
            (&self.cyy, "Y^2"),
            (&self.cx, "X"),
            (&self.cy, "Y"),
            (&self.c1, ""),
        ];
        let _ = field;
        let mut out = String::new();
        for (c, v) in terms {
            if c.is_zero() {
                continue;
            }
            let cs = format!("{}", c);
            let term = if v.is_empty() {
                cs
            } else if cs == "1" {
                v.to_string()
            } else if cs == "-1" {
                format!("-{}", v)
            } else {
                format!("{}*{}", cs, v)
            };
            if out.is_empty() {
                out = term;
            } else if let Some(s) = term.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(s);
            } else {
                out.push_str(" + ");
                out.push_str(&term);
            }
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

/// The case-3(b) conic for c = eps + 1/eps:
/// X^2 - c XY + Y^2 + (c-2)v (X+Y) + (2-c)v^2 + (c^2-4) u^2 = 0.
pub fn conic_from_case3(
    field: &Arc<NumberField>,
    u2: &FieldElement,
    v: &FieldElement,
    c: &FieldElement,
) -> Conic {
    let one = FieldElement::one(field);
    let two = FieldElement::from_int(field, 2);
    let four = FieldElement::from_int(field, 4);
    let cm2 = c.sub(&two);
    Conic {
        field: field.clone(),
        cxx: one.clone(),
        cxy: c.neg(),
        cyy: one,
        cx: cm2.mul(v),
        cy: cm2.mul(v),
        c1: two.sub(c).mul(v).mul(v).add(&c.mul(c).sub(&four).mul(u2)),
    }
}

// ---------------------------------------------------------------------------
// Rational-point decision over Q
// ---------------------------------------------------------------------------

type QMat = [[BigRational; 3]; 3];

fn rational(e: &FieldElement) -> BigRational {
    e.as_rational().expect("conic must be over Q here")
}

fn conic_matrix(c: &Conic) -> QMat {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let cxy = rational(&c.cxy) * &half;
    let cx = rational(&c.cx) * &half;
    let cy = rational(&c.cy) * &half;
    [
        [rational(&c.cxx), cxy.clone(), cx.clone()],
        [cxy, rational(&c.cyy), cy.clone()],
        [cx, cy, rational(&c.c1)],
    ]
}

fn mat_det3(m: &QMat) -> BigRational {
    let d = |a: &BigRational, b: &BigRational, c: &BigRational, d: &BigRational| a * d - b * c;
    &m[0][0] * d(&m[1][1], &m[1][2], &m[2][1], &m[2][2])
        - &m[0][1] * d(&m[1][0], &m[1][2], &m[2][0], &m[2][2])
        + &m[0][2] * d(&m[1][0], &m[1][1], &m[2][0], &m[2][1])
}

/// Symmetric congruence diagonalization: returns (diag, P) with P^T M P
/// diagonal; a point d in diagonal coordinates maps to v = P d.
fn diagonalize(m: &QMat) -> ([BigRational; 3], Vec<Vec<BigRational>>) {
    let mut m: Vec<Vec<BigRational>> = m.iter().map(|r| r.to_vec()).collect();
    let mut p: Vec<Vec<BigRational>> = (0..3)
        .map(|i| {
            (0..3)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    // column operation col_i += f * col_j on both M (congruence) and P
    let col_op = |m: &mut Vec<Vec<BigRational>>, p: &mut Vec<Vec<BigRational>>, i: usize, j: usize, f: &BigRational| {
        for r in 0..3 {
            let t = &m[r][j] * f;
            m[r][i] += t;
        }
        for c in 0..3 {
            let t = &m[j][c] * f;
            m[i][c] += t;
        }
        // wait: congruence needs the symmetric row op too -- done above
        for r in 0..3 {
            let t = &p[r][j] * f;
            p[r][i] += t;
        }
    };
    for k in 0..3 {
        if m[k][k].is_zero() {
            // try to swap in a later nonzero diagonal
            if let Some(j) = (k + 1..3).find(|&j| !m[j][j].is_zero()) {
                m.swap(k, j);
                for row in m.iter_mut() {
                    row.swap(k, j);
                }
                for row in p.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..3).find(|&j| !m[k][j].is_zero()) {
                // col_k += col_j makes the diagonal entry 2*m[k][j] != 0
                let one = BigRational::one();
                col_op(&mut m, &mut p, k, j, &one);
            } else {
                continue; // row/col k is entirely zero
            }
        }
        let pivot = m[k][k].clone();
        for j in k + 1..3 {
            if m[k][j].is_zero() {
                continue;
            }
            let f = -(&m[k][j] / &pivot);
            col_op(&mut m, &mut p, j, k, &f);
        }
    }
    (
        [m[0][0].clone(), m[1][1].clone(), m[2][2].clone()],
        p,
    )
}

/// Reduce a X^2 + b Y^2 + c Z^2 = 0 (integer) to squarefree pairwise-coprime
/// coefficients, tracking per-variable multipliers: a solution (x, y, z) of
/// the reduced form corresponds to (mx x, my y, mz z) for the original.
fn reduce_ternary(
    mut a: BigInt,
    mut b: BigInt,
    mut c: BigInt,
) -> (BigInt, BigInt, BigInt, [BigRational; 3]) {
    let mut m = [
        BigRational::one(),
        BigRational::one(),
        BigRational::one(),
    ];
    loop {
        let mut changed = false;
        // squarefree: a = sf * s^2 absorbs s into X (X' = sX, so mx /= s)
        for (coef, mi) in [(&mut a, 0usize), (&mut b, 1), (&mut c, 2)] {
            let (sf, s) = squarefree_part(coef);
            if !s.is_one() {
                *coef = sf;
                m[mi] /= BigRational::from(s);
                changed = true;
            }
        }
        // pairwise coprime: g = gcd(a,b) moves to c via Z = g Z' (mz *= g)
        for (i, j, k) in [(0usize, 1usize, 2usize), (0, 2, 1), (1, 2, 0)] {
            let vals = [a.clone(), b.clone(), c.clone()];
            let g = vals[i].gcd(&vals[j]);
            if g > BigInt::one() {
                let mut vals = vals;
                vals[i] /= &g;
                vals[j] /= &g;
                vals[k] *= &g;
                a = vals[0].clone();
                b = vals[1].clone();
                c = vals[2].clone();
                m[k] *= BigRational::from(g);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    (a, b, c, m)
}

/// Legendre solvability of a x^2 + b y^2 + c z^2 = 0 with a, b, c squarefree,
/// pairwise coprime, nonzero. Returns Ok(()) or the obstructing place.
fn legendre_solvable(a: &BigInt, b: &BigInt, c: &BigInt) -> Result<(), String> {
    let signs = [a.sign(), b.sign(), c.sign()];
    if signs.iter().all(|s| *s == num_bigint::Sign::Plus)
        || signs.iter().all(|s| *s == num_bigint::Sign::Minus)
    {
        return Err("obstruction at infinity (definite form)".into());
    }
    let check = |modulus: &BigInt, residue: BigInt| -> Result<(), String> {
        for p in big_prime_factors(&modulus.abs()) {
            if p == BigInt::from(2) {
                continue; // automatic by Hilbert reciprocity
            }
            let r = residue.mod_floor(&p);
            if legendre_symbol(&r, &p) == -1 {
                return Err(format!("obstruction at prime {}", p));
            }
        }
        Ok(())
    };
    check(a, (-b * c).clone())?;
    check(b, (-a * c).clone())?;
    check(c, (-a * b).clone())?;
    Ok(())
}

/// Constructive search for a nontrivial integer zero of a solvable reduced
/// ternary form, complete within the Holzer bounds |y| <= sqrt|ac|,
/// |z| <= sqrt|ab|.
fn holzer_search(a: &BigInt, b: &BigInt, c: &BigInt) -> Option<[BigInt; 3]> {
    let ybound = isqrt(&(a * c).abs());
    let zbound = isqrt(&(a * b).abs());
    let mut y = BigInt::zero();
    while y <= ybound {
        let mut z = BigInt::zero();
        while z <= zbound {
            if !(y.is_zero() && z.is_zero()) {
                let num = -(b * &y * &y + c * &z * &z);
                if (&num % a).is_zero() {
                    let x2 = num / a;
                    if !x2.is_negative() {
                        if let Some(x) = exact_sqrt(&x2) {
                            return Some([x, y.clone(), z.clone()]);
                        }
                    }
                }
            }
            z += 1;
        }
        y += 1;
    }
    None
}

fn apply_transform(p: &[Vec<BigRational>], d: &[BigRational; 3]) -> [BigRational; 3] {
    let mut out = [
        BigRational::zero(),
        BigRational::zero(),
        BigRational::zero(),
    ];
    for r in 0..3 {
        for k in 0..3 {
            out[r] += &p[r][k] * &d[k];
        }
    }
    out
}

fn q_eval(m: &QMat, v: &[BigRational; 3]) -> BigRational {
    let mut acc = BigRational::zero();
    for i in 0..3 {
        for j in 0..3 {
            acc += &m[i][j] * &v[i] * &v[j];
        }
    }
    acc
}

fn bilinear(m: &QMat, u: &[BigRational; 3], v: &[BigRational; 3]) -> BigRational {
    let mut acc = BigRational::zero();
    for i in 0..3 {
        for j in 0..3 {
            acc += &m[i][j] * &u[i] * &v[j];
        }
    }
    acc
}

/// Move a projective point with Z = 0 to one with Z != 0 along lines through
/// it (possible whenever the conic is irreducible with a rational point).
fn deproject(m: &QMat, p0: &[BigRational; 3]) -> Option<[BigRational; 3]> {
    if !p0[2].is_zero() {
        return Some(p0.clone());
    }
    let dirs: Vec<[i64; 3]> = vec![
        [0, 0, 1],
        [1, 0, 1],
        [0, 1, 1],
        [1, 1, 1],
        [-1, 0, 1],
        [0, -1, 1],
        [1, -1, 1],
        [-1, 1, 1],
        [2, 1, 1],
        [1, 2, 1],
    ];
    for d in dirs {
        let e = [
            BigRational::from(BigInt::from(d[0])),
            BigRational::from(BigInt::from(d[1])),
            BigRational::from(BigInt::from(d[2])),
        ];
        // second intersection of the line p0 + t e: t = -2 B(p0,e)/Q(e)
        let qe = q_eval(m, &e);
        if qe.is_zero() {
            continue;
        }
        let be = bilinear(m, p0, &e);
        // p1 = Q(e) p0 - 2 B(p0, e) e
        let two = BigRational::from(BigInt::from(2));
        let p1 = [
            &qe * &p0[0] - &two * &be * &e[0],
            &qe * &p0[1] - &two * &be * &e[1],
            &qe * &p0[2] - &two * &be * &e[2],
        ];
        if !p1[2].is_zero() {
            return Some(p1);
        }
    }
    None
}

/// Decide existence of an affine rational point on a conic over Q; complete
/// (never UNKNOWN for a quadratic equation).
pub fn conic_rational_point(conic: &Conic) -> ConicVerdict {
    assert_eq!(conic.field.degree(), 1, "complete decision is over Q only");
    let field = &conic.field;
    // fast path: small points first, so reported points are friendly
    for x in rationals_of_height(4) {
        for y in rationals_of_height(4) {
            let (xe, ye) = (
                FieldElement::from_rat(field, x.clone()),
                FieldElement::from_rat(field, y.clone()),
            );
            if conic.eval(&xe, &ye).is_zero() {
                return ConicVerdict {
                    status: ConicStatus::PointFound,
                    point: Some((xe, ye)),
                    certificate: "small-point search".into(),
                };
            }
        }
    }
    let m = conic_matrix(conic);
    let (diag, p) = diagonalize(&m);
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    if rank == 3 {
        // clear denominators, reduce, decide by Legendre
        let mut lcm = BigInt::one();
        for d in &diag {
            lcm = lcm.lcm(d.denom());
        }
        let ints: Vec<BigInt> = diag.iter().map(|d| d.numer() * (&lcm / d.denom())).collect();
        let (a, b, c, mult) = reduce_ternary(ints[0].clone(), ints[1].clone(), ints[2].clone());
        match legendre_solvable(&a, &b, &c) {
            Err(place) => ConicVerdict {
                status: ConicStatus::NoPoint,
                point: None,
                certificate: place,
            },
            Ok(()) => {
                let sol = holzer_search(&a, &b, &c)
                    .expect("Legendre-solvable form must have a bounded solution");
                let d = [
                    BigRational::from(sol[0].clone()) * &mult[0],
                    BigRational::from(sol[1].clone()) * &mult[1],
                    BigRational::from(sol[2].clone()) * &mult[2],
                ];
                let proj = apply_transform(&p, &d);
                debug_assert!(q_eval(&m, &proj).is_zero());
                let aff = deproject(&m, &proj)
                    .expect("an irreducible conic with a point has affine points");
                let x = FieldElement::from_rat(field, &aff[0] / &aff[2]);
                let y = FieldElement::from_rat(field, &aff[1] / &aff[2]);
                debug_assert!(conic.eval(&x, &y).is_zero());
                ConicVerdict {
                    status: ConicStatus::PointFound,
                    point: Some((x, y)),
                    certificate: "Legendre descent".into(),
                }
            }
        }
    } else {
        degenerate_point(conic, &m, &diag, &p, rank)
    }
}

/// Degenerate quadric (rank <= 2): factor into lines / a point and look for
/// affine rational points directly.
fn degenerate_point(
    conic: &Conic,
    m: &QMat,
    diag: &[BigRational; 3],
    p: &[Vec<BigRational>],
    rank: usize,
) -> ConicVerdict {
    let field = &conic.field;
    let found = |d: [BigRational; 3]| -> Option<ConicVerdict> {
        let proj = apply_transform(p, &d);
        if proj.iter().all(|c| c.is_zero()) {
            return None;
        }
        let aff = deproject(m, &proj)?;
        let x = FieldElement::from_rat(field, &aff[0] / &aff[2]);
        let y = FieldElement::from_rat(field, &aff[1] / &aff[2]);
        if !conic.eval(&x, &y).is_zero() {
            return None;
        }
        Some(ConicVerdict {
            status: ConicStatus::PointFound,
            point: Some((x, y)),
            certificate: format!("degenerate quadric (rank {})", rank),
        })
    };
    // indices of nonzero / zero diagonal entries
    let nz: Vec<usize> = (0..3).filter(|&i| !diag[i].is_zero()).collect();
    let z: Vec<usize> = (0..3).filter(|&i| diag[i].is_zero()).collect();
    match rank {
        0 => unreachable!("quadratic part vanishes"),
        1 => {
            // single plane d_{nz0} = 0: all points with that coordinate zero
            for s in rationals_of_height(6) {
                for t in rationals_of_height(6) {
                    let mut d = [
                        BigRational::zero(),
                        BigRational::zero(),
                        BigRational::zero(),
                    ];
                    d[z[0]] = s.clone();
                    d[z[1]] = t.clone();
                    if let Some(v) = found(d) {
                        return v;
                    }
                }
            }
            ConicVerdict {
                status: ConicStatus::NoPoint,
                point: None,
                certificate: "double line at infinity".into(),
            }
        }
        2 => {
            // a s^2 + b t^2 = 0 with free third coordinate
            let (i, j, k) = (nz[0], nz[1], z[0]);
            let ratio = -(&diag[i] / &diag[j]);
            let sq = if ratio.is_negative() {
                None
            } else {
                match (exact_sqrt(ratio.numer()), exact_sqrt(ratio.denom())) {
                    (Some(n), Some(d)) => Some(BigRational::new(n, d)),
                    _ => None,
                }
            };
            match sq {
                Some(q) => {
                    // two lines: d_i = +-q d_j
                    for t in rationals_of_height(6) {
                        for u in rationals_of_height(6) {
                            for sgn in [1i64, -1] {
                                let mut d = [
                                    BigRational::zero(),
                                    BigRational::zero(),
                                    BigRational::zero(),
                                ];
                                d[j] = t.clone();
                                d[i] = &q * &t * BigRational::from(BigInt::from(sgn));
                                d[k] = u.clone();
                                if let Some(v) = found(d) {
                                    return v;
                                }
                            }
                        }
                    }
                    ConicVerdict {
                        status: ConicStatus::NoPoint,
                        point: None,
                        certificate: "line pair meets the affine plane nowhere".into(),
                    }
                }
                None => {
                    // only the vertex d_i = d_j = 0
                    let mut d = [
                        BigRational::zero(),
                        BigRational::zero(),
                        BigRational::zero(),
                    ];
                    d[k] = BigRational::one();
                    match found(d) {
                        Some(v) => v,
                        None => ConicVerdict {
                            status: ConicStatus::NoPoint,
                            point: None,
                            certificate: "point conic with vertex at infinity".into(),
                        },
                    }
                }
            }
        }
        _ => unreachable!(),
    }
}

// ---------------------------------------------------------------------------
// Parametrization through a known point
// ---------------------------------------------------------------------------

/// The second intersection of the conic with the line of slope t through p
/// (or the vertical line for t = None). Returns p itself at the tangent slope
/// and None for directions that leave the conic (degree drops).
pub fn conic_param_point(
    conic: &Conic,
    p: &(FieldElement, FieldElement),
    t: Option<&FieldElement>,
) -> Option<(FieldElement, FieldElement)> {
    let (px, py) = p;
    match t {
        Some(t) => {
            // Y = py + t (X - px); substitute and use that X = px is a root:
            // A X^2 + B X + C with root sum -B/A
            let c0 = py.sub(&t.mul(px)); // intercept
            let a = conic
                .cxx
                .add(&conic.cxy.mul(t))
                .add(&conic.cyy.mul(t).mul(t));
            if a.is_zero() {
                return None;
            }
            let b = conic
                .cxy
                .mul(&c0)
                .add(&conic.cyy.mul(&FieldElement::from_int(&conic.field, 2)).mul(t).mul(&c0))
                .add(&conic.cx)
                .add(&conic.cy.mul(t));
            let x2 = b.div(&a).ok()?.neg().sub(px);
            let y2 = py.add(&t.mul(&x2.sub(px)));
            debug_assert!(conic.eval(&x2, &y2).is_zero());
            Some((x2, y2))
        }
        None => {
            // vertical line X = px: cyy Y^2 + (cxy px + cy) Y + ... root sum
            if conic.cyy.is_zero() {
                return None;
            }
            let b = conic.cxy.mul(px).add(&conic.cy);
            let y2 = b.div(&conic.cyy).ok()?.neg().sub(py);
            let x2 = px.clone();
            debug_assert!(conic.eval(&x2, &y2).is_zero());
            Some((x2, y2))
        }
    }
}

/// Check nondegeneracy (for Q-coefficient conics) before parametrizing.
pub fn conic_nondegenerate(conic: &Conic) -> bool {
    if conic.field.degree() == 1 {
        !mat_det3(&conic_matrix(conic)).is_zero()
    } else {
        true // over extensions the caller vouches (case-3b conics)
    }
}

/// `count` distinct points on a nondegenerate conic through p, sweeping
/// rational slopes in a fixed order.
pub fn conic_points_from(
    conic: &Conic,
    p: &(FieldElement, FieldElement),
    count: usize,
) -> Result<Vec<(FieldElement, FieldElement)>, Error> {
    if !conic_nondegenerate(conic) {
        return Err(Error::DegenerateConic);
    }
    let mut out: Vec<(FieldElement, FieldElement)> = Vec::new();
    let seen = |pt: &(FieldElement, FieldElement), out: &Vec<(FieldElement, FieldElement)>| {
        out.iter().any(|q| q == pt)
    };
    for h in [8u32, 16, 32, 64] {
        for t in rationals_of_height(h) {
            let te = FieldElement::from_rat(&conic.field, t);
            if let Some(pt) = conic_param_point(conic, p, Some(&te)) {
                // a tangent slope returns p itself; the caller already has p
                if pt != *p && !seen(&pt, &out) {
                    out.push(pt);
                    if out.len() >= count {
                        return Ok(out);
                    }
                }
            }
        }
    }
    Err(Error::InsufficientPoints(
        "conic parametrization ran out of slopes".into(),
    ))
}

// ---------------------------------------------------------------------------
// Bounded search over K
// ---------------------------------------------------------------------------

/// Exhaustive bounded search over elements whose power-basis coordinates are
/// rationals of height <= height_bound; POINT_FOUND or UNKNOWN, never NO_POINT.
pub fn conic_point_search(conic: &Conic, height_bound: u32) -> ConicVerdict {
    let field = &conic.field;
    let n = field.degree();
    let rats = rationals_of_height(height_bound);
    // enumerate elements as coordinate tuples in odometer order
    let total = rats.len().pow(n as u32);
    let element = |mut idx: usize| -> FieldElement {
        let mut coords = Vec::with_capacity(n);
        for _ in 0..n {
            coords.push(rats[idx % rats.len()].clone());
            idx /= rats.len();
        }
        FieldElement::new(field, coords)
    };
    for i in 0..total {
        let x = element(i);
        for j in 0..total {
            let y = element(j);
            if conic.eval(&x, &y).is_zero() {
                return ConicVerdict {
                    status: ConicStatus::PointFound,
                    point: Some((x, y)),
                    certificate: format!("search at height {}", height_bound),
                };
            }
        }
    }
    ConicVerdict {
        status: ConicStatus::Unknown,
        point: None,
        certificate: format!("no point within height {}", height_bound),
    }
}

/// Exhaustive disproof helper for oracle tests: scan every rational x of
/// height <= h and decide exactly (by discriminant) whether ANY rational y
/// solves the conic at that x. Strictly stronger than a grid search in y.
pub fn has_point_with_x_height(conic: &Conic, h: u32) -> Option<(FieldElement, FieldElement)> {
    assert_eq!(conic.field.degree(), 1);
    let field = &conic.field;
    let sqrt_rat = |q: &BigRational| -> Option<BigRational> {
        if q.is_negative() {
            return None;
        }
        Some(BigRational::new(
            exact_sqrt(q.numer())?,
            exact_sqrt(q.denom())?,
        ))
    };
    for x in rationals_of_height(h) {
        // a y^2 + b y + c = 0 in y
        let a = rational(&conic.cyy);
        let b = rational(&conic.cxy) * &x + rational(&conic.cy);
        let c = rational(&conic.cxx) * &x * &x + rational(&conic.cx) * &x + rational(&conic.c1);
        let y = if a.is_zero() {
            if b.is_zero() {
                if c.is_zero() {
                    Some(BigRational::zero())
                } else {
                    None
                }
            } else {
                Some(-&c / &b)
            }
        } else {
            let disc = &b * &b - BigRational::from(BigInt::from(4)) * &a * &c;
            sqrt_rat(&disc).map(|s| (-&b + s) / (BigRational::from(BigInt::from(2)) * &a))
        };
        if let Some(y) = y {
            let xe = FieldElement::from_rat(field, x);
            let ye = FieldElement::from_rat(field, y);
            debug_assert!(conic.eval(&xe, &ye).is_zero());
            return Some((xe, ye));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_int;
    use crate::numberfield::nf_create;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn qq() -> Arc<NumberField> {
        NumberField::rationals()
    }

    fn q_conic(k: &Arc<NumberField>, c: [i64; 6]) -> Conic {
        Conic {
            field: k.clone(),
            cxx: FieldElement::from_int(k, c[0]),
            cxy: FieldElement::from_int(k, c[1]),
            cyy: FieldElement::from_int(k, c[2]),
            cx: FieldElement::from_int(k, c[3]),
            cy: FieldElement::from_int(k, c[4]),
            c1: FieldElement::from_int(k, c[5]),
        }
    }

    #[test]
    fn case3_construction() {
        let k = qq();
        // d = 3: c = -1 -> X^2 + XY + Y^2 - 3
        let c = conic_from_case3(
            &k,
            &FieldElement::one(&k),
            &FieldElement::zero(&k),
            &FieldElement::from_int(&k, -1),
        );
        assert_eq!(c, q_conic(&k, [1, 1, 1, 0, 0, -3]));
        // d = 4: c = 0 -> X^2 + Y^2 - 4
        let c = conic_from_case3(
            &k,
            &FieldElement::one(&k),
            &FieldElement::zero(&k),
            &FieldElement::zero(&k),
        );
        assert_eq!(c, q_conic(&k, [1, 0, 1, 0, 0, -4]));
        // u2 = 1, v = 1, c = -1: constant term cancels to 0
        let c = conic_from_case3(
            &k,
            &FieldElement::one(&k),
            &FieldElement::one(&k),
            &FieldElement::from_int(&k, -1),
        );
        assert_eq!(c, q_conic(&k, [1, 1, 1, -3, -3, 0]));
    }

    #[test]
    fn rational_point_examples() {
        let k = qq();
        let v = conic_rational_point(&q_conic(&k, [1, 1, 1, 0, 0, -3]));
        assert_eq!(v.status, ConicStatus::PointFound);
        let (x, y) = v.point.unwrap();
        assert!(q_conic(&k, [1, 1, 1, 0, 0, -3]).eval(&x, &y).is_zero());

        let v = conic_rational_point(&q_conic(&k, [1, 0, 1, 0, 0, 1]));
        assert_eq!(v.status, ConicStatus::NoPoint);
        assert!(v.certificate.contains("infinity"));

        let v = conic_rational_point(&q_conic(&k, [1, 0, 1, 0, 0, -3]));
        assert_eq!(v.status, ConicStatus::NoPoint);
        assert!(v.certificate.contains("prime"));
    }

    #[test]
    fn rational_point_needs_descent() {
        // x^2 + y^2 = 325 has solutions (e.g. (1, 18)) but none within the
        // small-point prepass bound, forcing the Legendre/Holzer path
        let k = qq();
        let c = q_conic(&k, [1, 0, 1, 0, 0, -325]);
        let v = conic_rational_point(&c);
        assert_eq!(v.status, ConicStatus::PointFound);
        let (x, y) = v.point.unwrap();
        assert!(c.eval(&x, &y).is_zero());
    }

    #[test]
    fn degenerate_cases() {
        let k = qq();
        // (X - Y)(X + Y) = X^2 - Y^2: rank 2 line pair through (0,0)
        let c = q_conic(&k, [1, 0, -1, 0, 0, 0]);
        let v = conic_rational_point(&c);
        assert_eq!(v.status, ConicStatus::PointFound);
        // X^2 + Y^2 = 0: point conic, vertex (0, 0) is affine
        let c = q_conic(&k, [1, 0, 1, 0, 0, 0]);
        let v = conic_rational_point(&c);
        assert_eq!(v.status, ConicStatus::PointFound);
        assert_eq!(
            v.point.unwrap(),
            (FieldElement::zero(&k), FieldElement::zero(&k))
        );
        // (X + Y)^2 + 1 = 0: no points
        let c = q_conic(&k, [1, 2, 1, 0, 0, 1]);
        let v = conic_rational_point(&c);
        assert_eq!(v.status, ConicStatus::NoPoint);
    }

    #[test]
    fn parametrization_examples() {
        let k = qq();
        let c = q_conic(&k, [1, 1, 1, 0, 0, -3]);
        let p = (FieldElement::one(&k), FieldElement::one(&k));
        // slope 0: second intersection of Y = 1 is (-2, 1)
        let q = conic_param_point(&c, &p, Some(&FieldElement::zero(&k))).unwrap();
        assert_eq!(q, (FieldElement::from_int(&k, -2), FieldElement::one(&k)));
        // slope 1: (-1, -1)
        let q = conic_param_point(&c, &p, Some(&FieldElement::one(&k))).unwrap();
        assert_eq!(
            q,
            (FieldElement::from_int(&k, -1), FieldElement::from_int(&k, -1))
        );
        // tangent slope returns p itself: tangent at (1,1) to this conic is
        // slope -1 (gradient (2x+y, x+2y) = (3,3))
        let q = conic_param_point(&c, &p, Some(&FieldElement::from_int(&k, -1))).unwrap();
        assert_eq!(q, p);
    }

    #[test]
    fn parametrization_many_distinct() {
        let k = qq();
        let c = q_conic(&k, [1, 1, 1, 0, 0, -3]);
        let p = (FieldElement::one(&k), FieldElement::one(&k));
        let pts = conic_points_from(&c, &p, 100).unwrap();
        assert_eq!(pts.len(), 100);
        for pt in &pts {
            assert!(c.eval(&pt.0, &pt.1).is_zero());
        }
        let mut dedup = pts.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), 100);
    }

    #[test]
    fn degenerate_parametrize_rejected() {
        let k = qq();
        let c = q_conic(&k, [1, 0, -1, 0, 0, 0]);
        let p = (FieldElement::zero(&k), FieldElement::zero(&k));
        assert!(matches!(
            conic_points_from(&c, &p, 5),
            Err(Error::DegenerateConic)
        ));
    }

    #[test]
    fn search_over_extension() {
        let k2 = nf_create(&[rat_int(-2), rat_int(0), rat_int(1)]).unwrap();
        let c = Conic {
            field: k2.clone(),
            cxx: FieldElement::one(&k2),
            cxy: FieldElement::one(&k2),
            cyy: FieldElement::one(&k2),
            cx: FieldElement::zero(&k2),
            cy: FieldElement::zero(&k2),
            c1: FieldElement::from_int(&k2, -3),
        };
        let v = conic_point_search(&c, 3);
        assert_eq!(v.status, ConicStatus::PointFound);
        let (x, y) = v.point.unwrap();
        assert!(c.eval(&x, &y).is_zero());

        let k = qq();
        let c = q_conic(&k, [1, 0, 1, 0, 0, 1]);
        let v = conic_point_search(&c, 10);
        assert_eq!(v.status, ConicStatus::Unknown);
    }

    #[test]
    fn solver_agrees_with_exhaustive_search() {
        let k = qq();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut checked = 0;
        while checked < 200 {
            let coeffs: [i64; 6] = core::array::from_fn(|_| rng.gen_range(-20..=20));
            let c = q_conic(&k, coeffs);
            if !c.is_quadratic() {
                continue;
            }
            checked += 1;
            let v = conic_rational_point(&c);
            match v.status {
                ConicStatus::PointFound => {
                    let (x, y) = v.point.unwrap();
                    assert!(c.eval(&x, &y).is_zero(), "bad point for {:?}", coeffs);
                }
                ConicStatus::NoPoint => {
                    // exact per-x disproof (all rational y), x-height 12 here;
                    // the height-50 version lives in the acceptance suite
                    assert!(
                        has_point_with_x_height(&c, 12).is_none(),
                        "missed point for {:?}",
                        coeffs
                    );
                }
                ConicStatus::Unknown => panic!("UNKNOWN over Q for {:?}", coeffs),
            }
        }
    }
}
