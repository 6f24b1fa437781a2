//! Number fields K = Q(alpha) in the power basis of a monic irreducible
//! minimal polynomial, plus the membership tests the case analysis needs:
//! primitive d-th roots of unity, roots of the real cyclotomic polynomial,
//! exact square roots, and one level of quadratic extension K(sqrt(w)).

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{euler_phi, exact_sqrt};
use crate::qpoly::{
    self, cyclotomic, factor_squarefree_q, qp_divrem, qp_is_squarefree, qp_trim,
    real_cyclotomic_minpoly, QPoly,
};
use crate::Error;

/// K = Q(alpha) for alpha a root of a monic irreducible `minpoly`; degree 1
/// encodes Q itself (minimal polynomial t).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberField {
    minpoly: QPoly,
}

impl NumberField {
    pub fn rationals() -> Arc<NumberField> {
        nf_create(&[BigRational::zero(), BigRational::one()]).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &QPoly {
        &self.minpoly
    }
}

/// Validate and build a field. Rejects non-monic, non-squarefree or reducible
/// minimal polynomials; degree is capped at 16 (see the factorization cap).
pub fn nf_create(minpoly: &[BigRational]) -> Result<Arc<NumberField>, Error> {
    let f = qp_trim(minpoly.to_vec());
    if f.len() < 2 {
        return Err(Error::DegreeTooSmall(0));
    }
    if !f.last().unwrap().is_one() {
        return Err(Error::NotMonic);
    }
    let n = f.len() - 1;
    if n == 1 {
        // canonicalize every degree-1 input to t
        return Ok(Arc::new(NumberField {
            minpoly: vec![BigRational::zero(), BigRational::one()],
        }));
    }
    if n > 16 {
        return Err(Error::UnsupportedDegree(n));
    }
    if !qp_is_squarefree(&f) {
        return Err(Error::NotSquarefree);
    }
    let factors = factor_squarefree_q(&f);
    if factors.len() > 1 {
        let g = &factors[0];
        return Err(Error::Reducible(format!(
            "degree-{} factor found",
            g.len() - 1
        )));
    }
    Ok(Arc::new(NumberField { minpoly: f }))
}

/// An element of K in the power basis 1, alpha, ..., alpha^(n-1).
#[derive(Debug, Clone)]
pub struct FieldElement {
    pub field: Arc<NumberField>,
    coords: Vec<BigRational>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.minpoly == other.field.minpoly && self.coords == other.coords
    }
}
impl Eq for FieldElement {}

impl FieldElement {
    pub fn new(field: &Arc<NumberField>, mut coords: Vec<BigRational>) -> FieldElement {
        let n = field.degree();
        if coords.len() > n {
            let rem = qp_divrem(&qp_trim(coords), &field.minpoly).1;
            coords = rem;
        }
        coords.resize(n, BigRational::zero());
        FieldElement {
            field: field.clone(),
            coords,
        }
    }

    pub fn zero(field: &Arc<NumberField>) -> FieldElement {
        FieldElement::new(field, Vec::new())
    }

    pub fn one(field: &Arc<NumberField>) -> FieldElement {
        FieldElement::from_rat(field, BigRational::one())
    }

    pub fn from_rat(field: &Arc<NumberField>, c: BigRational) -> FieldElement {
        FieldElement::new(field, vec![c])
    }

    pub fn from_int(field: &Arc<NumberField>, c: i64) -> FieldElement {
        FieldElement::from_rat(field, BigRational::from(BigInt::from(c)))
    }

    /// The generator alpha (for degree 1 this is 0, the canonical root of t).
    pub fn generator(field: &Arc<NumberField>) -> FieldElement {
        if field.degree() == 1 {
            FieldElement::zero(field)
        } else {
            FieldElement::new(field, vec![BigRational::zero(), BigRational::one()])
        }
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// The rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coords.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        debug_assert_eq!(self.field.minpoly, other.field.minpoly);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        FieldElement {
            field: self.field.clone(),
            coords,
        }
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        debug_assert_eq!(self.field.minpoly, other.field.minpoly);
        let prod = qpoly::qp_mul(&qp_trim(self.coords.clone()), &qp_trim(other.coords.clone()));
        FieldElement::new(&self.field, prod)
    }

    pub fn scale(&self, c: &BigRational) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    /// Extended-gcd inverse modulo the minimal polynomial.
    pub fn inverse(&self) -> Result<FieldElement, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let a = qp_trim(self.coords.clone());
        let m = &self.field.minpoly;
        // extended Euclid: s*a + t*m = gcd = const
        let (mut r0, mut r1) = (a, m.clone());
        let (mut s0, mut s1): (QPoly, QPoly) = (vec![BigRational::one()], Vec::new());
        while !r1.is_empty() {
            let (q, r) = qp_divrem(&r0, &r1);
            let ns = qpoly::qp_sub(&s0, &qpoly::qp_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = ns;
        }
        debug_assert_eq!(r0.len(), 1, "minimal polynomial not coprime to element");
        let inv_const = r0[0].recip();
        Ok(FieldElement::new(
            &self.field,
            qpoly::qp_scale(&s0, &inv_const),
        ))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement, Error> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        let mut result = FieldElement::one(&self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }

    /// Deterministic total order (lexicographic on coordinates), used to make
    /// root lists and reports stable.
    pub fn cmp_key(&self) -> Vec<BigRational> {
        self.coords.clone()
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = Vec::new();
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = crate::arith::rat_to_string(c);
            terms.push(match i {
                0 => cs,
                1 => format!("{}*t", cs),
                _ => format!("{}*t^{}", cs, i),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

// ---------------------------------------------------------------------------
// Polynomials over K (internal helpers; the public polynomial type lives in
// `polyring`, but root finding below needs K[x] gcds before that exists).
// ---------------------------------------------------------------------------

pub(crate) type KPoly = Vec<FieldElement>;

pub(crate) fn kp_trim(mut f: KPoly) -> KPoly {
    while f.last().map_or(false, |c| c.is_zero()) {
        f.pop();
    }
    f
}

pub(crate) fn kp_from_q(field: &Arc<NumberField>, f: &QPoly) -> KPoly {
    f.iter()
        .map(|c| FieldElement::from_rat(field, c.clone()))
        .collect()
}

pub(crate) fn kp_mul(f: &KPoly, g: &KPoly) -> KPoly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let field = f[0].field.clone();
    let mut out = vec![FieldElement::zero(&field); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in g.iter().enumerate() {
            out[i + j] = out[i + j].add(&a.mul(b));
        }
    }
    kp_trim(out)
}

pub(crate) fn kp_divrem(f: &KPoly, g: &KPoly) -> (KPoly, KPoly) {
    assert!(!g.is_empty());
    let field = g[0].field.clone();
    let lg_inv = g.last().unwrap().inverse().expect("nonzero leading coeff");
    let mut rem = f.clone();
    let mut quo: KPoly = Vec::new();
    while rem.len() >= g.len() && !rem.is_empty() {
        let shift = rem.len() - g.len();
        let c = rem.last().unwrap().mul(&lg_inv);
        if quo.len() < shift + 1 {
            quo.resize(shift + 1, FieldElement::zero(&field));
        }
        quo[shift] = c.clone();
        for (j, b) in g.iter().enumerate() {
            let t = c.mul(b);
            rem[shift + j] = rem[shift + j].sub(&t);
        }
        rem = kp_trim(rem);
    }
    (kp_trim(quo), rem)
}

pub(crate) fn kp_gcd(f: &KPoly, g: &KPoly) -> KPoly {
    let mut a = f.clone();
    let mut b = g.clone();
    while !b.is_empty() {
        let (_, r) = kp_divrem(&a, &b);
        a = b;
        b = r;
    }
    if a.is_empty() {
        return a;
    }
    let inv = a.last().unwrap().inverse().unwrap();
    a.iter().map(|c| c.mul(&inv)).collect()
}

pub(crate) fn kp_derivative(f: &KPoly) -> KPoly {
    if f.len() <= 1 {
        return Vec::new();
    }
    let out = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.scale(&BigRational::from(BigInt::from(i))))
        .collect();
    kp_trim(out)
}

/// Compose a rational polynomial with (x + shift), coefficients landing in K.
fn kp_shifted_q(field: &Arc<NumberField>, f: &QPoly, shift: &FieldElement) -> KPoly {
    let mut acc: KPoly = Vec::new();
    let x_plus = vec![shift.clone(), FieldElement::one(field)];
    for c in f.iter().rev() {
        acc = kp_mul(&acc, &x_plus);
        if acc.is_empty() {
            acc.push(FieldElement::from_rat(field, c.clone()));
        } else {
            acc[0] = acc[0].add(&FieldElement::from_rat(field, c.clone()));
        }
        acc = kp_trim(acc);
    }
    acc
}

// ---------------------------------------------------------------------------
// Root finding over K (Trager norm-resultant, linear factors only)
// ---------------------------------------------------------------------------

/// All roots in K of a nonconstant polynomial with coefficients in K,
/// sorted by coordinates.
pub fn roots_in_field(field: &Arc<NumberField>, g: &KPoly) -> Vec<FieldElement> {
    let g = kp_trim(g.clone());
    if g.len() < 2 {
        return Vec::new();
    }
    let n = field.degree();
    if n == 1 {
        let gq: QPoly = qp_trim(g.iter().map(|c| c.coords[0].clone()).collect());
        let mut roots: Vec<FieldElement> = qpoly::rational_roots(&gq)
            .into_iter()
            .map(|r| FieldElement::from_rat(field, r))
            .collect();
        roots.sort_by(|a, b| a.cmp_key().cmp(&b.cmp_key()));
        return roots;
    }
    // squarefree part
    let der = kp_derivative(&g);
    let gcd = kp_gcd(&g, &der);
    let g1 = if gcd.len() <= 1 {
        g.clone()
    } else {
        kp_divrem(&g, &gcd).0
    };
    if g1.len() == 2 {
        let root = g1[0].div(&g1[1]).unwrap().neg();
        return vec![root];
    }
    let deg = g1.len() - 1;
    // coefficients as polynomials in t (the generator)
    let coeff_polys: Vec<QPoly> = g1.iter().map(|c| qp_trim(c.coords.clone())).collect();
    let mut roots: Vec<FieldElement> = Vec::new();
    for s in 1i64..=40 {
        // N_s(x) = Res_t(m(t), sum_i c_i(t) (x - s t)^i), degree n*deg in x;
        // computed by sampling x and interpolating.
        let samples = n * deg + 1;
        let mut pts = Vec::with_capacity(samples);
        for j in 0..samples {
            let xj = BigRational::from(BigInt::from(j as i64));
            // A_j(t) = sum_i c_i(t) * (xj - s t)^i
            let lin: QPoly = qp_trim(vec![
                xj.clone(),
                BigRational::from(BigInt::from(-s)),
            ]);
            let mut acc: QPoly = Vec::new();
            for c in coeff_polys.iter().rev() {
                acc = qpoly::qp_mul(&acc, &lin);
                acc = qpoly::qp_add(&acc, c);
            }
            let res = qpoly::resultant_q(&field.minpoly, &acc);
            pts.push((xj, res));
        }
        let norm = qpoly::interpolate(&pts);
        if !qp_is_squarefree(&norm) {
            continue;
        }
        let alpha = FieldElement::generator(field);
        let s_alpha = alpha.scale(&BigRational::from(BigInt::from(s)));
        for fac in factor_squarefree_q(&norm) {
            if fac.len() - 1 > n {
                continue;
            }
            // gcd over K of g1 and F(x + s*alpha)
            let shifted = kp_shifted_q(field, &fac, &s_alpha);
            let h = kp_gcd(&g1, &shifted);
            if h.len() == 2 {
                roots.push(h[0].neg());
            }
        }
        roots.sort_by(|a, b| a.cmp_key().cmp(&b.cmp_key()));
        roots.dedup();
        return roots;
    }
    panic!("norm stayed non-squarefree for 40 shifts; input suspicious");
}

/// A primitive d-th root of unity in K, if one exists.
pub fn contains_primitive_root(field: &Arc<NumberField>, d: u64) -> Option<FieldElement> {
    assert!(d >= 1);
    if d == 1 {
        return Some(FieldElement::one(field));
    }
    if d == 2 {
        return Some(FieldElement::from_int(field, -1));
    }
    let n = field.degree() as u64;
    if euler_phi(d) > n {
        return None;
    }
    let phi = cyclotomic(d);
    let roots = roots_in_field(field, &kp_from_q(field, &phi));
    roots.into_iter().next()
}

/// All c in K with c = zeta + 1/zeta for zeta a primitive d-th root of unity
/// (the roots of the real cyclotomic polynomial Psi_d).
pub fn real_cyclotomic_roots(field: &Arc<NumberField>, d: u64) -> Vec<FieldElement> {
    assert!(d >= 3);
    let n = field.degree() as u64;
    if euler_phi(d) > 2 * n {
        return Vec::new();
    }
    let psi = real_cyclotomic_minpoly(d);
    roots_in_field(field, &kp_from_q(field, &psi))
}

/// Exact square root in K with a deterministic sign: the first nonzero
/// coordinate of the returned root is positive.
pub fn is_square(field: &Arc<NumberField>, a: &FieldElement) -> Option<FieldElement> {
    if a.is_zero() {
        return Some(FieldElement::zero(field));
    }
    let pick_sign = |s: FieldElement| -> FieldElement {
        match s.coords.iter().find(|c| !c.is_zero()) {
            Some(c) if c.is_negative() => s.neg(),
            _ => s,
        }
    };
    if let Some(q) = a.as_rational() {
        if q.is_negative() {
            // a rational negative can still be a square in K (e.g. -1 in Q(i))
            if field.degree() == 1 {
                return None;
            }
        } else {
            if let (Some(np), Some(dp)) = (exact_sqrt(q.numer()), exact_sqrt(q.denom())) {
                return Some(pick_sign(FieldElement::from_rat(
                    field,
                    BigRational::new(np, dp),
                )));
            }
            if field.degree() == 1 {
                return None;
            }
        }
    } else if field.degree() == 1 {
        unreachable!()
    }
    // generic: roots of x^2 - a in K
    let poly = vec![a.neg(), FieldElement::zero(field), FieldElement::one(field)];
    let roots = roots_in_field(field, &poly);
    roots.into_iter().next().map(pick_sign)
}

// ---------------------------------------------------------------------------
// Quadratic tower K(sqrt(w))
// ---------------------------------------------------------------------------

/// One quadratic level over K. When w is already a square in K the tower is
/// trivial and every element normalizes into the base.
#[derive(Debug, Clone)]
pub struct QuadraticTower {
    pub base: Arc<NumberField>,
    pub w: FieldElement,
    pub sqrt_in_base: Option<FieldElement>,
}

impl QuadraticTower {
    pub fn is_trivial(&self) -> bool {
        self.sqrt_in_base.is_some()
    }
}

pub fn adjoin_sqrt(field: &Arc<NumberField>, w: &FieldElement) -> Result<Arc<QuadraticTower>, Error> {
    if w.is_zero() {
        return Err(Error::ZeroRadicand);
    }
    Ok(Arc::new(QuadraticTower {
        base: field.clone(),
        w: w.clone(),
        sqrt_in_base: is_square(field, w),
    }))
}

/// p + q*sqrt(w); in a trivial tower elements are normalized to q = 0 on
/// construction, so `in_base` is a plain component test.
#[derive(Debug, Clone)]
pub struct TowerElement {
    pub tower: Arc<QuadraticTower>,
    pub p: FieldElement,
    pub q: FieldElement,
}

impl PartialEq for TowerElement {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.q == other.q
    }
}
impl Eq for TowerElement {}

impl TowerElement {
    pub fn new(tower: &Arc<QuadraticTower>, p: FieldElement, q: FieldElement) -> TowerElement {
        if let (Some(s), false) = (&tower.sqrt_in_base, q.is_zero()) {
            return TowerElement {
                tower: tower.clone(),
                p: p.add(&q.mul(s)),
                q: FieldElement::zero(&tower.base),
            };
        }
        TowerElement {
            tower: tower.clone(),
            p,
            q,
        }
    }

    pub fn from_base(tower: &Arc<QuadraticTower>, p: FieldElement) -> TowerElement {
        let q = FieldElement::zero(&tower.base);
        TowerElement {
            tower: tower.clone(),
            p,
            q,
        }
    }

    pub fn zero(tower: &Arc<QuadraticTower>) -> TowerElement {
        TowerElement::from_base(tower, FieldElement::zero(&tower.base))
    }

    pub fn one(tower: &Arc<QuadraticTower>) -> TowerElement {
        TowerElement::from_base(tower, FieldElement::one(&tower.base))
    }

    pub fn sqrt_w(tower: &Arc<QuadraticTower>) -> TowerElement {
        TowerElement::new(
            tower,
            FieldElement::zero(&tower.base),
            FieldElement::one(&tower.base),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    /// Membership in the base field: exact because trivial towers normalize.
    pub fn in_base(&self) -> Option<FieldElement> {
        if self.q.is_zero() {
            Some(self.p.clone())
        } else {
            None
        }
    }

    pub fn add(&self, other: &TowerElement) -> TowerElement {
        TowerElement::new(&self.tower, self.p.add(&other.p), self.q.add(&other.q))
    }

    pub fn sub(&self, other: &TowerElement) -> TowerElement {
        TowerElement::new(&self.tower, self.p.sub(&other.p), self.q.sub(&other.q))
    }

    pub fn neg(&self) -> TowerElement {
        TowerElement::new(&self.tower, self.p.neg(), self.q.neg())
    }

    pub fn mul(&self, other: &TowerElement) -> TowerElement {
        let w = &self.tower.w;
        let p = self.p.mul(&other.p).add(&self.q.mul(&other.q).mul(w));
        let q = self.p.mul(&other.q).add(&self.q.mul(&other.p));
        TowerElement::new(&self.tower, p, q)
    }

    pub fn inverse(&self) -> Result<TowerElement, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // (p + q sqrt w)^-1 = (p - q sqrt w) / (p^2 - q^2 w); the denominator
        // vanishes only for zero elements (w is a nonsquare whenever q != 0).
        let denom = self.p.mul(&self.p).sub(&self.q.mul(&self.q).mul(&self.tower.w));
        let inv = denom.inverse()?;
        Ok(TowerElement::new(
            &self.tower,
            self.p.mul(&inv),
            self.q.neg().mul(&inv),
        ))
    }
}

impl fmt::Display for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            write!(f, "{}", self.p)
        } else {
            write!(f, "({}) + ({})*sqrt({})", self.p, self.q, self.tower.w)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn qq() -> Arc<NumberField> {
        NumberField::rationals()
    }

    fn sqrt2_field() -> Arc<NumberField> {
        nf_create(&[rat_int(-2), rat_int(0), rat_int(1)]).unwrap()
    }

    fn zeta3_field() -> Arc<NumberField> {
        nf_create(&[rat_int(1), rat_int(1), rat_int(1)]).unwrap()
    }

    #[test]
    fn create_validates() {
        assert!(nf_create(&[rat_int(0), rat_int(1)]).is_ok());
        assert!(matches!(
            nf_create(&[rat_int(-1), rat_int(0), rat_int(1)]),
            Err(Error::Reducible(_))
        )); // t^2 - 1
        assert!(matches!(
            nf_create(&[rat_int(0), rat_int(0), rat_int(2)]),
            Err(Error::NotMonic)
        ));
        // (t-1)^2
        assert!(matches!(
            nf_create(&[rat_int(1), rat_int(-2), rat_int(1)]),
            Err(Error::NotSquarefree)
        ));
        let mut big = vec![rat_int(2)];
        big.resize(17, rat_int(0));
        big.push(rat_int(1));
        assert!(matches!(nf_create(&big), Err(Error::UnsupportedDegree(17))));
    }

    #[test]
    fn inverse_examples() {
        let k = qq();
        let x = FieldElement::from_rat(&k, rat(3, 2));
        assert_eq!(x.inverse().unwrap(), FieldElement::from_rat(&k, rat(2, 3)));

        // in Q(sqrt2): (1 + a)^-1 = a - 1
        let k = sqrt2_field();
        let a = FieldElement::generator(&k);
        let x = FieldElement::one(&k).add(&a);
        assert_eq!(x.inverse().unwrap(), a.sub(&FieldElement::one(&k)));

        // in Q(zeta3): a^-1 = -1 - a
        let k = zeta3_field();
        let a = FieldElement::generator(&k);
        assert_eq!(
            a.inverse().unwrap(),
            FieldElement::new(&k, vec![rat_int(-1), rat_int(-1)])
        );
    }

    #[test]
    fn field_axioms_randomized() {
        for field in [qq(), sqrt2_field(), zeta3_field()] {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            let rand_el = |rng: &mut ChaCha8Rng| {
                let coords: Vec<_> = (0..field.degree())
                    .map(|_| rat(rng.gen_range(-9..10), rng.gen_range(1..5)))
                    .collect();
                FieldElement::new(&field, coords)
            };
            for _ in 0..1000 {
                let (x, y, z) = (rand_el(&mut rng), rand_el(&mut rng), rand_el(&mut rng));
                assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
                assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
                if !x.is_zero() {
                    assert_eq!(x.mul(&x.inverse().unwrap()), FieldElement::one(&field));
                }
            }
        }
    }

    #[test]
    fn primitive_roots() {
        let k = qq();
        assert_eq!(
            contains_primitive_root(&k, 2),
            Some(FieldElement::from_int(&k, -1))
        );
        assert_eq!(contains_primitive_root(&k, 3), None);
        assert_eq!(contains_primitive_root(&k, 4), None);

        let k = zeta3_field();
        let eps = contains_primitive_root(&k, 3).unwrap();
        // order exactly 3
        assert_eq!(eps.pow(3), FieldElement::one(&k));
        assert_ne!(eps.pow(1), FieldElement::one(&k));
        assert_eq!(contains_primitive_root(&k, 6).map(|e| e.pow(6)), Some(FieldElement::one(&k)));
        assert_eq!(contains_primitive_root(&k, 4), None);
    }

    #[test]
    fn primitive_root_order_exact() {
        let k = zeta3_field();
        for d in 2..=8u64 {
            if let Some(eps) = contains_primitive_root(&k, d) {
                assert_eq!(eps.pow(d), FieldElement::one(&k));
                for e in crate::arith::divisors(d) {
                    if e < d {
                        assert_ne!(eps.pow(e), FieldElement::one(&k), "order divides {}", e);
                    }
                }
            }
        }
    }

    #[test]
    fn real_cyclotomic_examples() {
        let k = qq();
        assert_eq!(
            real_cyclotomic_roots(&k, 3),
            vec![FieldElement::from_int(&k, -1)]
        );
        assert_eq!(
            real_cyclotomic_roots(&k, 4),
            vec![FieldElement::from_int(&k, 0)]
        );
        assert!(real_cyclotomic_roots(&k, 5).is_empty());
        assert_eq!(
            real_cyclotomic_roots(&k, 6),
            vec![FieldElement::from_int(&k, 1)]
        );
        // over Q(sqrt5)... use x^2+x-1 roots: minpoly t^2 - 5
        let k5 = nf_create(&[rat_int(-5), rat_int(0), rat_int(1)]).unwrap();
        let roots = real_cyclotomic_roots(&k5, 5);
        assert_eq!(roots.len(), 2);
        for c in &roots {
            // Psi_5(c) = c^2 + c - 1 = 0
            let val = c.mul(c).add(c).sub(&FieldElement::one(&k5));
            assert!(val.is_zero());
        }
    }

    #[test]
    fn squares() {
        let k = qq();
        assert_eq!(
            is_square(&k, &FieldElement::from_rat(&k, rat(9, 4))),
            Some(FieldElement::from_rat(&k, rat(3, 2)))
        );
        assert_eq!(is_square(&k, &FieldElement::from_int(&k, 2)), None);
        assert_eq!(is_square(&k, &FieldElement::from_int(&k, -4)), None);

        let k = sqrt2_field();
        let a = FieldElement::generator(&k);
        assert_eq!(is_square(&k, &FieldElement::from_int(&k, 2)), Some(a.clone()));
        // 3 + 2*sqrt2 = (1 + sqrt2)^2
        let x = FieldElement::new(&k, vec![rat_int(3), rat_int(2)]);
        let s = is_square(&k, &x).unwrap();
        assert_eq!(s.mul(&s), x);
        assert_eq!(is_square(&k, &FieldElement::from_int(&k, 3)), None);
    }

    #[test]
    fn square_sign_convention() {
        let k = sqrt2_field();
        let two = FieldElement::from_int(&k, 2);
        let s = is_square(&k, &two).unwrap();
        assert!(s.coords()[1].is_positive() || s.coords()[0].is_positive());
        assert_eq!(s, FieldElement::generator(&k));
    }

    #[test]
    fn tower_arithmetic() {
        let k = qq();
        // trivial tower over 4
        let t = adjoin_sqrt(&k, &FieldElement::from_int(&k, 4)).unwrap();
        assert!(t.is_trivial());
        let s = TowerElement::sqrt_w(&t);
        assert_eq!(s.in_base(), Some(FieldElement::from_int(&k, 2)));

        // nontrivial tower over -1
        let t = adjoin_sqrt(&k, &FieldElement::from_int(&k, -1)).unwrap();
        assert!(!t.is_trivial());
        let i = TowerElement::sqrt_w(&t);
        assert_eq!(
            i.mul(&i).in_base(),
            Some(FieldElement::from_int(&k, -1))
        );
        assert!(i.in_base().is_none());

        // (1 + 2*sqrt3)^2 = 13 + 4*sqrt3
        let t = adjoin_sqrt(&k, &FieldElement::from_int(&k, 3)).unwrap();
        let x = TowerElement::new(
            &t,
            FieldElement::from_int(&k, 1),
            FieldElement::from_int(&k, 2),
        );
        let sq = x.mul(&x);
        assert_eq!(sq.p, FieldElement::from_int(&k, 13));
        assert_eq!(sq.q, FieldElement::from_int(&k, 4));

        // inverse round-trip
        let inv = x.inverse().unwrap();
        assert_eq!(x.mul(&inv), TowerElement::one(&t));
        assert!(matches!(
            adjoin_sqrt(&k, &FieldElement::zero(&k)),
            Err(Error::ZeroRadicand)
        ));
    }

    #[test]
    fn roots_in_extension_field() {
        // x^2 - 2 has roots +-sqrt2 in Q(sqrt2)
        let k = sqrt2_field();
        let poly = kp_from_q(&k, &vec![rat_int(-2), rat_int(0), rat_int(1)]);
        let roots = roots_in_field(&k, &poly);
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert_eq!(r.mul(r), FieldElement::from_int(&k, 2));
        }
        // x^4 - x^2 = x^2(x-1)(x+1): repeated factor exercises the
        // squarefree-part step; three rational roots seen from Q(sqrt2)
        let poly = kp_from_q(&k, &vec![rat_int(0), rat_int(0), rat_int(-1), rat_int(0), rat_int(1)]);
        let roots = roots_in_field(&k, &poly);
        assert_eq!(roots.len(), 3);
    }
}
