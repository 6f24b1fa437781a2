//! Univariate polynomial algebra over K or over a quadratic tower K(sqrt w):
//! composition, the power and Chebyshev families, Chebyshev-basis expansion,
//! exponent-support form checks, outer-factor extraction and functional
//! decomposition (Ritt-style, by undetermined coefficients).

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::numberfield::{FieldElement, NumberField, QuadraticTower, TowerElement};
use crate::Error;

/// Coefficient-ring context passed around explicitly (elements don't all
/// carry enough data to create new ones on their own).
pub trait Ring: Clone {
    type El: Clone + PartialEq + Debug;
    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn inv(&self, a: &Self::El) -> Result<Self::El, Error>;
    fn from_rat(&self, c: &BigRational) -> Self::El;
    fn is_zero(&self, a: &Self::El) -> bool;
    fn same_ring(&self, other: &Self) -> bool;

    fn from_int(&self, c: i64) -> Self::El {
        self.from_rat(&BigRational::from(BigInt::from(c)))
    }
}

impl Ring for Arc<NumberField> {
    type El = FieldElement;
    fn zero(&self) -> FieldElement {
        FieldElement::zero(self)
    }
    fn one(&self) -> FieldElement {
        FieldElement::one(self)
    }
    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a.add(b)
    }
    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a.sub(b)
    }
    fn neg(&self, a: &FieldElement) -> FieldElement {
        a.neg()
    }
    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a.mul(b)
    }
    fn inv(&self, a: &FieldElement) -> Result<FieldElement, Error> {
        a.inverse()
    }
    fn from_rat(&self, c: &BigRational) -> FieldElement {
        FieldElement::from_rat(self, c.clone())
    }
    fn is_zero(&self, a: &FieldElement) -> bool {
        a.is_zero()
    }
    fn same_ring(&self, other: &Self) -> bool {
        self.minpoly() == other.minpoly()
    }
}

impl Ring for Arc<QuadraticTower> {
    type El = TowerElement;
    fn zero(&self) -> TowerElement {
        TowerElement::zero(self)
    }
    fn one(&self) -> TowerElement {
        TowerElement::one(self)
    }
    fn add(&self, a: &TowerElement, b: &TowerElement) -> TowerElement {
        a.add(b)
    }
    fn sub(&self, a: &TowerElement, b: &TowerElement) -> TowerElement {
        a.sub(b)
    }
    fn neg(&self, a: &TowerElement) -> TowerElement {
        a.neg()
    }
    fn mul(&self, a: &TowerElement, b: &TowerElement) -> TowerElement {
        a.mul(b)
    }
    fn inv(&self, a: &TowerElement) -> Result<TowerElement, Error> {
        a.inverse()
    }
    fn from_rat(&self, c: &BigRational) -> TowerElement {
        TowerElement::from_base(self, FieldElement::from_rat(&self.base, c.clone()))
    }
    fn is_zero(&self, a: &TowerElement) -> bool {
        a.is_zero()
    }
    fn same_ring(&self, other: &Self) -> bool {
        self.base.minpoly() == other.base.minpoly() && self.w == other.w
    }
}

/// Dense univariate polynomial; `coeffs[i]` is the coefficient of x^i, with
/// no trailing zeros.
#[derive(Debug, Clone)]
pub struct Poly<R: Ring> {
    pub ring: R,
    coeffs: Vec<R::El>,
}

impl<R: Ring> PartialEq for Poly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}
impl<R: Ring> Eq for Poly<R> {}

impl<R: Ring> Poly<R> {
    pub fn new(ring: &R, mut coeffs: Vec<R::El>) -> Poly<R> {
        while coeffs.last().map_or(false, |c| ring.is_zero(c)) {
            coeffs.pop();
        }
        Poly {
            ring: ring.clone(),
            coeffs,
        }
    }

    pub fn zero(ring: &R) -> Poly<R> {
        Poly::new(ring, Vec::new())
    }

    pub fn constant(ring: &R, c: R::El) -> Poly<R> {
        Poly::new(ring, vec![c])
    }

    pub fn x(ring: &R) -> Poly<R> {
        Poly::new(ring, vec![ring.zero(), ring.one()])
    }

    pub fn from_ints(ring: &R, cs: &[i64]) -> Poly<R> {
        Poly::new(ring, cs.iter().map(|&c| ring.from_int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> R::El {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn coeffs(&self) -> &[R::El] {
        &self.coeffs
    }

    pub fn leading(&self) -> R::El {
        self.coeffs.last().cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn add(&self, other: &Poly<R>) -> Poly<R> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.ring.add(&self.coeff(i), &other.coeff(i)));
        }
        Poly::new(&self.ring, out)
    }

    pub fn sub(&self, other: &Poly<R>) -> Poly<R> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.ring.sub(&self.coeff(i), &other.coeff(i)));
        }
        Poly::new(&self.ring, out)
    }

    pub fn neg(&self) -> Poly<R> {
        Poly::new(
            &self.ring,
            self.coeffs.iter().map(|c| self.ring.neg(c)).collect(),
        )
    }

    pub fn mul(&self, other: &Poly<R>) -> Poly<R> {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ring);
        }
        let mut out = vec![self.ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if self.ring.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = self.ring.add(&out[i + j], &self.ring.mul(a, b));
            }
        }
        Poly::new(&self.ring, out)
    }

    pub fn scale(&self, c: &R::El) -> Poly<R> {
        Poly::new(
            &self.ring,
            self.coeffs.iter().map(|a| self.ring.mul(a, c)).collect(),
        )
    }

    pub fn eval(&self, x: &R::El) -> R::El {
        let mut acc = self.ring.zero();
        for c in self.coeffs.iter().rev() {
            acc = self.ring.add(&self.ring.mul(&acc, x), c);
        }
        acc
    }

    /// Support: exponents with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.ring.is_zero(c))
            .map(|(i, _)| i)
            .collect()
    }

    /// Horner division by a monic divisor.
    pub fn divrem(&self, g: &Poly<R>) -> Result<(Poly<R>, Poly<R>), Error> {
        assert!(!g.is_zero(), "division by zero polynomial");
        let lg_inv = self.ring.inv(&g.leading())?;
        let mut rem = self.coeffs.clone();
        while rem.last().map_or(false, |c| self.ring.is_zero(c)) {
            rem.pop();
        }
        let mut quo: Vec<R::El> = Vec::new();
        while rem.len() >= g.coeffs.len() && !rem.is_empty() {
            let shift = rem.len() - g.coeffs.len();
            let c = self.ring.mul(rem.last().unwrap(), &lg_inv);
            if quo.len() < shift + 1 {
                quo.resize(shift + 1, self.ring.zero());
            }
            quo[shift] = c.clone();
            for (j, b) in g.coeffs.iter().enumerate() {
                let t = self.ring.mul(&c, b);
                rem[shift + j] = self.ring.sub(&rem[shift + j], &t);
            }
            while rem.last().map_or(false, |c| self.ring.is_zero(c)) {
                rem.pop();
            }
        }
        Ok((Poly::new(&self.ring, quo), Poly::new(&self.ring, rem)))
    }
}

/// f(g(x)), by Horner over the coefficient ring.
pub fn compose<R: Ring>(f: &Poly<R>, g: &Poly<R>) -> Result<Poly<R>, Error> {
    if !f.ring.same_ring(&g.ring) {
        return Err(Error::FieldMismatch);
    }
    let mut acc = Poly::zero(&f.ring);
    for c in f.coeffs.iter().rev() {
        acc = acc.mul(g).add(&Poly::constant(&f.ring, c.clone()));
    }
    Ok(acc)
}

/// P_r = x^r.
pub fn power_map<R: Ring>(ring: &R, r: usize) -> Poly<R> {
    assert!(r >= 1);
    let mut coeffs = vec![ring.zero(); r + 1];
    coeffs[r] = ring.one();
    Poly::new(ring, coeffs)
}

/// T_r in the paper's normalization: T_r(x + 1/x) = x^r + x^(-r);
/// T_1 = x, T_2 = x^2 - 2, T_(n+1) = x*T_n - T_(n-1) (with T_0 = 2).
pub fn chebyshev<R: Ring>(ring: &R, r: usize) -> Poly<R> {
    assert!(r >= 1);
    let x = Poly::x(ring);
    let mut prev = Poly::constant(ring, ring.from_int(2)); // T_0
    let mut cur = x.clone(); // T_1
    for _ in 1..r {
        let next = x.mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur
}

// ---------------------------------------------------------------------------
// Laurent polynomials
// ---------------------------------------------------------------------------

/// Finitely supported map exponent -> coefficient, exponents in Z.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentPoly<R: Ring> {
    pub ring: R,
    pub coeffs: BTreeMap<i64, R::El>,
}

impl<R: Ring> LaurentPoly<R> {
    pub fn zero(ring: &R) -> LaurentPoly<R> {
        LaurentPoly {
            ring: ring.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    /// x + 1/x, the paper's semiconjugacy pi.
    pub fn pi(ring: &R) -> LaurentPoly<R> {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(1, ring.one());
        coeffs.insert(-1, ring.one());
        LaurentPoly {
            ring: ring.clone(),
            coeffs,
        }
    }

    pub fn monomial(ring: &R, e: i64, c: R::El) -> LaurentPoly<R> {
        let mut coeffs = BTreeMap::new();
        if !ring.is_zero(&c) {
            coeffs.insert(e, c);
        }
        LaurentPoly {
            ring: ring.clone(),
            coeffs,
        }
    }

    pub fn add(&self, other: &LaurentPoly<R>) -> LaurentPoly<R> {
        let mut out = self.coeffs.clone();
        for (e, c) in &other.coeffs {
            let v = match out.get(e) {
                Some(a) => self.ring.add(a, c),
                None => c.clone(),
            };
            if self.ring.is_zero(&v) {
                out.remove(e);
            } else {
                out.insert(*e, v);
            }
        }
        LaurentPoly {
            ring: self.ring.clone(),
            coeffs: out,
        }
    }

    pub fn mul(&self, other: &LaurentPoly<R>) -> LaurentPoly<R> {
        let mut out: BTreeMap<i64, R::El> = BTreeMap::new();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                let e = e1 + e2;
                let t = self.ring.mul(c1, c2);
                let v = match out.get(&e) {
                    Some(a) => self.ring.add(a, &t),
                    None => t,
                };
                if self.ring.is_zero(&v) {
                    out.remove(&e);
                } else {
                    out.insert(e, v);
                }
            }
        }
        LaurentPoly {
            ring: self.ring.clone(),
            coeffs: out,
        }
    }

    pub fn coeff(&self, e: i64) -> R::El {
        self.coeffs.get(&e).cloned().unwrap_or_else(|| self.ring.zero())
    }
}

/// f(s(x)) exactly in the Laurent ring.
pub fn laurent_substitute<R: Ring>(f: &Poly<R>, s: &LaurentPoly<R>) -> LaurentPoly<R> {
    let mut acc = LaurentPoly::zero(&f.ring);
    for c in f.coeffs.iter().rev() {
        acc = acc
            .mul(s)
            .add(&LaurentPoly::monomial(&f.ring, 0, c.clone()));
    }
    acc
}

// ---------------------------------------------------------------------------
// Chebyshev-basis expansion
// ---------------------------------------------------------------------------

/// f = a0 * 1 + sum_{i>=1} a_i T_i; basis {1, T_1, T_2, ...} (the constant
/// basis vector is 1, not T_0 = 2).
#[derive(Debug, Clone, PartialEq)]
pub struct ChebExpansion<R: Ring> {
    pub a0: R::El,
    pub a: BTreeMap<usize, R::El>,
}

/// Expansion via the semiconjugacy: the coefficient of z^i in f(z + 1/z) is
/// exactly a_i (and the z^0 coefficient is a0), since T_i(z + 1/z) = z^i + z^-i.
pub fn cheb_expand<R: Ring>(f: &Poly<R>) -> ChebExpansion<R> {
    let lifted = laurent_substitute(f, &LaurentPoly::pi(&f.ring));
    let mut a = BTreeMap::new();
    for (e, c) in &lifted.coeffs {
        if *e >= 1 {
            a.insert(*e as usize, c.clone());
        }
    }
    ChebExpansion {
        a0: lifted.coeff(0),
        a,
    }
}

/// Reconstruct a0 + sum a_i T_i (test helper and round-trip certificate).
pub fn cheb_reconstruct<R: Ring>(ring: &R, e: &ChebExpansion<R>) -> Poly<R> {
    let mut out = Poly::constant(ring, e.a0.clone());
    for (i, c) in &e.a {
        out = out.add(&chebyshev(ring, *i).scale(c));
    }
    out
}

// ---------------------------------------------------------------------------
// Support form checks
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormKind {
    /// monomial support contained in d*Z: f = P(x^d)
    PowerInner,
    /// monomial support contained in 1 + d*Z: f = x*Q(x^d)
    LinearTimes,
    /// Chebyshev-basis support contained in d*Z (index 0 allowed): f = P(T_d)
    ChebInner,
}

pub fn form_check<R: Ring>(f: &Poly<R>, d: usize, kind: FormKind) -> bool {
    assert!(d >= 2);
    match kind {
        FormKind::PowerInner => f.support().iter().all(|&i| i % d == 0),
        FormKind::LinearTimes => f.support().iter().all(|&i| i % d == 1),
        FormKind::ChebInner => {
            // the top Chebyshev index equals deg f, so this is a cheap filter
            match f.degree() {
                None => true,
                Some(n) if n % d != 0 => false,
                Some(_) => cheb_expand(f).a.keys().all(|&i| i % d == 0),
            }
        }
    }
}

/// The outer factor P with P(x^d) = f (POWER_INNER) or P(T_d(x)) = f
/// (CHEB_INNER); verified by recomposition.
pub fn extract_outer<R: Ring>(f: &Poly<R>, d: usize, kind: FormKind) -> Result<Poly<R>, Error> {
    assert!(d >= 2);
    let p = match kind {
        FormKind::PowerInner => {
            if !form_check(f, d, kind) {
                return Err(Error::FormViolation("POWER_INNER".into()));
            }
            let n = f.degree().unwrap_or(0);
            let coeffs: Vec<R::El> = (0..=n / d).map(|j| f.coeff(j * d)).collect();
            Poly::new(&f.ring, coeffs)
        }
        FormKind::ChebInner => {
            if !form_check(f, d, kind) {
                return Err(Error::FormViolation("CHEB_INNER".into()));
            }
            let e = cheb_expand(f);
            // P = a0 + sum_j a_{jd} T_j, since T_j(T_d) = T_{jd}
            let mut p = Poly::constant(&f.ring, e.a0.clone());
            for (i, c) in &e.a {
                p = p.add(&chebyshev(&f.ring, i / d).scale(c));
            }
            p
        }
        FormKind::LinearTimes => {
            return Err(Error::FormViolation(
                "LINEAR_TIMES has no outer factor".into(),
            ))
        }
    };
    // postcondition: recomposition is exact
    let inner = match kind {
        FormKind::PowerInner => power_map(&f.ring, d),
        _ => chebyshev(&f.ring, d),
    };
    let back = compose(&p, &inner)?;
    if &back != f {
        return Err(Error::FormViolation("recomposition mismatch".into()));
    }
    Ok(p)
}

// ---------------------------------------------------------------------------
// Functional decomposition
// ---------------------------------------------------------------------------

/// Complete decomposition of f into indecomposable factors (each of degree
/// >= 2), outermost first; composing the result reproduces f exactly.
/// Right-factor degrees are scanned in increasing order (decompositions are
/// not unique; the order makes ours deterministic).
pub fn decompose<R: Ring>(f: &Poly<R>) -> Vec<Poly<R>> {
    let n = f.degree().expect("decompose of zero polynomial");
    assert!(n >= 2);
    for e in 2..n {
        if n % e != 0 {
            continue;
        }
        if let Some((h, g)) = split_at_degree(f, e) {
            let mut out = decompose(&h);
            out.push(g);
            return out;
        }
    }
    vec![f.clone()]
}

/// Try f = h o g with deg g = e (2 <= e < deg f, e | deg f); g is normalized
/// monic with g(0) = 0, which makes it unique if it exists.
fn split_at_degree<R: Ring>(f: &Poly<R>, e: usize) -> Option<(Poly<R>, Poly<R>)> {
    let ring = &f.ring;
    let n = f.degree().unwrap();
    let m = n / e; // degree of the outer factor
    let lc_inv = ring.inv(&f.leading()).ok()?;
    let fm = f.scale(&lc_inv); // monic

    // solve for g = x^e + b_{e-1} x^{e-1} + ... + b_1 x from the top
    // coefficients of fm = g^m + (lower order): the coefficient of x^{n-k}
    // in g^m is m*b_{e-k} + (terms in already-known b's), k = 1..e-1.
    let mut g = power_map(ring, e);
    let m_inv = ring.inv(&ring.from_int(m as i64)).ok()?;
    for k in 1..e {
        let mut gm = Poly::constant(ring, ring.one());
        for _ in 0..m {
            gm = gm.mul(&g);
        }
        let want = fm.coeff(n - k);
        let have = gm.coeff(n - k);
        let b = ring.mul(&ring.sub(&want, &have), &m_inv);
        let mut coeffs = g.coeffs().to_vec();
        coeffs[e - k] = b;
        g = Poly::new(ring, coeffs);
    }

    // base-g digit expansion of fm: h exists iff every digit is constant
    let mut digits: Vec<R::El> = Vec::new();
    let mut rest = fm;
    loop {
        let (q, r) = rest.divrem(&g).ok()?;
        match r.degree() {
            None => digits.push(ring.zero()),
            Some(0) => digits.push(r.coeff(0)),
            Some(_) => return None,
        }
        if q.is_zero() {
            break;
        }
        rest = q;
    }
    let h_m = Poly::new(ring, digits);
    if h_m.degree() != Some(m) {
        return None;
    }
    let h = h_m.scale(&f.leading());
    debug_assert!(compose(&h, &g).unwrap() == *f);
    Some((h, g))
}

// ---------------------------------------------------------------------------
// Display / keys for polynomials over a number field
// ---------------------------------------------------------------------------

pub type KxPoly = Poly<Arc<NumberField>>;

impl KxPoly {
    /// Text form that the CLI grammar re-parses, e.g. "x^3 - 2*x".
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let xs = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{}", i),
            };
            let cs = match c.as_rational() {
                Some(q) => {
                    if q == BigRational::from(BigInt::from(1)) && i > 0 {
                        String::new()
                    } else if q == BigRational::from(BigInt::from(-1)) && i > 0 {
                        "-".to_string()
                    } else {
                        crate::arith::rat_to_string(&q)
                    }
                }
                None => format!("({})", c),
            };
            let term = match (cs.as_str(), xs.as_str()) {
                (c, "") => c.to_string(),
                ("", x) => x.to_string(),
                ("-", x) => format!("-{}", x),
                (c, x) => format!("{}*{}", c, x),
            };
            parts.push(term);
        }
        let mut out = String::new();
        for (i, p) in parts.iter().enumerate() {
            if i == 0 {
                out.push_str(p);
            } else if let Some(stripped) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(stripped);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        out
    }

    /// Deterministic total-order key for dedup and sorting.
    pub fn sort_key(&self) -> Vec<Vec<BigRational>> {
        self.coeffs.iter().map(|c| c.cmp_key()).collect()
    }
}

/// Lift a polynomial over K to the tower K(sqrt w).
pub fn lift_to_tower(f: &KxPoly, tower: &Arc<QuadraticTower>) -> Poly<Arc<QuadraticTower>> {
    Poly::new(
        tower,
        f.coeffs()
            .iter()
            .map(|c| TowerElement::from_base(tower, c.clone()))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn qq() -> Arc<NumberField> {
        NumberField::rationals()
    }

    #[test]
    fn compose_examples() {
        let k = qq();
        let f = power_map(&k, 2);
        let g = Poly::from_ints(&k, &[1, 1]);
        assert_eq!(compose(&f, &g).unwrap(), Poly::from_ints(&k, &[1, 2, 1]));
        // T2 o T3 = T6
        assert_eq!(
            compose(&chebyshev(&k, 2), &chebyshev(&k, 3)).unwrap(),
            Poly::from_ints(&k, &[-2, 0, 9, 0, -6, 0, 1])
        );
        // identity
        let h = Poly::from_ints(&k, &[3, -1, 0, 2]);
        assert_eq!(compose(&h, &Poly::x(&k)).unwrap(), h);
    }

    #[test]
    fn chebyshev_family() {
        let k = qq();
        assert_eq!(chebyshev(&k, 1), Poly::x(&k));
        assert_eq!(chebyshev(&k, 2), Poly::from_ints(&k, &[-2, 0, 1]));
        assert_eq!(chebyshev(&k, 3), Poly::from_ints(&k, &[0, -3, 0, 1]));
        assert_eq!(chebyshev(&k, 4), Poly::from_ints(&k, &[2, 0, -4, 0, 1]));
    }

    #[test]
    fn nesting_identities() {
        let k = qq();
        for m in 1..=8usize {
            for n in 1..=8usize {
                assert_eq!(
                    compose(&chebyshev(&k, m), &chebyshev(&k, n)).unwrap(),
                    chebyshev(&k, m * n)
                );
                assert_eq!(
                    compose(&power_map(&k, m), &power_map(&k, n)).unwrap(),
                    power_map(&k, m * n)
                );
            }
        }
    }

    #[test]
    fn semiconjugacy() {
        let k = qq();
        let pi = LaurentPoly::pi(&k);
        for r in 1..=10usize {
            let lhs = laurent_substitute(&chebyshev(&k, r), &pi);
            let mut expect = LaurentPoly::monomial(&k, r as i64, k.one());
            expect = expect.add(&LaurentPoly::monomial(&k, -(r as i64), k.one()));
            assert_eq!(lhs, expect);
        }
    }

    #[test]
    fn cheb_expansion_examples() {
        let k = qq();
        // x^2 = T2 + 2
        let e = cheb_expand(&power_map(&k, 2));
        assert_eq!(e.a0, k.from_int(2));
        assert_eq!(e.a.get(&2), Some(&k.one()));
        assert_eq!(e.a.len(), 1);
        // x^3 = T3 + 3*T1
        let e = cheb_expand(&power_map(&k, 3));
        assert_eq!(e.a0, k.zero());
        assert_eq!(e.a.get(&3), Some(&k.one()));
        assert_eq!(e.a.get(&1), Some(&k.from_int(3)));
        // constant
        let e = cheb_expand(&Poly::from_ints(&k, &[5]));
        assert_eq!(e.a0, k.from_int(5));
        assert!(e.a.is_empty());
    }

    #[test]
    fn cheb_roundtrip_random() {
        let k = qq();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let deg = rng.gen_range(0..=12);
            let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-9..10)).collect();
            let f = Poly::from_ints(&k, &coeffs);
            let e = cheb_expand(&f);
            assert_eq!(cheb_reconstruct(&k, &e), f);
            if let Some(d) = f.degree() {
                if d >= 1 {
                    assert_eq!(e.a.keys().max(), Some(&d));
                }
            }
        }
    }

    #[test]
    fn form_checks() {
        let k = qq();
        // x^6 + 2x^3 - 1 has exponents 6,3,0
        let f = Poly::new(&k, {
            let mut v = vec![k.from_int(-1), k.zero(), k.zero(), k.from_int(2)];
            v.extend([k.zero(), k.zero(), k.one()]);
            v
        });
        assert!(form_check(&f, 3, FormKind::PowerInner));
        assert!(!form_check(&f, 4, FormKind::PowerInner));
        // x^3 - 2x: exponents 3, 1, both = 1 mod 2
        let g = Poly::from_ints(&k, &[0, -2, 0, 1]);
        assert!(form_check(&g, 2, FormKind::LinearTimes));
        // T6 is P(T_3); adding x breaks it
        let t6 = chebyshev(&k, 6);
        assert!(form_check(&t6, 3, FormKind::ChebInner));
        assert!(!form_check(&t6.add(&Poly::x(&k)), 3, FormKind::ChebInner));
    }

    #[test]
    fn outer_extraction() {
        let k = qq();
        // x^6 + 2x^3 = (y^2 + 2y) o x^3
        let mut v = vec![k.zero(), k.zero(), k.zero(), k.from_int(2)];
        v.extend([k.zero(), k.zero(), k.one()]);
        let f = Poly::new(&k, v);
        assert_eq!(
            extract_outer(&f, 3, FormKind::PowerInner).unwrap(),
            Poly::from_ints(&k, &[0, 2, 1])
        );
        // T6 = T2 o T3
        assert_eq!(
            extract_outer(&chebyshev(&k, 6), 3, FormKind::ChebInner).unwrap(),
            chebyshev(&k, 2)
        );
        // x^2 = (y + 2) o T2
        assert_eq!(
            extract_outer(&power_map(&k, 2), 2, FormKind::ChebInner).unwrap(),
            Poly::from_ints(&k, &[2, 1])
        );
        assert!(extract_outer(&power_map(&k, 3), 2, FormKind::PowerInner).is_err());
    }

    #[test]
    fn decompose_examples() {
        let k = qq();
        // x^6 decomposes; product reproduces
        let f = power_map(&k, 6);
        let parts = decompose(&f);
        assert_eq!(parts.len(), 2);
        let back = parts
            .iter()
            .skip(1)
            .fold(parts[0].clone(), |acc, g| compose(&acc, g).unwrap());
        assert_eq!(back, f);
        // x^4 + 2x^2 = (x^2 + 2x) o x^2
        let f = Poly::from_ints(&k, &[0, 0, 2, 0, 1]);
        let parts = decompose(&f);
        assert_eq!(parts, vec![
            Poly::from_ints(&k, &[0, 2, 1]),
            Poly::from_ints(&k, &[0, 0, 1]),
        ]);
        // prime degree is indecomposable
        let f = Poly::from_ints(&k, &[0, -2, 0, 1]);
        assert_eq!(decompose(&f), vec![f.clone()]);
        // T12 decomposes into indecomposables whose composition is T12
        let f = chebyshev(&k, 12);
        let parts = decompose(&f);
        assert!(parts.len() >= 2);
        let back = parts
            .iter()
            .skip(1)
            .fold(parts[0].clone(), |acc, g| compose(&acc, g).unwrap());
        assert_eq!(back, f);
        for p in &parts {
            assert!(p.degree().unwrap() >= 2);
            if p.degree().unwrap() > 3 {
                assert_eq!(decompose(p).len(), 1);
            }
        }
    }

    #[test]
    fn oddness_closure() {
        let k = qq();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let mk = |rng: &mut ChaCha8Rng| {
                let deg = 2 * rng.gen_range(1..4) + 1;
                let mut coeffs = vec![0i64; deg + 1];
                for i in (1..=deg).step_by(2) {
                    coeffs[i] = rng.gen_range(-5..6);
                }
                coeffs[deg] = 1;
                Poly::from_ints(&k, &coeffs)
            };
            let f = mk(&mut rng);
            let g = mk(&mut rng);
            let fg = compose(&f, &g).unwrap();
            assert!(fg.support().iter().all(|i| i % 2 == 1));
        }
    }

    #[test]
    fn text_roundtrippable_forms() {
        let k = qq();
        assert_eq!(Poly::from_ints(&k, &[0, -2, 0, 1]).to_text(), "x^3 - 2*x");
        assert_eq!(Poly::from_ints(&k, &[1]).to_text(), "1");
        assert_eq!(Poly::zero(&k).to_text(), "0");
        assert_eq!(chebyshev(&k, 2).to_text(), "x^2 - 2");
    }
}
