//! Classification of a polynomial up to linear conjugacy l(x) = ux + v into
//! the shapes the case analysis needs: P_r, +-T_r, and the x*Q(x^d) symmetry.
//!
//! The conjugator scaling u is never computed as a complex number: every
//! decidable condition downstream depends on u only through u^2 (and on v,
//! which lies in K automatically since the input has K-coefficients). This
//! reduction to K-rational data is the heart of the whole case analysis.

use std::sync::Arc;

use crate::numberfield::{is_square, FieldElement, NumberField, QuadraticTower, TowerElement};
use crate::polyring::{compose, lift_to_tower, KxPoly, Poly};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kind {
    Power,
    Chebyshev,
    Xqxd,
    Generic,
}

/// Conjugator data for l(x) = ux + v: the translation v in K, the scaling
/// through its square u^2 in K, and u itself only when it happens to lie in K.
#[derive(Debug, Clone)]
pub struct LinearConjugator {
    pub v: FieldElement,
    pub u_squared: Option<FieldElement>,
    pub u_in_k: Option<FieldElement>,
}

#[derive(Debug, Clone)]
pub struct NormalFormReport {
    pub kinds: Vec<Kind>,
    pub r: usize,
    pub conjugator: LinearConjugator,
    /// For XQXD: g = gcd{ i - 1 : centered coefficient of x^i nonzero } >= 2.
    pub xqxd_gcd: Option<usize>,
    /// For CHEBYSHEV with u in K: +1 or -1, the sign of the conjugate T_r.
    pub sign_resolved: Option<i8>,
}

impl NormalFormReport {
    pub fn has(&self, kind: Kind) -> bool {
        self.kinds.contains(&kind)
    }
}

/// Translation normal form: v = -a_{r-1}/(r a_r) and g = l^{-1} o f o l with
/// l = x + v, so that g has no x^{r-1} term.
pub fn center(f: &KxPoly) -> Result<(FieldElement, KxPoly), Error> {
    let r = f.degree().unwrap_or(0);
    if r < 2 {
        return Err(Error::DegreeTooSmall(r));
    }
    let field = &f.ring;
    let ar = f.leading();
    let denom = ar.scale(&num_rational::BigRational::from(num_bigint::BigInt::from(
        r as i64,
    )));
    let v = f.coeff(r - 1).div(&denom)?.neg();
    if v.is_zero() {
        return Ok((v, f.clone()));
    }
    // g(x) = f(x + v) - v
    let shift = Poly::new(field, vec![v.clone(), FieldElement::one(field)]);
    let g = compose(f, &shift)?.sub(&Poly::constant(field, v.clone()));
    debug_assert!(g.coeff(r - 1).is_zero());
    Ok((v, g))
}

/// Coefficient of x^{r-2j} in the monic Chebyshev polynomial T_r
/// (T_r(x + 1/x) = x^r + x^{-r}): (-1)^j * r/(r-j) * C(r-j, j).
fn dickson_coeff(r: usize, j: usize) -> num_rational::BigRational {
    use num_bigint::BigInt;
    let n = BigInt::from((r - j) as u64);
    let mut binom = BigInt::from(1u32);
    for i in 0..j {
        binom = binom * (&n - BigInt::from(i as u64)) / BigInt::from((i + 1) as u64);
    }
    let val = binom * BigInt::from(r as u64) / n;
    let signed = if j % 2 == 1 { -val } else { val };
    num_rational::BigRational::from(signed)
}

/// Classify f up to linear conjugacy. Kinds are not exclusive: a power map is
/// also XQXD (x^r = x * Q(x^{r-1})), and the report carries the full set.
pub fn classify(f: &KxPoly) -> Result<NormalFormReport, Error> {
    let r = f.degree().unwrap_or(0);
    if r < 2 {
        return Err(Error::DegreeTooSmall(r));
    }
    let field: Arc<NumberField> = f.ring.clone();
    let (v, g) = center(f)?;
    let ar = g.leading();
    let mut kinds = Vec::new();
    let mut u_squared: Option<FieldElement> = None;
    let mut u_in_k: Option<FieldElement> = None;
    let mut sign_resolved: Option<i8> = None;

    // POWER: centered form is a_r x^r exactly
    if (0..r).all(|i| g.coeff(i).is_zero()) {
        kinds.push(Kind::Power);
    }

    // CHEBYSHEV: centered form matches u * (+-T_r)(x/u) coefficient-wise.
    // Writing w = u^2, the x^{r-2j} coefficient must equal a_r * w^j * t_{r,r-2j}
    // (t_{r,k} the coefficients of T_r), with w = -a_{r-2}/(r a_r) from j = 1,
    // all other parities zero, and the leading relation a_r = +-u^{1-r}
    // eliminating u as a_r^2 * w^{r-1} = 1.
    if !kinds.contains(&Kind::Power) && !g.coeff(r - 2).is_zero() {
        let w = g
            .coeff(r - 2)
            .div(&ar.scale(&num_rational::BigRational::from(num_bigint::BigInt::from(
                r as i64,
            ))))?
            .neg();
        let mut ok = true;
        let mut wj = FieldElement::one(&field);
        for j in 0..=r / 2 {
            if j > 0 {
                wj = wj.mul(&w);
            }
            let expect = ar.mul(&wj).scale(&dickson_coeff(r, j));
            if g.coeff(r - 2 * j) != expect {
                ok = false;
                break;
            }
        }
        if ok {
            for i in (0..r).filter(|i| (r - i) % 2 == 1) {
                if !g.coeff(i).is_zero() {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            // leading relation: a_r^2 w^{r-1} = 1
            let lead = ar.mul(&ar).mul(&w.pow((r - 1) as u64));
            ok = lead == FieldElement::one(&field);
        }
        if ok {
            kinds.push(Kind::Chebyshev);
            u_in_k = is_square(&field, &w);
            if let Some(u) = &u_in_k {
                // all coefficient relations hold, so u^{-1} g(u x) = sigma T_r
                // with sigma = a_r u^{r-1} (the leading relation makes it +-1)
                let sigma = ar.mul(&u.pow((r - 1) as u64));
                if sigma == FieldElement::one(&field) {
                    sign_resolved = Some(1);
                } else {
                    debug_assert!(sigma == FieldElement::one(&field).neg());
                    sign_resolved = Some(-1);
                }
            }
            u_squared = Some(w);
        }
    }

    // XQXD: centered support inside 1 + gZ for g >= 2 (so g commutes with
    // x -> eps x for eps of order dividing g)
    let mut xqxd_gcd = None;
    let support = g.support();
    if support.iter().all(|&i| i >= 1) {
        let mut d = 0usize;
        for &i in &support {
            d = num_integer::Integer::gcd(&d, &(i - 1));
        }
        if d >= 2 {
            xqxd_gcd = Some(d);
            kinds.push(Kind::Xqxd);
        }
    }

    if kinds.is_empty() {
        kinds.push(Kind::Generic);
    }
    kinds.sort();

    Ok(NormalFormReport {
        kinds,
        r,
        conjugator: LinearConjugator {
            v,
            u_squared,
            u_in_k,
        },
        xqxd_gcd,
        sign_resolved,
    })
}

/// Materialize f(sqrt(w) x + v) over the tower K(sqrt w).
pub fn conjugate_by(
    f: &KxPoly,
    v: &FieldElement,
    tower: &Arc<QuadraticTower>,
) -> Poly<Arc<QuadraticTower>> {
    let lifted = lift_to_tower(f, tower);
    let l = Poly::new(
        tower,
        vec![
            TowerElement::from_base(tower, v.clone()),
            TowerElement::sqrt_w(tower),
        ],
    );
    compose(&lifted, &l).expect("same tower")
}
