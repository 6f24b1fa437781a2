//! Invariant plane curves attached to each obstruction case, their two
//! algebraic certificates (invariance under (h1, h1) and collapse of h2 to
//! the diagonal), exact counterexample-pair generation, and a brute-force
//! collision oracle used for cross-validation.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::conics::{conic_points_from, Conic};
use crate::numberfield::{FieldElement, NumberField};
use crate::polyring::KxPoly;
use crate::Error;

/// Finitely supported bivariate polynomial over K; key = (deg X, deg Y).
#[derive(Debug, Clone, PartialEq)]
pub struct Bivariate {
    pub field: Arc<NumberField>,
    pub terms: BTreeMap<(u32, u32), FieldElement>,
}

impl Bivariate {
    pub fn zero(field: &Arc<NumberField>) -> Bivariate {
        Bivariate {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        field: &Arc<NumberField>,
        terms: Vec<((u32, u32), FieldElement)>,
    ) -> Bivariate {
        let mut b = Bivariate::zero(field);
        for (k, c) in terms {
            b.accumulate(k, c);
        }
        b
    }

    fn accumulate(&mut self, key: (u32, u32), c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get(&key) {
            Some(old) => {
                let v = old.add(&c);
                if v.is_zero() {
                    self.terms.remove(&key);
                } else {
                    self.terms.insert(key, v);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Bivariate) -> Bivariate {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.accumulate(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Bivariate) -> Bivariate {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.accumulate(*k, c.neg());
        }
        out
    }

    pub fn mul(&self, other: &Bivariate) -> Bivariate {
        let mut out = Bivariate::zero(&self.field);
        for ((i1, j1), c1) in &self.terms {
            for ((i2, j2), c2) in &other.terms {
                out.accumulate((i1 + i2, j1 + j2), c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &FieldElement) -> Bivariate {
        let mut out = Bivariate::zero(&self.field);
        for (k, v) in &self.terms {
            out.accumulate(*k, v.mul(c));
        }
        out
    }

    pub fn eval(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero(&self.field);
        for ((i, j), c) in &self.terms {
            acc = acc.add(&c.mul(&x.pow(*i as u64)).mul(&y.pow(*j as u64)));
        }
        acc
    }

    /// Substitute X -> fx(X), Y -> fy(Y).
    pub fn subst_univariate(&self, fx: &KxPoly, fy: &KxPoly) -> Bivariate {
        let field = &self.field;
        let max_i = self.terms.keys().map(|k| k.0).max().unwrap_or(0);
        let max_j = self.terms.keys().map(|k| k.1).max().unwrap_or(0);
        // cache powers of fx and fy as univariate coefficient vectors
        let powers = |f: &KxPoly, m: u32| -> Vec<Vec<FieldElement>> {
            let mut out = vec![vec![FieldElement::one(field)]];
            let fc: Vec<FieldElement> = f.coeffs().to_vec();
            for _ in 1..=m {
                let prev = out.last().unwrap();
                let mut next = vec![FieldElement::zero(field); prev.len() + fc.len() - 1];
                for (i, a) in prev.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in fc.iter().enumerate() {
                        next[i + j] = next[i + j].add(&a.mul(b));
                    }
                }
                out.push(next);
            }
            out
        };
        let px = powers(fx, max_i);
        let py = powers(fy, max_j);
        let mut out = Bivariate::zero(field);
        for ((i, j), c) in &self.terms {
            for (a, ca) in px[*i as usize].iter().enumerate() {
                if ca.is_zero() {
                    continue;
                }
                for (b, cb) in py[*j as usize].iter().enumerate() {
                    out.accumulate((a as u32, b as u32), c.mul(ca).mul(cb));
                }
            }
        }
        out
    }

    fn lead(&self) -> Option<((u32, u32), FieldElement)> {
        self.terms
            .iter()
            .next_back()
            .map(|(k, v)| (*k, v.clone()))
    }

    /// Does self divide g exactly? Single-divisor lex reduction: one
    /// polynomial is a Groebner basis of the principal ideal it generates,
    /// so the remainder vanishes iff g is a multiple.
    pub fn divides(&self, g: &Bivariate) -> bool {
        assert!(!self.is_zero());
        let (lk, lc) = self.lead().unwrap();
        let lc_inv = lc.inverse().unwrap();
        let mut rem = g.clone();
        loop {
            // find the largest reducible term
            let target = rem
                .terms
                .iter()
                .rev()
                .find(|((i, j), _)| *i >= lk.0 && *j >= lk.1)
                .map(|(k, v)| (*k, v.clone()));
            let Some(((i, j), c)) = target else {
                return rem.is_zero();
            };
            let factor = c.mul(&lc_inv);
            let shift = (i - lk.0, j - lk.1);
            for (k, v) in &self.terms {
                let key = (k.0 + shift.0, k.1 + shift.1);
                rem.accumulate(key, v.mul(&factor).neg());
            }
        }
    }

    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for ((i, j), c) in self.terms.iter().rev() {
            let mono = match (i, j) {
                (0, 0) => String::new(),
                (i, 0) if *i == 1 => "X".into(),
                (i, 0) => format!("X^{}", i),
                (0, 1) => "Y".into(),
                (0, j) => format!("Y^{}", j),
                (1, 1) => "X*Y".into(),
                (i, j) => {
                    let xs = if *i == 1 { "X".into() } else { format!("X^{}", i) };
                    let ys = if *j == 1 { "Y".into() } else { format!("Y^{}", j) };
                    format!("{}*{}", xs, ys)
                }
            };
            let cs = format!("{}", c);
            let term = if mono.is_empty() {
                cs
            } else if cs == "1" {
                mono
            } else if cs == "-1" {
                format!("-{}", mono)
            } else if cs.contains('+') || cs.contains('*') {
                format!("({})*{}", cs, mono)
            } else {
                format!("{}*{}", cs, mono)
            };
            parts.push(term);
        }
        let mut out = String::new();
        for (i, p) in parts.iter().enumerate() {
            if i == 0 {
                out.push_str(p);
            } else if let Some(s) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(s);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        out
    }
}

pub fn bivariate_from_conic(c: &Conic) -> Bivariate {
    Bivariate::from_terms(
        &c.field,
        vec![
            ((2, 0), c.cxx.clone()),
            ((1, 1), c.cxy.clone()),
            ((0, 2), c.cyy.clone()),
            ((1, 0), c.cx.clone()),
            ((0, 1), c.cy.clone()),
            ((0, 0), c.c1.clone()),
        ],
    )
}

// ---------------------------------------------------------------------------
// Invariant curves and their certificates
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CaseTag {
    Case1,
    Case2,
    Case3a,
    Case3b,
}

impl CaseTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::Case1 => "CASE1",
            CaseTag::Case2 => "CASE2",
            CaseTag::Case3a => "CASE3A",
            CaseTag::Case3b => "CASE3B",
        }
    }
}

/// How to produce points on the curve.
#[derive(Debug, Clone)]
pub enum CurveParam {
    /// Y = slope*X + intercept
    Line {
        slope: FieldElement,
        intercept: FieldElement,
    },
    /// nondegenerate conic with a known point
    ConicThrough {
        conic: Conic,
        point: (FieldElement, FieldElement),
    },
    /// conic solved only conditionally (no point available)
    None,
}

#[derive(Debug, Clone)]
pub struct InvariantCurve {
    pub equation: Bivariate,
    pub case: CaseTag,
    pub param: CurveParam,
}

/// Everything `invariant_curve` needs from an obstruction witness.
pub struct CurveSpec<'a> {
    pub case: CaseTag,
    pub h1: &'a KxPoly,
    pub h2: &'a KxPoly,
    pub v: &'a FieldElement,
    /// epsilon in K (cases 1 and 2)
    pub epsilon: Option<&'a FieldElement>,
    /// the case-3(b) conic and its point when found
    pub conic: Option<(&'a Conic, Option<(FieldElement, FieldElement)>)>,
}

/// Build the case's invariant curve and verify both certificates by exact
/// division; a failure here means a bug, so it is a hard error.
pub fn invariant_curve(spec: &CurveSpec) -> Result<InvariantCurve, Error> {
    let field = &spec.h1.ring;
    let one = FieldElement::one(field);
    let (equation, param) = match spec.case {
        CaseTag::Case1 | CaseTag::Case2 => {
            // C = V(Y - eps X - v(1 - eps))
            let eps = spec
                .epsilon
                .ok_or_else(|| Error::CertificateFailure("missing epsilon".into()))?;
            let intercept = spec.v.mul(&one.sub(eps));
            let eq = Bivariate::from_terms(
                field,
                vec![
                    ((0, 1), one.clone()),
                    ((1, 0), eps.neg()),
                    ((0, 0), intercept.neg()),
                ],
            );
            (
                eq,
                CurveParam::Line {
                    slope: eps.clone(),
                    intercept,
                },
            )
        }
        CaseTag::Case3a => {
            // C = V(Y + X - 2v)
            let two_v = spec.v.add(spec.v);
            let eq = Bivariate::from_terms(
                field,
                vec![
                    ((0, 1), one.clone()),
                    ((1, 0), one.clone()),
                    ((0, 0), two_v.neg()),
                ],
            );
            (
                eq,
                CurveParam::Line {
                    slope: FieldElement::from_int(field, -1),
                    intercept: two_v,
                },
            )
        }
        CaseTag::Case3b => {
            let (conic, point) = spec
                .conic
                .as_ref()
                .ok_or_else(|| Error::CertificateFailure("missing conic".into()))?;
            let eq = bivariate_from_conic(conic);
            let param = match point {
                Some(p) => CurveParam::ConicThrough {
                    conic: (*conic).clone(),
                    point: p.clone(),
                },
                None => CurveParam::None,
            };
            (eq, param)
        }
    };
    if !verify_invariance(&equation, spec.h1) {
        return Err(Error::CertificateFailure(format!(
            "{}: curve not (h1,h1)-invariant",
            spec.case.as_str()
        )));
    }
    if !verify_collapse(&equation, spec.h2) {
        return Err(Error::CertificateFailure(format!(
            "{}: h2 does not collapse the curve to the diagonal",
            spec.case.as_str()
        )));
    }
    Ok(InvariantCurve {
        equation,
        case: spec.case,
        param,
    })
}

/// (h1, h1)(C) inside C, algebraically: F | F(f(X), f(Y)).
pub fn verify_invariance(f_eq: &Bivariate, f: &KxPoly) -> bool {
    let pulled = f_eq.subst_univariate(f, f);
    f_eq.divides(&pulled)
}

/// C collapses to the diagonal under h2: F | h2(X) - h2(Y).
pub fn verify_collapse(f_eq: &Bivariate, h2: &KxPoly) -> bool {
    let field = &h2.ring;
    let mut diff = Bivariate::zero(field);
    for (i, c) in h2.coeffs().iter().enumerate() {
        diff.accumulate((i as u32, 0), c.clone());
        diff.accumulate((0, i as u32), c.neg());
    }
    f_eq.divides(&diff)
}

/// `count` distinct exact K-points on the curve.
pub fn curve_points(
    curve: &InvariantCurve,
    count: usize,
    height_bound: u32,
) -> Result<Vec<(FieldElement, FieldElement)>, Error> {
    match &curve.param {
        CurveParam::Line { slope, intercept } => {
            let field = &slope.field;
            // grow the height layer by layer; materializing all rationals up
            // to the full bound at once would be vastly more than needed
            let mut h = 4u32.min(height_bound);
            loop {
                let xs = crate::arith::rationals_of_height(h);
                if xs.len() >= count || h == height_bound {
                    let mut out = Vec::with_capacity(count.min(xs.len()));
                    for x in xs.into_iter().take(count) {
                        let xe = FieldElement::from_rat(field, x);
                        let ye = slope.mul(&xe).add(intercept);
                        out.push((xe, ye));
                    }
                    if out.len() >= count {
                        return Ok(out);
                    }
                    return Err(Error::InsufficientPoints(format!(
                        "only {} line points within height {}",
                        out.len(),
                        height_bound
                    )));
                }
                h = (h * 2).min(height_bound);
            }
        }
        CurveParam::ConicThrough { conic, point } => {
            let mut pts = conic_points_from(conic, point, count.saturating_sub(1))?;
            pts.insert(0, point.clone());
            pts.truncate(count);
            Ok(pts)
        }
        CurveParam::None => Err(Error::InsufficientPoints(
            "conditional witness: no conic point available".into(),
        )),
    }
}

// ---------------------------------------------------------------------------
// Counterexample pairs
// ---------------------------------------------------------------------------

/// One verified pair for the theorem's moreover-clause.
#[derive(Debug, Clone)]
pub struct PairSample {
    pub a: FieldElement,
    pub b: FieldElement,
    pub j: u32,
    /// h1^j(a) and h1^j(b) (distinct)
    pub orbit_a: FieldElement,
    pub orbit_b: FieldElement,
    /// the common value h2(h1^j(a)) = h2(h1^j(b))
    pub image: FieldElement,
}

fn iterate(f: &KxPoly, x: &FieldElement, j: u32) -> FieldElement {
    let mut v = x.clone();
    for _ in 0..j {
        v = f.eval(&v);
    }
    v
}

/// Generate `count` exact pairs (a, b) on the curve with h1^j(a) != h1^j(b)
/// and h2(h1^j(a)) = h2(h1^j(b)). Candidates failing the two checks are in
/// the finite exclusion set Z1 and are simply skipped (per-pair testing
/// replaces computing preimages of C meeting the diagonal).
pub fn generate_pairs(
    h1: &KxPoly,
    h2: &KxPoly,
    curve: &InvariantCurve,
    j: u32,
    count: usize,
) -> Result<Vec<PairSample>, Error> {
    let budget = 10 * count;
    let candidates = curve_points(curve, budget, 10_000)?;
    let mut out = Vec::new();
    for (a, b) in candidates {
        let oa = iterate(h1, &a, j);
        let ob = iterate(h1, &b, j);
        if oa == ob {
            continue;
        }
        let ia = h2.eval(&oa);
        let ib = h2.eval(&ob);
        if ia != ib {
            continue;
        }
        out.push(PairSample {
            a,
            b,
            j,
            orbit_a: oa,
            orbit_b: ob,
            image: ia,
        });
        if out.len() >= count {
            return Ok(out);
        }
    }
    Err(Error::InsufficientPoints(format!(
        "{} of {} pairs after {} candidates",
        out.len(),
        count,
        budget
    )))
}

// ---------------------------------------------------------------------------
// Brute-force collision oracle
// ---------------------------------------------------------------------------

/// Search all composition words (length-then-lex over generator indices,
/// first applied first) for one equalizing the orbits of a and b; returns the
/// word and the minimal prefix depth at which the orbits first coincide.
pub fn collision_oracle(
    generators: &[KxPoly],
    a: &FieldElement,
    b: &FieldElement,
    max_depth: usize,
) -> Option<(Vec<usize>, usize)> {
    assert!(a != b, "oracle inputs must differ");
    let g = generators.len();
    if g == 0 {
        return None;
    }
    for len in 1..=max_depth {
        let mut word = vec![0usize; len];
        loop {
            // evaluate the orbit pair along the word, recording first meet
            let mut x = a.clone();
            let mut y = b.clone();
            let mut depth = None;
            for (step, &i) in word.iter().enumerate() {
                x = generators[i].eval(&x);
                y = generators[i].eval(&y);
                if x == y {
                    depth = Some(step + 1);
                    break;
                }
            }
            if let Some(d) = depth {
                return Some((word, d));
            }
            // next word in lex order
            let mut pos = len;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                if word[pos] + 1 < g {
                    word[pos] += 1;
                    for w in word.iter_mut().skip(pos + 1) {
                        *w = 0;
                    }
                    break;
                }
                word[pos] = 0;
                if pos == 0 {
                    break;
                }
            }
            if word.iter().all(|&w| w == 0) {
                break;
            }
        }
    }
    None
}
