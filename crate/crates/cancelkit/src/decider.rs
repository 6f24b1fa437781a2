//! Monoid enumeration and the three-case obstruction decision procedure:
//! enumerate composition words of the generators up to a depth, test every
//! ordered pair (h1, h2) against the case-(1)/(2)/(3) criteria, verify each
//! hit through the `witness` certificates, and fall back to a sound absence
//! prover when no case can ever apply over the given field.

use std::collections::HashMap;
use std::sync::Arc;

use num_rational::BigRational;

use crate::arith::{divisors, prime_factors};
use crate::conics::{
    conic_from_case3, conic_point_search, conic_rational_point, Conic, ConicStatus, ConicVerdict,
};
use crate::conjugacy::{classify, Kind, LinearConjugator, NormalFormReport};
use crate::numberfield::{
    adjoin_sqrt, contains_primitive_root, is_square, real_cyclotomic_roots, FieldElement,
    NumberField, QuadraticTower,
};
use crate::polyring::{
    compose, extract_outer, form_check, FormKind, KxPoly, Poly,
};
use crate::witness::{
    generate_pairs, invariant_curve, CaseTag, CurveSpec, InvariantCurve, PairSample,
};
use crate::Error;

/// The input set S: a field plus deduplicated degree >= 2 generators.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    pub field: Arc<NumberField>,
    pub generators: Vec<KxPoly>,
}

impl GeneratorSet {
    pub fn new(field: &Arc<NumberField>, gens: Vec<KxPoly>) -> Result<GeneratorSet, Error> {
        let mut out: Vec<KxPoly> = Vec::new();
        for g in gens {
            if g.degree().unwrap_or(0) < 2 {
                return Err(Error::DegreeLt2(g.to_text()));
            }
            if !out.iter().any(|h| h == &g) {
                out.push(g);
            }
        }
        Ok(GeneratorSet {
            field: field.clone(),
            generators: out,
        })
    }
}

/// A composition word: indices[0] is applied first, so the polynomial is
/// phi_{i_k} o ... o phi_{i_1}.
#[derive(Debug, Clone)]
pub struct Word {
    pub indices: Vec<usize>,
    pub poly: KxPoly,
}

/// Tuning knobs shared by the library entry points and the CLI.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub degree_cap: usize,
    pub word_cap: usize,
    pub height_bound: u32,
    pub pairs: usize,
    pub iterate_j: u32,
    pub no_prover: bool,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig {
            degree_cap: 10_000,
            word_cap: 100_000,
            height_bound: 20,
            pairs: 1,
            iterate_j: 0,
            no_prover: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessStatus {
    Verified,
    Conditional,
}

impl WitnessStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            WitnessStatus::Verified => "VERIFIED",
            WitnessStatus::Conditional => "CONDITIONAL",
        }
    }
}

/// One satisfied case of the main theorem, with all certified attachments.
#[derive(Debug, Clone)]
pub struct ObstructionWitness {
    pub case: CaseTag,
    pub h1: Word,
    pub h2: Word,
    pub d: u64,
    /// degree of h1's normal form
    pub r: usize,
    pub conjugator: LinearConjugator,
    /// epsilon (cases 1-2) or c = epsilon + 1/epsilon (case 3)
    pub cyclotomic: FieldElement,
    /// outer polynomial P rendered as text (it may live over K(sqrt(w)))
    pub outer_text: String,
    /// the Q of h1-centered = x Q(x^d), case 1 only
    pub inner_q: Option<KxPoly>,
    pub conic: Option<(Conic, ConicVerdict)>,
    pub curve: InvariantCurve,
    pub pairs: Vec<PairSample>,
    pub status: WitnessStatus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Obstructed,
    NoObstructionUptoDepth,
    ProvenCancellation,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Obstructed => "OBSTRUCTED",
            Verdict::NoObstructionUptoDepth => "NO_OBSTRUCTION_UPTO_DEPTH",
            Verdict::ProvenCancellation => "PROVEN_CANCELLATION",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CandidateD {
    pub d: u64,
    pub justification: String,
    pub passes_degree_rule: bool,
}

/// A sound argument that no case of the theorem can apply at any depth.
#[derive(Debug, Clone)]
pub struct AbsenceProof {
    pub candidate_d_set: Vec<CandidateD>,
    pub degree_prime_set: Vec<u64>,
    pub rule_trace: String,
}

#[derive(Debug, Clone, Default)]
pub struct Stats {
    pub words: usize,
    pub pairs_checked: usize,
    pub case_checks: usize,
    pub witnesses_found: usize,
    /// enumeration hit the word cap; results below this depth are partial
    pub truncated: bool,
}

#[derive(Debug, Clone)]
pub struct DecisionReport {
    pub verdict: Verdict,
    pub depth: usize,
    pub witnesses: Vec<ObstructionWitness>,
    pub absence_proof: Option<AbsenceProof>,
    pub stats: Stats,
}

// ---------------------------------------------------------------------------
// Monoid enumeration
// ---------------------------------------------------------------------------

/// All distinct polynomials given by words of length <= depth and degree
/// <= degree_cap, each with its canonical (shortest, then lexicographically
/// smallest) word, ordered by (degree, word). The boolean reports whether the
/// word cap truncated the enumeration.
pub fn enumerate_monoid(
    s: &GeneratorSet,
    depth: usize,
    config: &RunConfig,
) -> (Vec<Word>, bool) {
    let mut seen: HashMap<Vec<Vec<BigRational>>, usize> = HashMap::new();
    let mut words: Vec<Word> = Vec::new();
    let mut truncated = false;
    let mut frontier: Vec<usize> = Vec::new();
    // depth 1: the generators themselves, in index order
    'outer: for level in 1..=depth {
        let mut next_frontier = Vec::new();
        let sources: Vec<Option<usize>> = if level == 1 {
            vec![None]
        } else {
            frontier.iter().map(|&i| Some(i)).collect()
        };
        for src in sources {
            for (j, g) in s.generators.iter().enumerate() {
                let (indices, poly) = match src {
                    None => (vec![j], g.clone()),
                    Some(i) => {
                        let base = &words[i];
                        let deg = base.poly.degree().unwrap_or(0) * g.degree().unwrap_or(0);
                        if deg > config.degree_cap {
                            continue;
                        }
                        let mut ix = base.indices.clone();
                        ix.push(j);
                        (ix, compose(g, &base.poly).expect("same field"))
                    }
                };
                if poly.degree().unwrap_or(0) > config.degree_cap {
                    continue;
                }
                let key = poly.sort_key();
                if seen.contains_key(&key) {
                    continue;
                }
                if words.len() >= config.word_cap {
                    truncated = true;
                    break 'outer;
                }
                seen.insert(key, words.len());
                next_frontier.push(words.len());
                words.push(Word { indices, poly });
            }
        }
        frontier = next_frontier;
        if frontier.is_empty() {
            break;
        }
    }
    words.sort_by(|a, b| {
        let da = a.poly.degree().unwrap_or(0);
        let db = b.poly.degree().unwrap_or(0);
        da.cmp(&db).then_with(|| a.indices.cmp(&b.indices))
    });
    (words, truncated)
}

// ---------------------------------------------------------------------------
// Per-case checks
// ---------------------------------------------------------------------------

/// Raw hit data before witness certification.
struct CaseHit {
    case: CaseTag,
    d: u64,
    r: usize,
    conjugator: LinearConjugator,
    cyclotomic: FieldElement,
    outer_text: String,
    inner_q: Option<KxPoly>,
    conic: Option<(Conic, ConicVerdict)>,
    status: WitnessStatus,
}

fn tower_el_text(e: &crate::numberfield::TowerElement) -> String {
    if e.q.is_zero() {
        format!("{}", e.p)
    } else if e.p.is_zero() {
        format!("({})*sqrt(w)", e.q)
    } else {
        format!("{} + ({})*sqrt(w)", e.p, e.q)
    }
}

fn tower_poly_text(f: &Poly<Arc<QuadraticTower>>) -> String {
    let mut parts = Vec::new();
    for (i, c) in f.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "y".into(),
            i => format!("y^{}", i),
        };
        let cs = tower_el_text(c);
        parts.push(if mono.is_empty() {
            cs
        } else if cs == "1" {
            mono
        } else {
            format!("({})*{}", cs, mono)
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// h2 composed with x + v, skipping the composition when v = 0.
fn shifted(h2: &KxPoly, v: &FieldElement, field: &Arc<NumberField>) -> KxPoly {
    if v.is_zero() {
        return h2.clone();
    }
    let shift = Poly::new(field, vec![v.clone(), FieldElement::one(field)]);
    compose(h2, &shift).expect("same field")
}

/// Case (1): h1 centered is x Q(x^d), zeta_d in K, l = x + v, h2(x+v) in
/// K[x^d].
pub fn check_case1(
    h1: &KxPoly,
    h2: &KxPoly,
    field: &Arc<NumberField>,
    cls: &NormalFormReport,
) -> Vec<CaseHitPublic> {
    let mut out = Vec::new();
    if !cls.has(Kind::Xqxd) {
        return out;
    }
    let g = match cls.xqxd_gcd {
        Some(g) => g,
        None => return out,
    };
    let v = &cls.conjugator.v;
    let deg_h2 = h2.degree().unwrap_or(0) as u64;
    let ds: Vec<u64> = divisors(g as u64)
        .into_iter()
        .filter(|&d| d >= 2 && deg_h2 % d == 0)
        .collect();
    if ds.is_empty() {
        return out;
    }
    let (_, g1) = crate::conjugacy::center(h1).expect("already classified");
    let h2v = shifted(h2, v, field);
    for d in ds {
        let Some(eps) = contains_primitive_root(field, d) else {
            continue;
        };
        if !form_check(&h2v, d as usize, FormKind::PowerInner) {
            continue;
        }
        let p = extract_outer(&h2v, d as usize, FormKind::PowerInner).expect("form checked");
        // Q from g1(x) = x Q(x^d)
        let mut q_coeffs = Vec::new();
        for i in g1.support() {
            let jd = (i - 1) / d as usize;
            while q_coeffs.len() <= jd {
                q_coeffs.push(FieldElement::zero(field));
            }
            q_coeffs[jd] = g1.coeff(i);
        }
        let q = Poly::new(field, q_coeffs);
        out.push(CaseHitPublic(CaseHit {
            case: CaseTag::Case1,
            d,
            r: h1.degree().unwrap_or(0),
            conjugator: LinearConjugator {
                v: v.clone(),
                u_squared: Some(FieldElement::one(field)),
                u_in_k: Some(FieldElement::one(field)),
            },
            cyclotomic: eps,
            outer_text: p.to_text(),
            inner_q: Some(q),
            conic: None,
            status: WitnessStatus::Verified,
        }));
    }
    out
}

/// Case (2): h1 is linearly conjugate to the power map P_r; d | r - 1,
/// zeta_d in K, and h2(x+v) in K[x^d] (the unknown scaling u cannot change
/// monomial support mod d).
pub fn check_case2(
    _h1: &KxPoly,
    h2: &KxPoly,
    field: &Arc<NumberField>,
    cls: &NormalFormReport,
) -> Vec<CaseHitPublic> {
    let mut out = Vec::new();
    if !cls.has(Kind::Power) {
        return out;
    }
    let r = cls.r;
    let v = &cls.conjugator.v;
    let deg_h2 = h2.degree().unwrap_or(0) as u64;
    let ds: Vec<u64> = divisors((r - 1) as u64)
        .into_iter()
        .filter(|&d| d >= 2 && deg_h2 % d == 0)
        .collect();
    if ds.is_empty() {
        return out;
    }
    let h2v = shifted(h2, v, field);
    for d in ds {
        let Some(eps) = contains_primitive_root(field, d) else {
            continue;
        };
        if !form_check(&h2v, d as usize, FormKind::PowerInner) {
            continue;
        }
        let p = extract_outer(&h2v, d as usize, FormKind::PowerInner).expect("form checked");
        out.push(CaseHitPublic(CaseHit {
            case: CaseTag::Case2,
            d,
            r,
            conjugator: cls.conjugator.clone(),
            cyclotomic: eps,
            outer_text: p.to_text(),
            inner_q: None,
            conic: None,
            status: WitnessStatus::Verified,
        }));
    }
    out
}

/// Case (3): h1 is linearly conjugate to +-T_r over E = K(sqrt(w)); d | r-1
/// or d | r+1; h2 o l = P o T_d over E. Subcase (a) is d = 2; subcase (b)
/// needs a K-point of the associated conic (with an r-even shortcut when
/// u itself lies in K).
pub fn check_case3(
    _h1: &KxPoly,
    h2: &KxPoly,
    field: &Arc<NumberField>,
    cls: &NormalFormReport,
    config: &RunConfig,
) -> Vec<CaseHitPublic> {
    let mut out = Vec::new();
    if !cls.has(Kind::Chebyshev) {
        return out;
    }
    let r = cls.r;
    let v = cls.conjugator.v.clone();
    let Some(w) = cls.conjugator.u_squared.clone() else {
        return out;
    };
    let deg_h2 = h2.degree().unwrap_or(0) as u64;
    let mut cand: Vec<u64> = divisors((r - 1) as u64)
        .into_iter()
        .chain(divisors((r + 1) as u64))
        .filter(|&d| d >= 2 && deg_h2 % d == 0)
        .collect();
    cand.sort_unstable();
    cand.dedup();
    if cand.is_empty() {
        return out;
    }
    let Ok(tower) = adjoin_sqrt(field, &w) else {
        return out;
    };
    let h2l = crate::conjugacy::conjugate_by(h2, &v, &tower);
    for d in cand {
        if !form_check(&h2l, d as usize, FormKind::ChebInner) {
            continue;
        }
        let p = extract_outer(&h2l, d as usize, FormKind::ChebInner).expect("form checked");
        let outer_text = tower_poly_text(&p);
        if d == 2 {
            out.push(CaseHitPublic(CaseHit {
                case: CaseTag::Case3a,
                d,
                r,
                conjugator: cls.conjugator.clone(),
                cyclotomic: FieldElement::from_int(field, -2), // eps + 1/eps, eps = -1
                outer_text,
                inner_q: None,
                conic: None,
                status: WitnessStatus::Verified,
            }));
            continue;
        }
        for c in real_cyclotomic_roots(field, d) {
            let conic = conic_from_case3(field, &w, &v, &c);
            let verdict = if r % 2 == 0 {
                // even r forces u in K (Lemma 2.2 refinement); then the
                // point (2u + v, uc + v) is explicit
                match is_square(field, &w) {
                    Some(u) => {
                        let px = u.add(&u).add(&v);
                        let py = u.mul(&c).add(&v);
                        debug_assert!(conic.eval(&px, &py).is_zero());
                        ConicVerdict {
                            status: ConicStatus::PointFound,
                            point: Some((px, py)),
                            certificate: "explicit point from u in K".into(),
                        }
                    }
                    None => continue,
                }
            } else if field.degree() == 1 {
                conic_rational_point(&conic)
            } else {
                conic_point_search(&conic, config.height_bound)
            };
            let status = match verdict.status {
                ConicStatus::NoPoint => continue,
                ConicStatus::PointFound => WitnessStatus::Verified,
                ConicStatus::Unknown => WitnessStatus::Conditional,
            };
            out.push(CaseHitPublic(CaseHit {
                case: CaseTag::Case3b,
                d,
                r,
                conjugator: cls.conjugator.clone(),
                cyclotomic: c.clone(),
                outer_text: outer_text.clone(),
                inner_q: None,
                conic: Some((conic, verdict)),
                status,
            }));
        }
    }
    out
}

/// Opaque per-case hit; certified into an ObstructionWitness by `decide`.
pub struct CaseHitPublic(CaseHit);

// ---------------------------------------------------------------------------
// Absence prover
// ---------------------------------------------------------------------------

/// Every case of the theorem forces d | deg h2 together with a cyclotomic
/// membership over K. The candidate d set is finite; if no candidate can
/// divide any product of generator degrees, no obstruction exists at any
/// depth.
pub fn prove_absence(s: &GeneratorSet) -> Option<AbsenceProof> {
    let n = s.field.degree() as u64;
    let mut degree_primes: Vec<u64> = s
        .generators
        .iter()
        .flat_map(|g| prime_factors(g.degree().unwrap_or(0) as u64))
        .collect();
    degree_primes.sort_unstable();
    degree_primes.dedup();
    // phi(d) <= 2n and phi(d) >= sqrt(d/2) give the scan bound
    let bound = 2 * (2 * n) * (2 * n) + 2;
    let mut candidates = Vec::new();
    let mut any_pass = false;
    for d in 2..=bound {
        if crate::arith::euler_phi(d) > 2 * n {
            continue;
        }
        let justification = if d == 2 {
            "d = 2 is always admissible (zeta_2 = -1)".to_string()
        } else if contains_primitive_root(&s.field, d).is_some() {
            format!("zeta_{} lies in K", d)
        } else if !real_cyclotomic_roots(&s.field, d).is_empty() {
            format!("the real cyclotomic polynomial of level {} has a root in K", d)
        } else {
            continue;
        };
        let passes = prime_factors(d).iter().all(|p| degree_primes.contains(p));
        any_pass |= passes;
        candidates.push(CandidateD {
            d,
            justification,
            passes_degree_rule: passes,
        });
    }
    if any_pass {
        return None;
    }
    let ds: Vec<String> = candidates.iter().map(|c| c.d.to_string()).collect();
    let ps: Vec<String> = degree_primes.iter().map(|p| p.to_string()).collect();
    Some(AbsenceProof {
        rule_trace: format!(
            "candidate d set over K: {{{}}}; primes dividing generator degrees: {{{}}}; \
every case requires some candidate d to divide a product of generator degrees, \
i.e. all primes of d must divide some generator degree; no candidate qualifies",
            ds.join(", "),
            ps.join(", ")
        ),
        candidate_d_set: candidates,
        degree_prime_set: degree_primes,
    })
}

// ---------------------------------------------------------------------------
// Top-level decision
// ---------------------------------------------------------------------------

fn certify(
    hit: CaseHit,
    h1: &Word,
    h2: &Word,
    config: &RunConfig,
) -> Result<ObstructionWitness, Error> {
    // divisibility invariants, asserted at construction
    let d = hit.d as usize;
    let deg_h2 = h2.poly.degree().unwrap_or(0);
    let ok = deg_h2 % d == 0
        && match hit.case {
            CaseTag::Case1 => (h1.poly.degree().unwrap_or(0) + d - 1) % d == 0,
            CaseTag::Case2 => (hit.r - 1) % d == 0,
            CaseTag::Case3a | CaseTag::Case3b => (hit.r - 1) % d == 0 || (hit.r + 1) % d == 0,
        };
    if !ok {
        return Err(Error::CertificateFailure(format!(
            "{}: divisibility invariant violated (d = {})",
            hit.case.as_str(),
            d
        )));
    }
    let epsilon = match hit.case {
        CaseTag::Case1 | CaseTag::Case2 => Some(hit.cyclotomic.clone()),
        _ => None,
    };
    let conic_ref = hit
        .conic
        .as_ref()
        .map(|(c, v)| (c, v.point.clone()));
    let curve = invariant_curve(&CurveSpec {
        case: hit.case,
        h1: &h1.poly,
        h2: &h2.poly,
        v: &hit.conjugator.v,
        epsilon: epsilon.as_ref(),
        conic: conic_ref,
    })?;
    let pairs = if hit.status == WitnessStatus::Verified {
        let got = generate_pairs(
            &h1.poly,
            &h2.poly,
            &curve,
            config.iterate_j,
            config.pairs.max(1),
        )?;
        if got.is_empty() {
            return Err(Error::CertificateFailure(format!(
                "{}: no counterexample pair found",
                hit.case.as_str()
            )));
        }
        got
    } else {
        Vec::new()
    };
    Ok(ObstructionWitness {
        case: hit.case,
        h1: h1.clone(),
        h2: h2.clone(),
        d: hit.d,
        r: hit.r,
        conjugator: hit.conjugator,
        cyclotomic: hit.cyclotomic,
        outer_text: hit.outer_text,
        inner_q: hit.inner_q,
        conic: hit.conic,
        curve,
        pairs,
        status: hit.status,
    })
}

/// Decide the cancellation property for S to composition depth `depth`.
pub fn decide(s: &GeneratorSet, depth: usize, config: &RunConfig) -> Result<DecisionReport, Error> {
    if depth < 1 {
        return Err(Error::Usage("depth must be >= 1".into()));
    }
    let mut stats = Stats::default();
    if !config.no_prover {
        if let Some(proof) = prove_absence(s) {
            return Ok(DecisionReport {
                verdict: Verdict::ProvenCancellation,
                depth,
                witnesses: Vec::new(),
                absence_proof: Some(proof),
                stats,
            });
        }
    }
    let (words, truncated) = enumerate_monoid(s, depth, config);
    stats.words = words.len();
    stats.truncated = truncated;
    // classification is a property of h1 alone; compute once per word
    let classifications: Vec<Option<NormalFormReport>> = words
        .iter()
        .map(|w| classify(&w.poly).ok())
        .collect();
    let mut witnesses = Vec::new();
    for (i, h1) in words.iter().enumerate() {
        let Some(cls) = &classifications[i] else {
            continue;
        };
        for h2 in words.iter() {
            stats.pairs_checked += 1;
            let mut hits = Vec::new();
            hits.extend(check_case1(&h1.poly, &h2.poly, &s.field, cls));
            hits.extend(check_case2(&h1.poly, &h2.poly, &s.field, cls));
            hits.extend(check_case3(&h1.poly, &h2.poly, &s.field, cls, config));
            stats.case_checks += 3;
            for CaseHitPublic(hit) in hits {
                witnesses.push(certify(hit, h1, h2, config)?);
            }
        }
    }
    witnesses.sort_by(|a, b| {
        let ka = a.h1.indices.len() + a.h2.indices.len();
        let kb = b.h1.indices.len() + b.h2.indices.len();
        ka.cmp(&kb)
            .then_with(|| a.h1.indices.cmp(&b.h1.indices))
            .then_with(|| a.h2.indices.cmp(&b.h2.indices))
            .then_with(|| a.d.cmp(&b.d))
            .then_with(|| a.case.cmp(&b.case))
    });
    stats.witnesses_found = witnesses.len();
    let verdict = if witnesses.is_empty() {
        Verdict::NoObstructionUptoDepth
    } else {
        Verdict::Obstructed
    };
    Ok(DecisionReport {
        verdict,
        depth,
        witnesses,
        absence_proof: None,
        stats,
    })
}
