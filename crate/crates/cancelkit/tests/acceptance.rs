//! End-to-end acceptance suite. Each test covers one numbered criterion and
//! prints a PASS line with its wall time; any assertion failure fails the
//! criterion.

use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cancelkit::conics::{
    conic_from_case3, conic_rational_point, has_point_with_x_height, Conic, ConicStatus,
};
use cancelkit::conjugacy::classify;
use cancelkit::decider::{decide, DecisionReport, GeneratorSet, RunConfig, Verdict};
use cancelkit::numberfield::{nf_create, FieldElement, NumberField};
use cancelkit::polyring::{
    cheb_expand, cheb_reconstruct, chebyshev, compose, decompose, power_map, KxPoly,
    LaurentPoly, Poly,
};
use cancelkit::qpoly::cyclotomic;
use cancelkit::report::{config_json, decision_json, to_canonical_string};
use cancelkit::witness::{collision_oracle, generate_pairs, CaseTag};

fn qq() -> Arc<NumberField> {
    NumberField::rationals()
}

fn decide_set(gens: Vec<KxPoly>, depth: usize) -> DecisionReport {
    let k = qq();
    let s = GeneratorSet::new(&k, gens).unwrap();
    decide(&s, depth, &RunConfig::default()).unwrap()
}

fn pass(n: u32, started: Instant, detail: &str) {
    println!(
        "criterion {}: PASS ({:.2}s) {}",
        n,
        started.elapsed().as_secs_f64(),
        detail
    );
}

fn rint(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> BigRational {
    BigRational::from(BigInt::from(rng.gen_range(lo..=hi)))
}

#[test]
fn criterion_1_obstruction_certificates() {
    let t0 = Instant::now();
    let k = qq();

    for (gens, check) in [
        (
            vec![chebyshev(&k, 2), chebyshev(&k, 3)],
            Box::new(|r: &DecisionReport| {
                let k = qq();
                assert_eq!(r.verdict, Verdict::Obstructed);
                assert!(r.witnesses.iter().any(|w| w.case == CaseTag::Case3a
                    && w.h1.poly == chebyshev(&k, 3)
                    && w.h2.poly == chebyshev(&k, 2)));
            }) as Box<dyn Fn(&DecisionReport)>,
        ),
        (
            vec![power_map(&k, 3), power_map(&k, 2)],
            Box::new(|r: &DecisionReport| {
                let k = qq();
                assert_eq!(r.verdict, Verdict::Obstructed);
                let cases: Vec<CaseTag> = r
                    .witnesses
                    .iter()
                    .filter(|w| {
                        w.h1.poly == power_map(&k, 3)
                            && w.h2.poly == power_map(&k, 2)
                            && w.d == 2
                    })
                    .map(|w| w.case)
                    .collect();
                assert!(cases.contains(&CaseTag::Case1));
                assert!(cases.contains(&CaseTag::Case2));
            }),
        ),
        (
            vec![Poly::from_ints(&k, &[0, -2, 0, 1]), power_map(&k, 2)],
            Box::new(|r: &DecisionReport| {
                assert_eq!(r.verdict, Verdict::Obstructed);
                assert!(r
                    .witnesses
                    .iter()
                    .any(|w| w.case == CaseTag::Case1 && w.d == 2));
            }),
        ),
        (
            vec![chebyshev(&k, 4), chebyshev(&k, 3)],
            Box::new(|r: &DecisionReport| {
                let k = qq();
                let w = r
                    .witnesses
                    .iter()
                    .find(|w| w.case == CaseTag::Case3b && w.d == 3)
                    .expect("case 3(b) witness");
                let (conic, verdict) = w.conic.as_ref().unwrap();
                // the conic is X^2 + XY + Y^2 - 3 ...
                assert_eq!(conic.cxx, FieldElement::one(&k));
                assert_eq!(conic.cxy, FieldElement::one(&k));
                assert_eq!(conic.cyy, FieldElement::one(&k));
                assert!(conic.cx.is_zero() && conic.cy.is_zero());
                assert_eq!(conic.c1, FieldElement::from_int(&k, -3));
                // ... (1, 1) lies on it, and the reported point does too
                let one = FieldElement::one(&k);
                assert!(conic.eval(&one, &one).is_zero());
                let (px, py) = verdict.point.as_ref().unwrap();
                assert!(conic.eval(px, py).is_zero());
            }),
        ),
    ] {
        let each = Instant::now();
        let report = decide_set(gens, 2);
        check(&report);
        assert!(
            report
                .witnesses
                .iter()
                .all(|w| w.status == cancelkit::decider::WitnessStatus::Verified),
            "all witnesses VERIFIED over Q"
        );
        assert!(each.elapsed().as_secs_f64() < 5.0, "single run under 5 s");
    }
    pass(1, t0, "four obstruction runs certified");
}

#[test]
fn criterion_2_moreover_clause() {
    let t0 = Instant::now();
    let k = qq();
    // the designated witness from each obstruction run of criterion 1
    let sets: [(Vec<KxPoly>, Box<dyn Fn(&&_) -> bool>); 4] = [
        (
            vec![chebyshev(&k, 2), chebyshev(&k, 3)],
            Box::new(|w: &&cancelkit::decider::ObstructionWitness| {
                w.case == CaseTag::Case3a && w.h1.indices == [1] && w.h2.indices == [0]
            }),
        ),
        (
            vec![power_map(&k, 3), power_map(&k, 2)],
            Box::new(|w| {
                (w.case == CaseTag::Case1 || w.case == CaseTag::Case2)
                    && w.d == 2
                    && w.h1.indices == [0]
                    && w.h2.indices == [1]
            }),
        ),
        (
            vec![Poly::from_ints(&k, &[0, -2, 0, 1]), power_map(&k, 2)],
            Box::new(|w| w.case == CaseTag::Case1 && w.d == 2 && w.h1.indices == [0]),
        ),
        (
            vec![chebyshev(&k, 4), chebyshev(&k, 3)],
            Box::new(|w| {
                w.case == CaseTag::Case3b
                    && w.d == 3
                    && w.h1.indices == [0]
                    && w.h2.indices == [1]
            }),
        ),
    ];
    let mut total_pairs = 0usize;
    for (gens, select) in sets {
        let report = decide_set(gens, 2);
        let picked: Vec<_> = report.witnesses.iter().filter(&select).collect();
        assert!(!picked.is_empty(), "designated witness present");
        for w in picked {
            for j in 0..=3u32 {
                let pairs = generate_pairs(&w.h1.poly, &w.h2.poly, &w.curve, j, 25).unwrap();
                assert_eq!(pairs.len(), 25);
                // distinctness of the (a, b) pairs
                for (i, p) in pairs.iter().enumerate() {
                    for q in &pairs[i + 1..] {
                        assert!(p.a != q.a || p.b != q.b);
                    }
                }
                // independent re-verification by exact iterated evaluation
                let orbit = |x: &FieldElement| {
                    let mut v = x.clone();
                    for _ in 0..j {
                        v = w.h1.poly.eval(&v);
                    }
                    v
                };
                for p in &pairs {
                    let oa = orbit(&p.a);
                    let ob = orbit(&p.b);
                    assert_ne!(oa, ob);
                    assert_eq!(oa, p.orbit_a);
                    assert_eq!(ob, p.orbit_b);
                    let ia = w.h2.poly.eval(&oa);
                    assert_eq!(ia, w.h2.poly.eval(&ob));
                    assert_eq!(ia, p.image);
                }
                total_pairs += pairs.len();
            }
        }
    }
    assert!(t0.elapsed().as_secs_f64() < 30.0);
    pass(2, t0, &format!("{} exact pairs re-verified", total_pairs));
}

#[test]
fn criterion_3_paper_t5_p5_claim() {
    let t0 = Instant::now();
    let k = qq();
    for depth in [1, 3] {
        let report = decide_set(vec![chebyshev(&k, 5), power_map(&k, 5)], depth);
        assert_eq!(report.verdict, Verdict::ProvenCancellation);
        let proof = report.absence_proof.unwrap();
        assert_eq!(proof.degree_prime_set, vec![5]);
        assert!(!proof.rule_trace.is_empty());
    }
    // audit: prover disabled, depth 4, zero witnesses
    let s = GeneratorSet::new(&k, vec![chebyshev(&k, 5), power_map(&k, 5)]).unwrap();
    let mut cfg = RunConfig::default();
    cfg.no_prover = true;
    let audit = decide(&s, 4, &cfg).unwrap();
    assert_eq!(audit.verdict, Verdict::NoObstructionUptoDepth);
    assert!(audit.witnesses.is_empty());
    assert!(t0.elapsed().as_secs_f64() < 60.0);
    pass(3, t0, "PROVEN_CANCELLATION with clean depth-4 audit");
}

#[test]
fn criterion_4_negative_controls() {
    let t0 = Instant::now();
    let k = qq();
    for gens in [vec![power_map(&k, 2)], vec![Poly::from_ints(&k, &[1, 0, 1])]] {
        let each = Instant::now();
        let report = decide_set(gens, 6);
        assert!(report.witnesses.is_empty());
        assert!(matches!(
            report.verdict,
            Verdict::NoObstructionUptoDepth | Verdict::ProvenCancellation
        ));
        assert!(each.elapsed().as_secs_f64() < 30.0);
    }
    pass(4, t0, "both depth-6 runs clear");
}

#[test]
fn criterion_5_conic_module() {
    let t0 = Instant::now();
    let k = qq();
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_5505);

    // solver vs exhaustive height-50 search
    let mut solved = 0usize;
    let mut no_point = 0usize;
    while solved + no_point < 200 {
        let c = Conic {
            field: k.clone(),
            cxx: FieldElement::from_rat(&k, rint(&mut rng, -20, 20)),
            cxy: FieldElement::from_rat(&k, rint(&mut rng, -20, 20)),
            cyy: FieldElement::from_rat(&k, rint(&mut rng, -20, 20)),
            cx: FieldElement::from_rat(&k, rint(&mut rng, -20, 20)),
            cy: FieldElement::from_rat(&k, rint(&mut rng, -20, 20)),
            c1: FieldElement::from_rat(&k, rint(&mut rng, -20, 20)),
        };
        if !c.is_quadratic() {
            continue;
        }
        let verdict = conic_rational_point(&c);
        let exhaustive = has_point_with_x_height(&c, 50);
        match verdict.status {
            ConicStatus::PointFound => {
                let (x, y) = verdict.point.unwrap();
                assert!(c.eval(&x, &y).is_zero(), "reported point on conic");
                solved += 1;
            }
            ConicStatus::NoPoint => {
                assert!(
                    exhaustive.is_none(),
                    "solver NO_POINT contradicted by exhaustive search: {}",
                    c.to_text()
                );
                no_point += 1;
            }
            ConicStatus::Unknown => panic!("solver must decide over Q"),
        }
        if let Some((x, y)) = exhaustive {
            assert_eq!(verdict.status, ConicStatus::PointFound);
            assert!(c.eval(&x, &y).is_zero());
        }
    }

    // membership identity for (pi(x), pi(eps x)) over Q(zeta_d), d in {3,4,6}
    for d in [3usize, 4, 6] {
        let field = nf_create(&cyclotomic(d as u64)).unwrap();
        let eps = FieldElement::generator(&field);
        let c = eps.add(&eps.inverse().unwrap());
        let conic = conic_from_case3(
            &field,
            &FieldElement::one(&field),
            &FieldElement::zero(&field),
            &c,
        );
        let mut checked = 0;
        while checked < 50 {
            let x = FieldElement::from_rat(&field, rint(&mut rng, -50, 50));
            if x.is_zero() {
                continue;
            }
            let pi = x.add(&x.inverse().unwrap());
            let ex = eps.mul(&x);
            let pi_e = ex.add(&ex.inverse().unwrap());
            assert!(conic.eval(&pi, &pi_e).is_zero(), "membership at d = {}", d);
            checked += 1;
        }
    }

    // explicit point (2u + v, u(eps + 1/eps) + v) on the constructed conic
    for d in [3usize, 4, 6] {
        // over Q, c is the rational root of the real cyclotomic polynomial
        let c = FieldElement::from_int(&k, match d {
            3 => -1,
            4 => 0,
            _ => 1,
        });
        for _ in 0..50 {
            let u = FieldElement::from_rat(&k, rint(&mut rng, 1, 40));
            let v = FieldElement::from_rat(&k, rint(&mut rng, -40, 40));
            let conic = conic_from_case3(&k, &u.mul(&u), &v, &c);
            let px = u.add(&u).add(&v);
            let py = u.mul(&c).add(&v);
            assert!(conic.eval(&px, &py).is_zero());
        }
    }
    assert!(t0.elapsed().as_secs_f64() < 120.0);
    pass(
        5,
        t0,
        &format!("200 conics ({} solvable), 450 identity checks", solved),
    );
}

#[test]
fn criterion_6_algebra_suites() {
    let t0 = Instant::now();
    let k = qq();

    // Chebyshev nesting T_m o T_n = T_mn
    for m in 1..=8usize {
        for n in 1..=8usize {
            assert_eq!(
                compose(&chebyshev(&k, m), &chebyshev(&k, n)).unwrap(),
                chebyshev(&k, m * n)
            );
        }
    }

    // semiconjugacy T_r(z + 1/z) = z^r + z^{-r}
    for r in 1..=10usize {
        let pi = LaurentPoly::pi(&k);
        let lhs = cancelkit::polyring::laurent_substitute(&chebyshev(&k, r), &pi);
        let mut expect = LaurentPoly::monomial(&k, r as i64, FieldElement::one(&k));
        expect = expect.add(&LaurentPoly::monomial(&k, -(r as i64), FieldElement::one(&k)));
        assert_eq!(lhs, expect);
    }

    // cheb_expand round trip, 500 random polynomials
    let mut rng = ChaCha8Rng::seed_from_u64(0x6a1e);
    for _ in 0..500 {
        let deg = rng.gen_range(1..=9usize);
        let mut cs: Vec<FieldElement> = (0..=deg)
            .map(|_| FieldElement::from_rat(&k, rint(&mut rng, -9, 9)))
            .collect();
        if cs[deg].is_zero() {
            cs[deg] = FieldElement::one(&k);
        }
        let f = Poly::new(&k, cs);
        let e = cheb_expand(&f);
        assert_eq!(cheb_reconstruct(&k, &e), f);
    }

    // conjugacy round-trip recovery on 200 conjugated P_r / +-T_r
    for trial in 0..200 {
        let r = 2 + (trial % 6);
        let v = FieldElement::from_rat(&k, rint(&mut rng, -6, 6));
        let mut u = FieldElement::from_rat(&k, rint(&mut rng, 1, 6));
        if u.is_zero() {
            u = FieldElement::one(&k);
        }
        let base = if trial % 2 == 0 {
            power_map(&k, r)
        } else {
            let t = chebyshev(&k, r);
            if trial % 4 == 1 {
                t
            } else {
                t.neg()
            }
        };
        // f = l o base o l^{-1} with l = ux + v
        let l = Poly::new(&k, vec![v.clone(), u.clone()]);
        let li = Poly::new(
            &k,
            vec![v.neg().mul(&u.inverse().unwrap()), u.inverse().unwrap()],
        );
        let f = compose(&compose(&l, &base).unwrap(), &li).unwrap();
        let rep = classify(&f).unwrap();
        assert_eq!(rep.r, r);
        assert_eq!(rep.conjugator.v, v);
        if trial % 2 == 0 {
            assert!(rep.has(cancelkit::conjugacy::Kind::Power));
        } else {
            assert!(rep.has(cancelkit::conjugacy::Kind::Chebyshev));
            assert_eq!(rep.conjugator.u_squared, Some(u.mul(&u)));
        }
    }

    // decompose re-composition
    for f in [
        compose(&chebyshev(&k, 3), &chebyshev(&k, 4)).unwrap(),
        compose(&power_map(&k, 2), &Poly::from_ints(&k, &[1, 2, 1])).unwrap(),
        Poly::from_ints(&k, &[0, 0, 2, 0, 1]),
        chebyshev(&k, 12),
    ] {
        let parts = decompose(&f);
        assert!(!parts.is_empty());
        let mut acc = parts.last().unwrap().clone();
        for p in parts.iter().rev().skip(1) {
            acc = compose(p, &acc).unwrap();
        }
        assert_eq!(acc, f);
    }
    assert!(t0.elapsed().as_secs_f64() < 60.0);
    pass(6, t0, "nesting, semiconjugacy, 700 round trips, decompositions");
}

#[test]
fn criterion_7_cross_validation() {
    let t0 = Instant::now();
    let k = qq();
    let gens = vec![chebyshev(&k, 2), chebyshev(&k, 3)];
    let s = GeneratorSet::new(&k, gens.clone()).unwrap();
    let report = decide(&s, 2, &RunConfig::default()).unwrap();
    assert_eq!(report.verdict, Verdict::Obstructed);

    // oracle confirms 25 pairs per witness within |h1| * j + |h2| steps
    let j = 1u32;
    for w in &report.witnesses {
        let pairs = generate_pairs(&w.h1.poly, &w.h2.poly, &w.curve, j, 25).unwrap();
        let budget = w.h1.indices.len() * j as usize + w.h2.indices.len();
        for p in &pairs {
            let (_, depth) = collision_oracle(&gens, &p.a, &p.b, budget)
                .expect("collision within the witness word budget");
            assert!(depth <= budget);
        }
    }

    // off-curve pairs: every collision must be explained by the inventory.
    // For T2 a collision means the previous pair was (c, -c); for T3 it means
    // the previous pair lay on X^2 + XY + Y^2 = 3. Both curves are in the
    // decider's witness inventory for this set.
    let on_inventory_curves = |a: &FieldElement, b: &FieldElement| -> bool {
        report.witnesses.iter().any(|w| {
            w.curve.equation.eval(a, b).is_zero()
        })
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x0ffc);
    let mut tested = 0;
    let mut collided = 0;
    while tested < 100 {
        let a = FieldElement::from_rat(
            &k,
            cancelkit::arith::rat(rng.gen_range(-10i64..=10), rng.gen_range(1i64..=10)),
        );
        let b = FieldElement::from_rat(
            &k,
            cancelkit::arith::rat(rng.gen_range(-10i64..=10), rng.gen_range(1i64..=10)),
        );
        if a == b || on_inventory_curves(&a, &b) {
            continue;
        }
        tested += 1;
        if let Some((word, first)) = collision_oracle(&gens, &a, &b, 4) {
            collided += 1;
            // walk to the step just before the first meet: that pair must lie
            // on an inventory curve, otherwise the collision is unexplained
            let mut x = a.clone();
            let mut y = b.clone();
            for &i in word.iter().take(first - 1) {
                x = gens[i].eval(&x);
                y = gens[i].eval(&y);
            }
            assert_ne!(x, y);
            assert!(
                on_inventory_curves(&x, &y),
                "unexplained collision at depth {} from ({}, {})",
                first,
                a,
                b
            );
        }
    }
    assert!(t0.elapsed().as_secs_f64() < 120.0);
    pass(
        7,
        t0,
        &format!(
            "{} witnesses oracle-confirmed; {}/100 off-curve collisions all explained",
            report.witnesses.len(),
            collided
        ),
    );
}

#[test]
fn criterion_8_determinism() {
    let t0 = Instant::now();
    let k = qq();
    let runs: Vec<(Vec<KxPoly>, Vec<&str>, usize)> = vec![
        (vec![chebyshev(&k, 2), chebyshev(&k, 3)], vec!["T(2)", "T(3)"], 2),
        (vec![power_map(&k, 3), power_map(&k, 2)], vec!["P(3)", "P(2)"], 2),
        (vec![chebyshev(&k, 5), power_map(&k, 5)], vec!["T(5)", "P(5)"], 3),
        (vec![Poly::from_ints(&k, &[1, 0, 1])], vec!["x^2 + 1"], 6),
    ];
    for (gens, texts, depth) in runs {
        let make = || {
            let s = GeneratorSet::new(&k, gens.clone()).unwrap();
            let cfg = RunConfig::default();
            let r = decide(&s, depth, &cfg).unwrap();
            let gt: Vec<String> = texts.iter().map(|t| t.to_string()).collect();
            to_canonical_string(&decision_json(&r, config_json("t", &gt, depth, &cfg)))
        };
        let first = make();
        let second = make();
        assert_eq!(first.into_bytes(), second.into_bytes());
    }
    pass(8, t0, "byte-identical reports across repeated runs");
}
