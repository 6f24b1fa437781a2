//! Dense univariate polynomials over Q and Z: exact arithmetic, gcd,
//! resultants, squarefree tests and a Zassenhaus-style factorization
//! (factor mod p, Hensel lift, recombine). This backs irreducibility checks
//! at number-field construction and norm factorization in root finding.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Little-endian coefficient vector; trailing zeros trimmed; `[]` is zero.
pub type QPoly = Vec<BigRational>;
pub type ZPoly = Vec<BigInt>;

pub fn qp_trim(mut f: QPoly) -> QPoly {
    while f.last().map_or(false, |c| c.is_zero()) {
        f.pop();
    }
    f
}

pub fn qp_deg(f: &QPoly) -> Option<usize> {
    if f.is_empty() {
        None
    } else {
        Some(f.len() - 1)
    }
}

pub fn qp_lc(f: &QPoly) -> BigRational {
    f.last().cloned().unwrap_or_else(BigRational::zero)
}

pub fn qp_add(f: &QPoly, g: &QPoly) -> QPoly {
    let n = f.len().max(g.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let a = f.get(i).cloned().unwrap_or_else(BigRational::zero);
        let b = g.get(i).cloned().unwrap_or_else(BigRational::zero);
        out.push(a + b);
    }
    qp_trim(out)
}

pub fn qp_sub(f: &QPoly, g: &QPoly) -> QPoly {
    let n = f.len().max(g.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let a = f.get(i).cloned().unwrap_or_else(BigRational::zero);
        let b = g.get(i).cloned().unwrap_or_else(BigRational::zero);
        out.push(a - b);
    }
    qp_trim(out)
}

pub fn qp_neg(f: &QPoly) -> QPoly {
    f.iter().map(|c| -c.clone()).collect()
}

pub fn qp_mul(f: &QPoly, g: &QPoly) -> QPoly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in g.iter().enumerate() {
            if !b.is_zero() {
                out[i + j] += a * b;
            }
        }
    }
    qp_trim(out)
}

pub fn qp_scale(f: &QPoly, c: &BigRational) -> QPoly {
    if c.is_zero() {
        return Vec::new();
    }
    f.iter().map(|a| a * c).collect()
}

pub fn qp_divrem(f: &QPoly, g: &QPoly) -> (QPoly, QPoly) {
    assert!(!g.is_empty(), "division by the zero polynomial");
    let lg = qp_lc(g);
    let mut rem = f.clone();
    let mut quo: QPoly = Vec::new();
    while rem.len() >= g.len() && !rem.is_empty() {
        let shift = rem.len() - g.len();
        let c = qp_lc(&rem) / &lg;
        if quo.len() < shift + 1 {
            quo.resize(shift + 1, BigRational::zero());
        }
        quo[shift] = c.clone();
        for (j, b) in g.iter().enumerate() {
            let t = &c * b;
            rem[shift + j] -= t;
        }
        rem = qp_trim(rem);
    }
    (qp_trim(quo), rem)
}

pub fn qp_monic(f: &QPoly) -> QPoly {
    if f.is_empty() {
        return Vec::new();
    }
    let lc = qp_lc(f);
    f.iter().map(|c| c / &lc).collect()
}

pub fn qp_gcd(f: &QPoly, g: &QPoly) -> QPoly {
    let mut a = f.clone();
    let mut b = g.clone();
    while !b.is_empty() {
        let (_, r) = qp_divrem(&a, &b);
        a = b;
        b = r;
    }
    if a.is_empty() {
        a
    } else {
        qp_monic(&a)
    }
}

pub fn qp_derivative(f: &QPoly) -> QPoly {
    if f.len() <= 1 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(f.len() - 1);
    for (i, c) in f.iter().enumerate().skip(1) {
        out.push(c * BigRational::from(BigInt::from(i)));
    }
    qp_trim(out)
}

pub fn qp_eval(f: &QPoly, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in f.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub fn qp_is_squarefree(f: &QPoly) -> bool {
    let d = qp_derivative(f);
    if d.is_empty() {
        return f.len() <= 2;
    }
    qp_gcd(f, &d).len() == 1
}

/// Clear denominators and divide out the integer content; keeps the sign of
/// the leading coefficient.
pub fn qp_to_primitive_z(f: &QPoly) -> ZPoly {
    if f.is_empty() {
        return Vec::new();
    }
    let mut den = BigInt::one();
    for c in f {
        den = den.lcm(c.denom());
    }
    let ints: Vec<BigInt> = f.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = content.gcd(c);
    }
    if content.is_zero() {
        return Vec::new();
    }
    ints.iter().map(|c| c / &content).collect()
}

pub fn zp_to_q(f: &ZPoly) -> QPoly {
    f.iter().map(|c| BigRational::from(c.clone())).collect()
}

fn zp_trim(mut f: ZPoly) -> ZPoly {
    while f.last().map_or(false, |c| c.is_zero()) {
        f.pop();
    }
    f
}

fn zp_mul(f: &ZPoly, g: &ZPoly) -> ZPoly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in g.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    zp_trim(out)
}

fn zp_sub(f: &ZPoly, g: &ZPoly) -> ZPoly {
    let n = f.len().max(g.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let a = f.get(i).cloned().unwrap_or_else(BigInt::zero);
        let b = g.get(i).cloned().unwrap_or_else(BigInt::zero);
        out.push(a - b);
    }
    zp_trim(out)
}

fn zp_mod_sym(f: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    zp_trim(
        f.iter()
            .map(|c| {
                let mut r = c.mod_floor(m);
                if r > half {
                    r -= m;
                }
                r
            })
            .collect(),
    )
}

/// Division of `f` by a monic `g` with all arithmetic reduced mod `m`.
fn zp_divrem_monic_mod(f: &ZPoly, g: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    assert!(g.last().map_or(false, |c| c.is_one()), "divisor must be monic");
    let dg = g.len() - 1;
    let mut rem: ZPoly = f.iter().map(|c| c.mod_floor(m)).collect();
    rem = zp_trim(rem);
    let mut quo: ZPoly = Vec::new();
    while rem.len() >= g.len() && !rem.is_empty() {
        let shift = rem.len() - g.len();
        let c = rem.last().unwrap().clone();
        if quo.len() < shift + 1 {
            quo.resize(shift + 1, BigInt::zero());
        }
        quo[shift] = c.clone();
        for j in 0..=dg {
            let t = (&c * &g[j]).mod_floor(m);
            rem[shift + j] = (&rem[shift + j] - t).mod_floor(m);
        }
        rem = zp_trim(rem);
    }
    (zp_trim(quo), rem)
}

/// Exact division over Z when `g` is monic; `None` if it does not divide.
fn zp_div_exact_monic(f: &ZPoly, g: &ZPoly) -> Option<ZPoly> {
    assert!(g.last().map_or(false, |c| c.is_one()));
    let mut rem = f.clone();
    let mut quo: ZPoly = Vec::new();
    while rem.len() >= g.len() && !rem.is_empty() {
        let shift = rem.len() - g.len();
        let c = rem.last().unwrap().clone();
        if quo.len() < shift + 1 {
            quo.resize(shift + 1, BigInt::zero());
        }
        quo[shift] = c.clone();
        for (j, b) in g.iter().enumerate() {
            let t = &c * b;
            rem[shift + j] -= t;
        }
        rem = zp_trim(rem);
    }
    if rem.is_empty() {
        Some(zp_trim(quo))
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Arithmetic mod a small prime p (p < 2^31), coefficients as u64.
// ---------------------------------------------------------------------------

#[derive(Clone, Copy)]
struct Fp {
    p: u64,
}

type FpPoly = Vec<u64>;

impl Fp {
    fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }
    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }
    fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }

    fn trim(&self, mut f: FpPoly) -> FpPoly {
        while f.last() == Some(&0) {
            f.pop();
        }
        f
    }
    fn p_sub(&self, f: &FpPoly, g: &FpPoly) -> FpPoly {
        let n = f.len().max(g.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.sub(*f.get(i).unwrap_or(&0), *g.get(i).unwrap_or(&0)));
        }
        self.trim(out)
    }
    fn p_mul(&self, f: &FpPoly, g: &FpPoly) -> FpPoly {
        if f.is_empty() || g.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; f.len() + g.len() - 1];
        for (i, &a) in f.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in g.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(a, b));
            }
        }
        self.trim(out)
    }
    fn p_monic(&self, f: &FpPoly) -> FpPoly {
        if f.is_empty() {
            return Vec::new();
        }
        let inv = self.inv(*f.last().unwrap());
        f.iter().map(|&c| self.mul(c, inv)).collect()
    }
    fn p_divrem(&self, f: &FpPoly, g: &FpPoly) -> (FpPoly, FpPoly) {
        let lg_inv = self.inv(*g.last().unwrap());
        let mut rem = f.clone();
        let mut quo: FpPoly = Vec::new();
        while rem.len() >= g.len() && !rem.is_empty() {
            let shift = rem.len() - g.len();
            let c = self.mul(*rem.last().unwrap(), lg_inv);
            if quo.len() < shift + 1 {
                quo.resize(shift + 1, 0);
            }
            quo[shift] = c;
            for (j, &b) in g.iter().enumerate() {
                rem[shift + j] = self.sub(rem[shift + j], self.mul(c, b));
            }
            rem = self.trim(rem);
        }
        (self.trim(quo), rem)
    }
    fn p_gcd(&self, f: &FpPoly, g: &FpPoly) -> FpPoly {
        let mut a = f.clone();
        let mut b = g.clone();
        while !b.is_empty() {
            let (_, r) = self.p_divrem(&a, &b);
            a = b;
            b = r;
        }
        if a.is_empty() {
            a
        } else {
            self.p_monic(&a)
        }
    }
    fn p_derivative(&self, f: &FpPoly) -> FpPoly {
        if f.len() <= 1 {
            return Vec::new();
        }
        let mut out = Vec::with_capacity(f.len() - 1);
        for (i, &c) in f.iter().enumerate().skip(1) {
            out.push(self.mul(c, (i as u64) % self.p));
        }
        self.trim(out)
    }
    /// base^e mod f, with e a big exponent.
    fn p_powmod_big(&self, base: &FpPoly, e: &BigInt, f: &FpPoly) -> FpPoly {
        let mut result: FpPoly = vec![1];
        let b = self.p_divrem(base, f).1;
        for i in (0..e.bits()).rev() {
            result = self.p_divrem(&self.p_mul(&result, &result), f).1;
            if e.bit(i) {
                result = self.p_divrem(&self.p_mul(&result, &b), f).1;
            }
        }
        result
    }
}

/// Cantor-Zassenhaus factorization of a monic squarefree polynomial mod p.
fn factor_modp_monic_squarefree(f: &FpPoly, p: u64) -> Vec<FpPoly> {
    let fp = Fp { p };
    let mut rng = ChaCha8Rng::seed_from_u64(p ^ 0x5eed_cafe ^ (f.len() as u64) << 32);
    let mut result = Vec::new();
    // distinct-degree stage
    let mut rest = f.clone();
    let mut h: FpPoly = vec![0, 1]; // x
    let mut d = 0usize;
    let mut stages: Vec<(FpPoly, usize)> = Vec::new();
    while rest.len() > 1 {
        d += 1;
        if 2 * d > rest.len() - 1 {
            stages.push((rest.clone(), rest.len() - 1));
            break;
        }
        h = fp.p_powmod_big(&h, &BigInt::from(p), &rest);
        let hx = fp.p_sub(&h, &vec![0, 1]);
        let g = fp.p_gcd(&hx, &rest);
        if g.len() > 1 {
            stages.push((g.clone(), d));
            let (q, r) = fp.p_divrem(&rest, &g);
            debug_assert!(r.is_empty());
            rest = q;
            h = fp.p_divrem(&h, &rest).1;
        }
    }
    // equal-degree splitting
    for (prod, deg) in stages {
        split_equal_degree(&fp, &prod, deg, &mut rng, &mut result);
    }
    result.sort();
    result
}

fn split_equal_degree(
    fp: &Fp,
    f: &FpPoly,
    d: usize,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<FpPoly>,
) {
    if f.len() - 1 == d {
        out.push(fp.p_monic(f));
        return;
    }
    let e = (BigInt::from(fp.p).pow(d as u32) - 1) / 2;
    loop {
        let deg = f.len() - 2;
        let mut r: FpPoly = (0..=deg).map(|_| rng.gen_range(0..fp.p)).collect();
        r = fp.trim(r);
        if r.len() <= 1 {
            continue;
        }
        let b = fp.p_powmod_big(&r, &e, f);
        let b1 = fp.p_sub(&b, &vec![1]);
        let g = fp.p_gcd(&b1, f);
        if g.len() > 1 && g.len() < f.len() {
            let (q, _) = fp.p_divrem(f, &g);
            split_equal_degree(fp, &g, d, rng, out);
            split_equal_degree(fp, &q, d, rng, out);
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// Hensel lifting
// ---------------------------------------------------------------------------

/// Extended gcd for coprime monic-ish polynomials mod p: s*g + t*h = 1.
fn fp_bezout(fp: &Fp, g: &FpPoly, h: &FpPoly) -> (FpPoly, FpPoly) {
    let (mut r0, mut r1) = (g.clone(), h.clone());
    let (mut s0, mut s1): (FpPoly, FpPoly) = (vec![1], vec![]);
    let (mut t0, mut t1): (FpPoly, FpPoly) = (vec![], vec![1]);
    while !r1.is_empty() {
        let (q, r) = fp.p_divrem(&r0, &r1);
        let ns = fp.p_sub(&s0, &fp.p_mul(&q, &s1));
        let nt = fp.p_sub(&t0, &fp.p_mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = ns;
        t0 = t1;
        t1 = nt;
    }
    // r0 = gcd (a nonzero constant for coprime inputs); normalize to 1.
    assert_eq!(r0.len(), 1, "factors not coprime mod p");
    let inv = fp.inv(r0[0]);
    let s = s0.iter().map(|&c| fp.mul(c, inv)).collect();
    let t = t0.iter().map(|&c| fp.mul(c, inv)).collect();
    (s, t)
}

fn fp_to_z(f: &FpPoly) -> ZPoly {
    f.iter().map(|&c| BigInt::from(c)).collect()
}

fn zp_mul_mod(f: &ZPoly, g: &ZPoly, m: &BigInt) -> ZPoly {
    let prod = zp_mul(f, g);
    zp_trim(prod.iter().map(|c| c.mod_floor(m)).collect())
}

/// Lift F = G*H from mod p up to mod p^(2^iters) >= target. F, G, H monic.
fn hensel_lift_pair(
    f: &ZPoly,
    g0: &FpPoly,
    h0: &FpPoly,
    p: u64,
    target: &BigInt,
) -> (ZPoly, ZPoly, BigInt) {
    let fp = Fp { p };
    let (s0, t0) = fp_bezout(&fp, g0, h0);
    let mut m = BigInt::from(p);
    let mut g = fp_to_z(g0);
    let mut h = fp_to_z(h0);
    let mut s = fp_to_z(&s0);
    let mut t = fp_to_z(&t0);
    while &m < target {
        let m2 = &m * &m;
        // e = f - g*h mod m^2
        let e = zp_trim(
            zp_sub(f, &zp_mul(&g, &h))
                .iter()
                .map(|c| c.mod_floor(&m2))
                .collect(),
        );
        // dg = (t*e) rem g ; dh = e*s + q*h  with q = (t*e) quo g
        let te = zp_mul_mod(&t, &e, &m2);
        let (q, dg) = zp_divrem_monic_mod(&te, &g, &m2);
        let se = zp_mul_mod(&s, &e, &m2);
        let qh = zp_mul(&q, &h);
        let dh = {
            let n = se.len().max(qh.len());
            let mut v: ZPoly = Vec::with_capacity(n);
            for i in 0..n {
                let a = se.get(i).cloned().unwrap_or_else(BigInt::zero);
                let b = qh.get(i).cloned().unwrap_or_else(BigInt::zero);
                v.push((a + b).mod_floor(&m2));
            }
            zp_trim(v)
        };
        let mut g1: ZPoly = g.clone();
        {
            let n = g1.len().max(dg.len());
            g1.resize(n, BigInt::zero());
            for (i, c) in dg.iter().enumerate() {
                g1[i] = (&g1[i] + c).mod_floor(&m2);
            }
        }
        let mut h1: ZPoly = h.clone();
        {
            let n = h1.len().max(dh.len());
            h1.resize(n, BigInt::zero());
            for (i, c) in dh.iter().enumerate() {
                h1[i] = (&h1[i] + c).mod_floor(&m2);
            }
        }
        let g1 = zp_trim(g1);
        let h1 = zp_trim(h1);
        // Bezout update: d = s*g1 + t*h1 - 1 mod m^2; s~ = s(1-d) rem h1; t~ adjusted.
        let sg = zp_mul_mod(&s, &g1, &m2);
        let th = zp_mul_mod(&t, &h1, &m2);
        let mut dvec: ZPoly = Vec::new();
        {
            let n = sg.len().max(th.len()).max(1);
            for i in 0..n {
                let a = sg.get(i).cloned().unwrap_or_else(BigInt::zero);
                let b = th.get(i).cloned().unwrap_or_else(BigInt::zero);
                let mut v = a + b;
                if i == 0 {
                    v -= 1;
                }
                dvec.push(v.mod_floor(&m2));
            }
        }
        let d = zp_trim(dvec);
        let one_minus_d = {
            let mut v = d.iter().map(|c| (-c).mod_floor(&m2)).collect::<ZPoly>();
            if v.is_empty() {
                v.push(BigInt::one());
            } else {
                v[0] = (&v[0] + BigInt::one()).mod_floor(&m2);
            }
            zp_trim(v)
        };
        let s_tilde = zp_mul_mod(&s, &one_minus_d, &m2);
        let t_tilde = zp_mul_mod(&t, &one_minus_d, &m2);
        let (w, s_new) = zp_divrem_monic_mod(&s_tilde, &h1, &m2);
        let wg = zp_mul_mod(&w, &g1, &m2);
        let t_new = {
            let n = t_tilde.len().max(wg.len());
            let mut v: ZPoly = Vec::with_capacity(n);
            for i in 0..n {
                let a = t_tilde.get(i).cloned().unwrap_or_else(BigInt::zero);
                let b = wg.get(i).cloned().unwrap_or_else(BigInt::zero);
                v.push((a + b).mod_floor(&m2));
            }
            zp_trim(v)
        };
        g = g1;
        h = h1;
        s = s_new;
        t = t_new;
        m = m2;
    }
    (g, h, m)
}

/// Lift a full mod-p factorization of monic `f` to mod p^k >= target,
/// recursively via a factor tree.
fn hensel_tree(f: &ZPoly, factors: &[FpPoly], p: u64, target: &BigInt) -> Vec<ZPoly> {
    if factors.len() == 1 {
        // symmetric representative of f mod target-size modulus is f itself
        return vec![f.clone()];
    }
    let fp = Fp { p };
    let mid = factors.len() / 2;
    let mut g0: FpPoly = vec![1];
    for fac in &factors[..mid] {
        g0 = fp.p_mul(&g0, fac);
    }
    let mut h0: FpPoly = vec![1];
    for fac in &factors[mid..] {
        h0 = fp.p_mul(&h0, fac);
    }
    let (g, h, m) = hensel_lift_pair(f, &g0, &h0, p, target);
    let g = zp_mod_sym(&g, &m);
    let h = zp_mod_sym(&h, &m);
    let mut out = hensel_tree(&g, &factors[..mid], p, target);
    out.extend(hensel_tree(&h, &factors[mid..], p, target));
    out
}

// ---------------------------------------------------------------------------
// Zassenhaus factorization over Q
// ---------------------------------------------------------------------------

fn zp_norm1(f: &ZPoly) -> BigInt {
    f.iter().map(|c| c.abs()).sum()
}

/// Factor a monic squarefree integer polynomial into monic irreducible
/// integer factors.
fn factor_monic_squarefree_z(f: &ZPoly) -> Vec<ZPoly> {
    let deg = f.len() - 1;
    if deg <= 1 {
        return vec![f.clone()];
    }
    // pick a prime where f stays squarefree
    let mut p = 3u64;
    let (modp, prime) = loop {
        p = next_prime(p);
        let fp = Fp { p };
        let fbar: FpPoly = fp.trim(
            f.iter()
                .map(|c| c.mod_floor(&BigInt::from(p)).to_u64_digits().1.first().copied().unwrap_or(0))
                .collect(),
        );
        if fbar.len() != f.len() {
            continue; // leading coeff vanished (cannot happen: monic) – safety
        }
        let der = fp.p_derivative(&fbar);
        if der.is_empty() {
            continue;
        }
        if fp.p_gcd(&fbar, &der).len() == 1 {
            break (fbar, p);
        }
    };
    let modular = factor_modp_monic_squarefree(&modp, prime);
    if modular.len() == 1 {
        return vec![f.clone()];
    }
    // coefficient bound for monic factors (Mignotte-style, deliberately loose)
    let bound: BigInt = zp_norm1(f) * BigInt::from(2).pow(deg as u32 + 1);
    let target = &bound * 2 + 1;
    let lifted = hensel_tree(f, &modular, prime, &target);
    // actual modulus used: recompute p^k >= target
    let mut modulus = BigInt::from(prime);
    while modulus < target {
        modulus = &modulus * &modulus;
    }
    let lifted: Vec<ZPoly> = lifted.iter().map(|g| zp_mod_sym(g, &modulus)).collect();

    // subset recombination
    let mut rem = f.clone();
    let mut pool: Vec<ZPoly> = lifted;
    let mut found: Vec<ZPoly> = Vec::new();
    let mut size = 1usize;
    'outer: while 2 * size <= pool.len() {
        let idxs: Vec<usize> = (0..pool.len()).collect();
        for combo in combinations(&idxs, size) {
            let mut cand: ZPoly = vec![BigInt::one()];
            for &i in &combo {
                cand = zp_mod_sym(&zp_mul(&cand, &pool[i]), &modulus);
            }
            if let Some(q) = zp_div_exact_monic(&rem, &cand) {
                found.push(cand);
                rem = q;
                let mut keep = Vec::new();
                for (i, fac) in pool.into_iter().enumerate() {
                    if !combo.contains(&i) {
                        keep.push(fac);
                    }
                }
                pool = keep;
                continue 'outer;
            }
        }
        size += 1;
    }
    if rem.len() > 1 {
        found.push(rem);
    }
    found
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut combo: Vec<usize> = Vec::new();
    fn rec(items: &[usize], k: usize, start: usize, combo: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if combo.len() == k {
            out.push(combo.clone());
            return;
        }
        for i in start..items.len() {
            combo.push(items[i]);
            rec(items, k, i + 1, combo, out);
            combo.pop();
        }
    }
    rec(items, k, 0, &mut combo, &mut out);
    out
}

fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    loop {
        if is_prime_u64(c) {
            return c;
        }
        c += 1;
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Monic irreducible factors over Q of a squarefree polynomial of degree >= 1.
pub fn factor_squarefree_q(f: &QPoly) -> Vec<QPoly> {
    let f = qp_trim(f.clone());
    assert!(f.len() >= 2, "factoring a constant");
    debug_assert!(qp_is_squarefree(&f), "input must be squarefree");
    let fz = qp_to_primitive_z(&f);
    let deg = fz.len() - 1;
    let lc = fz.last().unwrap().clone();
    // monic transform F(y) = lc^(deg-1) f(y/lc); F_i = f_i * lc^(deg-1-i)
    let fm: ZPoly = fz
        .iter()
        .enumerate()
        .map(|(i, c)| {
            if i == deg {
                BigInt::one()
            } else {
                c * lc.pow((deg - 1 - i) as u32)
            }
        })
        .collect();
    let factors = factor_monic_squarefree_z(&fm);
    // map back: g(y) -> monic over Q of g(lc*x)
    factors
        .iter()
        .map(|g| {
            let q: QPoly = g
                .iter()
                .enumerate()
                .map(|(i, c)| BigRational::from(c * lc.pow(i as u32)))
                .collect();
            qp_monic(&qp_trim(q))
        })
        .collect()
}

/// Is the (squarefree) polynomial irreducible over Q?
pub fn is_irreducible_q(f: &QPoly) -> bool {
    let f = qp_trim(f.clone());
    if f.len() < 2 {
        return false;
    }
    if f.len() == 2 {
        return true;
    }
    factor_squarefree_q(&f).len() == 1
}

/// Rational roots of any nonzero polynomial.
pub fn rational_roots(f: &QPoly) -> Vec<BigRational> {
    let f = qp_trim(f.clone());
    if f.len() < 2 {
        return Vec::new();
    }
    let sf = {
        let g = qp_gcd(&f, &qp_derivative(&f));
        if g.len() == 1 {
            f.clone()
        } else {
            qp_divrem(&f, &g).0
        }
    };
    let mut roots: Vec<BigRational> = factor_squarefree_q(&sf)
        .into_iter()
        .filter(|fac| fac.len() == 2)
        .map(|fac| -fac[0].clone() / fac[1].clone())
        .collect();
    roots.sort();
    roots
}

// ---------------------------------------------------------------------------
// Resultants and cyclotomic polynomials
// ---------------------------------------------------------------------------

/// d-th cyclotomic polynomial, integer coefficients.
pub fn cyclotomic(d: u64) -> QPoly {
    fn rec(d: u64, memo: &mut std::collections::HashMap<u64, QPoly>) -> QPoly {
        if let Some(f) = memo.get(&d) {
            return f.clone();
        }
        // x^d - 1 divided by all proper-divisor cyclotomics
        let mut num: QPoly = vec![BigRational::zero(); d as usize + 1];
        num[0] = -BigRational::one();
        num[d as usize] = BigRational::one();
        let mut f = num;
        for e in super::arith::divisors(d) {
            if e < d {
                let phi_e = rec(e, memo);
                let (q, r) = qp_divrem(&f, &phi_e);
                debug_assert!(r.is_empty());
                f = q;
            }
        }
        memo.insert(d, f.clone());
        f
    }
    rec(d, &mut std::collections::HashMap::new())
}

/// Minimal polynomial of 2*cos(2*pi/d) for d >= 3: the image of the (palindromic)
/// d-th cyclotomic polynomial under x = z + 1/z, degree phi(d)/2.
pub fn real_cyclotomic_minpoly(d: u64) -> QPoly {
    assert!(d >= 3);
    let phi = cyclotomic(d);
    let two_m = phi.len() - 1;
    assert!(two_m % 2 == 0);
    let m = two_m / 2;
    // phi(z)/z^m = c_m + sum_{k>=1} c_{m+k} (z^k + z^-k) and z^k + z^-k = T_k(x)
    let mut result: QPoly = vec![phi[m].clone()];
    let (mut t_prev, mut t_cur): (QPoly, QPoly) =
        (vec![BigRational::from(BigInt::from(2))], vec![BigRational::zero(), BigRational::one()]);
    for k in 1..=m {
        result = qp_add(&result, &qp_scale(&t_cur, &phi[m + k]));
        let x: QPoly = vec![BigRational::zero(), BigRational::one()];
        let next = qp_sub(&qp_mul(&x, &t_cur), &t_prev);
        t_prev = t_cur;
        t_cur = next;
    }
    qp_trim(result)
}

/// Resultant of two nonzero rational polynomials, by the Euclidean recursion
/// Res(f, g) = (-1)^(df*dg) lc(g)^(df-dr) Res(g, r) with r = f rem g.
pub fn resultant_q(f: &QPoly, g: &QPoly) -> BigRational {
    let f = qp_trim(f.clone());
    let g = qp_trim(g.clone());
    if f.is_empty() || g.is_empty() {
        return BigRational::zero();
    }
    if g.len() == 1 {
        return pow_rat(&g[0], (f.len() - 1) as u32);
    }
    if f.len() == 1 {
        return pow_rat(&f[0], (g.len() - 1) as u32);
    }
    let (df, dg) = (f.len() - 1, g.len() - 1);
    let (_, r) = qp_divrem(&f, &g);
    if r.is_empty() {
        return BigRational::zero();
    }
    let dr = r.len() - 1;
    let sign = if (df * dg) % 2 == 1 {
        -BigRational::one()
    } else {
        BigRational::one()
    };
    sign * pow_rat(&qp_lc(&g), (df - dr) as u32) * resultant_q(&g, &r)
}

fn pow_rat(a: &BigRational, e: u32) -> BigRational {
    let mut r = BigRational::one();
    for _ in 0..e {
        r *= a;
    }
    r
}

/// Determinant of a square rational matrix by Gaussian elimination.
pub fn det_q(mat: &mut Vec<Vec<BigRational>>) -> BigRational {
    let n = mat.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !mat[r][col].is_zero());
        let Some(p) = pivot else {
            return BigRational::zero();
        };
        if p != col {
            mat.swap(p, col);
            det = -det;
        }
        let pv = mat[col][col].clone();
        det *= &pv;
        for r in col + 1..n {
            if mat[r][col].is_zero() {
                continue;
            }
            let factor = &mat[r][col] / &pv;
            for c in col..n {
                let t = &factor * &mat[col][c];
                mat[r][c] -= t;
            }
        }
    }
    det
}

/// Lagrange interpolation through (x_i, y_i) with distinct x_i.
pub fn interpolate(points: &[(BigRational, BigRational)]) -> QPoly {
    let mut result: QPoly = Vec::new();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis: QPoly = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = qp_mul(&basis, &vec![-xj.clone(), BigRational::one()]);
            denom *= xi - xj;
        }
        let coeff = yi / denom;
        result = qp_add(&result, &qp_scale(&basis, &coeff));
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    fn poly(cs: &[i64]) -> QPoly {
        qp_trim(cs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn divrem_roundtrip() {
        let f = poly(&[1, 0, -3, 0, 1]);
        let g = poly(&[-1, 1]);
        let (q, r) = qp_divrem(&f, &g);
        assert_eq!(qp_add(&qp_mul(&q, &g), &r), f);
    }

    #[test]
    fn factor_splits_product_of_quadratics() {
        // (x^2+1)(x^2-2)(x-3)
        let f = qp_mul(&qp_mul(&poly(&[1, 0, 1]), &poly(&[-2, 0, 1])), &poly(&[-3, 1]));
        let mut factors = factor_squarefree_q(&f);
        factors.sort_by_key(|g| g.len());
        assert_eq!(factors.len(), 3);
        assert_eq!(factors[0], poly(&[-3, 1]));
        let prod = factors.iter().fold(poly(&[1]), |acc, g| qp_mul(&acc, g));
        assert_eq!(prod, qp_monic(&f));
    }

    #[test]
    fn factor_keeps_irreducibles_whole() {
        assert!(is_irreducible_q(&poly(&[1, 1, 1]))); // x^2+x+1
        assert!(is_irreducible_q(&poly(&[-2, 0, 1]))); // x^2-2
        assert!(is_irreducible_q(&poly(&[1, 0, 0, 0, 1]))); // x^4+1
        assert!(!is_irreducible_q(&poly(&[-1, 0, 1]))); // x^2-1
        // non-monic case
        assert!(is_irreducible_q(&poly(&[1, 1, 2]))); // 2x^2+x+1, disc = -7
    }

    #[test]
    fn factor_degree_eight() {
        // x^8 - 16 = (x^4-4)(x^4+4) = (x^2-2)(x^2+2)(x^2-2x+2)(x^2+2x+2)
        let mut f = vec![rat_int(-16)];
        f.resize(8, rat_int(0));
        f.push(rat_int(1));
        let factors = factor_squarefree_q(&f);
        assert_eq!(factors.len(), 4);
        for fac in &factors {
            assert_eq!(fac.len(), 3);
        }
    }

    #[test]
    fn rational_roots_finds_all() {
        // (x - 1/2)(x + 3)(x^2 + 1)
        let f = qp_mul(
            &qp_mul(&vec![rat(-1, 2), rat_int(1)], &poly(&[3, 1])),
            &poly(&[1, 0, 1]),
        );
        assert_eq!(rational_roots(&f), vec![rat_int(-3), rat(1, 2)]);
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1), poly(&[-1, 1]));
        assert_eq!(cyclotomic(2), poly(&[1, 1]));
        assert_eq!(cyclotomic(3), poly(&[1, 1, 1]));
        assert_eq!(cyclotomic(4), poly(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), poly(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), poly(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn real_cyclotomic_small() {
        assert_eq!(real_cyclotomic_minpoly(3), poly(&[1, 1]));
        assert_eq!(real_cyclotomic_minpoly(4), poly(&[0, 1]));
        assert_eq!(real_cyclotomic_minpoly(5), poly(&[-1, 1, 1]));
        assert_eq!(real_cyclotomic_minpoly(6), poly(&[-1, 1]));
    }

    #[test]
    fn resultant_matches_root_products() {
        // Res(x^2-2, x^2-3) = (2-3)^2 = 1
        assert_eq!(resultant_q(&poly(&[-2, 0, 1]), &poly(&[-3, 0, 1])), rat_int(1));
        // Res(x-2, x^2+1) = 2^2+1 = 5
        assert_eq!(resultant_q(&poly(&[-2, 1]), &poly(&[1, 0, 1])), rat_int(5));
        // common root => 0
        let f = qp_mul(&poly(&[-1, 1]), &poly(&[1, 0, 1]));
        assert_eq!(resultant_q(&f, &poly(&[-1, 1])), rat_int(0));
    }

    #[test]
    fn interpolation_recovers_poly() {
        let f = poly(&[2, -1, 3]);
        let pts: Vec<_> = (0..4)
            .map(|i| {
                let x = rat_int(i);
                (x.clone(), qp_eval(&f, &x))
            })
            .collect();
        assert_eq!(interpolate(&pts), f);
    }
}
