//! Small integer and rational helpers shared across the crate.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

/// "p/q" (or just "p" for integers), with the sign on the numerator.
pub fn rat_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn euler_phi(mut d: u64) -> u64 {
    let mut phi = 1u64;
    let mut p = 2u64;
    while p * p <= d {
        if d % p == 0 {
            let mut pk = 1;
            while d % p == 0 {
                d /= p;
                pk *= p;
            }
            phi *= pk - pk / p;
        }
        p += 1;
    }
    if d > 1 {
        phi *= d - 1;
    }
    phi
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            out.push(i);
            if i != n / i {
                out.push(n / i);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Floor of the integer square root.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of a negative number");
    n.sqrt()
}

/// Exact integer square root, if `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Exact nonnegative integer k-th root, if one exists.
pub fn exact_nth_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.nth_root(k);
    if r.pow(k) == *n {
        Some(r)
    } else {
        None
    }
}

/// Exact rational k-th root with the convention of a positive result when one
/// exists (for odd k a negative radicand yields the negative root).
pub fn rational_nth_root(q: &BigRational, k: u32) -> Option<BigRational> {
    if q.is_zero() {
        return Some(BigRational::zero());
    }
    if q.is_negative() {
        if k % 2 == 0 {
            return None;
        }
        return rational_nth_root(&-q.clone(), k).map(|r| -r);
    }
    let n = exact_nth_root(q.numer(), k)?;
    let d = exact_nth_root(q.denom(), k)?;
    Some(BigRational::new(n, d))
}

/// Squarefree decomposition n = s * f^2 with s squarefree, by trial division.
pub fn squarefree_part(n: &BigInt) -> (BigInt, BigInt) {
    assert!(!n.is_zero());
    let neg = n.is_negative();
    let mut m = n.abs();
    let mut sf = BigInt::one();
    let mut sq = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut e = 0u32;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e > 0 {
            if e % 2 == 1 {
                sf *= &p;
            }
            sq *= p.pow(e / 2);
        }
        p += 1;
    }
    sf *= &m;
    if neg {
        sf = -sf;
    }
    (sf, sq)
}

/// Legendre symbol (a/p) for an odd prime p, as -1, 0 or 1.
pub fn legendre_symbol(a: &BigInt, p: &BigInt) -> i32 {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return 0;
    }
    let e = (p - 1u32) / 2u32;
    let r = a.modpow(&e, p);
    if r.is_one() {
        1
    } else {
        -1
    }
}

/// Sorted deduplicated trial-division prime factorization (positive part).
pub fn big_prime_factors(n: &BigInt) -> Vec<BigInt> {
    let mut m = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        if (&m % &p).is_zero() {
            out.push(p.clone());
            while (&m % &p).is_zero() {
                m /= &p;
            }
        }
        p += 1;
    }
    if m > BigInt::one() {
        out.push(m);
    }
    out
}

/// All reduced rationals p/q with |p| <= h and 1 <= q <= h, ordered by
/// (max(|p|, q), q, p). Deterministic search order for point searches.
pub fn rationals_of_height(h: u32) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero()];
    for m in 1..=h as i64 {
        let mut layer = Vec::new();
        for q in 1..=m {
            for p in [-m, m] {
                let r = BigRational::new(BigInt::from(p), BigInt::from(q));
                if r.numer().abs() == BigInt::from(p.abs()) {
                    layer.push(r);
                }
            }
        }
        for p in -m + 1..=m - 1 {
            let r = BigRational::new(BigInt::from(p), BigInt::from(m));
            if r.denom() == &BigInt::from(m) {
                layer.push(r);
            }
        }
        layer.sort();
        layer.dedup();
        out.extend(layer);
    }
    out
}

pub fn bigint_sign(n: &BigInt) -> i32 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}
