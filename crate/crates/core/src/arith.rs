//! Small exact integer helpers shared by the surd and search code.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Floor of the square root of a nonnegative integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    debug_assert!(!n.is_negative());
    n.sqrt()
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = isqrt(n);
    &r * &r == *n
}

/// Trial division up to the integer square root.
pub fn is_square_free(n: &BigInt) -> bool {
    let n = n.abs();
    if n.is_zero() {
        return false;
    }
    if let Ok(small) = u64::try_from(&n) {
        return is_square_free_u64(small);
    }
    let mut rest = n;
    let mut p = BigInt::from(2u32);
    while &p * &p <= rest {
        if rest.is_multiple_of(&p) {
            rest /= &p;
            if rest.is_multiple_of(&p) {
                return false;
            }
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    true
}

pub fn is_square_free_u64(mut n: u64) -> bool {
    if n == 0 {
        return false;
    }
    if n.is_multiple_of(4) {
        return false;
    }
    if n.is_multiple_of(2) {
        n /= 2;
    }
    let mut p = 3u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += 2;
    }
    true
}

/// Writes `n = f^2 * s` with `s` square-free, returning `(f, s)`.
pub fn square_free_decomposition(n: u64) -> (u64, u64) {
    let mut f = 1u64;
    let mut s = 1u64;
    let mut rest = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        f *= p.pow(e / 2);
        if e % 2 == 1 {
            s *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (f, s * rest)
}

/// [`square_free_decomposition`] for big integers.
pub fn square_free_decomposition_big(n: &BigInt) -> (BigInt, BigInt) {
    if let Ok(small) = u64::try_from(n) {
        let (f, s) = square_free_decomposition(small);
        return (f.into(), s.into());
    }
    let mut f = BigInt::one();
    let mut s = BigInt::one();
    let mut rest = n.clone();
    let mut p = BigInt::from(2u32);
    while &p * &p <= rest {
        let mut e = 0u32;
        while rest.is_multiple_of(&p) {
            rest /= &p;
            e += 1;
        }
        f *= p.pow(e / 2);
        if e % 2 == 1 {
            s *= &p;
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    (f, s * rest)
}

/// Square-free indicator table for `0..=limit`.
pub fn square_free_sieve(limit: u64) -> Vec<bool> {
    let n = limit as usize;
    let mut sf = vec![true; n + 1];
    sf[0] = false;
    let mut i = 2usize;
    while i * i <= n {
        let sq = i * i;
        let mut j = sq;
        while j <= n {
            sf[j] = false;
            j += sq;
        }
        i += 1;
    }
    sf
}

pub fn gcd3(a: &BigInt, b: &BigInt, c: &BigInt) -> BigInt {
    a.gcd(b).gcd(c)
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut p = 3u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 2;
    }
    true
}

pub fn sign_one(negative: bool) -> BigInt {
    if negative {
        -BigInt::one()
    } else {
        BigInt::one()
    }
}
