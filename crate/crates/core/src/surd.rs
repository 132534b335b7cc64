//! Exact real quadratic irrationals `(a + b*sqrt(r))/c`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{gcd3, is_perfect_square, is_square_free, isqrt};
use crate::error::{Error, Result};

/// A real quadratic irrational `(a + b*sqrt(r))/c`.
///
/// Normalized so that `c > 0` and `gcd(a, b, c) = 1`. The radicand `r` is any
/// positive non-square; it is not required to be square-free, and `b` may be
/// negative. [`QuadraticIrrational`] is the canonical, square-free subset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surd {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    r: BigInt,
}

impl Surd {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, r: BigInt) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if b.is_zero() {
            return Err(Error::ZeroIrrationalPart);
        }
        if r < BigInt::from(2) {
            return Err(Error::RadicandTooSmall(r));
        }
        if is_perfect_square(&r) {
            return Err(Error::PerfectSquareRadicand(r));
        }
        Ok(Self::normalized(a, b, c, r))
    }

    pub(crate) fn normalized(mut a: BigInt, mut b: BigInt, mut c: BigInt, r: BigInt) -> Self {
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        let g = gcd3(&a, &b, &c);
        if !g.is_one() {
            a /= &g;
            b /= &g;
            c /= &g;
        }
        Surd { a, b, c, r }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, r: i64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into(), r.into())
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }
    pub fn b(&self) -> &BigInt {
        &self.b
    }
    pub fn c(&self) -> &BigInt {
        &self.c
    }
    pub fn radicand(&self) -> &BigInt {
        &self.r
    }

    /// `b^2 * r`, the radicand once `b` is folded under the root.
    pub fn folded_radicand(&self) -> BigInt {
        &self.b * &self.b * &self.r
    }

    /// Exact floor of the value.
    pub fn floor(&self) -> BigInt {
        // a + b*sqrt(r) = a + sgn(b)*sqrt(b^2 r); floor via the integer root.
        let big = self.folded_radicand();
        let s = isqrt(&big);
        // sqrt(big) lies strictly between s and s + 1.
        let num_floor = if self.b.is_positive() {
            &self.a + &s
        } else {
            &self.a - &s - 1
        };
        num_floor.div_floor(&self.c)
    }

    pub fn conjugate(&self) -> Surd {
        Surd {
            a: self.a.clone(),
            b: -&self.b,
            c: self.c.clone(),
            r: self.r.clone(),
        }
    }

    pub fn add_int(&self, k: &BigInt) -> Surd {
        Surd::normalized(
            &self.a + k * &self.c,
            self.b.clone(),
            self.c.clone(),
            self.r.clone(),
        )
    }

    pub fn neg(&self) -> Surd {
        Surd::normalized(-&self.a, -&self.b, self.c.clone(), self.r.clone())
    }

    /// `1 - self`.
    pub fn one_minus(&self) -> Surd {
        Surd::normalized(&self.c - &self.a, -&self.b, self.c.clone(), self.r.clone())
    }

    /// `1 / self`.
    pub fn recip(&self) -> Surd {
        // c / (a + b sqrt r) = c (a - b sqrt r) / (a^2 - b^2 r)
        let den = &self.a * &self.a - self.folded_radicand();
        Surd::normalized(&self.c * &self.a, -(&self.c * &self.b), den, self.r.clone())
    }

    /// Exact equality of the represented real numbers, even when the radicands
    /// differ by a square factor.
    pub fn same_value(&self, other: &Surd) -> bool {
        if self.b.is_positive() != other.b.is_positive() {
            return false;
        }
        if &self.a * &other.c != &other.a * &self.c {
            return false;
        }
        let lhs = self.folded_radicand() * &other.c * &other.c;
        let rhs = other.folded_radicand() * &self.c * &self.c;
        lhs == rhs
    }

    /// Sign of `self - other` for exact values.
    pub fn cmp_value(&self, other: &Surd) -> Ordering {
        // Compare self - other = x + y where x rational and y is a difference of roots.
        // Multiply through by c1*c2 > 0: (a1 c2 - a2 c1) + (c2 s1 - c1 s2), s_i = b_i sqrt(r_i).
        let rational = &self.a * &other.c - &other.a * &self.c;
        let t1 = SignedRoot::new(&other.c * &self.b, self.r.clone());
        let t2 = SignedRoot::new(-(&self.c * &other.b), other.r.clone());
        sign_of_sum(&rational, &t1, &t2)
    }
}

/// `coef * sqrt(rad)` with `rad > 0`.
struct SignedRoot {
    coef: BigInt,
    rad: BigInt,
}

impl SignedRoot {
    fn new(coef: BigInt, rad: BigInt) -> Self {
        SignedRoot { coef, rad }
    }
    fn sign(&self) -> Ordering {
        self.coef.sign_cmp()
    }
    /// Square of the value, as an integer.
    fn square(&self) -> BigInt {
        &self.coef * &self.coef * &self.rad
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

/// Sign of `q + t1 + t2` where `q` is an integer and `t1`, `t2` are signed roots.
fn sign_of_sum(q: &BigInt, t1: &SignedRoot, t2: &SignedRoot) -> Ordering {
    // First decide sign of t1 + t2 as an exact quantity u, with u^2 possibly irrational.
    // Sign of u = t1 + t2.
    let u_sign = sign_two_roots(t1, t2);
    // We need sign(q + u).
    if q.is_zero() {
        return u_sign;
    }
    if u_sign == Ordering::Equal || u_sign == q.sign_cmp() {
        return if u_sign == Ordering::Equal {
            q.sign_cmp()
        } else {
            u_sign
        };
    }
    // Opposite signs: compare |q| with |u|, i.e. q^2 against u^2 = s1 + s2 + 2 t1 t2.
    // q^2 - u^2 = (q^2 - s1 - s2) - 2 t1 t2, where t1 t2 = c1 c2 sqrt(r1 r2).
    let s1 = t1.square();
    let s2 = t2.square();
    let rest = q * q - &s1 - &s2;
    let cross = SignedRoot::new(-(BigInt::from(2) * &t1.coef * &t2.coef), &t1.rad * &t2.rad);
    let diff = sign_int_plus_root(&rest, &cross);
    // |q| > |u| iff diff > 0; then the sum takes q's sign.
    match diff {
        Ordering::Greater => q.sign_cmp(),
        Ordering::Less => u_sign,
        Ordering::Equal => Ordering::Equal,
    }
}

fn sign_two_roots(t1: &SignedRoot, t2: &SignedRoot) -> Ordering {
    let (s1, s2) = (t1.sign(), t2.sign());
    if s1 == Ordering::Equal {
        return s2;
    }
    if s2 == Ordering::Equal || s1 == s2 {
        return s1;
    }
    // Opposite signs: the larger magnitude wins.
    match t1.square().cmp(&t2.square()) {
        Ordering::Greater => s1,
        Ordering::Less => s2,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Sign of `q + t` for integer `q` and signed root `t`.
fn sign_int_plus_root(q: &BigInt, t: &SignedRoot) -> Ordering {
    let ts = t.sign();
    let qs = q.sign_cmp();
    if ts == Ordering::Equal {
        return qs;
    }
    if qs == Ordering::Equal || qs == ts {
        return ts;
    }
    match (q * q).cmp(&t.square()) {
        Ordering::Greater => qs,
        Ordering::Less => ts,
        Ordering::Equal => Ordering::Equal,
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.b.is_negative() { '-' } else { '+' };
        let b = self.b.abs();
        let root = if b.is_one() {
            format!("sqrt({})", self.r)
        } else {
            format!("{b}*sqrt({})", self.r)
        };
        let body = if !self.a.is_zero() {
            format!("{} {sign} {root}", self.a)
        } else if sign == '-' {
            format!("-{root}")
        } else {
            root
        };
        if self.c.is_one() {
            f.write_str(&body)
        } else if self.a.is_zero() {
            write!(f, "{body}/{}", self.c)
        } else {
            write!(f, "({body})/{}", self.c)
        }
    }
}

/// The canonical quadratic irrational `(a + b*sqrt(d))/c` with square-free
/// `d >= 2`, `b > 0`, `c > 0` and `gcd(a, b, c) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CanonicalKey", into = "CanonicalKey")]
pub struct QuadraticIrrational(Surd);

impl QuadraticIrrational {
    pub fn a(&self) -> &BigInt {
        &self.0.a
    }
    pub fn b(&self) -> &BigInt {
        &self.0.b
    }
    pub fn c(&self) -> &BigInt {
        &self.0.c
    }
    pub fn d(&self) -> &BigInt {
        &self.0.r
    }

    /// `D = b^2 d`.
    pub fn big_d(&self) -> BigInt {
        self.0.folded_radicand()
    }

    pub fn as_surd(&self) -> &Surd {
        &self.0
    }

    pub fn into_surd(self) -> Surd {
        self.0
    }

    /// True for `sqrt(d)` itself.
    pub fn is_pure_root(&self) -> bool {
        self.0.a.is_zero() && self.0.b.is_one() && self.0.c.is_one()
    }

    pub fn sqrt(d: i64) -> Result<Self> {
        canonicalize(0, 1, 1, d)
    }

    /// The `(a, b, c, d)` key.
    pub fn key(&self) -> [BigInt; 4] {
        [
            self.0.a.clone(),
            self.0.b.clone(),
            self.0.c.clone(),
            self.0.r.clone(),
        ]
    }

    /// Canonical form of any surd with a positive root coefficient. Square
    /// factors of the radicand move into `b`.
    pub fn try_from_surd(s: Surd) -> Result<Self> {
        let (f, r) = crate::arith::square_free_decomposition_big(&s.r);
        canonicalize_big(s.a, s.b * f, s.c, r)
    }
}

impl fmt::Display for QuadraticIrrational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl AsRef<Surd> for QuadraticIrrational {
    fn as_ref(&self) -> &Surd {
        &self.0
    }
}

impl From<QuadraticIrrational> for Surd {
    fn from(q: QuadraticIrrational) -> Surd {
        q.0
    }
}

#[derive(Serialize, Deserialize)]
struct CanonicalKey {
    #[serde(with = "crate::store::bigint_json")]
    a: BigInt,
    #[serde(with = "crate::store::bigint_json")]
    b: BigInt,
    #[serde(with = "crate::store::bigint_json")]
    c: BigInt,
    #[serde(with = "crate::store::bigint_json")]
    d: BigInt,
}

impl TryFrom<CanonicalKey> for QuadraticIrrational {
    type Error = Error;
    fn try_from(k: CanonicalKey) -> Result<Self> {
        canonicalize_big(k.a, k.b, k.c, k.d)
    }
}

impl From<QuadraticIrrational> for CanonicalKey {
    fn from(q: QuadraticIrrational) -> Self {
        let Surd { a, b, c, r } = q.0;
        CanonicalKey { a, b, c, d: r }
    }
}

/// Canonical form of `(a + b*sqrt(d))/c`.
pub fn canonicalize(a: i64, b: i64, c: i64, d: i64) -> Result<QuadraticIrrational> {
    canonicalize_big(a.into(), b.into(), c.into(), d.into())
}

pub fn canonicalize_big(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<QuadraticIrrational> {
    if c.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    if b.is_zero() {
        return Err(Error::ZeroIrrationalPart);
    }
    if d < BigInt::from(2) {
        return Err(Error::RadicandTooSmall(d));
    }
    if !is_square_free(&d) {
        return Err(Error::NotSquareFree(d));
    }
    let s = Surd::normalized(a.clone(), b.clone(), c.clone(), d.clone());
    if !s.b.is_positive() {
        return Err(Error::NegativeIrrationalPart(format!(
            "({a} + {b}*sqrt({d}))/{c}"
        )));
    }
    Ok(QuadraticIrrational(s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, c: i64, d: i64) -> QuadraticIrrational {
        canonicalize(a, b, c, d).unwrap()
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(q(0, 1, 1, 7).key(), [0, 1, 1, 7].map(BigInt::from));
        assert_eq!(q(2, 2, 4, 5).key(), [1, 1, 2, 5].map(BigInt::from));
        assert!(matches!(
            canonicalize(0, 1, 1, 12),
            Err(Error::NotSquareFree(_))
        ));
    }

    #[test]
    fn canonical_errors() {
        assert!(matches!(
            canonicalize(1, 1, 0, 5),
            Err(Error::ZeroDenominator)
        ));
        assert!(matches!(
            canonicalize(1, 0, 2, 5),
            Err(Error::ZeroIrrationalPart)
        ));
        assert!(matches!(
            canonicalize(1, 1, 2, 1),
            Err(Error::RadicandTooSmall(_))
        ));
        assert!(matches!(
            canonicalize(1, -1, 2, 5),
            Err(Error::NegativeIrrationalPart(_))
        ));
        // Flipping the denominator's sign makes b positive.
        assert_eq!(q(-1, -1, -2, 5).key(), [1, 1, 2, 5].map(BigInt::from));
    }

    #[test]
    fn floors() {
        assert_eq!(q(0, 1, 1, 7).as_surd().floor(), BigInt::from(2));
        assert_eq!(q(1, 1, 2, 5).as_surd().floor(), BigInt::from(1));
        let neg = Surd::from_ints(1, -1, 2, 5).unwrap();
        assert_eq!(neg.floor(), BigInt::from(-1));
        let s = Surd::from_ints(-7, 3, 2, 2).unwrap();
        // (-7 + 4.2426...)/2 = -1.378...
        assert_eq!(s.floor(), BigInt::from(-2));
    }

    #[test]
    fn arithmetic_and_values() {
        let golden = q(1, 1, 2, 5).into_surd();
        let r = golden.recip();
        // 1/phi = phi - 1
        assert!(r.same_value(&golden.add_int(&BigInt::from(-1))));
        assert!(golden
            .one_minus()
            .same_value(&Surd::from_ints(1, -1, 2, 5).unwrap()));
        let scaled = Surd::from_ints(2, 1, 4, 20).unwrap();
        assert!(scaled.same_value(&golden));
        assert_eq!(
            golden.cmp_value(&Surd::from_ints(0, 1, 1, 2).unwrap()),
            Ordering::Greater
        );
        assert_eq!(golden.cmp_value(&scaled), Ordering::Equal);
        let s3 = Surd::from_ints(0, 1, 1, 3).unwrap();
        let s2 = Surd::from_ints(0, 1, 1, 2).unwrap();
        assert_eq!(s2.cmp_value(&s3), Ordering::Less);
        // sqrt(2) + sqrt(3) vs pi-ish: compare 1 + sqrt(2) with sqrt(5.8..): use (3 + sqrt 2) vs 2 sqrt 5
        let lhs = Surd::from_ints(3, 1, 1, 2).unwrap();
        let rhs = Surd::from_ints(0, 2, 1, 5).unwrap();
        assert_eq!(lhs.cmp_value(&rhs), Ordering::Less);
    }

    #[test]
    fn display() {
        assert_eq!(q(1, 1, 2, 5).to_string(), "(1 + sqrt(5))/2");
        assert_eq!(q(5, 2, 1, 6).to_string(), "5 + 2*sqrt(6)");
        assert_eq!(q(0, 1, 1, 7).to_string(), "sqrt(7)");
        assert_eq!(q(0, 1, 3, 7).to_string(), "sqrt(7)/3");
    }
}
