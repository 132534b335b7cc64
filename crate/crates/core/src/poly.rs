//! Sparse multivariate polynomials with big-integer coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exponent vector, one slot per variable.
pub type Monomial = Vec<u32>;

/// A polynomial in a fixed, ordered variable list. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerPolynomial {
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl IntegerPolynomial {
    pub fn zero(vars: &Arc<[String]>) -> Self {
        IntegerPolynomial {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<[String]>, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c.into());
        p
    }

    pub fn var(vars: &Arc<[String]>, index: usize) -> Self {
        assert!(index < vars.len());
        let mut mono = vec![0; vars.len()];
        mono[index] = 1;
        let mut p = Self::zero(vars);
        p.add_term(mono, BigInt::one());
        p
    }

    /// Looks a variable up by name.
    pub fn var_named(vars: &Arc<[String]>, name: &str) -> Self {
        let i = vars
            .iter()
            .position(|v| v == name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        Self::var(vars, i)
    }

    pub fn variables(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, mono: Monomial, c: BigInt) {
        debug_assert_eq!(mono.len(), self.vars.len());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn same_vars(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "polynomials over different variable lists"
        );
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(&self.vars);
        }
        IntegerPolynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(&self.vars, 1);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at an integer point given in variable order.
    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        assert_eq!(point.len(), self.vars.len());
        let mut total = BigInt::zero();
        for (mono, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(mono) {
                if e > 0 {
                    term *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += term;
        }
        total
    }

    /// Replaces variable `index` by `value`, expanding fully.
    pub fn substitute(&self, index: usize, value: &IntegerPolynomial) -> Self {
        self.same_vars(value);
        let mut powers: Vec<IntegerPolynomial> = vec![Self::constant(&self.vars, 1)];
        let mut out = Self::zero(&self.vars);
        for (mono, c) in &self.terms {
            let e = mono[index] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut rest = mono.clone();
            rest[index] = 0;
            let mut base = Self::zero(&self.vars);
            base.add_term(rest, c.clone());
            out = &out + &(&base * &powers[e]);
        }
        out
    }

    pub fn partial_derivative(&self, index: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (mono, c) in &self.terms {
            let e = mono[index];
            if e == 0 {
                continue;
            }
            let mut m = mono.clone();
            m[index] = e - 1;
            out.add_term(m, c * BigInt::from(e));
        }
        out
    }

    /// Indices of variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|m| m[i] > 0))
            .collect()
    }
}

impl Add for &IntegerPolynomial {
    type Output = IntegerPolynomial;
    fn add(self, rhs: &IntegerPolynomial) -> IntegerPolynomial {
        self.same_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &IntegerPolynomial {
    type Output = IntegerPolynomial;
    fn sub(self, rhs: &IntegerPolynomial) -> IntegerPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &IntegerPolynomial {
    type Output = IntegerPolynomial;
    fn neg(self) -> IntegerPolynomial {
        IntegerPolynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &IntegerPolynomial {
    type Output = IntegerPolynomial;
    fn mul(self, rhs: &IntegerPolynomial) -> IntegerPolynomial {
        self.same_vars(rhs);
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                *acc.entry(m).or_insert_with(BigInt::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        IntegerPolynomial {
            vars: self.vars.clone(),
            terms: acc,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for IntegerPolynomial {
            type Output = IntegerPolynomial;
            fn $f(self, rhs: IntegerPolynomial) -> IntegerPolynomial {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest total degree first.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (i, (mono, c)) in terms.into_iter().enumerate() {
            let factors: Vec<String> = mono
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(j, &e)| {
                    if e == 1 {
                        self.vars[j].clone()
                    } else {
                        format!("{}^{}", self.vars[j], e)
                    }
                })
                .collect();
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn var_list<I, S>(names: I) -> Arc<[String]>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    names.into_iter().map(Into::into).collect::<Vec<_>>().into()
}
