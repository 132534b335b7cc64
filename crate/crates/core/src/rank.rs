//! Rank estimates for elliptic curves through their real-multiplication tori.
//!
//! `rk E(K) = c(A_RM) - 1`, bounded by `n - 1` where `n` counts the
//! preperiod and one period of the continued fraction of the modulus.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::arith::{is_prime_u64, square_free_decomposition_big};
use crate::cfrac::{expand, expand_surd, normalize_periodic, CfExpansion};
use crate::complexity::{arithmetic_complexity_cached, ComplexityReport, SearchConfig};
use crate::error::{Error, Result};
use crate::store::{ExpansionStore, NoCache};
use crate::surd::{canonicalize_big, QuadraticIrrational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveDescriptor {
    /// `E_CM^(-p, f)`.
    Cm {
        p: u64,
        f: u64,
    },
    /// `E_b(Q): y^2 z = x(x - z)(x - (b-2)/(b+2) z)`.
    RationalFamily(BigInt),
    Explicit(QuadraticIrrational),
}

impl CurveDescriptor {
    pub fn cm(p: u64) -> Self {
        CurveDescriptor::Cm { p, f: 1 }
    }

    pub fn rational_family(b: i64) -> Self {
        CurveDescriptor::RationalFamily(BigInt::from(b))
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            CurveDescriptor::Cm { p, f } => {
                if !is_prime_u64(*p) || p % 4 != 3 {
                    return Err(Error::InvalidDescriptor(format!(
                        "CM curve needs a prime p = 3 mod 4, got {p}"
                    )));
                }
                if *f != 1 {
                    return Err(Error::InvalidDescriptor(format!(
                        "conductor {f} is not supported, only f = 1"
                    )));
                }
            }
            CurveDescriptor::RationalFamily(b) => {
                if *b < BigInt::from(3) {
                    return Err(Error::InvalidDescriptor(format!(
                        "E_b needs b >= 3, got {b}"
                    )));
                }
            }
            CurveDescriptor::Explicit(_) => {}
        }
        Ok(())
    }
}

impl fmt::Display for CurveDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveDescriptor::Cm { p, f: cond } => write!(f, "E_CM(-{p},{cond})"),
            CurveDescriptor::RationalFamily(b) => write!(f, "E_{b}(Q)"),
            CurveDescriptor::Explicit(t) => write!(f, "torus {t}"),
        }
    }
}

/// Modulus of the torus attached to a curve.
pub fn theta_of_curve(desc: &CurveDescriptor) -> Result<QuadraticIrrational> {
    desc.validate()?;
    match desc {
        CurveDescriptor::Cm { p, .. } => {
            canonicalize_big(0.into(), 1.into(), 1.into(), BigInt::from(*p))
        }
        CurveDescriptor::RationalFamily(b) => {
            let disc = b * b - 4;
            let (f, s) = square_free_decomposition_big(&disc);
            if s.is_one() {
                return Err(Error::PerfectSquareDiscriminant(disc));
            }
            canonicalize_big(b.clone(), f, 2.into(), s)
        }
        CurveDescriptor::Explicit(t) => Ok(t.clone()),
    }
}

/// `n - 1`, the bound on the rank from the length of the expansion.
pub fn rank_bound(desc: &CurveDescriptor) -> Result<usize> {
    let exp = expand(&theta_of_curve(desc)?);
    Ok(exp.n() - 1)
}

/// Estimate for the purely periodic torus Morita equivalent to the original.
#[derive(Clone, Debug)]
pub struct TwistReport {
    pub theta: QuadraticIrrational,
    pub expansion: CfExpansion,
    pub c: usize,
    pub rank_estimate: usize,
    pub rank_bound: usize,
}

#[derive(Clone, Debug)]
pub struct RankReport {
    pub descriptor: CurveDescriptor,
    pub theta: QuadraticIrrational,
    pub n: usize,
    pub c: usize,
    pub rank_estimate: usize,
    pub rank_bound: usize,
    /// Class number of `Q(sqrt(-p))` for CM curves.
    pub class_number: Option<u64>,
    /// `2 h_K * rank_estimate` for CM curves, where `rank_estimate` is a Q-rank.
    pub full_rank: Option<u64>,
    pub twist: Option<TwistReport>,
    pub complexity: ComplexityReport,
}

pub fn rank_report(desc: &CurveDescriptor, cfg: &SearchConfig) -> Result<RankReport> {
    rank_report_cached(desc, cfg, &mut NoCache)
}

pub fn rank_report_cached(
    desc: &CurveDescriptor,
    cfg: &SearchConfig,
    store: &mut dyn ExpansionStore,
) -> Result<RankReport> {
    let theta = theta_of_curve(desc)?;
    let base_cfg = SearchConfig {
        constants: None,
        ..cfg.clone()
    };
    let complexity = arithmetic_complexity_cached(&theta, &base_cfg, store)?;
    let n = complexity.n();
    let c = complexity.c;
    let (class_number, full_rank) = match desc {
        CurveDescriptor::Cm { p, .. } => {
            let h = class_number_imag_quadratic(*p)?;
            (Some(h), Some(2 * h * (c as u64 - 1)))
        }
        _ => (None, None),
    };
    let twist = if complexity.expansion.m() > 0 {
        Some(twist_report(&complexity.expansion, &base_cfg, store)?)
    } else {
        None
    };
    Ok(RankReport {
        descriptor: desc.clone(),
        theta,
        n,
        c,
        rank_estimate: c - 1,
        rank_bound: n - 1,
        class_number,
        full_rank,
        twist,
        complexity,
    })
}

fn twist_report(
    exp: &CfExpansion,
    cfg: &SearchConfig,
    store: &mut dyn ExpansionStore,
) -> Result<TwistReport> {
    let quotient = exp
        .periodic_quotient()
        .ok_or(Error::IndexConventionFailure)?;
    let theta = QuadraticIrrational::try_from_surd(quotient)?;
    let report = arithmetic_complexity_cached(&theta, cfg, store)?;
    Ok(TwistReport {
        expansion: report.expansion.clone(),
        c: report.c,
        rank_estimate: report.c - 1,
        rank_bound: report.n() - 1,
        theta,
    })
}

/// Whether `(b + sqrt(b^2 - 4))/2 = [b-1; 1, b-2]` up to minimal period.
pub fn eb_expansion_check(b: i64) -> bool {
    let Ok(theta) = theta_of_curve(&CurveDescriptor::rational_family(b)) else {
        return false;
    };
    let exp = expand(&theta);
    let big = |v: i64| BigInt::from(v);
    let (pre, per) = normalize_periodic(&[big(b - 1)], &[big(1), big(b - 2)]);
    exp.preperiod() == pre.as_slice() && exp.period() == per.as_slice()
}

/// A generator of a subgroup of the circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    /// `exp(2 pi i p/q)` with `0 < p/q < 1` in lowest terms.
    RootOfUnity(BigRational),
    /// `exp(2 pi i omega)` with `omega` irrational.
    IrrationalAngle(QuadraticIrrational),
}

impl Generator {
    pub fn root_of_unity(p: i64, q: i64) -> Result<Self> {
        if q <= 0 || p <= 0 || p >= q {
            return Err(Error::InvalidGenerators(format!(
                "{p}/{q} is not in (0, 1)"
            )));
        }
        if p.gcd(&q) != 1 {
            return Err(Error::InvalidGenerators(format!(
                "{p}/{q} is not in lowest terms"
            )));
        }
        Ok(Generator::RootOfUnity(BigRational::new(p.into(), q.into())))
    }

    /// The fractional part of `theta` as an angle.
    pub fn angle(theta: &QuadraticIrrational) -> Result<Self> {
        let s = theta.as_surd();
        let frac = s.add_int(&-s.floor());
        Ok(Generator::IrrationalAngle(
            QuadraticIrrational::try_from_surd(frac)?,
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    generators: Vec<Generator>,
}

impl GeneratorSet {
    pub fn new(generators: Vec<Generator>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidGenerators(
                "at least one generator is needed".into(),
            ));
        }
        for g in &generators {
            if let Generator::RootOfUnity(r) = g {
                if !r.is_positive() || r >= &BigRational::one() {
                    return Err(Error::InvalidGenerators(format!("{r} is not in (0, 1)")));
                }
            }
        }
        Ok(GeneratorSet { generators })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn s(&self) -> usize {
        self.generators.len()
    }

    pub fn t(&self) -> usize {
        self.generators
            .iter()
            .filter(|g| matches!(g, Generator::RootOfUnity(_)))
            .count()
    }
}

/// Rank of the dimension group `s - t + 1`. The irrational angles are assumed
/// linearly independent over the rationals and are not checked.
pub fn dimension_group_rank(gens: &GeneratorSet) -> usize {
    gens.s() - gens.t() + 1
}

/// Reduced primitive forms `(a, b, c)` of discriminant `-p`.
pub fn reduced_forms(p: u64) -> Result<Vec<(i64, i64, i64)>> {
    if p % 4 != 3 {
        return Err(Error::BadDiscriminant(p.into()));
    }
    let p = i64::try_from(p).map_err(|_| Error::BadDiscriminant(p.into()))?;
    let mut forms = Vec::new();
    let mut a = 1i64;
    // Reduced forms have 3a^2 <= p.
    while 3 * a * a <= p {
        for b in -a + 1..=a {
            let num = b * b + p;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || a.gcd(&b).gcd(&c) != 1 {
                continue;
            }
            if (b.abs() == a || a == c) && b < 0 {
                continue;
            }
            forms.push((a, b, c));
        }
        a += 1;
    }
    Ok(forms)
}

/// Class number of `Q(sqrt(-p))` for a prime `p = 3 mod 4`.
pub fn class_number_imag_quadratic(p: u64) -> Result<u64> {
    if !is_prime_u64(p) {
        return Err(Error::BadDiscriminant(p.into()));
    }
    Ok(reduced_forms(p)?.len() as u64)
}

/// Twist of an explicit surd, exposed for callers that already hold one.
pub fn periodic_representative(theta: &QuadraticIrrational) -> Result<QuadraticIrrational> {
    let exp = expand_surd(theta.as_surd());
    let q = exp
        .periodic_quotient()
        .ok_or(Error::IndexConventionFailure)?;
    QuadraticIrrational::try_from_surd(q)
}
