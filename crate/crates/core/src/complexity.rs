//! Estimating the arithmetic complexity of a real-multiplication torus.
//!
//! The family `theta_x = (a + b*sqrt(x))/c` is scanned over square-free `x`
//! in a window. Members sharing the base expansion's shape are grouped into
//! lines `entries(t) = base + t*slope` with a radicand `x(t)` of degree at
//! most two, and the complexity is the independence dimension of the union of
//! accepted lines.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;

use crate::arith::square_free_sieve;
use crate::cfrac::{expand, CfExpansion};
use crate::error::{Error, Result};
use crate::store::{expand_through, ExpansionStore, NoCache};
use crate::surd::{canonicalize_big, QuadraticIrrational};

/// Largest window accepted by the scanner.
pub const MAX_WINDOW: u64 = 1 << 40;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest `D' = b^2 x` scanned.
    pub window_max: u64,
    pub entry_degree_max: u32,
    pub radicand_degree_max: u32,
    /// Members a line needs, base included.
    pub min_line_members: usize,
    /// Members a line needs beyond the points used to fit its radicand.
    pub min_confirmations: usize,
    /// `(a, b, c)` of the family. `None` takes them from the base.
    pub constants: Option<(BigInt, BigInt, BigInt)>,
    pub single_thread: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            window_max: 1_000_000,
            entry_degree_max: 1,
            radicand_degree_max: 2,
            min_line_members: 3,
            min_confirmations: 1,
            constants: None,
            single_thread: false,
        }
    }
}

impl SearchConfig {
    pub fn with_window(mut self, window_max: u64) -> Self {
        self.window_max = window_max;
        self
    }

    pub fn single_threaded(mut self, yes: bool) -> Self {
        self.single_thread = yes;
        self
    }

    pub fn for_theta(mut self, theta: &QuadraticIrrational) -> Self {
        self.constants = Some((theta.a().clone(), theta.b().clone(), theta.c().clone()));
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.entry_degree_max != 1 {
            return Err(Error::InvalidConfig(
                "only affine entry functions are supported".into(),
            ));
        }
        if !(1..=2).contains(&self.radicand_degree_max) {
            return Err(Error::InvalidConfig(
                "radicand degree must be 1 or 2".into(),
            ));
        }
        if self.min_line_members < 3 {
            return Err(Error::InvalidConfig(
                "min_line_members must be at least 3".into(),
            ));
        }
        if self.window_max > MAX_WINDOW {
            return Err(Error::InvalidConfig(format!("window above {MAX_WINDOW}")));
        }
        Ok(())
    }

    fn constants_i128(&self) -> Result<(i128, i128, i128)> {
        let (a, b, c) = self
            .constants
            .as_ref()
            .ok_or_else(|| Error::InvalidConfig("family constants are not set".into()))?;
        let conv = |v: &BigInt| {
            v.to_i128().filter(|x| x.abs() < 1 << 40).ok_or_else(|| {
                Error::InvalidConfig("family constants too large for the scanner".into())
            })
        };
        Ok((conv(a)?, conv(b)?, conv(c)?))
    }
}

/// One member of a family line. `t = 0` is the base.
#[derive(Clone, Debug)]
pub struct LineMember {
    pub t: i64,
    pub theta: QuadraticIrrational,
    pub expansion: CfExpansion,
}

#[derive(Clone, Debug)]
pub struct FamilyLine {
    /// Entries at `t = 0`.
    pub entry_constant: Vec<BigInt>,
    /// Per-entry slope in `t`.
    pub entry_slope: Vec<BigInt>,
    /// `x(t) = radicand[0] + radicand[1] t + radicand[2] t^2`.
    pub radicand: [BigInt; 3],
    pub members: Vec<LineMember>,
    /// Parameter values inside the member range where `x(t)` is in the window
    /// but not square-free.
    pub skipped_non_square_free: Vec<i64>,
    /// Parameter values inside the member range where `x(t)` is square-free
    /// and in the window but the expansion leaves the line.
    pub off_line: Vec<i64>,
}

impl FamilyLine {
    pub fn entries_at(&self, t: i64) -> Vec<BigInt> {
        let t = BigInt::from(t);
        self.entry_constant
            .iter()
            .zip(&self.entry_slope)
            .map(|(c, s)| c + s * &t)
            .collect()
    }

    pub fn radicand_at(&self, t: i64) -> BigInt {
        let t = BigInt::from(t);
        &self.radicand[0] + &self.radicand[1] * &t + &self.radicand[2] * &t * &t
    }

    /// Member vectors: entries followed by `x`.
    pub fn member_vectors(&self) -> Vec<Vec<BigInt>> {
        self.members
            .iter()
            .map(|m| {
                let mut v = m.expansion.flat();
                v.push(m.theta.d().clone());
                v
            })
            .collect()
    }

    /// Re-expands every member and checks it against the line polynomials.
    pub fn verify(&self) -> bool {
        self.members.iter().all(|m| {
            let exp = expand(&m.theta);
            exp.flat() == self.entries_at(m.t)
                && m.theta.d() == &self.radicand_at(m.t)
                && exp.shape() == m.expansion.shape()
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diagnostics {
    pub window_max: u64,
    /// The window does not reach the base radicand.
    pub window_below_base: bool,
    /// The estimate stayed below `n`, so a larger window could still raise it.
    pub window_exhausted: bool,
    pub square_free_scanned: u64,
    pub shape_matches: usize,
    pub candidate_directions: usize,
    pub rejected_lines: usize,
    pub skipped_non_square_free: usize,
}

#[derive(Clone, Debug)]
pub struct ComplexityReport {
    pub theta: QuadraticIrrational,
    pub expansion: CfExpansion,
    pub c: usize,
    /// The independence dimension before clamping into `[1, n]`.
    pub independence: usize,
    pub witness_lines: Vec<FamilyLine>,
    /// Base and all accepted line members as `(entries.., x)`, sorted.
    pub members_used: Vec<Vec<BigInt>>,
    pub diagnostics: Diagnostics,
}

impl ComplexityReport {
    pub fn n(&self) -> usize {
        self.expansion.n()
    }

    pub fn base_vector(&self) -> Vec<BigInt> {
        let mut v = self.expansion.flat();
        v.push(self.theta.d().clone());
        v
    }
}

/// A scanned radicand with its entries.
#[derive(Clone, Debug)]
struct Candidate {
    x: u64,
    entries: Vec<i128>,
}

/// Entries of `(P + sqrt(D))/Q` if the expansion has exactly `m` preperiod
/// and `l` period entries.
fn shape_entries(
    mut p: i128,
    mut q: i128,
    d: i128,
    root: i128,
    m: usize,
    l: usize,
) -> Option<Vec<i128>> {
    let total = m + l;
    let mut states: Vec<(i128, i128)> = Vec::with_capacity(total + 1);
    let mut entries = Vec::with_capacity(total);
    loop {
        if let Some(start) = states.iter().position(|s| *s == (p, q)) {
            return (start == m && entries.len() == total).then_some(entries);
        }
        if entries.len() == total {
            return None;
        }
        states.push((p, q));
        let a = if q > 0 {
            (p + root).div_euclid(q)
        } else {
            -((p + root).div_euclid(-q) + 1)
        };
        let np = a * q - p;
        q = (d - np * np) / q;
        p = np;
        entries.push(a);
    }
}

fn scan_one(x: u64, (a, b, c): (i128, i128, i128), m: usize, l: usize) -> Option<Vec<i128>> {
    let mut d = b * b * x as i128;
    let (mut p, mut q) = if b > 0 { (a, c) } else { (-a, -c) };
    if (d - p * p) % q != 0 {
        let qa = q.abs();
        p *= qa;
        d *= q * q;
        q *= qa;
    }
    let root = d.sqrt();
    shape_entries(p, q, d, root, m, l)
}

fn family_member(x: u64, cfg: &SearchConfig) -> Result<QuadraticIrrational> {
    let (a, b, c) = cfg.constants.clone().expect("constants checked by caller");
    canonicalize_big(a, b, c, BigInt::from(x))
}

fn scan(cfg: &SearchConfig, m: usize, l: usize) -> Result<(Vec<Candidate>, u64, Vec<bool>)> {
    let consts = cfg.constants_i128()?;
    let b2 = (consts.1 * consts.1) as u64;
    let x_max = cfg.window_max / b2;
    if x_max < 2 {
        return Ok((Vec::new(), 0, vec![false; 2]));
    }
    let sieve = square_free_sieve(x_max);
    let scanned = sieve.iter().skip(2).filter(|&&s| s).count() as u64;
    let check = |x: u64| -> Option<Candidate> {
        if !sieve[x as usize] {
            return None;
        }
        scan_one(x, consts, m, l).map(|entries| Candidate { x, entries })
    };
    let found: Vec<Candidate> = if cfg.single_thread {
        (2..=x_max).filter_map(check).collect()
    } else {
        (2..=x_max).into_par_iter().filter_map(check).collect()
    };
    Ok((found, scanned, sieve))
}

/// All family members in the window with the base's `(m, n - m)` shape, in
/// ascending order of `x`.
pub fn enumerate_window(
    cfg: &SearchConfig,
    base: &CfExpansion,
) -> Result<Vec<(QuadraticIrrational, CfExpansion)>> {
    enumerate_window_cached(cfg, base, &mut NoCache)
}

pub fn enumerate_window_cached(
    cfg: &SearchConfig,
    base: &CfExpansion,
    store: &mut dyn ExpansionStore,
) -> Result<Vec<(QuadraticIrrational, CfExpansion)>> {
    cfg.validate()?;
    let (found, _, _) = scan(cfg, base.m(), base.period().len())?;
    pool_from(cfg, base, found, store)
}

fn pool_from(
    cfg: &SearchConfig,
    base: &CfExpansion,
    found: Vec<Candidate>,
    store: &mut dyn ExpansionStore,
) -> Result<Vec<(QuadraticIrrational, CfExpansion)>> {
    let mut out = Vec::with_capacity(found.len());
    for cand in found {
        let theta = family_member(cand.x, cfg)?;
        let exp = expand_through(&theta, store);
        let agrees = exp.shape() == base.shape()
            && exp
                .entries()
                .zip(&cand.entries)
                .all(|(e, &c)| *e == BigInt::from(c));
        if agrees {
            out.push((theta, exp));
        }
    }
    Ok(out)
}

/// Exact quadratic (or linear) through `(0, x0)` and the given nodes.
fn fit_radicand(x0: i128, nodes: &[(i128, i128)]) -> Option<[Ratio<i128>; 3]> {
    let r = |v: i128| Ratio::from_integer(v);
    match nodes {
        [(t1, x1)] => Some([r(x0), Ratio::new(x1 - x0, *t1), r(0)]),
        [(t1, x1), (t2, x2)] => {
            let det = t1 * t2 * t2 - t2 * t1 * t1;
            if det == 0 {
                return None;
            }
            let (y1, y2) = (x1 - x0, x2 - x0);
            let u = Ratio::new(y1 * t2 * t2 - y2 * t1 * t1, det);
            let v = Ratio::new(t1 * y2 - t2 * y1, det);
            Some([r(x0), u, v])
        }
        _ => None,
    }
}

fn eval_fit(coef: &[Ratio<i128>; 3], t: i128) -> Ratio<i128> {
    coef[0] + coef[1] * t + coef[2] * t * t
}

/// Candidates tried as interpolation nodes per direction.
const FIT_NODES: usize = 8;

/// Groups pool members by the primitive direction from the base and fits a
/// radicand polynomial along each direction.
pub fn fit_lines_through_base(
    cfg: &SearchConfig,
    base_theta: &QuadraticIrrational,
    base: &CfExpansion,
    pool: &[(QuadraticIrrational, CfExpansion)],
    sieve: Option<&[bool]>,
) -> Result<(Vec<FamilyLine>, Diagnostics)> {
    cfg.validate()?;
    let mut diag = Diagnostics::default();
    let to_i = |v: &BigInt| {
        v.to_i128()
            .ok_or_else(|| Error::InvalidConfig("entries too large for line fitting".into()))
    };
    let base_entries: Vec<i128> = base.flat().iter().map(to_i).collect::<Result<_>>()?;
    let x0 = to_i(base_theta.d())?;

    let mut by_direction: BTreeMap<Vec<i128>, Vec<(i128, usize)>> = BTreeMap::new();
    for (idx, (theta, exp)) in pool.iter().enumerate() {
        if theta == base_theta || exp.shape() != base.shape() {
            continue;
        }
        let v: Vec<i128> = exp.flat().iter().map(to_i).collect::<Result<_>>()?;
        let diff: Vec<i128> = v.iter().zip(&base_entries).map(|(a, b)| a - b).collect();
        let g = diff.iter().fold(0i128, |g, d| g.gcd(d));
        if g == 0 {
            continue;
        }
        let first = *diff.iter().find(|d| **d != 0).unwrap();
        let s = first.signum();
        let dir: Vec<i128> = diff.iter().map(|d| d * s / g).collect();
        by_direction.entry(dir).or_default().push((s * g, idx));
    }
    diag.candidate_directions = by_direction.len();

    let x_of = |idx: usize| -> i128 { pool[idx].0.d().to_i128().unwrap() };
    let nodes_needed = cfg.radicand_degree_max as usize;
    let b2 = {
        let b = base_theta.b();
        (b * b).to_u64().unwrap_or(u64::MAX)
    };
    let x_limit = (cfg.window_max / b2) as i128;

    let mut lines = Vec::new();
    for (dir, mut mem) in by_direction {
        if mem.len() + 1 < cfg.min_line_members {
            diag.rejected_lines += 1;
            continue;
        }
        mem.sort_by_key(|&(t, _)| (t.abs(), t));
        let cands: Vec<(i128, i128)> = mem
            .iter()
            .take(FIT_NODES)
            .map(|&(t, i)| (t, x_of(i)))
            .collect();
        let mut best: Option<([Ratio<i128>; 3], Vec<(i128, usize)>)> = None;
        let mut consider = |nodes: &[(i128, i128)]| {
            let Some(coef) = fit_radicand(x0, nodes) else {
                return;
            };
            let on: Vec<(i128, usize)> = mem
                .iter()
                .copied()
                .filter(|&(t, i)| eval_fit(&coef, t) == Ratio::from_integer(x_of(i)))
                .collect();
            if best.as_ref().is_none_or(|(_, b)| on.len() > b.len()) {
                best = Some((coef, on));
            }
        };
        if nodes_needed == 1 {
            for c in &cands {
                consider(&[*c]);
            }
        } else {
            for i in 0..cands.len() {
                for j in i + 1..cands.len() {
                    consider(&[cands[i], cands[j]]);
                }
            }
        }
        let Some((coef, on)) = best else {
            diag.rejected_lines += 1;
            continue;
        };
        let confirmations = on.len().saturating_sub(nodes_needed);
        if on.len() + 1 < cfg.min_line_members || confirmations < cfg.min_confirmations {
            diag.rejected_lines += 1;
            continue;
        }
        // Reparametrize so that members sit at consecutive-step integers.
        let step = on.iter().fold(0i128, |g, &(t, _)| g.gcd(&t));
        let scaled = [coef[0], coef[1] * step, coef[2] * step * step];
        if scaled.iter().any(|c| !c.is_integer()) {
            diag.rejected_lines += 1;
            continue;
        }
        let radicand = scaled.map(|c| BigInt::from(c.to_integer()));
        let entry_slope: Vec<BigInt> = dir.iter().map(|d| BigInt::from(d * step)).collect();

        let mut members = vec![LineMember {
            t: 0,
            theta: base_theta.clone(),
            expansion: base.clone(),
        }];
        for &(t, i) in &on {
            members.push(LineMember {
                t: (t / step) as i64,
                theta: pool[i].0.clone(),
                expansion: pool[i].1.clone(),
            });
        }
        members.sort_by_key(|m| m.t);

        let line_x = |s: i128| {
            scaled[0].to_integer() + scaled[1].to_integer() * s + scaled[2].to_integer() * s * s
        };
        let (lo, hi) = (members[0].t, members[members.len() - 1].t);
        let on_set: std::collections::HashSet<i64> = members.iter().map(|m| m.t).collect();
        let mut skipped = Vec::new();
        let mut off_line = Vec::new();
        for s in lo..=hi {
            if on_set.contains(&s) {
                continue;
            }
            let x = line_x(s as i128);
            if x < 2 || x > x_limit {
                continue;
            }
            let sf = match sieve {
                Some(sv) if (x as usize) < sv.len() => sv[x as usize],
                _ => crate::arith::is_square_free_u64(x as u64),
            };
            if sf {
                off_line.push(s);
            } else {
                skipped.push(s);
            }
        }
        diag.skipped_non_square_free += skipped.len();
        lines.push(FamilyLine {
            entry_constant: base.flat(),
            entry_slope,
            radicand,
            members,
            skipped_non_square_free: skipped,
            off_line,
        });
    }
    Ok((lines, diag))
}

/// Largest coordinate set `S` such that every `j` in `S` is varied by some
/// pair of vectors agreeing on `S \ {j}`.
pub fn independence_dimension(base_vector: &[BigInt], members: &[Vec<BigInt>]) -> usize {
    let coords: Vec<usize> = (0..base_vector.len()).collect();
    independence_dimension_on(base_vector, members, &coords)
}

/// As [`independence_dimension`], with `S` restricted to `allowed`.
pub fn independence_dimension_on(
    base_vector: &[BigInt],
    members: &[Vec<BigInt>],
    allowed: &[usize],
) -> usize {
    let mut vectors: Vec<&[BigInt]> = members.iter().map(|v| v.as_slice()).collect();
    vectors.push(base_vector);
    vectors.sort();
    vectors.dedup();
    if vectors.len() < 2 {
        return 0;
    }
    // Only coordinates that vary at all can be in S.
    let varying: Vec<usize> = allowed
        .iter()
        .copied()
        .filter(|&j| vectors.iter().any(|v| v[j] != vectors[0][j]))
        .collect();
    let k = varying.len();
    assert!(k < 24, "too many varying coordinates for subset search");
    let mut masks: Vec<u32> = (1..(1u32 << k)).collect();
    masks.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
    for mask in masks {
        let set: Vec<usize> = (0..k)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| varying[i])
            .collect();
        if set
            .iter()
            .all(|&j| varied_with_rest_fixed(&vectors, &set, j))
        {
            return set.len();
        }
    }
    0
}

fn varied_with_rest_fixed(vectors: &[&[BigInt]], set: &[usize], j: usize) -> bool {
    let mut seen: HashMap<Vec<&BigInt>, &BigInt> = HashMap::new();
    for v in vectors {
        let key: Vec<&BigInt> = set.iter().filter(|&&i| i != j).map(|&i| &v[i]).collect();
        match seen.get(&key) {
            Some(&w) if w != &v[j] => return true,
            Some(_) => {}
            None => {
                seen.insert(key, &v[j]);
            }
        }
    }
    false
}

/// Estimates `c(A_RM)` for the torus of `theta`.
pub fn arithmetic_complexity(
    theta: &QuadraticIrrational,
    cfg: &SearchConfig,
) -> Result<ComplexityReport> {
    arithmetic_complexity_cached(theta, cfg, &mut NoCache)
}

pub fn arithmetic_complexity_cached(
    theta: &QuadraticIrrational,
    cfg: &SearchConfig,
    store: &mut dyn ExpansionStore,
) -> Result<ComplexityReport> {
    let own = (theta.a().clone(), theta.b().clone(), theta.c().clone());
    let cfg = match &cfg.constants {
        None => cfg.clone().for_theta(theta),
        Some(k) if *k == own => cfg.clone(),
        Some(_) => {
            return Err(Error::InvalidConfig(
                "family constants differ from the base".into(),
            ))
        }
    };
    cfg.validate()?;
    let base = expand_through(theta, store);
    let base_vector = {
        let mut v = base.flat();
        v.push(theta.d().clone());
        v
    };
    let big_d = theta.big_d();
    let window_below_base = BigInt::from(cfg.window_max) < big_d;

    let (found, scanned, sieve) = scan(&cfg, base.m(), base.period().len())?;
    let shape_matches = found.len();
    let pool = pool_from(&cfg, &base, found, store)?;
    let (lines, mut diag) = if window_below_base {
        (Vec::new(), Diagnostics::default())
    } else {
        fit_lines_through_base(&cfg, theta, &base, &pool, Some(&sieve))?
    };

    let mut members_used: Vec<Vec<BigInt>> =
        lines.iter().flat_map(|l| l.member_vectors()).collect();
    members_used.push(base_vector.clone());
    members_used.sort();
    members_used.dedup();
    let r = independence_dimension(&base_vector, &members_used);
    let n = base.n();
    let c = r.max(1).min(n);

    diag.window_max = cfg.window_max;
    diag.window_below_base = window_below_base;
    diag.window_exhausted = c < n;
    diag.square_free_scanned = scanned;
    diag.shape_matches = shape_matches;
    Ok(ComplexityReport {
        theta: theta.clone(),
        expansion: base,
        c,
        independence: r,
        witness_lines: lines,
        members_used,
        diagnostics: diag,
    })
}

/// Independence dimension on the witness set with `x` and the closing period
/// entry removed from the admissible coordinates.
pub fn fiber_independence(report: &ComplexityReport) -> usize {
    let n = report.n();
    let allowed: Vec<usize> = (0..n - 1).collect();
    independence_dimension_on(&report.base_vector(), &report.members_used, &allowed)
}
