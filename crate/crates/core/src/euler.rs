//! Euler equations of a periodic continued fraction.
//!
//! For the purely periodic complete quotient `theta' = [k_1, ..., k_L]` with
//! continuants `A_n = K(k_1..k_L)`, `A_{n-1} = K(k_1..k_{L-1})`,
//! `B_n = K(k_2..k_L)`, `B_{n-1} = K(k_2..k_{L-1})`, the system is
//!
//! ```text
//! A_n - B_{n-1} = c1,   2 B_n = c2,   S * D = c1^2 + 2 c2 A_{n-1}
//! ```
//!
//! where `D = b^2 d` and `S` is the square of the ratio between the root in
//! the closed form `(c1 + sqrt(c1^2 + 2 c2 A_{n-1}))/c2` and `sqrt(D)`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::cfrac::{anchored_index, CfExpansion};
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{var_list, IntegerPolynomial};
use crate::surd::QuadraticIrrational;

/// Variable order `g_1..g_m, k_1..k_L, D, c1, c2`.
pub fn euler_variables(m: usize, period_length: usize) -> Arc<[String]> {
    var_list(
        (1..=m)
            .map(|i| format!("g{i}"))
            .chain((1..=period_length).map(|i| format!("k{i}")))
            .chain(["D".to_string(), "c1".to_string(), "c2".to_string()]),
    )
}

/// The six continuants around the period closure.
#[derive(Clone, Debug)]
pub struct Continuants {
    pub a_n: IntegerPolynomial,
    pub a_n1: IntegerPolynomial,
    pub a_n2: IntegerPolynomial,
    pub b_n: IntegerPolynomial,
    pub b_n1: IntegerPolynomial,
    pub b_n2: IntegerPolynomial,
}

impl Continuants {
    pub fn as_array(&self) -> [&IntegerPolynomial; 6] {
        [
            &self.a_n, &self.a_n1, &self.a_n2, &self.b_n, &self.b_n1, &self.b_n2,
        ]
    }
}

/// Symbolic continuants of one period in the variables of [`euler_variables`].
pub fn symbolic_continuants(m: usize, period_length: usize) -> Continuants {
    assert!(period_length >= 1);
    let vars = euler_variables(m, period_length);
    continuants_in(&vars, m, period_length)
}

fn continuants_in(vars: &Arc<[String]>, m: usize, period_length: usize) -> Continuants {
    let zero = IntegerPolynomial::zero(vars);
    let one = IntegerPolynomial::constant(vars, 1);
    // (p_{j-2}, p_{j-1}) and (q_{j-2}, q_{j-1}), seeded at j = 0.
    let (mut p2, mut p1) = (zero.clone(), one.clone());
    let (mut q2, mut q1) = (one.clone(), zero.clone());
    let mut p3 = zero.clone();
    let mut q3 = zero.clone();
    for j in 0..period_length {
        let k = IntegerPolynomial::var(vars, m + j);
        let p = &(&k * &p1) + &p2;
        let q = &(&k * &q1) + &q2;
        p3 = std::mem::replace(&mut p2, std::mem::replace(&mut p1, p));
        q3 = std::mem::replace(&mut q2, std::mem::replace(&mut q1, q));
    }
    // After the loop p1 = p_{L-1}, p2 = p_{L-2}, p3 = p_{L-3}. For L = 1 the
    // seeds give p_{-2} = 0 and q_{-2} = 1.
    if period_length == 1 {
        p3 = zero;
        q3 = one;
    }
    Continuants {
        a_n: p1,
        a_n1: p2,
        a_n2: p3,
        b_n: q1,
        b_n1: q2,
        b_n2: q3,
    }
}

#[derive(Clone, Debug)]
pub struct EulerSystem {
    pub m: usize,
    pub n: usize,
    pub variables: Arc<[String]>,
    pub continuants: Continuants,
    pub c1: BigInt,
    pub c2: BigInt,
    /// `S` in `S * D = c1^2 + 2 c2 A_{n-1}`.
    pub radicand_scale: BigInt,
    /// The three relations, each `lhs - rhs`, with `c1` and `c2` symbolic.
    pub equations: [IntegerPolynomial; 3],
    pub base_point: Vec<BigInt>,
    pub pure_root: bool,
}

impl EulerSystem {
    pub fn period_length(&self) -> usize {
        self.n - self.m
    }

    fn index_of(&self, name: &str) -> usize {
        self.variables.iter().position(|v| v == name).unwrap()
    }

    pub fn var(&self, name: &str) -> IntegerPolynomial {
        IntegerPolynomial::var_named(&self.variables, name)
    }

    pub fn d_index(&self) -> usize {
        self.index_of("D")
    }

    /// `k_n`, the closing entry of the period.
    pub fn last_entry_index(&self) -> usize {
        self.n - 1
    }

    pub fn equations_vanish(&self) -> bool {
        self.equations
            .iter()
            .all(|e| e.eval(&self.base_point).is_zero())
    }

    /// The rewrites `c1 = k_n A_{n-1} + A_{n-2} - B_{n-1}` and
    /// `c2 = 2 k_n B_{n-1} + 2 B_{n-2}`.
    pub fn constant_rewrites(&self) -> (IntegerPolynomial, IntegerPolynomial) {
        let c = &self.continuants;
        let kn = IntegerPolynomial::var(&self.variables, self.last_entry_index());
        let two = BigInt::from(2);
        let c1 = &(&(&kn * &c.a_n1) + &c.a_n2) - &c.b_n1;
        let c2 = (&(&kn * &c.b_n1) + &c.b_n2).scale(&two);
        (c1, c2)
    }

    /// The rewrites evaluated at the base point agree with `c1`, `c2`.
    pub fn rewrites_hold(&self) -> bool {
        let (r1, r2) = self.constant_rewrites();
        r1.eval(&self.base_point) == self.c1 && r2.eval(&self.base_point) == self.c2
    }

    /// Third relation with `c1`, `c2` replaced by their rewrites.
    pub fn substituted_third_relation(&self) -> IntegerPolynomial {
        let (r1, r2) = self.constant_rewrites();
        self.equations[2]
            .substitute(self.index_of("c1"), &r1)
            .substitute(self.index_of("c2"), &r2)
    }
}

/// Builds the Euler system of `theta` from its expansion.
pub fn build_euler_system(theta: &QuadraticIrrational, exp: &CfExpansion) -> Result<EulerSystem> {
    let quotient = exp
        .periodic_quotient()
        .ok_or(Error::IndexConventionFailure)?;
    let len = exp.period().len();
    match anchored_index(&quotient, exp.period())? {
        Some(j) if j == len - 1 => {}
        _ => return Err(Error::IndexConventionFailure),
    }
    let m = exp.m();
    let vars = euler_variables(m, len);
    let continuants = continuants_in(&vars, m, len);

    let big_d = theta.big_d();
    let mut base_point: Vec<BigInt> = exp.flat();
    base_point.push(big_d.clone());
    // c1, c2 slots filled below.
    base_point.push(BigInt::zero());
    base_point.push(BigInt::zero());

    let c1 = &continuants.a_n.eval(&base_point) - &continuants.b_n1.eval(&base_point);
    let c2: BigInt = continuants.b_n.eval(&base_point) * 2;
    let a_n1 = continuants.a_n1.eval(&base_point);
    let disc: BigInt = &c1 * &c1 + BigInt::from(2) * &c2 * &a_n1;
    let (scale, rem) = disc.div_rem(&big_d);
    if !rem.is_zero() {
        return Err(Error::IndexConventionFailure);
    }
    let nv = vars.len();
    base_point[nv - 2] = c1.clone();
    base_point[nv - 1] = c2.clone();

    let c1v = IntegerPolynomial::var(&vars, nv - 2);
    let c2v = IntegerPolynomial::var(&vars, nv - 1);
    let dv = IntegerPolynomial::var(&vars, nv - 3);
    let two = BigInt::from(2);
    let eq1 = &(&continuants.a_n - &continuants.b_n1) - &c1v;
    let eq2 = &continuants.b_n.scale(&two) - &c2v;
    let eq3 = &(&dv.scale(&scale) - &(&c1v * &c1v)) - &(&c2v * &continuants.a_n1).scale(&two);

    let sys = EulerSystem {
        m,
        n: exp.n(),
        variables: vars,
        continuants,
        c1,
        c2,
        radicand_scale: scale,
        equations: [eq1, eq2, eq3],
        base_point,
        pure_root: theta.is_pure_root(),
    };
    debug_assert!(sys.equations_vanish());
    debug_assert!(sys.rewrites_hold());
    Ok(sys)
}

/// `LHS - RHS` of the linear diophantine equation in `D` and `k_n`, with the
/// sign of the constant `4` chosen so that it vanishes at the base point.
#[derive(Clone, Debug)]
pub struct DiophantineForm {
    pub polynomial: IntegerPolynomial,
    /// `+1` or `-1`: the sign in `(A_{n-2} + B_{n-1})^2 +- 4`.
    pub sign: i8,
}

pub fn linear_diophantine_form(sys: &EulerSystem) -> Result<DiophantineForm> {
    let c = &sys.continuants;
    let vars = &sys.variables;
    let kn = IntegerPolynomial::var(vars, sys.last_entry_index());
    let d = IntegerPolynomial::var(vars, sys.d_index()).scale(&sys.radicand_scale);
    let two = BigInt::from(2);
    let lhs = &(&d - &(&(&kn * &kn) * &(&c.a_n1 * &c.a_n1)))
        - &(&(&(&c.a_n1 * &c.a_n2) + &(&c.a_n1 * &c.b_n1)) * &kn).scale(&two);
    let square = (&c.a_n2 + &c.b_n1).pow(2);
    let mut found = None;
    for sign in [1i8, -1] {
        let rhs = &square + &IntegerPolynomial::constant(vars, 4 * i64::from(sign));
        let poly = &lhs - &rhs;
        if poly.eval(&sys.base_point).is_zero() {
            if found.is_some() {
                return Err(Error::SignUnresolvable);
            }
            found = Some(DiophantineForm {
                polynomial: poly,
                sign,
            });
        }
    }
    found.ok_or(Error::SignUnresolvable)
}

/// `#variables - rank(J)` for a set of equations at an integer point.
pub fn jacobian_corank(equations: &[IntegerPolynomial], point: &[BigInt]) -> usize {
    let Some(first) = equations.first() else {
        return 0;
    };
    let nv = first.variables().len();
    if nv == 0 {
        return 0;
    }
    let rows: Vec<Vec<BigInt>> = equations
        .iter()
        .map(|e| {
            (0..nv)
                .map(|i| e.partial_derivative(i).eval(point))
                .collect()
        })
        .collect();
    nv - linalg::rank(&rows)
}

/// Upper bound on the dimension of the Euler variety through the base point:
/// the corank of the Jacobian of the system, with the tie `k_n = 2 g_1` added
/// for pure square roots. `c1` and `c2` count as coordinates.
pub fn rational_dimension_upper_bound(sys: &EulerSystem) -> usize {
    let mut eqs: Vec<IntegerPolynomial> = sys.equations.to_vec();
    if sys.pure_root && sys.m >= 1 {
        let kn = IntegerPolynomial::var(&sys.variables, sys.last_entry_index());
        let g1 = IntegerPolynomial::var(&sys.variables, 0);
        eqs.push(&kn - &g1.scale(&BigInt::from(2)));
    }
    jacobian_corank(&eqs, &sys.base_point)
}

/// The tie is only meaningful when the expansion has the pure-root shape.
pub fn has_root_shape(exp: &CfExpansion) -> bool {
    exp.m() == 1
        && exp.period().last() == Some(&(exp.preperiod()[0].clone() * 2))
        && exp.preperiod()[0] >= BigInt::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfrac::{convergents, expand};
    use crate::surd::canonicalize;

    #[test]
    fn length_one_continuants() {
        let c = symbolic_continuants(0, 1);
        assert_eq!(c.a_n.to_string(), "k1");
        assert_eq!(c.a_n1.to_string(), "1");
        assert_eq!(c.b_n.to_string(), "1");
        assert!(c.b_n1.is_zero());
        // theta = (k + sqrt(k^2 + 4))/2 at k = 1 is the golden mean.
        let vars = c.a_n.variables().clone();
        let mut pt = vec![BigInt::zero(); vars.len()];
        pt[0] = BigInt::one();
        let an = c.a_n.eval(&pt);
        let an1 = c.a_n1.eval(&pt);
        let bn = c.b_n.eval(&pt);
        let bn1 = c.b_n1.eval(&pt);
        let disc = (&an - &bn1).pow(2) + 4 * an1 * &bn;
        assert_eq!((an - bn1, disc, bn * 2), (1.into(), 5.into(), 2.into()));
    }

    #[test]
    fn length_two_continuants_match_sqrt83() {
        let c = symbolic_continuants(0, 2);
        assert_eq!(c.a_n.to_string(), "k1*k2 + 1");
        let theta = canonicalize(0, 1, 1, 83).unwrap();
        let e = expand(&theta);
        let q = crate::cfrac::period_convergents(e.period(), 1);
        let vars = c.a_n.variables().clone();
        let mut pt = vec![BigInt::zero(); vars.len()];
        pt[0] = 9.into();
        pt[1] = 18.into();
        assert_eq!(c.a_n.eval(&pt), q[0]);
        assert_eq!(c.a_n1.eval(&pt), q[1]);
        assert_eq!(c.b_n.eval(&pt), q[2]);
        assert_eq!(c.b_n1.eval(&pt), q[3]);
    }

    #[test]
    fn all_ones_give_fibonacci() {
        let c = symbolic_continuants(0, 6);
        let pt: Vec<BigInt> = (0..9)
            .map(|i| if i < 6 { 1.into() } else { 0.into() })
            .collect();
        assert_eq!(c.a_n.eval(&pt), BigInt::from(13));
        assert_eq!(c.a_n1.eval(&pt), BigInt::from(8));
        assert_eq!(c.b_n.eval(&pt), BigInt::from(8));
        let t = convergents(&CfExpansion::from_i64(&[], &[1]), 6);
        assert_eq!(t.a[5], BigInt::from(13));
    }

    #[test]
    fn sqrt83_system() {
        let theta = canonicalize(0, 1, 1, 83).unwrap();
        let sys = build_euler_system(&theta, &expand(&theta)).unwrap();
        assert_eq!(&sys.base_point[..4], &[9, 9, 18, 83].map(BigInt::from));
        assert!(sys.equations_vanish());
        assert!(sys.rewrites_hold());
        // A_n = 163, B_{n-1} = 1, B_n = 18, A_{n-1} = 9
        assert_eq!(sys.c1, BigInt::from(162));
        assert_eq!(sys.c2, BigInt::from(36));
        assert_eq!(sys.radicand_scale, BigInt::from(324));
        let form = linear_diophantine_form(&sys).unwrap();
        assert!(form.polynomial.eval(&sys.base_point).is_zero());
        assert!((&sys.substituted_third_relation() - &form.polynomial).is_zero());
        assert_eq!(rational_dimension_upper_bound(&sys), 2);
    }

    #[test]
    fn golden_mean_system() {
        let theta = canonicalize(1, 1, 2, 5).unwrap();
        let sys = build_euler_system(&theta, &expand(&theta)).unwrap();
        assert_eq!(sys.radicand_scale, BigInt::one());
        assert_eq!((sys.c1.clone(), sys.c2.clone()), (1.into(), 2.into()));
        assert_eq!(sys.equations[2].to_string(), "-c1^2 + D - 2*c2");
        assert!(sys.equations_vanish());
    }

    #[test]
    fn sqrt7_system() {
        let theta = canonicalize(0, 1, 1, 7).unwrap();
        let sys = build_euler_system(&theta, &expand(&theta)).unwrap();
        assert_eq!(&sys.base_point[..6], &[2, 1, 1, 1, 4, 7].map(BigInt::from));
        assert!(sys.equations_vanish());
        let form = linear_diophantine_form(&sys).unwrap();
        assert!((&sys.substituted_third_relation() - &form.polynomial).is_zero());
        assert!(rational_dimension_upper_bound(&sys) >= 1);
    }

    #[test]
    fn empty_corank() {
        assert_eq!(jacobian_corank(&[], &[]), 0);
        let vars = var_list(Vec::<String>::new());
        let c = IntegerPolynomial::constant(&vars, 3);
        assert_eq!(jacobian_corank(&[c], &[]), 0);
    }
}
