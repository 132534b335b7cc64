//! Exact continued fractions of real quadratic irrationals and the
//! arithmetic-complexity rank estimate for tori with real multiplication.
//!
//! The crate is organized bottom-up:
//!
//! * [`surd`] and [`cfrac`]: exact quadratic irrationals, their periodic
//!   continued fractions, convergents, reconstruction identities, Morita and
//!   isomorphism predicates, Bratteli schedules.
//! * [`poly`], [`linalg`] and [`euler`]: symbolic continuants, the Euler
//!   equation system of a period, its linear diophantine form and a Jacobian
//!   dimension bound.
//! * [`complexity`]: the window search for integer family lines through a
//!   base expansion and the independence dimension estimating `c(A_RM)`.
//! * [`rank`] and [`table`]: rank estimates `c - 1`, rank bounds `n - 1`, the
//!   `E_b` family, dimension-group ranks, class numbers, and the Q-curve table.
//! * [`store`] and [`cli`]: JSON/CSV formats, the expansion cache and the
//!   command-line front end.

pub mod arith;
pub mod cfrac;
pub mod cli;
pub mod complexity;
pub mod error;
pub mod euler;
pub mod linalg;
pub mod poly;
pub mod rank;
pub mod store;
pub mod surd;
pub mod table;

pub use cfrac::{
    bratteli_schedule, convergents, expand, expand_surd, isomorphic_tori, morita_equivalent,
    reconstruct_verify, BratteliSchedule, CfExpansion, ConvergentTable,
};

pub use complexity::{arithmetic_complexity, ComplexityReport, FamilyLine, SearchConfig};
pub use error::{Error, Result};
pub use euler::{build_euler_system, linear_diophantine_form, EulerSystem};
pub use poly::IntegerPolynomial;
pub use rank::{rank_report, CurveDescriptor, GeneratorSet, RankReport};
pub use surd::{canonicalize, QuadraticIrrational, Surd};
