//! Exact arithmetic: rationals, sparse multivariate polynomials over the
//! rationals, and the fraction field built on top of them.
//!
//! Everything here is immutable after construction and `Send + Sync`.

mod budget;
mod frac;
mod poly;
mod symbol;

pub use budget::{check_terms, term_budget, with_term_budget, DEFAULT_TERM_BUDGET};
pub use frac::Frac;
pub use poly::{Assignment, SparsePoly};
pub use symbol::{Monomial, Symbol};

use num_bigint::BigInt;

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("symbol {0} has no assigned value")]
    MissingSymbol(Symbol),
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at q = 1")]
    IndeterminateLimit,
    #[error("term budget exceeded: {terms} terms > budget {budget}")]
    ResourceLimit { terms: usize, budget: usize },
    #[error("inexact polynomial division")]
    InexactDivision,
}

pub type Result<T, E = ArithError> = std::result::Result<T, E>;
