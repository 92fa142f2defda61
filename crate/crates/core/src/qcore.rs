//! q-integers, q-factorials, Gaussian binomials and the q-shifted product
//! `(A + B)^{[n]}`.
//!
//! Everything that depends on `q` goes through [`QValue`], which is either
//! the indeterminate `q` or a fixed rational. The same builders therefore
//! serve both exact verification and pointwise evaluation.

use std::cell::RefCell;
use std::fmt;

use num_traits::{One, Pow, Zero};

use crate::arith::{ArithError, Assignment, Frac, Monomial, Rational, Result, SparsePoly, Symbol};
use crate::ncalg::CommPoly;

/// Rows of Gaussian binomials kept per thread.
pub const QBINOM_MEMO_ROWS: usize = 32;

/// The value of `q`: the indeterminate, or a rational specialisation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QValue {
    Symbolic,
    At(Rational),
}

impl QValue {
    pub fn at(v: Rational) -> Self {
        QValue::At(v)
    }

    pub fn one() -> Self {
        QValue::At(Rational::one())
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self, QValue::Symbolic)
    }

    /// `q^e`.
    pub fn pow(&self, e: u32) -> SparsePoly {
        match self {
            QValue::Symbolic => SparsePoly::term(Monomial::power(Symbol::Q, e), Rational::one()),
            QValue::At(v) => SparsePoly::constant(Pow::pow(v, e)),
        }
    }

    /// `[n] = 1 + q + … + q^{n-1}`.
    pub fn int(&self, n: u32) -> SparsePoly {
        self.specialise(q_int(n))
    }

    pub fn factorial(&self, n: u32) -> SparsePoly {
        self.specialise(q_factorial(n))
    }

    pub fn binomial(&self, n: u32, k: i64) -> SparsePoly {
        self.specialise(q_binomial(n, k))
    }

    /// Maps a polynomial in `q` (and possibly other symbols) to this value of `q`.
    pub fn specialise(&self, p: SparsePoly) -> SparsePoly {
        match self {
            QValue::Symbolic => p,
            QValue::At(v) => {
                let mut at = Assignment::new();
                at.insert(Symbol::Q, v.clone());
                p.substitute(&at)
            }
        }
    }

    pub fn specialise_frac(&self, f: &Frac) -> Result<Frac> {
        match self {
            QValue::Symbolic => Ok(f.clone()),
            QValue::At(v) => {
                let mut at = Assignment::new();
                at.insert(Symbol::Q, v.clone());
                f.substitute(&at)
            }
        }
    }
}

impl fmt::Display for QValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QValue::Symbolic => f.write_str("q"),
            QValue::At(v) => write!(f, "{v}"),
        }
    }
}

/// The q-integer `[n]` as a polynomial in `q`; `[0] = 0`.
pub fn q_int(n: u32) -> SparsePoly {
    SparsePoly::from_terms((0..n).map(|i| (Monomial::power(Symbol::Q, i), Rational::one())))
}

/// `[n]! = [n][n-1]…[1]`, with `[0]! = 1`.
pub fn q_factorial(n: u32) -> SparsePoly {
    (1..=n).fold(SparsePoly::one(), |acc, k| &acc * &q_int(k))
}

thread_local! {
    static ROWS: RefCell<Vec<Vec<SparsePoly>>> = const { RefCell::new(Vec::new()) };
}

fn next_row(prev: &[SparsePoly]) -> Vec<SparsePoly> {
    // [n, k] = q^k [n-1, k] + [n-1, k-1]
    let n = prev.len();
    (0..=n)
        .map(|k| {
            let left = if k < n {
                prev[k].mul_monomial(&Monomial::power(Symbol::Q, k as u32), &Rational::one())
            } else {
                SparsePoly::zero()
            };
            if k >= 1 {
                &left + &prev[k - 1]
            } else {
                left
            }
        })
        .collect()
}

/// The Gaussian binomial `[n choose k]` as a polynomial in `q`. Zero when
/// `k < 0` or `k > n`.
///
/// Built from the Pascal-type recurrence, so polynomiality holds by
/// construction. The first [`QBINOM_MEMO_ROWS`] rows are memoised per thread.
pub fn q_binomial(n: u32, k: i64) -> SparsePoly {
    if k < 0 || k > n as i64 {
        return SparsePoly::zero();
    }
    let k = k as usize;
    ROWS.with(|rows| {
        let mut rows = rows.borrow_mut();
        if rows.is_empty() {
            rows.push(vec![SparsePoly::one()]);
        }
        let cap = QBINOM_MEMO_ROWS.min(n as usize + 1);
        while rows.len() < cap {
            let row = next_row(rows.last().unwrap());
            rows.push(row);
        }
        if (n as usize) < rows.len() {
            return rows[n as usize][k].clone();
        }
        let mut row = rows.last().unwrap().clone();
        while row.len() <= n as usize {
            row = next_row(&row);
        }
        row[k].clone()
    })
}

/// `[n]! / ([k]! [n-k]!)` by exact polynomial division. Kept as an
/// independent route for cross-checking [`q_binomial`].
pub fn q_binomial_by_division(n: u32, k: i64) -> Result<SparsePoly> {
    if k < 0 || k > n as i64 {
        return Ok(SparsePoly::zero());
    }
    let k = k as u32;
    let den = &q_factorial(k) * &q_factorial(n - k);
    q_factorial(n)
        .div_exact(&den)
        .ok_or(ArithError::InexactDivision)
}

/// `prod_{k=1}^{n} (q^{m+k-1} A + B)` in the commutative ring; `n = 0` gives 1.
pub fn q_rising(a: &CommPoly, b: &CommPoly, n: u32, shift: u32, q: &QValue) -> Result<CommPoly> {
    let mut acc = CommPoly::one();
    for k in 1..=n {
        let factor = &a.scale(&Frac::from_poly(q.pow(shift + k - 1))) + b;
        acc = acc.mul(&factor)?;
    }
    Ok(acc)
}

/// Ordinary binomial coefficient as an exact rational (zero outside `0..=n`).
pub fn binomial(n: u32, k: i64) -> Rational {
    if k < 0 || k > n as i64 {
        return Rational::zero();
    }
    let k = k as u32;
    let k = k.min(n - k);
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * Rational::from_integer((n - i).into()) / Rational::from_integer((i + 1).into());
    }
    acc
}
