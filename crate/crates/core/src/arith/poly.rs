use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Pow, Zero};

use super::{check_terms, ArithError, Monomial, Rational, Result, Symbol};

/// `a += b`, skipping the gcd reduction when both are integers.
fn add_assign(a: &mut Rational, b: &Rational) {
    if a.is_integer() && b.is_integer() {
        let n = a.numer() + b.numer();
        *a = Rational::from_integer(n);
    } else {
        *a += b;
    }
}

fn mul(a: &Rational, b: &Rational) -> Rational {
    if a.is_integer() && b.is_integer() {
        Rational::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

/// Values for symbols, used by evaluation and substitution.
pub type Assignment = BTreeMap<Symbol, Rational>;

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in a map ordered by [`Monomial`]'s lex order, so iteration
/// (and therefore printing) is deterministic. No stored coefficient is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparsePoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl SparsePoly {
    pub fn zero() -> Self {
        SparsePoly::default()
    }

    pub fn one() -> Self {
        SparsePoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        SparsePoly::term(Monomial::one(), c)
    }

    pub fn from_int(n: i64) -> Self {
        SparsePoly::constant(super::int(n))
    }

    pub fn var(s: Symbol) -> Self {
        SparsePoly::term(Monomial::var(s), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        SparsePoly { terms }
    }

    /// Builds a polynomial from possibly repeated terms.
    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = SparsePoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if this is a constant polynomial (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest term in the monomial order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        let mut v: Vec<Symbol> = self
            .terms
            .keys()
            .flat_map(|m| m.pairs().iter().map(|&(s, _)| s))
            .collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn degree_in(&self, s: Symbol) -> u32 {
        self.terms.keys().map(|m| m.exponent(s)).max().unwrap_or(0)
    }

    pub fn is_univariate_in(&self, s: Symbol) -> bool {
        self.terms
            .keys()
            .all(|m| m.pairs().iter().all(|&(t, _)| t == s))
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                add_assign(o.get_mut(), &c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn add_scaled(&mut self, other: &SparsePoly, scale: &Rational, shift: &Monomial) {
        for (m, c) in &other.terms {
            self.add_term(m.mul(shift), mul(c, scale));
        }
    }

    pub fn scale(&self, c: &Rational) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero();
        }
        SparsePoly {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), mul(d, c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero();
        }
        SparsePoly {
            terms: self.terms.iter().map(|(k, d)| (k.mul(m), mul(d, c))).collect(),
        }
    }

    /// Product that fails with `ResourceLimit` when the result exceeds the
    /// thread's term budget.
    pub fn checked_mul(&self, other: &SparsePoly) -> Result<SparsePoly> {
        let p = self * other;
        check_terms(p.len())?;
        Ok(p)
    }

    pub fn pow(&self, n: u32) -> SparsePoly {
        let mut acc = SparsePoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact value at a point. Every symbol of `self` must be assigned.
    pub fn eval(&self, at: &Assignment) -> Result<Rational> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for &(s, e) in m.pairs() {
                let x = at.get(&s).ok_or(ArithError::MissingSymbol(s))?;
                v *= Pow::pow(x, e);
            }
            total += v;
        }
        Ok(total)
    }

    /// Substitutes values for the symbols present in `at`, leaving the rest symbolic.
    pub fn substitute(&self, at: &Assignment) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            let mut rest = Vec::with_capacity(m.pairs().len());
            for &(s, e) in m.pairs() {
                match at.get(&s) {
                    Some(x) => v *= Pow::pow(x, e),
                    None => rest.push((s, e)),
                }
            }
            out.add_term(Monomial::from_pairs(rest), v);
        }
        out
    }

    /// `self / d` when `d` divides `self` exactly.
    ///
    /// Single-divisor lex division: the remainder is zero iff `d | self`, and
    /// a non-divisible leading term proves non-divisibility immediately.
    pub fn div_exact(&self, d: &SparsePoly) -> Option<SparsePoly> {
        let (dm, dc) = d.leading_term()?;
        if self.is_zero() {
            return Some(SparsePoly::zero());
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let dc_inv = dc.recip();
        let mut rem = self.clone();
        let mut quot = SparsePoly::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            let m = rm.div(dm)?;
            let c = -mul(rc, &dc_inv);
            rem.add_scaled(d, &c, &m);
            quot.add_term(m, -c);
        }
        Some(quot)
    }

    /// Content: gcd monomial of all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one();
        };
        it.fold(first.clone(), |g, m| g.gcd(m))
    }
}

impl From<Rational> for SparsePoly {
    fn from(c: Rational) -> Self {
        SparsePoly::constant(c)
    }
}

impl From<Symbol> for SparsePoly {
    fn from(s: Symbol) -> Self {
        SparsePoly::var(s)
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        if self.is_zero() || rhs.is_zero() {
            return SparsePoly::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        let mut out = SparsePoly::zero();
        for (m, c) in &self.terms {
            out.add_scaled(rhs, c, m);
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for SparsePoly {
            type Output = SparsePoly;
            fn $f(self, rhs: SparsePoly) -> SparsePoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        -&self
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}
