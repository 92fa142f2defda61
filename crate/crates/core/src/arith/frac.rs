//! Elements of the rational function field `Q(q, t1, …, x, y, a)`.
//!
//! Fractions are never gcd-normalised. Equality is decided by
//! cross-multiplication. To keep sums of many `1/([n1]…[nw])` terms small,
//! the denominator is held as a multiset of monic factors: symbols, the
//! cyclotomic polynomials `Phi_d(q)` that q-integers split into, and opaque
//! remainders. Common denominators are then the multiset maximum, and only
//! syntactically identical factors are ever merged or cancelled.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{ArithError, Assignment, Monomial, Rational, Result, SparsePoly, Symbol};

type Factors = BTreeMap<SparsePoly, u32>;

#[derive(Clone, Debug, Default)]
pub struct Frac {
    num: SparsePoly,
    den: Factors,
}

thread_local! {
    static CYCLOTOMIC: RefCell<Vec<SparsePoly>> = const { RefCell::new(Vec::new()) };
}

/// `Phi_d(q)`, computed from `q^d - 1 = prod_{e | d} Phi_e(q)`.
pub(crate) fn cyclotomic(d: u32) -> SparsePoly {
    assert!(d >= 1);
    CYCLOTOMIC.with(|cache| {
        let mut cache = cache.borrow_mut();
        while cache.len() < d as usize {
            let n = cache.len() as u32 + 1;
            let mut p = SparsePoly::from_terms([
                (Monomial::power(Symbol::Q, n), Rational::one()),
                (Monomial::one(), -Rational::one()),
            ]);
            for e in (1..n).filter(|e| n % e == 0) {
                p = p
                    .div_exact(&cache[e as usize - 1])
                    .expect("cyclotomic factors divide q^n - 1");
            }
            cache.push(p);
        }
        cache[d as usize - 1].clone()
    })
}

/// Splits a nonzero polynomial into `unit * prod f^m` with monic factors.
fn split(p: &SparsePoly) -> (Rational, Vec<(SparsePoly, u32)>) {
    debug_assert!(!p.is_zero());
    let mut out = Vec::new();
    let content = p.monomial_content();
    let mut rest = if content.is_one() {
        p.clone()
    } else {
        for &(s, e) in content.pairs() {
            out.push((SparsePoly::var(s), e));
        }
        SparsePoly::from_terms(p.terms().map(|(m, c)| (m.div(&content).unwrap(), c.clone())))
    };
    if let Some(c) = rest.as_constant() {
        return (c, out);
    }
    if rest.is_univariate_in(Symbol::Q) {
        let mut d = 1;
        while rest.degree_in(Symbol::Q) > 0 && d <= rest.degree_in(Symbol::Q) {
            let phi = cyclotomic(d);
            let mut mult = 0;
            while let Some(r) = rest.div_exact(&phi) {
                rest = r;
                mult += 1;
            }
            if mult > 0 {
                out.push((phi, mult));
            }
            d += 1;
        }
        if let Some(c) = rest.as_constant() {
            return (c, out);
        }
    }
    let lc = rest.leading_term().unwrap().1.clone();
    out.push((rest.scale(&lc.recip()), 1));
    (lc, out)
}

fn product(factors: &Factors) -> SparsePoly {
    factors
        .iter()
        .fold(SparsePoly::one(), |acc, (f, &m)| &acc * &f.pow(m))
}

/// `a - b` for multisets, assuming `b <= a`.
fn minus(a: &Factors, b: &Factors) -> Factors {
    let mut out = a.clone();
    for (f, &m) in b {
        let e = out.get_mut(f).expect("sub-multiset");
        *e -= m;
        if *e == 0 {
            out.remove(f);
        }
    }
    out
}

fn meet(a: &Factors, b: &Factors) -> Factors {
    a.iter()
        .filter_map(|(f, &m)| b.get(f).map(|&n| (f.clone(), m.min(n))))
        .collect()
}

fn join(a: &Factors, b: &Factors) -> Factors {
    let mut out = a.clone();
    for (f, &m) in b {
        let e = out.entry(f.clone()).or_insert(0);
        *e = (*e).max(m);
    }
    out
}

fn sum(a: &Factors, b: &Factors) -> Factors {
    let mut out = a.clone();
    for (f, &m) in b {
        *out.entry(f.clone()).or_insert(0) += m;
    }
    out
}

impl Frac {
    pub fn zero() -> Self {
        Frac::default()
    }

    pub fn one() -> Self {
        Frac::from_poly(SparsePoly::one())
    }

    pub fn from_int(n: i64) -> Self {
        Frac::from_poly(SparsePoly::from_int(n))
    }

    pub fn constant(c: Rational) -> Self {
        Frac::from_poly(SparsePoly::constant(c))
    }

    pub fn var(s: Symbol) -> Self {
        Frac::from_poly(SparsePoly::var(s))
    }

    pub fn from_poly(num: SparsePoly) -> Self {
        Frac {
            num,
            den: Factors::new(),
        }
    }

    /// `num / den`, kept unreduced.
    pub fn new(num: SparsePoly, den: SparsePoly) -> Result<Self> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let (unit, factors) = split(&den);
        let mut f = Frac {
            num: num.scale(&unit.recip()),
            den: Factors::new(),
        };
        for (p, m) in factors {
            *f.den.entry(p).or_insert(0) += m;
        }
        Ok(f.canonical_zero())
    }

    /// `1 / p`.
    pub fn recip_poly(p: &SparsePoly) -> Result<Self> {
        Frac::new(SparsePoly::one(), p.clone())
    }

    pub fn num(&self) -> &SparsePoly {
        &self.num
    }

    /// The denominator, multiplied out.
    pub fn den(&self) -> SparsePoly {
        product(&self.den)
    }

    /// Denominator factors with multiplicities, in deterministic order.
    pub fn den_factors(&self) -> impl Iterator<Item = (&SparsePoly, u32)> + '_ {
        self.den.iter().map(|(f, &m)| (f, m))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Stored size: numerator terms plus denominator factor terms.
    pub fn term_count(&self) -> usize {
        self.num.len() + self.den.keys().map(SparsePoly::len).sum::<usize>()
    }

    fn canonical_zero(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
        }
        self
    }

    /// Cancels denominator factors that divide the numerator exactly.
    /// Products skip this step; quotients apply it.
    pub fn reduced(self) -> Self {
        self.cancel()
    }

    fn cancel(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        let mut den = Factors::new();
        for (f, m) in std::mem::take(&mut self.den) {
            let mut left = m;
            while left > 0 {
                match self.num.div_exact(&f) {
                    Some(r) => {
                        self.num = r;
                        left -= 1;
                    }
                    None => break,
                }
            }
            if left > 0 {
                den.insert(f, left);
            }
        }
        self.den = den;
        self
    }

    pub fn checked_div(&self, rhs: &Frac) -> Result<Frac> {
        if rhs.num.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if let Some(c) = rhs.as_constant() {
            return Ok(Frac {
                num: self.num.scale(&c.recip()),
                den: self.den.clone(),
            });
        }
        let (unit, factors) = split(&rhs.num);
        let mut den = self.den.clone();
        for (p, m) in factors {
            *den.entry(p).or_insert(0) += m;
        }
        let num = (&self.num * &product(&rhs.den)).scale(&unit.recip());
        Ok(Frac { num, den }.cancel())
    }

    pub fn recip(&self) -> Result<Frac> {
        Frac::one().checked_div(self)
    }

    pub fn pow(&self, n: u32) -> Frac {
        if n == 0 {
            return Frac::one();
        }
        Frac {
            num: self.num.pow(n),
            den: self.den.iter().map(|(f, &m)| (f.clone(), m * n)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Frac {
        Frac {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
        .canonical_zero()
    }

    pub fn mul_poly(&self, p: &SparsePoly) -> Frac {
        Frac {
            num: &self.num * p,
            den: self.den.clone(),
        }
        .canonical_zero()
    }

    /// Cross-multiplication equality, after striking common denominator factors.
    pub fn frac_eq(&self, other: &Frac) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        if self.num.is_zero() || other.num.is_zero() {
            return self.num.is_zero() && other.num.is_zero();
        }
        let g = meet(&self.den, &other.den);
        let lhs = &self.num * &product(&minus(&other.den, &g));
        let rhs = &other.num * &product(&minus(&self.den, &g));
        lhs == rhs
    }

    /// Substitutes rationals for some symbols. Fails with `DivisionByZero`
    /// if the denominator becomes the zero polynomial.
    pub fn substitute(&self, at: &Assignment) -> Result<Frac> {
        let mut out = Frac::from_poly(self.num.substitute(at));
        for (f, &m) in &self.den {
            let g = f.substitute(at);
            if g.is_zero() {
                return Err(ArithError::DivisionByZero);
            }
            out = out.checked_div(&Frac::from_poly(g).pow(m))?;
        }
        Ok(out)
    }

    /// The `q -> 1` limit by substitution, optionally fixing other symbols too.
    pub fn limit_q1_with(&self, other: &Assignment) -> Result<Frac> {
        let mut at = other.clone();
        at.insert(Symbol::Q, Rational::one());
        self.substitute(&at).map_err(|e| match e {
            ArithError::DivisionByZero => ArithError::IndeterminateLimit,
            e => e,
        })
    }

    pub fn limit_q1(&self) -> Result<Frac> {
        self.limit_q1_with(&Assignment::new())
    }

    pub fn eval(&self, at: &Assignment) -> Result<Rational> {
        let mut den = Rational::one();
        for (f, &m) in &self.den {
            let v = f.eval(at)?;
            if v.is_zero() {
                return Err(ArithError::DivisionByZero);
            }
            den *= num_traits::Pow::pow(v, m);
        }
        Ok(self.num.eval(at)? / den)
    }
}

impl PartialEq for Frac {
    fn eq(&self, other: &Frac) -> bool {
        self.frac_eq(other)
    }
}

impl From<SparsePoly> for Frac {
    fn from(p: SparsePoly) -> Self {
        Frac::from_poly(p)
    }
}

impl From<Rational> for Frac {
    fn from(c: Rational) -> Self {
        Frac::constant(c)
    }
}

impl From<Symbol> for Frac {
    fn from(s: Symbol) -> Self {
        Frac::var(s)
    }
}

impl Add for &Frac {
    type Output = Frac;
    fn add(self, rhs: &Frac) -> Frac {
        if self.num.is_zero() {
            return rhs.clone();
        }
        if rhs.num.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Frac {
                num: &self.num + &rhs.num,
                den: self.den.clone(),
            }
            .canonical_zero();
        }
        let den = join(&self.den, &rhs.den);
        let a = &self.num * &product(&minus(&den, &self.den));
        let b = &rhs.num * &product(&minus(&den, &rhs.den));
        Frac { num: &a + &b, den }.canonical_zero()
    }
}

impl Neg for &Frac {
    type Output = Frac;
    fn neg(self) -> Frac {
        Frac {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &Frac {
    type Output = Frac;
    fn sub(self, rhs: &Frac) -> Frac {
        self + &(-rhs)
    }
}

impl Mul for &Frac {
    type Output = Frac;
    fn mul(self, rhs: &Frac) -> Frac {
        if self.num.is_zero() || rhs.num.is_zero() {
            return Frac::zero();
        }
        if rhs.den.is_empty() {
            return self.mul_poly(&rhs.num);
        }
        if self.den.is_empty() {
            return rhs.mul_poly(&self.num);
        }
        Frac {
            num: &self.num * &rhs.num,
            den: sum(&self.den, &rhs.den),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Frac {
            type Output = Frac;
            fn $f(self, rhs: Frac) -> Frac {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Frac {
    type Output = Frac;
    fn neg(self) -> Frac {
        -&self
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) / (", self.num)?;
        for (k, (p, &m)) in self.den.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if m == 1 {
                write!(f, "({p})")?;
            } else {
                write!(f, "({p})^{m}")?;
            }
        }
        f.write_str(")")
    }
}

impl Zero for Frac {
    fn zero() -> Self {
        Frac::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for Frac {
    fn one() -> Self {
        Frac::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn q() -> SparsePoly {
        SparsePoly::var(Symbol::Q)
    }

    fn one_minus_q() -> SparsePoly {
        &SparsePoly::one() - &q()
    }

    fn qint(n: u32) -> SparsePoly {
        SparsePoly::from_terms((0..n).map(|i| (Monomial::power(Symbol::Q, i), Rational::one())))
    }

    #[test]
    fn cyclotomic_table() {
        assert_eq!(cyclotomic(1), &q() - &SparsePoly::one());
        assert_eq!(cyclotomic(2), qint(2));
        assert_eq!(cyclotomic(3), qint(3));
        // Phi_4 = 1 + q^2, Phi_6 = 1 - q + q^2
        assert_eq!(cyclotomic(4), &SparsePoly::one() + &q().pow(2));
        assert_eq!(cyclotomic(6), &(&SparsePoly::one() - &q()) + &q().pow(2));
    }

    #[test]
    fn q_integers_split_into_cyclotomics() {
        let f = Frac::recip_poly(&qint(6)).unwrap();
        let factors: Vec<_> = f.den_factors().map(|(p, m)| (p.clone(), m)).collect();
        assert_eq!(
            factors.iter().map(|(p, _)| p.clone()).collect::<std::collections::BTreeSet<_>>(),
            [cyclotomic(2), cyclotomic(3), cyclotomic(6)].into_iter().collect()
        );
        assert_eq!(f.den(), qint(6));
    }

    #[test]
    fn common_denominator() {
        let a = Frac::new(SparsePoly::one(), one_minus_q()).unwrap();
        let b = Frac::new(q(), one_minus_q()).unwrap();
        assert_eq!(&a - &b, Frac::one());
    }

    #[test]
    fn self_division() {
        let t = Frac::var(Symbol::T(1));
        assert_eq!(t.checked_div(&t).unwrap(), Frac::one());
    }

    #[test]
    fn halves_add() {
        let h = Frac::recip_poly(&qint(2)).unwrap();
        let expected = Frac::new(SparsePoly::from_int(2), &SparsePoly::one() + &q()).unwrap();
        let s = &h + &h;
        assert_eq!(s, expected);
        assert_eq!(s.num(), &SparsePoly::from_int(2));
        assert_eq!(s.den(), qint(2));
    }

    #[test]
    fn equality_by_cross_multiplication() {
        let a = Frac::new(&SparsePoly::one() - &q().pow(2), one_minus_q()).unwrap();
        assert_eq!(a, Frac::from_poly(qint(2)));
        let z1 = Frac::new(SparsePoly::zero(), qint(3)).unwrap();
        let z2 = Frac::new(SparsePoly::zero(), SparsePoly::var(Symbol::T(2))).unwrap();
        assert_eq!(z1, z2);
        assert_eq!(
            Frac::recip_poly(&qint(2)).unwrap(),
            Frac::new(SparsePoly::one(), &SparsePoly::one() + &q()).unwrap()
        );
        assert_ne!(Frac::recip_poly(&qint(2)).unwrap(), Frac::recip_poly(&qint(3)).unwrap());
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(
            Frac::new(SparsePoly::one(), SparsePoly::zero()).unwrap_err(),
            ArithError::DivisionByZero
        );
        assert_eq!(
            Frac::one().checked_div(&Frac::zero()).unwrap_err(),
            ArithError::DivisionByZero
        );
    }

    #[test]
    fn limits_at_q_equals_one() {
        assert_eq!(
            Frac::recip_poly(&qint(3)).unwrap().limit_q1().unwrap(),
            Frac::constant(crate::arith::rat(1, 3))
        );
        let t = Frac::new(SparsePoly::var(Symbol::T(1)), qint(2)).unwrap();
        assert_eq!(
            t.limit_q1().unwrap(),
            Frac::var(Symbol::T(1)).scale(&crate::arith::rat(1, 2))
        );
        let bad = Frac::new(one_minus_q(), one_minus_q()).unwrap();
        assert_eq!(bad.limit_q1().unwrap_err(), ArithError::IndeterminateLimit);
    }

    #[test]
    fn evaluation_through_factors() {
        let f = Frac::new(SparsePoly::var(Symbol::T(1)), qint(4)).unwrap();
        let mut at = Assignment::new();
        at.insert(Symbol::Q, int(2));
        at.insert(Symbol::T(1), int(30));
        assert_eq!(f.eval(&at).unwrap(), int(2));
    }

    #[test]
    fn opaque_multivariate_factor() {
        let d = &SparsePoly::var(Symbol::T(1)) + &q().scale(&int(3));
        let f = Frac::new(SparsePoly::one(), d.clone()).unwrap();
        // stored monic: 1/(t1 + 3q) = (1/3) / (q + t1/3)
        assert_eq!(f.num(), &SparsePoly::constant(crate::arith::rat(1, 3)));
        assert_eq!(f.mul_poly(&d), Frac::one());
        assert_eq!(f.mul_poly(&d).reduced().den(), SparsePoly::one());
    }
}
