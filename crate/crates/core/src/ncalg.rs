//! The quantum plane `R_q[x, y]` with `yx = q xy`, kept in the normal form
//! `sum c_{jk} x^j y^k`, and its commutative `q = 1` image.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::arith::{check_terms, Assignment, Frac, Rational, Result};
use crate::qcore::QValue;

/// Exponent pair `(j, k)` of the normal-ordered monomial `x^j y^k`.
pub type Key = (u32, u32);

type Terms = BTreeMap<Key, Frac>;

fn insert(terms: &mut Terms, key: Key, c: Frac) {
    if c.is_zero() {
        return;
    }
    match terms.entry(key) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

fn merge(a: &Terms, b: &Terms, negate_b: bool) -> Terms {
    let mut out = a.clone();
    for (&k, c) in b {
        insert(&mut out, k, if negate_b { -c } else { c.clone() });
    }
    out
}

fn terms_eq(a: &Terms, b: &Terms) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|((ka, ca), (kb, cb))| ka == kb && ca == cb)
}

fn size(terms: &Terms) -> usize {
    terms.values().map(Frac::term_count).sum()
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &Terms) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (i, (&(j, k), c)) in terms.iter().enumerate() {
        if i > 0 {
            f.write_str(" + ")?;
        }
        let mono = match (j, k) {
            (0, 0) => String::new(),
            (j, 0) => pow_str("x", j),
            (0, k) => pow_str("y", k),
            (j, k) => format!("{}*{}", pow_str("x", j), pow_str("y", k)),
        };
        match (c.as_constant(), mono.is_empty()) {
            (_, true) => write!(f, "({c})")?,
            (Some(v), false) if v == Rational::from_integer(1.into()) => f.write_str(&mono)?,
            _ => write!(f, "({c})*{mono}")?,
        }
    }
    Ok(())
}

fn pow_str(v: &str, e: u32) -> String {
    if e == 1 {
        v.to_string()
    } else {
        format!("{v}^{e}")
    }
}

/// An element of `R_q[x, y]` in normal form.
///
/// Coefficients live in the fraction field and commute with `x` and `y`.
/// Every element records the value of `q` of the algebra it belongs to.
#[derive(Clone, Debug)]
pub struct NCPoly {
    q: QValue,
    terms: Terms,
}

impl NCPoly {
    pub fn zero(q: &QValue) -> Self {
        NCPoly {
            q: q.clone(),
            terms: Terms::new(),
        }
    }

    pub fn one(q: &QValue) -> Self {
        NCPoly::constant(Frac::one(), q)
    }

    pub fn constant(c: Frac, q: &QValue) -> Self {
        NCPoly::monomial(0, 0, c, q)
    }

    pub fn x(q: &QValue) -> Self {
        NCPoly::monomial(1, 0, Frac::one(), q)
    }

    pub fn y(q: &QValue) -> Self {
        NCPoly::monomial(0, 1, Frac::one(), q)
    }

    /// `c x^j y^k`.
    pub fn monomial(j: u32, k: u32, c: Frac, q: &QValue) -> Self {
        let mut terms = Terms::new();
        insert(&mut terms, (j, k), c);
        NCPoly { q: q.clone(), terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Key, Frac)>, q: &QValue) -> Self {
        let mut terms = Terms::new();
        for (k, c) in it {
            insert(&mut terms, k, c);
        }
        NCPoly { q: q.clone(), terms }
    }

    /// Reads a commutative polynomial's `x^j y^k` terms as normal-ordered words.
    pub fn from_normal_ordered(p: &CommPoly, q: &QValue) -> Self {
        NCPoly {
            q: q.clone(),
            terms: p.terms.clone(),
        }
    }

    pub fn q(&self) -> &QValue {
        &self.q
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, j: u32, k: u32) -> Option<&Frac> {
        self.terms.get(&(j, k))
    }

    pub fn terms(&self) -> impl Iterator<Item = (Key, &Frac)> + '_ {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        size(&self.terms)
    }

    pub fn scale(&self, c: &Frac) -> NCPoly {
        NCPoly::from_terms(self.terms.iter().map(|(&k, d)| (k, d * c)), &self.q)
    }

    /// Normal-form product: `(x^a y^b)(x^c y^d) = q^{bc} x^{a+c} y^{b+d}`.
    pub fn mul(&self, rhs: &NCPoly) -> Result<NCPoly> {
        debug_assert_eq!(self.q, rhs.q, "operands from different algebras");
        let mut terms = Terms::new();
        for (&(j1, k1), c1) in &self.terms {
            for (&(j2, k2), c2) in &rhs.terms {
                let c = c1 * c2;
                let twist = k1 * j2;
                let c = if twist == 0 { c } else { c.mul_poly(&self.q.pow(twist)) };
                insert(&mut terms, (j1 + j2, k1 + k2), c);
            }
        }
        check_terms(size(&terms))?;
        Ok(NCPoly {
            q: self.q.clone(),
            terms,
        })
    }

    pub fn pow(&self, n: u32) -> Result<NCPoly> {
        let mut acc = NCPoly::one(&self.q);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `X_1 X_2 … X_v`, left to right; the empty product is 1.
    pub fn ordered_product<'a>(
        factors: impl IntoIterator<Item = &'a NCPoly>,
        q: &QValue,
    ) -> Result<NCPoly> {
        let mut acc = NCPoly::one(q);
        for f in factors {
            acc = acc.mul(f)?;
        }
        Ok(acc)
    }

    /// Coefficientwise `q := 1`; `x` and `y` then commute.
    pub fn limit_q1(&self) -> Result<CommPoly> {
        let mut out = CommPoly::zero();
        for (&k, c) in &self.terms {
            let v = match &self.q {
                QValue::Symbolic => c.limit_q1()?,
                QValue::At(_) => c.clone(),
            };
            insert(&mut out.terms, k, v);
        }
        Ok(out)
    }

    /// Evaluates every coefficient at a point.
    pub fn eval_coeffs(&self, at: &Assignment) -> Result<BTreeMap<Key, Rational>> {
        let mut out = BTreeMap::new();
        for (&k, c) in &self.terms {
            let v = c.eval(at)?;
            if v != Rational::from_integer(0.into()) {
                out.insert(k, v);
            }
        }
        Ok(out)
    }
}

impl PartialEq for NCPoly {
    fn eq(&self, other: &NCPoly) -> bool {
        self.q == other.q && terms_eq(&self.terms, &other.terms)
    }
}

impl Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        debug_assert_eq!(self.q, rhs.q);
        NCPoly {
            q: self.q.clone(),
            terms: merge(&self.terms, &rhs.terms, false),
        }
    }
}

impl Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        debug_assert_eq!(self.q, rhs.q);
        NCPoly {
            q: self.q.clone(),
            terms: merge(&self.terms, &rhs.terms, true),
        }
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        NCPoly {
            q: self.q.clone(),
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.terms)
    }
}

/// Commutative polynomial in `x` and `y` over the fraction field.
#[derive(Clone, Debug, Default)]
pub struct CommPoly {
    terms: Terms,
}

impl CommPoly {
    pub fn zero() -> Self {
        CommPoly::default()
    }

    pub fn one() -> Self {
        CommPoly::constant(Frac::one())
    }

    pub fn constant(c: Frac) -> Self {
        CommPoly::monomial(0, 0, c)
    }

    pub fn x() -> Self {
        CommPoly::monomial(1, 0, Frac::one())
    }

    pub fn y() -> Self {
        CommPoly::monomial(0, 1, Frac::one())
    }

    pub fn monomial(j: u32, k: u32, c: Frac) -> Self {
        let mut terms = Terms::new();
        insert(&mut terms, (j, k), c);
        CommPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Key, Frac)>) -> Self {
        let mut terms = Terms::new();
        for (k, c) in it {
            insert(&mut terms, k, c);
        }
        CommPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, j: u32, k: u32) -> Option<&Frac> {
        self.terms.get(&(j, k))
    }

    pub fn terms(&self) -> impl Iterator<Item = (Key, &Frac)> + '_ {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        size(&self.terms)
    }

    pub fn scale(&self, c: &Frac) -> CommPoly {
        CommPoly::from_terms(self.terms.iter().map(|(&k, d)| (k, d * c)))
    }

    pub fn mul(&self, rhs: &CommPoly) -> Result<CommPoly> {
        let mut terms = Terms::new();
        for (&(j1, k1), c1) in &self.terms {
            for (&(j2, k2), c2) in &rhs.terms {
                insert(&mut terms, (j1 + j2, k1 + k2), c1 * c2);
            }
        }
        check_terms(size(&terms))?;
        Ok(CommPoly { terms })
    }

    pub fn pow(&self, n: u32) -> Result<CommPoly> {
        let mut acc = CommPoly::one();
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Substitutes field elements for `x` and `y`.
    pub fn eval_xy(&self, x: &Frac, y: &Frac) -> Frac {
        self.terms.iter().fold(Frac::zero(), |acc, (&(j, k), c)| {
            &acc + &(&(c * &x.pow(j)) * &y.pow(k))
        })
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, mut f: impl FnMut(&Frac) -> Result<Frac>) -> Result<CommPoly> {
        let mut terms = Terms::new();
        for (&k, c) in &self.terms {
            insert(&mut terms, k, f(c)?);
        }
        Ok(CommPoly { terms })
    }

    pub fn eval_coeffs(&self, at: &Assignment) -> Result<BTreeMap<Key, Rational>> {
        let mut out = BTreeMap::new();
        for (&k, c) in &self.terms {
            let v = c.eval(at)?;
            if v != Rational::from_integer(0.into()) {
                out.insert(k, v);
            }
        }
        Ok(out)
    }
}

impl PartialEq for CommPoly {
    fn eq(&self, other: &CommPoly) -> bool {
        terms_eq(&self.terms, &other.terms)
    }
}

impl Add for &CommPoly {
    type Output = CommPoly;
    fn add(self, rhs: &CommPoly) -> CommPoly {
        CommPoly {
            terms: merge(&self.terms, &rhs.terms, false),
        }
    }
}

impl Sub for &CommPoly {
    type Output = CommPoly;
    fn sub(self, rhs: &CommPoly) -> CommPoly {
        CommPoly {
            terms: merge(&self.terms, &rhs.terms, true),
        }
    }
}

impl Neg for &CommPoly {
    type Output = CommPoly;
    fn neg(self) -> CommPoly {
        CommPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.terms)
    }
}

/// Lexicographically first key on which two term maps disagree, with both
/// coefficients (zero when absent).
pub fn first_difference<'a>(
    a: impl IntoIterator<Item = (Key, &'a Frac)>,
    b: impl IntoIterator<Item = (Key, &'a Frac)>,
) -> Option<(Key, Frac, Frac)> {
    let a: BTreeMap<Key, &Frac> = a.into_iter().collect();
    let b: BTreeMap<Key, &Frac> = b.into_iter().collect();
    let mut keys: Vec<Key> = a.keys().chain(b.keys()).copied().collect();
    keys.sort();
    keys.dedup();
    keys.into_iter().find_map(|k| {
        let ca = a.get(&k).map(|c| (*c).clone()).unwrap_or_else(Frac::zero);
        let cb = b.get(&k).map(|c| (*c).clone()).unwrap_or_else(Frac::zero);
        (ca != cb).then_some((k, ca, cb))
    })
}
