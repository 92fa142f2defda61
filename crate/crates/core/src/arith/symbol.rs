use std::cmp::Ordering;
use std::fmt;

/// Indeterminates of the kernel.
///
/// The derived order is the fixed symbol order `Q < T(1) < T(2) < … < X < Y < A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Q,
    /// `t_i`, with `i >= 1`.
    T(u32),
    X,
    Y,
    /// The central constant of the Cauchy-type sums.
    A,
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Q => f.write_str("q"),
            Symbol::T(i) => write!(f, "t{i}"),
            Symbol::X => f.write_str("x"),
            Symbol::Y => f.write_str("y"),
            Symbol::A => f.write_str("a"),
        }
    }
}

/// A power product of symbols, stored as `(symbol, exponent)` pairs sorted by
/// symbol with every exponent positive.
///
/// `Ord` is the lexicographic monomial order in which earlier symbols are more
/// significant (`q` dominates everything). It is compatible with
/// multiplication, so it doubles as the leading-term order for division.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(Symbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(s: Symbol) -> Self {
        Monomial(vec![(s, 1)])
    }

    pub fn power(s: Symbol, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(s, e)])
        }
    }

    /// Builds a monomial from arbitrary pairs, merging repeats and dropping
    /// zero exponents.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Symbol, u32)>) -> Self {
        let mut v: Vec<(Symbol, u32)> = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        v.sort_by_key(|&(s, _)| s);
        let mut out: Vec<(Symbol, u32)> = Vec::with_capacity(v.len());
        for (s, e) in v {
            match out.last_mut() {
                Some((ls, le)) if *ls == s => *le += e,
                _ => out.push((s, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn exponent(&self, s: Symbol) -> u32 {
        self.0
            .binary_search_by_key(&s, |&(t, _)| t)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(s, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < s {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == s {
                let f = other.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((s, e - f)),
                }
            } else {
                out.push((s, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    pub fn pow(&self, n: u32) -> Monomial {
        if n == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(s, e)| (s, e * n)).collect())
    }

    /// Drops `s` from the monomial, returning its former exponent.
    pub fn without(&self, s: Symbol) -> (Monomial, u32) {
        let e = self.exponent(s);
        if e == 0 {
            return (self.clone(), 0);
        }
        (
            Monomial(self.0.iter().copied().filter(|&(t, _)| t != s).collect()),
            e,
        )
    }

    /// Componentwise minimum (the monomial gcd).
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .filter_map(|&(s, e)| {
                    let f = other.exponent(s);
                    (f > 0).then_some((s, e.min(f)))
                })
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(sa, ea)), Some(&(sb, eb))) => match sa.cmp(&sb) {
                    // `a` has a positive power of a more significant symbol.
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(&eb) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        ord => return ord,
                    },
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (k, &(s, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}
