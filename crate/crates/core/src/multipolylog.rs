//! Indices, weakly decreasing tuples and finite multi-polylogarithms
//! `l_k^{*,q}(s, t)` together with their `q = 1` versions.

use std::fmt;

use num_traits::Zero;

use crate::arith::{check_terms, Frac, Rational, Result, Symbol};
use crate::qcore::QValue;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IndexError {
    #[error("index entries must be positive, got {0:?}")]
    NonPositive(Vec<u32>),
}

/// A composition `s = (s_1, …, s_d)` of positive integers. The empty index
/// is allowed and stands for `∅`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Index(Vec<u32>);

impl Index {
    pub fn new(parts: Vec<u32>) -> Result<Self, IndexError> {
        if parts.contains(&0) {
            return Err(IndexError::NonPositive(parts));
        }
        Ok(Index(parts))
    }

    pub fn empty() -> Self {
        Index(Vec::new())
    }

    /// `(1, …, 1)` of the given depth.
    pub fn ones(depth: usize) -> Self {
        Index(vec![1; depth])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Partial sum `l(i) = s_1 + … + s_i`, with `l(0) = 0`.
    pub fn l(&self, i: usize) -> u32 {
        self.0[..i].iter().sum()
    }

    /// `(s_2, …, s_d)`.
    pub fn tail(&self) -> Index {
        Index(self.0.get(1..).unwrap_or_default().to_vec())
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str(")")
    }
}

/// The parameters `t = (t_1, …, t_d)` paired with an index.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TVector(Vec<Frac>);

impl TVector {
    pub fn new(t: Vec<Frac>) -> Self {
        TVector(t)
    }

    /// `t_i = T(i)`, the fully symbolic choice.
    pub fn symbolic(depth: usize) -> Self {
        TVector((1..=depth as u32).map(|i| Frac::var(Symbol::T(i))).collect())
    }

    /// `(1, …, 1, a)`.
    pub fn ones_then(depth: usize, a: Frac) -> Self {
        let mut v = vec![Frac::one(); depth.saturating_sub(1)];
        if depth > 0 {
            v.push(a);
        }
        TVector(v)
    }

    pub fn constants(values: &[Rational]) -> Self {
        TVector(values.iter().cloned().map(Frac::constant).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Frac] {
        &self.0
    }

    /// `t_i`, 1-based.
    pub fn get(&self, i: usize) -> &Frac {
        &self.0[i - 1]
    }

    /// `(t_2/t_1, …, t_d/t_1)`.
    pub fn ratios(&self) -> Result<TVector> {
        let t1 = &self.0[0];
        self.0[1..]
            .iter()
            .map(|t| t.checked_div(t1))
            .collect::<Result<Vec<_>>>()
            .map(TVector)
    }
}

/// Tuples `hi >= n_1 >= … >= n_len >= lo`, in lexicographically descending order.
#[derive(Clone, Debug)]
pub struct DecreasingTuples {
    lo: u32,
    next: Option<Vec<u32>>,
}

impl DecreasingTuples {
    pub fn new(hi: u32, lo: u32, len: usize) -> Self {
        let next = (len == 0 || hi >= lo).then(|| vec![hi; len]);
        DecreasingTuples { lo, next }
    }
}

impl Iterator for DecreasingTuples {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        if let Some(i) = succ.iter().rposition(|&v| v > self.lo) {
            let v = succ[i] - 1;
            succ[i..].iter_mut().for_each(|x| *x = v);
            self.next = Some(succ);
        }
        Some(cur)
    }
}

/// All `(n_1, …, n_w)` with `n >= n_1 >= … >= n_w >= 1`; there are
/// `C(n + w - 1, w)` of them.
pub fn weakly_decreasing_tuples(n: u32, w: usize) -> DecreasingTuples {
    DecreasingTuples::new(n, 1, w)
}

/// `1 / [n]^s` at the given `q`.
pub fn recip_q_int_pow(q: &QValue, n: u32, s: u32) -> Result<Frac> {
    Frac::recip_poly(&q.int(n).pow(s))
}

/// `t_i^e` and `1/[m]^{s_i}` for exponents and arguments up to `n`.
struct SliceTables {
    t_pows: Vec<Vec<Frac>>,
    recips: Vec<Vec<Frac>>,
}

impl SliceTables {
    fn new(q: &QValue, n: u32, s: &Index, t: &TVector) -> Result<Self> {
        let d = s.depth();
        assert_eq!(t.len(), d, "t must match the depth of s");
        let mut t_pows = Vec::with_capacity(d);
        let mut recips = Vec::with_capacity(d);
        for i in 0..d {
            let mut pows = vec![Frac::one()];
            for _ in 0..n {
                let next = pows.last().unwrap() * &t.entries()[i];
                pows.push(next);
            }
            t_pows.push(pows);
            let mut r = vec![Frac::zero()];
            for m in 1..=n {
                r.push(recip_q_int_pow(q, m, s.parts()[i])?);
            }
            recips.push(r);
        }
        Ok(SliceTables { t_pows, recips })
    }

    fn slice(&self, k: u32) -> Frac {
        let d = self.t_pows.len();
        let mut total = Frac::zero();
        for rest in DecreasingTuples::new(k, 1, d - 1) {
            let mut ns = Vec::with_capacity(d);
            ns.push(k);
            ns.extend(rest);
            let mut term = Frac::one();
            for i in 0..d {
                let next = ns.get(i + 1).copied().unwrap_or(0);
                term = &term * &self.t_pows[i][(ns[i] - next) as usize];
                term = &term * &self.recips[i][ns[i] as usize];
            }
            total = &total + &term;
        }
        total
    }
}

/// The terms of `l_k^{*,q}(s, t)` with `n_1 = k` exactly.
pub fn mpl_slice(q: &QValue, k: u32, s: &Index, t: &TVector) -> Result<Frac> {
    if s.is_empty() {
        return Ok(if k == 1 { Frac::one() } else { Frac::zero() });
    }
    Ok(SliceTables::new(q, k, s, t)?.slice(k))
}

/// `[l_1, …, l_n]` where `l_k = l_k^{*,q}(s, t)`; the empty index gives all ones.
pub fn mpl_star_q_prefix(q: &QValue, n: u32, s: &Index, t: &TVector) -> Result<Vec<Frac>> {
    if s.is_empty() {
        return Ok(vec![Frac::one(); n as usize]);
    }
    let tables = SliceTables::new(q, n, s, t)?;
    let mut out = Vec::with_capacity(n as usize);
    let mut acc = Frac::zero();
    for k in 1..=n {
        acc = &acc + &tables.slice(k);
        check_terms(acc.term_count())?;
        out.push(acc.clone());
    }
    Ok(out)
}

/// `l_k^{*,q}(s, t) = sum_{k >= n_1 >= … >= n_d >= 1}
/// t_1^{n_1-n_2} … t_d^{n_d} / ([n_1]^{s_1} … [n_d]^{s_d})`, with `l_k(∅, ∅) = 1`.
pub fn mpl_star_q_in(q: &QValue, k: u32, s: &Index, t: &TVector) -> Result<Frac> {
    assert!(k >= 1);
    Ok(mpl_star_q_prefix(q, k, s, t)?.pop().unwrap())
}

/// [`mpl_star_q_in`] with `q` symbolic.
pub fn mpl_star_q(k: u32, s: &Index, t: &TVector) -> Result<Frac> {
    mpl_star_q_in(&QValue::Symbolic, k, s, t)
}

/// `l_k^*(s, t)`: ordinary integers in the denominators.
pub fn mpl_star_q1(k: u32, s: &Index, t: &TVector) -> Result<Frac> {
    mpl_star_q_in(&QValue::one(), k, s, t)
}

/// `zeta_k^*(s; a) = l_k^*(s, (1, …, 1, a))`.
pub fn zeta_star_k(k: u32, s: &Index, a: &Frac) -> Result<Frac> {
    mpl_star_q1(k, s, &TVector::ones_then(s.depth(), a.clone()))
}

/// `H_k = 1 + 1/2 + … + 1/k`, with `H_0 = 0`.
pub fn harmonic(k: u32) -> Rational {
    (1..=k).fold(Rational::zero(), |acc, i| {
        acc + Rational::new(1.into(), i.into())
    })
}
