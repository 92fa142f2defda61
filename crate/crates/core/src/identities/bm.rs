//! Binomial sums `M_n^q(s, t; x, y)` in the quantum plane, the nested-sum
//! expansion of the main theorem, its commutative limit, and the
//! recurrences used along the way.


use super::{params, run_check, Check, Verdict};
use crate::arith::{Frac, Result};
use crate::multipolylog::{
    mpl_star_q_prefix, weakly_decreasing_tuples, DecreasingTuples, Index, TVector,
};
use crate::ncalg::{CommPoly, NCPoly};
use crate::qcore::{binomial, QValue};

/// Lazily grown powers `b^0, b^1, …` of a fixed element.
pub(crate) struct Powers<T> {
    pows: Vec<T>,
}

impl Powers<NCPoly> {
    pub(crate) fn nc(base: NCPoly) -> Self {
        let one = NCPoly::one(base.q());
        Powers { pows: vec![one, base] }
    }

    pub(crate) fn get(&mut self, e: u32) -> Result<&NCPoly> {
        while self.pows.len() <= e as usize {
            let next = self.pows.last().unwrap().mul(&self.pows[1])?;
            self.pows.push(next);
        }
        Ok(&self.pows[e as usize])
    }
}

impl Powers<CommPoly> {
    pub(crate) fn comm(base: CommPoly) -> Self {
        Powers { pows: vec![CommPoly::one(), base] }
    }

    pub(crate) fn get(&mut self, e: u32) -> Result<&CommPoly> {
        while self.pows.len() <= e as usize {
            let next = self.pows.last().unwrap().mul(&self.pows[1])?;
            self.pows.push(next);
        }
        Ok(&self.pows[e as usize])
    }
}

/// `1/[1], …, 1/[n]`, indexed by `n`.
pub(crate) fn recip_q_ints(q: &QValue, n: u32) -> Result<Vec<Frac>> {
    let mut v = vec![Frac::one()];
    for k in 1..=n {
        v.push(Frac::recip_poly(&q.int(k))?);
    }
    Ok(v)
}

/// `1/([n_1] … [n_w])`.
pub(crate) fn recip_product(recips: &[Frac], ns: &[u32]) -> Frac {
    ns.iter().fold(Frac::one(), |acc, &n| &acc * &recips[n as usize])
}

/// Exponents read off a `w`-tuple: `n_{l(r)}`, `n_{l(r)+1}` and `n_{l(r-1)+1}`.
pub(crate) struct Blocks<'a> {
    pub(crate) ns: &'a [u32],
    pub(crate) ls: Vec<usize>,
}

impl<'a> Blocks<'a> {
    pub(crate) fn new(s: &Index, ns: &'a [u32]) -> Self {
        let ls = (0..=s.depth()).map(|i| s.l(i) as usize).collect();
        Blocks { ns, ls }
    }

    /// `n_i`, 1-based.
    pub(crate) fn n(&self, i: usize) -> u32 {
        self.ns[i - 1]
    }

    /// `n_{l(r)}`.
    pub(crate) fn last(&self, r: usize) -> u32 {
        self.n(self.ls[r])
    }

    /// `n_{l(r-1)+1}`.
    pub(crate) fn first(&self, r: usize) -> u32 {
        self.n(self.ls[r - 1] + 1)
    }

    /// The `y`-exponent `n_1 + sum_{r<d} n_{l(r)+1} - sum_{r<=d} n_{l(r)}`.
    pub(crate) fn outer_exponent(&self) -> u32 {
        let d = self.ls.len() - 1;
        (1..=d).map(|r| self.first(r) - self.last(r)).sum()
    }
}

/// `sum_{k=1}^n [n choose k] (c x)^k y^{n-k} l_k^{*,q}(s, t)`, where `c` is a
/// central scale factor on `x`.
pub fn m_sum_q_scaled(
    q: &QValue,
    n: u32,
    s: &Index,
    t: &TVector,
    xscale: &Frac,
) -> Result<NCPoly> {
    let ls = mpl_star_q_prefix(q, n, s, t)?;
    let mut c = Frac::one();
    let mut terms = Vec::with_capacity(n as usize);
    for (k, l) in (1..=n).zip(ls) {
        c = &c * xscale;
        let coeff = &(&Frac::from_poly(q.binomial(n, k as i64)) * &c) * &l;
        terms.push(((k, n - k), coeff));
    }
    Ok(NCPoly::from_terms(terms, q))
}

/// `M_n^q(s, t; x, y)`; `n = 0` gives 0 and `s = ∅` gives `(x+y)^n - y^n`.
pub fn m_sum_q(q: &QValue, n: u32, s: &Index, t: &TVector) -> Result<NCPoly> {
    m_sum_q_scaled(q, n, s, t, &Frac::one())
}

/// The nested sum is an ordered product of links between consecutive
/// entries: `y^{n_i - n_{i+1}}` inside a block and `(t_r x + y)^{n_i - n_{i+1}}`
/// at the end `i = l(r)` of block `r < d`. Summing from the innermost entry
/// outwards, each level is `S(m) = L S(m-1) + G(m)`.
fn rhs_main(q: &QValue, n: u32, s: &Index, t: &TVector, keep_tail: bool) -> Result<NCPoly> {
    assert!(n >= 1 && !s.is_empty());
    let d = s.depth();
    let w = s.weight() as usize;
    let recips = recip_q_ints(q, n)?;
    let x = NCPoly::x(q);
    let y = NCPoly::y(q);
    let links: Vec<NCPoly> = (1..=d).map(|r| &x.scale(t.get(r)) + &y).collect();
    let mut tail_pows = Powers::nc(links[d - 1].clone());

    let mut g = vec![NCPoly::zero(q)];
    for m in 1..=n {
        let mut tail = tail_pows.get(m)?.clone();
        if keep_tail {
            tail = &tail - &NCPoly::monomial(0, m, Frac::one(), q);
        }
        g.push(tail.scale(&recips[m as usize]));
    }
    let horner = |link: &NCPoly, g: &[NCPoly]| -> Result<Vec<NCPoly>> {
        let mut out = vec![NCPoly::zero(q)];
        for m in 1..=n as usize {
            let next = &link.mul(&out[m - 1])? + &g[m];
            out.push(next);
        }
        Ok(out)
    };
    for i in (1..w).rev() {
        let link = match (1..d).find(|&r| s.l(r) as usize == i) {
            Some(r) => &links[r - 1],
            None => &y,
        };
        g = horner(link, &g)?
            .into_iter()
            .enumerate()
            .map(|(m, p)| if m == 0 { p } else { p.scale(&recips[m]) })
            .collect();
    }
    Ok(horner(&(&x + &y), &g)?.pop().unwrap())
}

/// The nested-sum side of the main theorem, built as ordered products in
/// `R_q[x, y]`.
pub fn m_rhs_main(q: &QValue, n: u32, s: &Index, t: &TVector) -> Result<NCPoly> {
    rhs_main(q, n, s, t, true)
}

/// [`m_rhs_main`] with the `- y^{n_{l(d)}}` correction dropped; only useful
/// to confirm that the comparison notices.
pub fn m_rhs_main_without_tail(q: &QValue, n: u32, s: &Index, t: &TVector) -> Result<NCPoly> {
    rhs_main(q, n, s, t, false)
}

/// `M_n(s, t; x, y) = sum_k C(n, k) x^k y^{n-k} l_k^*(s, t)`.
pub fn m_sum_q1(n: u32, s: &Index, t: &TVector) -> Result<CommPoly> {
    let ls = mpl_star_q_prefix(&QValue::one(), n, s, t)?;
    Ok(CommPoly::from_terms((1..=n).zip(ls).map(|(k, l)| {
        ((k, n - k), l.scale(&binomial(n, k as i64)))
    })))
}

/// The commutative nested sum of the `q = 1` corollary.
pub fn m_rhs_cor(n: u32, s: &Index, t: &TVector) -> Result<CommPoly> {
    assert!(n >= 1 && !s.is_empty());
    let d = s.depth();
    let recips = recip_q_ints(&QValue::one(), n)?;
    let x = CommPoly::x();
    let y = CommPoly::y();
    let mut sum_pows = Powers::comm(&x + &y);
    let mut t_pows: Vec<Powers<CommPoly>> = (1..=d)
        .map(|r| Powers::comm(&x.scale(t.get(r)) + &y))
        .collect();
    let ypow = |e: u32| CommPoly::monomial(0, e, Frac::one());

    let mut total = CommPoly::zero();
    for ns in weakly_decreasing_tuples(n, s.weight() as usize) {
        let b = Blocks::new(s, &ns);
        let mut acc = sum_pows.get(n - b.n(1))?.mul(&ypow(b.outer_exponent()))?;
        for r in 1..d {
            acc = acc.mul(t_pows[r - 1].get(b.last(r) - b.n(b.ls[r] + 1))?)?;
        }
        let m = b.last(d);
        acc = acc.mul(&(t_pows[d - 1].get(m)? - &ypow(m)))?;
        total = &total + &acc.scale(&recip_product(&recips, &ns));
    }
    Ok(total)
}

fn index_params(n: u32, s: &Index) -> Vec<(String, String)> {
    params([("n", n.to_string()), ("s", s.to_string())])
}

/// `(x + y)^n = sum_k [n choose k] x^k y^{n-k}`.
pub fn verify_schutzenberger(n: u32, check: &Check) -> Verdict {
    run_check("schutzenberger", params([("n", n.to_string())]), check, |env| {
        let q = &env.q;
        let lhs = (&NCPoly::x(q) + &NCPoly::y(q)).pow(n)?;
        let rhs = NCPoly::from_terms(
            (0..=n).map(|k| ((k, n - k), Frac::from_poly(q.binomial(n, k as i64)))),
            q,
        );
        Ok((lhs, rhs))
    })
}

/// The main theorem at one `(n, s)`, with `t` symbolic in exact mode.
pub fn verify_mainthm(n: u32, s: &Index, check: &Check) -> Verdict {
    run_check("main-theorem", index_params(n, s), check, |env| {
        let t = env.t(s.depth());
        Ok((m_sum_q(&env.q, n, s, &t)?, m_rhs_main(&env.q, n, s, &t)?))
    })
}

/// [`verify_mainthm`] against [`m_rhs_main_without_tail`]; expected to fail.
pub fn verify_mainthm_without_tail(n: u32, s: &Index, check: &Check) -> Verdict {
    let mut p = index_params(n, s);
    p.push(("mutation".into(), "drop-tail".into()));
    run_check("main-theorem", p, check, |env| {
        let t = env.t(s.depth());
        Ok((m_sum_q(&env.q, n, s, &t)?, m_rhs_main_without_tail(&env.q, n, s, &t)?))
    })
}

/// The `q = 1` corollary: both sides of the main theorem tend to the
/// respective commutative sides, which agree.
pub fn verify_corollary(n: u32, s: &Index, check: &Check) -> Verdict {
    run_check("corollary", index_params(n, s), check, |env| {
        let t = env.t(s.depth());
        let q = QValue::Symbolic;
        let sum = m_sum_q1(n, s, &t)?;
        let rhs = m_rhs_cor(n, s, &t)?;
        let lhs_side = vec![
            ("limit of sum".to_string(), m_sum_q(&q, n, s, &t)?.limit_q1()?),
            ("limit of nested sum".to_string(), m_rhs_main(&q, n, s, &t)?.limit_q1()?),
            ("direct".to_string(), sum.clone()),
        ];
        let rhs_side = vec![
            ("limit of sum".to_string(), sum),
            ("limit of nested sum".to_string(), rhs.clone()),
            ("direct".to_string(), rhs),
        ];
        Ok((lhs_side, rhs_side))
    })
}

/// `[n choose k] / [k]^s = sum_{n >= n_1 >= … >= n_s >= k}
/// q^{(n - n_s) k} [n_s choose k] / ([n_1] … [n_s])`.
pub fn verify_lemma21(n: u32, k: u32, s_exp: u32, check: &Check) -> Verdict {
    assert!(n >= k && k >= 1 && s_exp >= 1);
    let p = params([("n", n.to_string()), ("k", k.to_string()), ("s", s_exp.to_string())]);
    run_check("lemma21", p, check, |env| {
        let q = &env.q;
        let recips = recip_q_ints(q, n)?;
        let lhs = &Frac::from_poly(q.binomial(n, k as i64)) * &recips[k as usize].pow(s_exp);
        let mut rhs = Frac::from_int(0);
        for ns in DecreasingTuples::new(n, k, s_exp as usize) {
            let last = *ns.last().unwrap();
            let term = Frac::from_poly(&q.pow((n - last) * k) * &q.binomial(last, k as i64));
            rhs = &rhs + &(&term * &recip_product(&recips, &ns));
        }
        Ok((lhs, rhs))
    })
}

/// Which branch of the `M_n - (x + y) M_{n-1}` recurrence applies.
pub fn lemma22_case(s: &Index) -> u8 {
    match (s.depth() >= 2, s.parts()[0] >= 2) {
        (true, true) => 1,
        (true, false) => 2,
        (false, true) => 3,
        (false, false) => 4,
    }
}

/// `y^e`-weighted sum over `n >= n_1 >= … >= n_{s_1-1} >= 1` of `f(n_{s_1-1})`.
fn weighted_inner_sum(
    q: &QValue,
    n: u32,
    len: usize,
    recips: &[Frac],
    mut f: impl FnMut(u32) -> Result<NCPoly>,
) -> Result<NCPoly> {
    let mut total = NCPoly::zero(q);
    for ns in weakly_decreasing_tuples(n, len) {
        let m = *ns.last().unwrap();
        let term = NCPoly::monomial(0, n - m, Frac::one(), q).mul(&f(m)?)?;
        total = &total + &term.scale(&recip_product(recips, &ns));
    }
    Ok(total)
}

/// The recurrence for `M_n^q - (x + y) M_{n-1}^q`, both in its four-case form
/// and in the uniform form that uses `M^q(∅, ∅; x, y) = (x + y)^n - y^n`.
pub fn verify_lemma22(n: u32, s: &Index, check: &Check) -> Verdict {
    assert!(n >= 1 && !s.is_empty());
    let case = lemma22_case(s);
    let mut p = index_params(n, s);
    p.push(("case".into(), case.to_string()));
    run_check("lemma22", p, check, |env| {
        let q = &env.q;
        let t = env.t(s.depth());
        let x = NCPoly::x(q);
        let y = NCPoly::y(q);
        let diff = &m_sum_q(q, n, s, &t)? - &(&x + &y).mul(&m_sum_q(q, n - 1, s, &t)?)?;

        let recips = recip_q_ints(q, n)?;
        let t1 = t.get(1).clone();
        let tail = s.tail();
        let ratios = t.ratios()?;
        let s1 = s.parts()[0];
        let inner = |m: u32| m_sum_q_scaled(q, m, &tail, &ratios, &t1);
        let mut pows = Powers::nc(&x.scale(&t1) + &y);
        let mut binom_diff = |m: u32| -> Result<NCPoly> {
            Ok(pows.get(m)? - &NCPoly::monomial(0, m, Frac::one(), q))
        };

        let uniform = match s1 {
            1 => inner(n)?,
            _ => weighted_inner_sum(q, n, s1 as usize - 1, &recips, inner)?,
        };
        let cased = match case {
            1 | 2 => uniform.clone(),
            3 => weighted_inner_sum(q, n, s1 as usize - 1, &recips, &mut binom_diff)?,
            _ => binom_diff(n)?,
        };
        let inv = &recips[n as usize];
        Ok((
            vec![("cases".to_string(), diff.clone()), ("uniform".to_string(), diff)],
            vec![
                ("cases".to_string(), cased.scale(inv)),
                ("uniform".to_string(), uniform.scale(inv)),
            ],
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Symbol;

    fn idx(p: &[u32]) -> Index {
        Index::new(p.to_vec()).unwrap()
    }

    fn sym() -> QValue {
        QValue::Symbolic
    }

    #[test]
    fn sum_base_cases() {
        let s = idx(&[2, 1]);
        let t = TVector::symbolic(2);
        assert!(m_sum_q(&sym(), 0, &s, &t).unwrap().is_zero());
        let one = m_sum_q(&sym(), 1, &s, &t).unwrap();
        assert_eq!(one, NCPoly::monomial(1, 0, Frac::var(Symbol::T(2)), &sym()));
        assert_eq!(m_rhs_main(&sym(), 1, &s, &t).unwrap(), one);
    }

    #[test]
    fn empty_index_sum() {
        let q = sym();
        let x = NCPoly::x(&q);
        let y = NCPoly::y(&q);
        for n in 0..5 {
            let expected = &(&x + &y).pow(n).unwrap() - &y.pow(n).unwrap();
            let got = m_sum_q(&q, n, &Index::empty(), &TVector::default()).unwrap();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn small_main_theorem_instances() {
        for (n, s) in [(2, idx(&[1])), (3, idx(&[2])), (3, idx(&[1, 1])), (4, idx(&[1, 2]))] {
            let t = TVector::symbolic(s.depth());
            assert_eq!(
                m_sum_q(&sym(), n, &s, &t).unwrap(),
                m_rhs_main(&sym(), n, &s, &t).unwrap(),
                "n={n} s={s}"
            );
        }
    }

    #[test]
    fn verdicts() {
        assert!(verify_mainthm(1, &idx(&[1]), &Check::exact()).passed());
        let v = verify_mainthm_without_tail(2, &idx(&[1]), &Check::exact());
        assert!(!v.passed());
        assert!(v.witness.is_some());
        assert!(verify_corollary(3, &idx(&[1, 2]), &Check::exact()).passed());
        assert!(verify_schutzenberger(5, &Check::exact()).passed());
        assert!(verify_lemma21(4, 2, 2, &Check::exact()).passed());
        assert!(verify_lemma21(3, 3, 1, &Check::exact()).passed());
    }

    #[test]
    fn lemma22_cases() {
        for (s, case) in [(idx(&[2, 1]), 1), (idx(&[1, 1]), 2), (idx(&[2]), 3), (idx(&[1]), 4)] {
            assert_eq!(lemma22_case(&s), case);
            for n in 1..=3 {
                let v = verify_lemma22(n, &s, &Check::exact());
                assert!(v.passed(), "{v:?}");
                assert_eq!(v.param("case"), Some(case.to_string().as_str()));
            }
        }
    }

    #[test]
    fn corollary_exponent() {
        // s = (2, 1): n_1 + n_3 - n_2 - n_3
        let s = idx(&[2, 1]);
        let ns = [5, 3, 2];
        assert_eq!(Blocks::new(&s, &ns).outer_exponent(), 2);
    }
}
