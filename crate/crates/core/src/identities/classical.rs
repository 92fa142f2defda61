//! Commutative specialisations: the harmonic-number identities, the
//! alternating-sum identities in `t`, and binomial inversion.

use num_traits::One;

use super::bm::{m_rhs_cor, recip_q_ints, recip_product, Blocks};
use super::{params, run_check, sign, Check, Verdict};
use crate::arith::{Frac, Rational, Result};
use crate::multipolylog::{
    harmonic, mpl_star_q1, weakly_decreasing_tuples, zeta_star_k, Index, TVector,
};
use crate::qcore::{binomial, QValue};

fn c(r: &Rational) -> Frac {
    Frac::constant(r.clone())
}

fn pow(r: &Rational, e: u32) -> Rational {
    num_traits::Pow::pow(r, e)
}

/// `sum_k C(n, k) p^k (1-p)^{n-k} zeta_k^*(s; a)` against the nested sum in
/// `1 - p` and `1 - p + ap`, and against the corollary's nested side at
/// `t = (1, …, 1, a)`, `x = p`, `y = 1 - p`.
pub fn verify_gencev(n: u32, s: &Index, a: &Rational, p: &Rational, check: &Check) -> Verdict {
    assert!(n >= 1 && !s.is_empty());
    let pr = params([
        ("n", n.to_string()),
        ("s", s.to_string()),
        ("a", a.to_string()),
        ("p", p.to_string()),
    ]);
    run_check("gencev", pr, check, |_| {
        let one = Rational::one();
        let pbar = &one - p;
        let mut lhs = Frac::from_int(0);
        for k in 1..=n {
            let w = binomial(n, k as i64) * pow(p, k) * pow(&pbar, n - k);
            lhs = &lhs + &zeta_star_k(k, s, &c(a))?.scale(&w);
        }

        let recips = recip_q_ints(&QValue::one(), n)?;
        let shifted = &pbar + a * p;
        let mut rhs = Frac::from_int(0);
        for ns in weakly_decreasing_tuples(n, s.weight() as usize) {
            let b = Blocks::new(s, &ns);
            let e: u32 = (1..=s.depth()).map(|r| b.first(r) - b.last(r)).sum();
            let nw = *ns.last().unwrap();
            let v = pow(&pbar, e) * (pow(&shifted, nw) - pow(&pbar, nw));
            rhs = &rhs + &recip_product(&recips, &ns).scale(&v);
        }

        let t = TVector::ones_then(s.depth(), c(a));
        let via_cor = m_rhs_cor(n, s, &t)?.eval_xy(&c(p), &c(&pbar));
        Ok((
            vec![("nested sum".to_string(), lhs.clone()), ("corollary".to_string(), lhs)],
            vec![("nested sum".to_string(), rhs), ("corollary".to_string(), via_cor)],
        ))
    })
}

/// `sum_k H_k C(n, k) p^k (1-p)^{n-k} = sum_i (1 - (1-p)^i) / i`, also
/// compared with the `s = (1)`, `a = 1` case of [`verify_gencev`]'s sum.
pub fn verify_mneimneh(n: u32, p: &Rational, check: &Check) -> Verdict {
    assert!(n >= 1);
    let pr = params([("n", n.to_string()), ("p", p.to_string())]);
    run_check("mneimneh", pr, check, |_| {
        let one = Rational::one();
        let pbar = &one - p;
        let lhs: Rational = (1..=n)
            .map(|k| harmonic(k) * binomial(n, k as i64) * pow(p, k) * pow(&pbar, n - k))
            .sum();
        let rhs: Rational = (1..=n)
            .map(|i| (&one - pow(&pbar, i)) / Rational::from_integer(i.into()))
            .sum();
        let s = Index::ones(1);
        let mut via = Frac::from_int(0);
        for k in 1..=n {
            let w = binomial(n, k as i64) * pow(p, k) * pow(&pbar, n - k);
            via = &via + &zeta_star_k(k, &s, &Frac::one())?.scale(&w);
        }
        Ok((
            vec![("closed form".to_string(), c(&lhs)), ("zeta sum".to_string(), via)],
            vec![("closed form".to_string(), c(&rhs)), ("zeta sum".to_string(), c(&rhs))],
        ))
    })
}

/// `sum_k C(n, k) H_k lambda^{n-k} mu^k
/// = H_n (lambda + mu)^n - sum_j lambda^j (lambda + mu)^{n-j} / j`.
pub fn verify_boyadzhiev(n: u32, lambda: &Rational, mu: &Rational, check: &Check) -> Verdict {
    assert!(n >= 1);
    let pr = params([
        ("n", n.to_string()),
        ("lambda", lambda.to_string()),
        ("mu", mu.to_string()),
    ]);
    run_check("boyadzhiev", pr, check, |_| {
        let lm = lambda + mu;
        let lhs: Rational = (1..=n)
            .map(|k| binomial(n, k as i64) * harmonic(k) * pow(lambda, n - k) * pow(mu, k))
            .sum();
        let tail: Rational = (1..=n)
            .map(|j| pow(lambda, j) * pow(&lm, n - j) / Rational::from_integer(j.into()))
            .sum();
        let rhs = harmonic(n) * pow(&lm, n) - tail;
        Ok((c(&lhs), c(&rhs)))
    })
}

/// `sum_k C(n, k) (-1)^{k-1} / k = H_n`.
pub fn verify_euler(n: u32, check: &Check) -> Verdict {
    run_check("euler", params([("n", n.to_string())]), check, |_| {
        let lhs: Rational = (1..=n)
            .map(|k| -sign(k) * binomial(n, k as i64) / Rational::from_integer(k.into()))
            .sum();
        Ok((c(&lhs), c(&harmonic(n))))
    })
}

/// `t_1^{n_1-n_2} … t_d^{n_d} / (n_1^{s_1} … n_d^{s_d})`.
fn polylog_term(s: &Index, t: &TVector, ns: &[u32]) -> Frac {
    let d = ns.len();
    let mut term = Frac::one();
    let mut den = Rational::one();
    for i in 0..d {
        let next = ns.get(i + 1).copied().unwrap_or(0);
        term = &term * &t.entries()[i].pow(ns[i] - next);
        den *= pow(&Rational::from_integer(ns[i].into()), s.parts()[i]);
    }
    term.scale(&den.recip())
}

/// The sum over `w`-tuples shared by both alternating identities, with
/// weight `g(n_1)` on each tuple.
fn one_minus_t_sum(
    n: u32,
    s: &Index,
    t: &TVector,
    g: impl Fn(u32) -> Rational,
) -> Result<Frac> {
    let d = s.depth();
    let recips = recip_q_ints(&QValue::one(), n)?;
    let bars: Vec<Frac> = t.entries().iter().map(|ti| &Frac::one() - ti).collect();
    let mut total = Frac::from_int(0);
    for ns in weakly_decreasing_tuples(n, s.weight() as usize) {
        let b = Blocks::new(s, &ns);
        let mut term = recip_product(&recips, &ns).scale(&g(ns[0]));
        for r in 1..d {
            term = &term * &bars[r - 1].pow(b.last(r) - b.n(b.ls[r] + 1));
        }
        let m = b.last(d);
        term = &term * &(&bars[d - 1].pow(m) - &Frac::one());
        total = &total + &term;
    }
    Ok(total)
}

/// First alternating identity: signed binomial weights on the `t`-side.
pub fn verify_ss1(n: u32, s: &Index, check: &Check) -> Verdict {
    assert!(n >= 1 && !s.is_empty());
    let pr = params([("n", n.to_string()), ("s", s.to_string())]);
    run_check("ss1", pr, check, |env| {
        let t = env.t(s.depth());
        let mut lhs = Frac::from_int(0);
        for ns in weakly_decreasing_tuples(n, s.depth()) {
            let w = sign(ns[0]) * binomial(n, ns[0] as i64);
            lhs = &lhs + &polylog_term(s, &t, &ns).scale(&w);
        }
        Ok((lhs, one_minus_t_sum(n, s, &t, |_| Rational::one())?))
    })
}

/// Second alternating identity: signed binomial weights on the `(1 - t)`-side.
pub fn verify_ss2(n: u32, s: &Index, check: &Check) -> Verdict {
    assert!(n >= 1 && !s.is_empty());
    let pr = params([("n", n.to_string()), ("s", s.to_string())]);
    run_check("ss2", pr, check, |env| {
        let t = env.t(s.depth());
        let lhs = mpl_star_q1(n, s, &t)?;
        let rhs = one_minus_t_sum(n, s, &t, |n1| sign(n1) * binomial(n, n1 as i64))?;
        Ok((lhs, rhs))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `b_n = sum_k C(n, k) a_k`.
    Forward,
    /// `a_n = sum_k C(n, k) (-1)^{n-k} b_k`.
    Backward,
}

pub fn binomial_inversion(seq: &[Frac], direction: Direction) -> Vec<Frac> {
    (0..seq.len() as u32)
        .map(|n| {
            (0..=n).fold(Frac::from_int(0), |acc, k| {
                let mut w = binomial(n, k as i64);
                if direction == Direction::Backward {
                    w *= sign(n - k);
                }
                &acc + &seq[k as usize].scale(&w)
            })
        })
        .collect()
}

/// Inverts `k -> ` (corollary's nested side at `x = -1`, `y = 1`) and
/// compares the result with `(-1)^k l_k^*(s, t)` for `k <= n`.
pub fn verify_inversion(n: u32, s: &Index, check: &Check) -> Verdict {
    assert!(n >= 1 && !s.is_empty());
    let pr = params([("n", n.to_string()), ("s", s.to_string())]);
    run_check("inversion", pr, check, |env| {
        let t = env.t(s.depth());
        let mut b = vec![Frac::from_int(0)];
        for k in 1..=n {
            b.push(m_rhs_cor(k, s, &t)?.eval_xy(&Frac::from_int(-1), &Frac::one()));
        }
        let a = binomial_inversion(&b, Direction::Backward);
        let mut lhs = Vec::new();
        let mut rhs = Vec::new();
        for k in 1..=n {
            let label = format!("k={k}");
            lhs.push((label.clone(), a[k as usize].clone()));
            rhs.push((label, mpl_star_q1(k, s, &t)?.scale(&sign(k))));
        }
        Ok((lhs, rhs))
    })
}

/// Forward then backward inversion returns the input.
pub fn verify_inversion_roundtrip(seq: &[Frac], check: &Check) -> Verdict {
    let pr = params([("len", seq.len().to_string())]);
    run_check("inversion-roundtrip", pr, check, |_| {
        let back = binomial_inversion(&binomial_inversion(seq, Direction::Forward), Direction::Backward);
        let label = |i: usize| format!("a_{i}");
        Ok((
            seq.iter().cloned().enumerate().map(|(i, v)| (label(i), v)).collect::<Vec<_>>(),
            back.into_iter().enumerate().map(|(i, v)| (label(i), v)).collect(),
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn idx(p: &[u32]) -> Index {
        Index::new(p.to_vec()).unwrap()
    }

    #[test]
    fn harmonic_identities() {
        let ex = Check::exact();
        assert!(verify_gencev(1, &idx(&[1]), &rat(1, 2), &rat(1, 3), &ex).passed());
        assert!(verify_gencev(3, &idx(&[2, 1]), &rat(1, 2), &rat(1, 3), &ex).passed());
        assert!(verify_mneimneh(4, &rat(2, 5), &ex).passed());
        assert!(verify_boyadzhiev(1, &int(2), &int(-1), &ex).passed());
        assert!(verify_boyadzhiev(5, &rat(1, 2), &rat(1, 3), &ex).passed());
        assert!(verify_euler(2, &ex).passed());
    }

    #[test]
    fn alternating_identities() {
        for s in [idx(&[1]), idx(&[2, 1]), idx(&[1, 1, 1])] {
            for n in 1..=3 {
                assert!(verify_ss1(n, &s, &Check::exact()).passed(), "ss1 n={n} s={s}");
                assert!(verify_ss2(n, &s, &Check::exact()).passed(), "ss2 n={n} s={s}");
                assert!(verify_inversion(n, &s, &Check::exact()).passed());
            }
        }
    }

    #[test]
    fn inversion_examples() {
        let ones: Vec<Frac> = (0..4).map(|_| Frac::one()).collect();
        let delta: Vec<Frac> = (0..4).map(|i| Frac::from_int((i == 0) as i64)).collect();
        assert_eq!(binomial_inversion(&delta, Direction::Forward), ones);
        let pows: Vec<Frac> = [1, 2, 4, 8].into_iter().map(Frac::from_int).collect();
        assert_eq!(binomial_inversion(&pows, Direction::Backward), ones);
        assert!(verify_inversion_roundtrip(&pows, &Check::exact()).passed());
    }

    #[test]
    fn mutated_checks_fail() {
        let m = Check::exact().mutated(3);
        assert!(!verify_euler(3, &m).passed());
        assert!(!verify_ss1(2, &idx(&[1]), &m).passed());
        assert!(!verify_gencev(2, &idx(&[1]), &int(1), &rat(1, 3), &m).passed());
    }
}
