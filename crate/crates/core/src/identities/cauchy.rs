//! The Cauchy binomial theorem, its two quantum-plane lemmas, the matching
//! binomial sum of `l_k^{*,q}`, and its alternating specialisation.


use super::bm::{recip_q_ints, recip_product, Blocks};
use super::{params, run_check, sign, Check, Verdict};
use crate::arith::{Frac, Result};
use crate::multipolylog::{mpl_star_q_prefix, weakly_decreasing_tuples, Index, TVector};
use crate::ncalg::{CommPoly, NCPoly};
use crate::qcore::{q_rising, QValue};

fn c2(k: u32) -> u32 {
    k * k.saturating_sub(1) / 2
}

fn qpow(q: &QValue, e: u32) -> Frac {
    Frac::from_poly(q.pow(e))
}

/// `sum_k q^{C(k,2)} [n choose k] x^k a^{n-k}`.
pub fn cauchy_binomial_sum(q: &QValue, n: u32, a: &Frac) -> CommPoly {
    CommPoly::from_terms((0..=n).map(|k| {
        let c = &(&qpow(q, c2(k)) * &Frac::from_poly(q.binomial(n, k as i64))) * &a.pow(n - k);
        ((k, 0), c)
    }))
}

/// `(x + a)^{[n]} = sum_k q^{C(k,2)} [n choose k] x^k a^{n-k}`.
pub fn verify_cauchy_binomial(n: u32, check: &Check) -> Verdict {
    run_check("cauchy-binomial", params([("n", n.to_string())]), check, |env| {
        let lhs = q_rising(&CommPoly::x(), &CommPoly::constant(env.a.clone()), n, 0, &env.q)?;
        Ok((lhs, cauchy_binomial_sum(&env.q, n, &env.a)))
    })
}

/// `(xy)^k = q^{C(k,2)} x^k y^k`.
pub fn verify_lemma41_i(k: u32, check: &Check) -> Verdict {
    run_check("lemma41-i", params([("k", k.to_string())]), check, |env| {
        let q = &env.q;
        let lhs = NCPoly::monomial(1, 1, Frac::one(), q).pow(k)?;
        Ok((lhs, NCPoly::monomial(k, k, qpow(q, c2(k)), q)))
    })
}

/// `y^m ((t x + a) y)^n = (q^m t x + a)^{[n]} y^{m+n}`, with `t = t_1`.
pub fn verify_lemma41_ii(m: u32, n: u32, check: &Check) -> Verdict {
    let p = params([("m", m.to_string()), ("n", n.to_string())]);
    run_check("lemma41-ii", p, check, |env| {
        let q = &env.q;
        let t = env.t(1).get(1).clone();
        let ypow = |e: u32| NCPoly::monomial(0, e, Frac::one(), q);
        let factor = NCPoly::from_terms([((1, 1), t.clone()), ((0, 1), env.a.clone())], q);
        let lhs = ypow(m).mul(&factor.pow(n)?)?;
        let rising = q_rising(
            &CommPoly::monomial(1, 0, t),
            &CommPoly::constant(env.a.clone()),
            n,
            m,
            q,
        )?;
        let rhs = NCPoly::from_normal_ordered(&rising, q).mul(&ypow(m + n))?;
        Ok((lhs, rhs))
    })
}

/// `sum_k [n choose k] q^{C(k,2)} x^k a^{n-k} l_k^{*,q}(s, t)`.
pub fn cauchy_bm_lhs(q: &QValue, n: u32, s: &Index, t: &TVector, a: &Frac) -> Result<CommPoly> {
    let ls = mpl_star_q_prefix(q, n, s, t)?;
    Ok(CommPoly::from_terms((1..=n).zip(ls).map(|(k, l)| {
        let c = &(&qpow(q, c2(k)) * &Frac::from_poly(q.binomial(n, k as i64))) * &a.pow(n - k);
        ((k, 0), &c * &l)
    })))
}

/// The nested sum of `q`-shifted products matching [`cauchy_bm_lhs`].
pub fn cauchy_bm_rhs(q: &QValue, n: u32, s: &Index, t: &TVector, a: &Frac) -> Result<CommPoly> {
    assert!(n >= 1 && !s.is_empty());
    let d = s.depth();
    let recips = recip_q_ints(q, n)?;
    let x = CommPoly::x();
    let ac = CommPoly::constant(a.clone());
    let tx: Vec<CommPoly> = (1..=d).map(|r| x.scale(t.get(r))).collect();
    let mut total = CommPoly::zero();
    for ns in weakly_decreasing_tuples(n, s.weight() as usize) {
        let b = Blocks::new(s, &ns);
        let mut acc = q_rising(&x, &ac, n - b.n(1), 0, q)?;
        for r in 1..d {
            let len = b.last(r) - b.n(b.ls[r] + 1);
            acc = acc.mul(&q_rising(&tx[r - 1], &ac, len, n - b.last(r), q)?)?;
        }
        let m = b.last(d);
        let tail = &q_rising(&tx[d - 1], &ac, m, n - m, q)? - &CommPoly::constant(a.pow(m));
        acc = acc.mul(&tail)?;
        let coeff = &recip_product(&recips, &ns) * &a.pow(b.outer_exponent());
        total = &total + &acc.scale(&coeff);
    }
    Ok(total)
}

/// Both sides of the Cauchy-type binomial sum, as polynomials in `x` over
/// the field containing `q`, the `t_i` and `a`.
pub fn verify_cauchy_bm(n: u32, s: &Index, check: &Check) -> Verdict {
    let p = params([("n", n.to_string()), ("s", s.to_string())]);
    run_check("cauchy-bm", p, check, |env| {
        let t = env.t(s.depth());
        Ok((
            cauchy_bm_lhs(&env.q, n, s, &t, &env.a)?,
            cauchy_bm_rhs(&env.q, n, s, &t, &env.a)?,
        ))
    })
}

/// `sum_k (-1)^{k+1} q^{C(k,2)} [n choose k] l_k^{*,q}((1)^d, (1)^d) = 1/[n]^d`,
/// also read off [`cauchy_bm_rhs`] at `x = -1`, `a = 1`.
pub fn verify_bradley(n: u32, d: u32, check: &Check) -> Verdict {
    assert!(n >= 1 && d >= 1);
    let p = params([("n", n.to_string()), ("d", d.to_string())]);
    run_check("bradley", p, check, |env| {
        let q = &env.q;
        let s = Index::ones(d as usize);
        let t = TVector::ones_then(d as usize, Frac::one());
        let ls = mpl_star_q_prefix(q, n, &s, &t)?;
        let mut lhs = Frac::from_int(0);
        for (k, l) in (1..=n).zip(ls) {
            let c = &qpow(q, c2(k)) * &Frac::from_poly(q.binomial(n, k as i64));
            lhs = &lhs + &(&c * &l).scale(&-sign(k));
        }
        let target = recip_q_ints(q, n)?[n as usize].pow(d);
        let via = -cauchy_bm_rhs(q, n, &s, &t, &Frac::one())?.eval_xy(&Frac::from_int(-1), &Frac::one());
        Ok((
            vec![("sum".to_string(), lhs), ("via cauchy-bm".to_string(), via)],
            vec![("sum".to_string(), target.clone()), ("via cauchy-bm".to_string(), target)],
        ))
    })
}
