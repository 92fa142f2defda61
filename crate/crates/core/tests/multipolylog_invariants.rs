use qmpl_core::arith::{Frac, Symbol};
use qmpl_core::multipolylog::{
    mpl_slice, mpl_star_q, mpl_star_q1, weakly_decreasing_tuples, zeta_star_k, Index, TVector,
};
use qmpl_core::qcore::{binomial, QValue};

fn compositions(max_weight: u32) -> Vec<Index> {
    fn go(rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Index>) {
        if !cur.is_empty() {
            out.push(Index::new(cur.clone()).unwrap());
        }
        for s in 1..=rem {
            cur.push(s);
            go(rem - s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(max_weight, &mut Vec::new(), &mut out);
    out
}

#[test]
fn tuple_counts() {
    for n in 1..=8u32 {
        for w in 1..=5usize {
            let all: Vec<_> = weakly_decreasing_tuples(n, w).collect();
            assert_eq!(
                Some(all.len() as i64),
                binomial(n + w as u32 - 1, w as i64).to_integer().try_into().ok()
            );
            assert!(all.windows(2).all(|p| p[0] > p[1]), "strictly descending listing");
            assert!(all.iter().all(|t| t.windows(2).all(|p| p[0] >= p[1])
                && t[0] <= n && *t.last().unwrap() >= 1));
        }
    }
}

#[test]
fn limit_of_q_analogue() {
    for s in compositions(4) {
        let t = TVector::symbolic(s.depth());
        for k in 1..=5 {
            let lq = mpl_star_q(k, &s, &t).unwrap();
            assert_eq!(lq.limit_q1().unwrap(), mpl_star_q1(k, &s, &t).unwrap(), "k={k} s={s}");
        }
    }
}

#[test]
fn zeta_star_is_a_specialisation() {
    let a = Frac::var(Symbol::A);
    for s in compositions(4) {
        let t = TVector::ones_then(s.depth(), a.clone());
        for k in 1..=5 {
            assert_eq!(zeta_star_k(k, &s, &a).unwrap(), mpl_star_q1(k, &s, &t).unwrap());
        }
    }
}

#[test]
fn successive_differences_are_slices() {
    let q = QValue::Symbolic;
    for s in compositions(3) {
        let t = TVector::symbolic(s.depth());
        for k in 2..=5 {
            let diff = &mpl_star_q(k, &s, &t).unwrap() - &mpl_star_q(k - 1, &s, &t).unwrap();
            assert_eq!(diff, mpl_slice(&q, k, &s, &t).unwrap(), "k={k} s={s}");
        }
    }
}
