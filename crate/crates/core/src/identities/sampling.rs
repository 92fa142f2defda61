use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::Rational;

/// `q` values with `|q|` away from 0 and 1, so no `[n]` vanishes.
pub const DEFAULT_Q_POOL: [(i64, i64); 5] = [(2, 1), (1, 2), (3, 2), (-2, 1), (5, 3)];

/// Nonzero values for `t_i` and `a`.
pub const DEFAULT_T_POOL: [(i64, i64); 8] =
    [(1, 2), (2, 1), (-1, 1), (3, 1), (-2, 3), (1, 3), (5, 2), (-3, 1)];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalPoint {
    pub q: Rational,
    pub t: Vec<Rational>,
    pub a: Rational,
}

impl fmt::Display for EvalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={}", self.q)?;
        for (i, t) in self.t.iter().enumerate() {
            write!(f, " t{}={t}", i + 1)?;
        }
        write!(f, " a={}", self.a)
    }
}

/// A seeded, replayable list of evaluation points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalPlan {
    pub seed: u64,
    pub points: Vec<EvalPoint>,
}

fn pool(p: &[(i64, i64)]) -> Vec<Rational> {
    p.iter().map(|&(n, d)| Rational::new(n.into(), d.into())).collect()
}

impl EvalPlan {
    /// Draws `count` points with `width` t-values each.
    pub fn sample(
        seed: u64,
        count: usize,
        q_pool: &[Rational],
        t_pool: &[Rational],
        width: usize,
    ) -> Self {
        assert!(!q_pool.is_empty() && !t_pool.is_empty());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let points = (0..count)
            .map(|_| EvalPoint {
                q: q_pool.choose(&mut rng).unwrap().clone(),
                t: (0..width).map(|_| t_pool.choose(&mut rng).unwrap().clone()).collect(),
                a: t_pool.choose(&mut rng).unwrap().clone(),
            })
            .collect();
        EvalPlan { seed, points }
    }

    pub fn with_defaults(seed: u64, count: usize, width: usize) -> Self {
        Self::sample(seed, count, &pool(&DEFAULT_Q_POOL), &pool(&DEFAULT_T_POOL), width)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_replayable() {
        let a = EvalPlan::with_defaults(7, 10, 3);
        let b = EvalPlan::with_defaults(7, 10, 3);
        assert_eq!(a, b);
        assert_ne!(a, EvalPlan::with_defaults(8, 10, 3));
        assert!(a.points.iter().all(|p| p.t.len() == 3));
    }
}
