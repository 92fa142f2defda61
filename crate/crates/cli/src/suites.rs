use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qmpl_core::arith::{Frac, Rational};
use qmpl_core::identities::*;
use qmpl_core::multipolylog::Index;

use crate::{enumerate_compositions, SuiteConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Schutzenberger,
    Lemma21,
    Lemma22,
    MainTheorem,
    Corollary,
    Gencev,
    Mneimneh,
    Boyadzhiev,
    Ss1,
    Ss2,
    Inversion,
    CauchyBinomial,
    Lemma41,
    CauchyBm,
    Bradley,
    All,
}

impl Suite {
    pub const EACH: [Suite; 15] = [
        Suite::Schutzenberger,
        Suite::Lemma21,
        Suite::Lemma22,
        Suite::MainTheorem,
        Suite::Corollary,
        Suite::Gencev,
        Suite::Mneimneh,
        Suite::Boyadzhiev,
        Suite::Ss1,
        Suite::Ss2,
        Suite::Inversion,
        Suite::CauchyBinomial,
        Suite::Lemma41,
        Suite::CauchyBm,
        Suite::Bradley,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Suite::Schutzenberger => "schutzenberger",
            Suite::Lemma21 => "lemma21",
            Suite::Lemma22 => "lemma22",
            Suite::MainTheorem => "main-theorem",
            Suite::Corollary => "corollary",
            Suite::Gencev => "gencev",
            Suite::Mneimneh => "mneimneh",
            Suite::Boyadzhiev => "boyadzhiev",
            Suite::Ss1 => "ss1",
            Suite::Ss2 => "ss2",
            Suite::Inversion => "inversion",
            Suite::CauchyBinomial => "cauchy-binomial",
            Suite::Lemma41 => "lemma41",
            Suite::CauchyBm => "cauchy-bm",
            Suite::Bradley => "bradley",
            Suite::All => "all",
        }
    }

    /// What the suite checks.
    pub fn anchor(self) -> &'static str {
        match self {
            Suite::Schutzenberger => "(x+y)^n = sum [n,k] x^k y^(n-k) in the quantum plane yx = qxy",
            Suite::Lemma21 => "[n,k]/[k]^s as a nested sum over n >= n_1 >= ... >= n_s >= k",
            Suite::Lemma22 => "recurrence for M_n^q - (x+y) M_(n-1)^q, four cases plus uniform form",
            Suite::MainTheorem => "M_n^q(s,t;x,y) equals its nested sum of ordered products",
            Suite::Corollary => "q -> 1 limit of both sides, and the commutative identity directly",
            Suite::Gencev => "binomial averages of zeta_k^*(s;a) at x = p, y = 1-p",
            Suite::Mneimneh => "binomial mean of H_k equals sum (1-(1-p)^i)/i",
            Suite::Boyadzhiev => "sum C(n,k) H_k lambda^(n-k) mu^k in closed form",
            Suite::Ss1 => "alternating sum of l^* against (1-t) products; Euler's identity",
            Suite::Ss2 => "l_n^* as an alternating sum of (1-t) products",
            Suite::Inversion => "binomial inversion of the corollary at x = -1, y = 1; roundtrips",
            Suite::CauchyBinomial => "(x+a)^[n] = sum q^C(k,2) [n,k] x^k a^(n-k)",
            Suite::Lemma41 => "(xy)^k = q^C(k,2) x^k y^k and y^m((tx+a)y)^n = (q^m tx+a)^[n] y^(m+n)",
            Suite::CauchyBm => "Cauchy-type binomial sum of l^{*,q} as a nested q-shifted sum",
            Suite::Bradley => "alternating q-sum of l^{*,q}((1)^d) equals 1/[n]^d",
            Suite::All => "every suite above",
        }
    }

    pub fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::EACH.to_vec(),
            s => vec![s],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Suite::EACH
            .iter()
            .chain([Suite::All].iter())
            .find(|x| x.id() == s)
            .copied()
            .ok_or_else(|| format!("unknown suite '{s}'"))
    }
}

type Runner = Box<dyn Fn(&Check) -> Verdict + Send + Sync>;

/// One parameter tuple of one suite.
pub struct Case {
    pub suite: Suite,
    /// True when neither side depends on `q`, `t` or `a`, so sampling points
    /// would only repeat the exact computation.
    pub scalar_only: bool,
    pub run: Runner,
}

fn case(suite: Suite, run: impl Fn(&Check) -> Verdict + Send + Sync + 'static) -> Case {
    Case {
        suite,
        scalar_only: false,
        run: Box::new(run),
    }
}

fn scalar_case(suite: Suite, run: impl Fn(&Check) -> Verdict + Send + Sync + 'static) -> Case {
    Case {
        scalar_only: true,
        ..case(suite, run)
    }
}

const ROUNDTRIP_SEQUENCES: usize = 10;

/// Seeded random sequences of small rationals with lengths 1..=10.
pub fn random_sequences(seed: u64, count: usize) -> Vec<Vec<Frac>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=10);
            (0..len)
                .map(|_| {
                    let n: i64 = rng.gen_range(-20..=20);
                    let d: i64 = rng.gen_range(1..=9);
                    Frac::constant(Rational::new(n.into(), d.into()))
                })
                .collect()
        })
        .collect()
}

/// Every case of `suite` under `config`, in a fixed order.
pub fn cases(suite: Suite, config: &SuiteConfig) -> Vec<Case> {
    let n_max = config.n_max;
    let comps = || enumerate_compositions(config.weight_max, config.depth_max);
    let per_index = |f: fn(u32, &Index, &Check) -> Verdict| -> Vec<Case> {
        let mut out = Vec::new();
        for s in comps() {
            for n in 1..=n_max {
                let s = s.clone();
                out.push(case(suite, move |c| f(n, &s, c)));
            }
        }
        out
    };
    match suite {
        Suite::All => Suite::EACH.iter().flat_map(|&s| cases(s, config)).collect(),
        Suite::Schutzenberger => (0..=n_max)
            .map(|n| case(suite, move |c| verify_schutzenberger(n, c)))
            .collect(),
        Suite::Lemma21 => {
            let mut out = Vec::new();
            for n in 1..=n_max {
                for k in 1..=n {
                    for s in 1..=config.weight_max {
                        out.push(case(suite, move |c| verify_lemma21(n, k, s, c)));
                    }
                }
            }
            out
        }
        Suite::Lemma22 => per_index(verify_lemma22),
        Suite::MainTheorem => per_index(verify_mainthm),
        Suite::Corollary => per_index(verify_corollary),
        Suite::Gencev => {
            let mut out = Vec::new();
            for s in comps() {
                for n in 1..=n_max {
                    for a in &config.a_grid {
                        for p in &config.p_grid {
                            let (s, a, p) = (s.clone(), a.clone(), p.clone());
                            out.push(scalar_case(suite, move |c| verify_gencev(n, &s, &a, &p, c)));
                        }
                    }
                }
            }
            out
        }
        Suite::Mneimneh => {
            let mut out = Vec::new();
            for n in 1..=n_max {
                for p in &config.p_grid {
                    let p = p.clone();
                    out.push(scalar_case(suite, move |c| verify_mneimneh(n, &p, c)));
                }
            }
            out
        }
        Suite::Boyadzhiev => {
            let mut out = Vec::new();
            for n in 1..=n_max {
                for (l, m) in &config.lambda_mu_grid {
                    let (l, m) = (l.clone(), m.clone());
                    out.push(scalar_case(suite, move |c| verify_boyadzhiev(n, &l, &m, c)));
                }
            }
            out
        }
        Suite::Ss1 => {
            let mut out = per_index(verify_ss1);
            out.extend((1..=n_max).map(|n| scalar_case(suite, move |c| verify_euler(n, c))));
            out
        }
        Suite::Ss2 => per_index(verify_ss2),
        Suite::Inversion => {
            let mut out = per_index(verify_inversion);
            for seq in random_sequences(config.seed, ROUNDTRIP_SEQUENCES) {
                out.push(scalar_case(suite, move |c| verify_inversion_roundtrip(&seq, c)));
            }
            out
        }
        Suite::CauchyBinomial => (0..=n_max)
            .map(|n| case(suite, move |c| verify_cauchy_binomial(n, c)))
            .collect(),
        Suite::Lemma41 => {
            let mut out: Vec<Case> = (0..=n_max)
                .map(|k| case(suite, move |c| verify_lemma41_i(k, c)))
                .collect();
            for m in 0..=n_max {
                for n in 0..=n_max {
                    out.push(case(suite, move |c| verify_lemma41_ii(m, n, c)));
                }
            }
            out
        }
        Suite::CauchyBm => per_index(verify_cauchy_bm),
        Suite::Bradley => {
            let mut out = Vec::new();
            for n in 1..=n_max {
                for d in 1..=config.depth_max {
                    out.push(case(suite, move |c| verify_bradley(n, d, c)));
                }
            }
            out
        }
    }
}
