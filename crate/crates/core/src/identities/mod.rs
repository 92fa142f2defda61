//! Both sides of every identity, and the machinery that turns a comparison
//! into a [`Verdict`].
//!
//! A check is a closure from an [`Env`] (the value of `q`, the `t_i` and
//! `a`) to a pair of sides. Exact mode runs it once with everything
//! symbolic; eval mode runs it at each sampled rational point.

mod bm;
mod cauchy;
mod classical;
mod sampling;

pub use bm::*;
pub use cauchy::*;
pub use classical::*;
pub use sampling::{EvalPlan, EvalPoint, DEFAULT_Q_POOL, DEFAULT_T_POOL};

use std::fmt;
use std::time::{Duration, Instant};

use num_traits::One;
use serde::Serialize;

use crate::arith::{Frac, Rational, Result, Symbol};
use crate::multipolylog::TVector;
use crate::ncalg::{first_difference, CommPoly, Key, NCPoly};
use crate::qcore::QValue;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Where two sides first disagree, or why they could not be built.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Witness {
    Mismatch {
        location: String,
        lhs: String,
        rhs: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        point: Option<String>,
    },
    Error {
        message: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        point: Option<String>,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let point = match self {
            Witness::Mismatch { point, .. } | Witness::Error { point, .. } => point,
        };
        match self {
            Witness::Mismatch { location, lhs, rhs, .. } => {
                write!(f, "at {location}: {lhs} != {rhs}")?
            }
            Witness::Error { message, .. } => write!(f, "error: {message}")?,
        }
        if let Some(p) = point {
            write!(f, " [{p}]")?;
        }
        Ok(())
    }
}

fn ordered_map<S: serde::Serializer>(
    v: &[(String, String)],
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    ser.collect_map(v.iter().map(|(k, v)| (k, v)))
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub identity: String,
    #[serde(serialize_with = "ordered_map")]
    pub params: Vec<(String, String)>,
    pub mode: &'static str,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// `lhs = rhs` for passing cases whose sides print short.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equation: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn param(&self, name: &str) -> Option<&str> {
        self.params.iter().find(|(k, _)| k == name).map(|(_, v)| v.as_str())
    }

    pub fn params_string(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Clone, Debug, Default)]
pub enum Mode {
    #[default]
    Exact,
    Eval(EvalPlan),
}

/// How to run a check: the mode, and optionally a seeded perturbation of the
/// right-hand side.
#[derive(Clone, Debug, Default)]
pub struct Check {
    pub mode: Mode,
    pub mutate: Option<u64>,
}

impl Check {
    pub fn exact() -> Self {
        Check::default()
    }

    pub fn eval(plan: EvalPlan) -> Self {
        Check {
            mode: Mode::Eval(plan),
            mutate: None,
        }
    }

    pub fn mutated(mut self, seed: u64) -> Self {
        self.mutate = Some(seed);
        self
    }
}

/// Values for `q`, `t_i` and `a` shared by both sides of a check.
#[derive(Clone, Debug)]
pub struct Env {
    pub q: QValue,
    t: Option<Vec<Rational>>,
    pub a: Frac,
}

impl Env {
    pub fn symbolic() -> Self {
        Env {
            q: QValue::Symbolic,
            t: None,
            a: Frac::var(Symbol::A),
        }
    }

    pub fn at(p: &EvalPoint) -> Self {
        Env {
            q: QValue::At(p.q.clone()),
            t: Some(p.t.clone()),
            a: Frac::constant(p.a.clone()),
        }
    }

    pub fn is_symbolic(&self) -> bool {
        self.t.is_none()
    }

    /// `(t_1, …, t_d)`.
    pub fn t(&self, d: usize) -> TVector {
        match &self.t {
            None => TVector::symbolic(d),
            Some(v) => {
                assert!(d <= v.len(), "evaluation point has too few t values");
                TVector::constants(&v[..d])
            }
        }
    }
}

/// Something that can stand on one side of an identity.
pub trait Side {
    /// First disagreement as `(location, lhs, rhs)`.
    fn mismatch(&self, rhs: &Self) -> Option<(String, String, String)>;
    /// Changes one coefficient, chosen by `seed`.
    fn perturb(&mut self, seed: u64);
    fn render(&self) -> String;
}

fn key_str((j, k): Key) -> String {
    format!("x^{j}*y^{k}")
}

fn bump(c: &Frac) -> Frac {
    c + &Frac::one()
}

impl Side for NCPoly {
    fn mismatch(&self, rhs: &Self) -> Option<(String, String, String)> {
        first_difference(self.terms(), rhs.terms())
            .map(|(k, a, b)| (key_str(k), a.to_string(), b.to_string()))
    }

    fn perturb(&mut self, seed: u64) {
        let keys: Vec<Key> = self.terms().map(|(k, _)| k).collect();
        let (key, c) = match keys.is_empty() {
            true => ((0, 0), Frac::zero()),
            false => {
                let k = keys[(seed % keys.len() as u64) as usize];
                (k, self.get(k.0, k.1).unwrap().clone())
            }
        };
        let delta = &bump(&c) - &c;
        *self = &*self + &NCPoly::monomial(key.0, key.1, delta, self.q());
    }

    fn render(&self) -> String {
        self.to_string()
    }
}

impl Side for CommPoly {
    fn mismatch(&self, rhs: &Self) -> Option<(String, String, String)> {
        first_difference(self.terms(), rhs.terms())
            .map(|(k, a, b)| (key_str(k), a.to_string(), b.to_string()))
    }

    fn perturb(&mut self, seed: u64) {
        let keys: Vec<Key> = self.terms().map(|(k, _)| k).collect();
        let key = match keys.is_empty() {
            true => (0, 0),
            false => keys[(seed % keys.len() as u64) as usize],
        };
        *self = &*self + &CommPoly::monomial(key.0, key.1, Frac::one());
    }

    fn render(&self) -> String {
        self.to_string()
    }
}

impl Side for Frac {
    fn mismatch(&self, rhs: &Self) -> Option<(String, String, String)> {
        (self != rhs).then(|| ("value".to_string(), self.to_string(), rhs.to_string()))
    }

    fn perturb(&mut self, _seed: u64) {
        *self = bump(self);
    }

    fn render(&self) -> String {
        self.to_string()
    }
}

/// Several comparisons made at once; the location names the first failing one.
impl<S: Side> Side for Vec<(String, S)> {
    fn mismatch(&self, rhs: &Self) -> Option<(String, String, String)> {
        assert_eq!(self.len(), rhs.len());
        self.iter().zip(rhs).find_map(|((label, a), (_, b))| {
            a.mismatch(b).map(|(loc, l, r)| (format!("{label}: {loc}"), l, r))
        })
    }

    fn perturb(&mut self, seed: u64) {
        let n = self.len() as u64;
        if n > 0 {
            self[(seed % n) as usize].1.perturb(seed / n);
        }
    }

    fn render(&self) -> String {
        self.iter()
            .map(|(l, s)| format!("{l}: {}", s.render()))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

const EQUATION_WIDTH: usize = 120;

/// Builds both sides under `check` and compares them.
pub fn run_check<S: Side>(
    identity: &str,
    params: Vec<(String, String)>,
    check: &Check,
    build: impl Fn(&Env) -> Result<(S, S)>,
) -> Verdict {
    let start = Instant::now();
    let attempt = |env: &Env, point: Option<String>| -> std::result::Result<String, Witness> {
        let (lhs, mut rhs) = build(env).map_err(|e| Witness::Error {
            message: e.to_string(),
            point: point.clone(),
        })?;
        if let Some(seed) = check.mutate {
            rhs.perturb(seed);
        }
        match lhs.mismatch(&rhs) {
            Some((location, l, r)) => Err(Witness::Mismatch {
                location,
                lhs: l,
                rhs: r,
                point,
            }),
            None => Ok(format!("{} = {}", lhs.render(), rhs.render())),
        }
    };
    let (mode, outcome) = match &check.mode {
        Mode::Exact => ("exact", attempt(&Env::symbolic(), None).map(Some)),
        Mode::Eval(plan) => (
            "eval",
            plan.points
                .iter()
                .try_for_each(|p| attempt(&Env::at(p), Some(p.to_string())).map(drop))
                .map(|_| None),
        ),
    };
    let mut params = params;
    if let Mode::Eval(plan) = &check.mode {
        params.push(("seed".into(), plan.seed.to_string()));
        params.push(("points".into(), plan.points.len().to_string()));
    }
    if let Some(seed) = check.mutate {
        params.push(("mutation".into(), seed.to_string()));
    }
    let (status, witness, equation) = match outcome {
        Ok(eq) => (
            Status::Pass,
            None,
            eq.filter(|e| e.chars().count() <= EQUATION_WIDTH),
        ),
        Err(w) => (Status::Fail, Some(w), None),
    };
    Verdict {
        identity: identity.to_string(),
        params,
        mode,
        status,
        witness,
        equation,
        elapsed: start.elapsed(),
    }
}

/// Shorthand for building a parameter list.
pub fn params<const N: usize>(items: [(&str, String); N]) -> Vec<(String, String)> {
    items.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

pub(crate) fn sign(e: u32) -> Rational {
    if e % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}
