//! Suite runner: sweeps parameter grids for each identity and collects the
//! verdicts into a [`Report`].

mod suites;

pub use suites::{cases, random_sequences, Case, Suite};

use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::Serialize;

use qmpl_core::arith::{rat, with_term_budget, Rational, DEFAULT_TERM_BUDGET};
use qmpl_core::identities::{Check, EvalPlan, Verdict, DEFAULT_Q_POOL, DEFAULT_T_POOL};
use qmpl_core::multipolylog::Index;

pub const TOOL: &str = "qmpl";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum UsageError {
    #[error("{0} must be positive")]
    NotPositive(&'static str),
    #[error("depth-max ({depth}) exceeds weight-max ({weight})")]
    DepthAboveWeight { depth: u32, weight: u32 },
    #[error("q value {0} is not allowed: |q| must not be 0 or 1")]
    BadQ(String),
    #[error("t value 0 is not allowed")]
    ZeroT,
    #[error("cannot parse '{0}' as a rational")]
    BadRational(String),
    #[error("{0} needs at least one value")]
    EmptyPool(&'static str),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RunMode {
    Exact,
    Eval,
}

impl FromStr for RunMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exact" => Ok(RunMode::Exact),
            "eval" => Ok(RunMode::Eval),
            _ => Err(format!("unknown mode '{s}' (expected exact or eval)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub n_max: u32,
    pub weight_max: u32,
    pub depth_max: u32,
    pub mode: RunMode,
    pub points: usize,
    pub seed: u64,
    pub term_budget: usize,
    pub jobs: usize,
    pub q_values: Vec<Rational>,
    pub t_values: Vec<Rational>,
    pub p_grid: Vec<Rational>,
    pub a_grid: Vec<Rational>,
    pub lambda_mu_grid: Vec<(Rational, Rational)>,
    /// Perturb every right-hand side with this seed.
    pub mutate: Option<u64>,
    /// Record elapsed times in the report.
    pub timings: bool,
}

fn pool(p: &[(i64, i64)]) -> Vec<Rational> {
    p.iter().map(|&(n, d)| rat(n, d)).collect()
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suite: Suite::All,
            n_max: 6,
            weight_max: 4,
            depth_max: 3,
            mode: RunMode::Exact,
            points: 20,
            seed: 42,
            term_budget: DEFAULT_TERM_BUDGET,
            jobs: std::thread::available_parallelism().map_or(1, |n| n.get()),
            q_values: pool(&DEFAULT_Q_POOL),
            t_values: pool(&DEFAULT_T_POOL),
            p_grid: vec![rat(1, 3), rat(2, 5), rat(1, 1)],
            a_grid: vec![rat(1, 2), rat(1, 1), rat(2, 1)],
            lambda_mu_grid: vec![
                (rat(1, 1), rat(1, 1)),
                (rat(2, 1), rat(-1, 1)),
                (rat(1, 2), rat(1, 3)),
            ],
            mutate: None,
            timings: false,
        }
    }
}

impl SuiteConfig {
    pub fn for_suite(suite: Suite) -> Self {
        SuiteConfig {
            suite,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<(), UsageError> {
        for (name, v) in [
            ("n-max", self.n_max as usize),
            ("weight-max", self.weight_max as usize),
            ("depth-max", self.depth_max as usize),
            ("points", self.points),
            ("term-budget", self.term_budget),
            ("jobs", self.jobs),
        ] {
            if v == 0 {
                return Err(UsageError::NotPositive(name));
            }
        }
        if self.depth_max > self.weight_max {
            return Err(UsageError::DepthAboveWeight {
                depth: self.depth_max,
                weight: self.weight_max,
            });
        }
        if self.q_values.is_empty() {
            return Err(UsageError::EmptyPool("q-values"));
        }
        if self.t_values.is_empty() {
            return Err(UsageError::EmptyPool("t-values"));
        }
        if let Some(q) = self.q_values.iter().find(|q| bad_q(q)) {
            return Err(UsageError::BadQ(q.to_string()));
        }
        if self.t_values.iter().any(|t| *t == rat(0, 1)) {
            return Err(UsageError::ZeroT);
        }
        Ok(())
    }

    fn check(&self, scalar_only: bool) -> Check {
        let base = match self.mode {
            RunMode::Eval if !scalar_only => Check::eval(EvalPlan::sample(
                self.seed,
                self.points,
                &self.q_values,
                &self.t_values,
                self.depth_max.max(1) as usize,
            )),
            _ => Check::exact(),
        };
        match self.mutate {
            Some(seed) => base.mutated(seed),
            None => base,
        }
    }
}

fn bad_q(q: &Rational) -> bool {
    let one = rat(1, 1);
    *q == rat(0, 1) || *q == one || *q == -one
}

fn parse_rational(s: &str) -> Result<Rational, UsageError> {
    let s = s.trim();
    Rational::from_str(s).map_err(|_| UsageError::BadRational(s.to_string()))
}

/// Parses a comma-separated list of rationals such as `2,1/2,-3/2`.
pub fn parse_csv(s: &str) -> Result<Vec<Rational>, UsageError> {
    s.split(',').filter(|x| !x.trim().is_empty()).map(parse_rational).collect()
}

/// Parses `--q-values`, rejecting `|q| ∈ {0, 1}`.
pub fn parse_q_values(s: &str) -> Result<Vec<Rational>, UsageError> {
    let v = parse_csv(s)?;
    match v.iter().find(|q| bad_q(q)) {
        Some(q) => Err(UsageError::BadQ(q.to_string())),
        None if v.is_empty() => Err(UsageError::EmptyPool("q-values")),
        None => Ok(v),
    }
}

/// Parses `--t-values`, rejecting 0.
pub fn parse_t_values(s: &str) -> Result<Vec<Rational>, UsageError> {
    let v = parse_csv(s)?;
    if v.iter().any(|t| *t == rat(0, 1)) {
        return Err(UsageError::ZeroT);
    }
    if v.is_empty() {
        return Err(UsageError::EmptyPool("t-values"));
    }
    Ok(v)
}

/// Compositions with weight at most `weight_max` and depth at most
/// `depth_max`, ordered by weight, then depth, then lexicographically.
pub fn enumerate_compositions(weight_max: u32, depth_max: u32) -> Vec<Index> {
    fn go(rem: u32, depth: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if depth == 0 {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for s in 1..=rem {
            cur.push(s);
            go(rem - s, depth - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for w in 1..=weight_max {
        for d in 1..=depth_max.min(w) {
            let mut parts = Vec::new();
            go(w, d, &mut Vec::new(), &mut parts);
            out.extend(parts.into_iter().map(|p| Index::new(p).expect("positive parts")));
        }
    }
    out
}

fn rat_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(|r| r.to_string()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigEcho {
    pub suite: String,
    pub n_max: u32,
    pub weight_max: u32,
    pub depth_max: u32,
    pub mode: RunMode,
    pub points: usize,
    pub seed: u64,
    pub term_budget: usize,
    pub q_values: Vec<String>,
    pub t_values: Vec<String>,
    pub p_grid: Vec<String>,
    pub a_grid: Vec<String>,
    pub lambda_mu_grid: Vec<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mutate: Option<u64>,
}

impl From<&SuiteConfig> for ConfigEcho {
    fn from(c: &SuiteConfig) -> Self {
        ConfigEcho {
            suite: c.suite.id().to_string(),
            n_max: c.n_max,
            weight_max: c.weight_max,
            depth_max: c.depth_max,
            mode: c.mode,
            points: c.points,
            seed: c.seed,
            term_budget: c.term_budget,
            q_values: rat_strings(&c.q_values),
            t_values: rat_strings(&c.t_values),
            p_grid: rat_strings(&c.p_grid),
            a_grid: rat_strings(&c.a_grid),
            lambda_mu_grid: c
                .lambda_mu_grid
                .iter()
                .map(|(l, m)| [l.to_string(), m.to_string()])
                .collect(),
            mutate: c.mutate,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Summary {
    pub cases: usize,
    pub passes: usize,
    pub fails: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: ConfigEcho,
    pub verdicts: Vec<Verdict>,
    pub summary: Summary,
    /// Milliseconds per case, in verdict order; only with `timings`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<Vec<u128>>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.summary.fails == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Plain-text rendering: one line per case, then the summary.
    pub fn table(&self) -> String {
        let mut out = String::new();
        let width = self.verdicts.iter().map(|v| v.identity.len()).max().unwrap_or(0);
        for v in &self.verdicts {
            let status = if v.passed() { "PASS" } else { "FAIL" };
            let _ = write!(out, "{status}  {:width$}  {}", v.identity, v.params_string());
            if let Some(w) = &v.witness {
                let _ = write!(out, "  {w}");
            } else if let Some(eq) = &v.equation {
                let _ = write!(out, "  {eq}");
            }
            out.push('\n');
        }
        let _ = write!(
            out,
            "{} {}: {} cases, {} passed, {} failed",
            self.tool, self.config.suite, self.summary.cases, self.summary.passes, self.summary.fails
        );
        if let Some(ms) = self.summary.elapsed_ms {
            let _ = write!(out, " in {ms} ms");
        }
        out.push('\n');
        out
    }
}

/// Runs every case of the configured suite and assembles the report.
pub fn run_suite(config: &SuiteConfig) -> Result<Report, UsageError> {
    config.validate()?;
    let start = Instant::now();
    let all = cases(config.suite, config);
    let checks = [config.check(false), config.check(true)];
    let results: Mutex<Vec<Option<Verdict>>> = Mutex::new(vec![None; all.len()]);
    let next = AtomicUsize::new(0);
    let workers = config.jobs.min(all.len()).max(1);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(case) = all.get(i) else { break };
                let check = &checks[case.scalar_only as usize];
                let v = with_term_budget(config.term_budget, || (case.run)(check));
                results.lock().unwrap()[i] = Some(v);
            });
        }
    });
    let verdicts: Vec<Verdict> = results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|v| v.expect("every case ran"))
        .collect();
    let passes = verdicts.iter().filter(|v| v.passed()).count();
    let elapsed: Duration = start.elapsed();
    Ok(Report {
        tool: TOOL,
        version: VERSION,
        config: config.into(),
        summary: Summary {
            cases: verdicts.len(),
            passes,
            fails: verdicts.len() - passes,
            elapsed_ms: config.timings.then(|| elapsed.as_millis()),
        },
        timings_ms: config
            .timings
            .then(|| verdicts.iter().map(|v| v.elapsed.as_millis()).collect()),
        verdicts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shown(v: &[Index]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn composition_examples() {
        assert_eq!(shown(&enumerate_compositions(2, 2)), ["(1)", "(2)", "(1,1)"]);
        assert_eq!(shown(&enumerate_compositions(3, 1)), ["(1)", "(2)", "(3)"]);
        assert_eq!(enumerate_compositions(4, 4).len(), 15);
        assert_eq!(enumerate_compositions(4, 3).len(), 14);
    }

    #[test]
    fn case_counts() {
        let mut c = SuiteConfig::for_suite(Suite::Bradley);
        c.n_max = 4;
        c.depth_max = 3;
        assert_eq!(cases(Suite::Bradley, &c).len(), 12);
        let d = SuiteConfig::default();
        assert_eq!(cases(Suite::MainTheorem, &d).len(), 14 * 6);
        assert_eq!(cases(Suite::Schutzenberger, &d).len(), 7);
        assert_eq!(cases(Suite::Gencev, &d).len(), 14 * 6 * 9);
    }

    #[test]
    fn config_validation() {
        assert_eq!(SuiteConfig::default().validate(), Ok(()));
        let mut c = SuiteConfig::default();
        c.depth_max = 5;
        assert!(matches!(c.validate(), Err(UsageError::DepthAboveWeight { .. })));
        let mut c = SuiteConfig::default();
        c.q_values = vec![rat(-1, 1)];
        assert!(matches!(c.validate(), Err(UsageError::BadQ(_))));
        let mut c = SuiteConfig::default();
        c.n_max = 0;
        assert_eq!(c.validate(), Err(UsageError::NotPositive("n-max")));
    }

    #[test]
    fn pools_parse() {
        assert_eq!(parse_q_values("2, 1/2,-3/2").unwrap(), vec![rat(2, 1), rat(1, 2), rat(-3, 2)]);
        assert!(matches!(parse_q_values("2,1"), Err(UsageError::BadQ(_))));
        assert!(matches!(parse_q_values("0"), Err(UsageError::BadQ(_))));
        assert!(matches!(parse_q_values("-1"), Err(UsageError::BadQ(_))));
        assert_eq!(parse_t_values("1/2,0"), Err(UsageError::ZeroT));
        assert!(matches!(parse_csv("x"), Err(UsageError::BadRational(_))));
        assert!(matches!(parse_csv("1/0"), Err(UsageError::BadRational(_))));
    }

    #[test]
    fn suite_ids_roundtrip() {
        for s in Suite::EACH.iter().chain([Suite::All].iter()) {
            assert_eq!(s.id().parse::<Suite>().unwrap(), *s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }
}
