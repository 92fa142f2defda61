use std::path::PathBuf;
use std::process::{Command, Output};

use qmpl_cli::{run_suite, Suite, SuiteConfig};

fn qmpl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmpl")).args(args).output().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qmpl-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn exit_codes() {
    assert_eq!(qmpl(&["verify", "--suite", "bradley", "--n-max", "3"]).status.code(), Some(0));
    assert_eq!(
        qmpl(&["verify", "--suite", "bradley", "--n-max", "3", "--mutate", "1"]).status.code(),
        Some(1)
    );
    for bad in [
        &["verify", "--suite", "nope"][..],
        &["verify", "--suite", "bradley", "--depth-max", "5"],
        &["verify", "--suite", "bradley", "--q-values", "2,-1"],
        &["verify", "--suite", "bradley", "--q-values", "0"],
        &["verify", "--suite", "bradley", "--t-values", "0"],
        &["verify", "--suite", "bradley", "--mode", "fast"],
        &["verify", "--suite", "bradley", "--n-max", "0"],
        &["frobnicate"],
    ] {
        assert_eq!(qmpl(bad).status.code(), Some(2), "{bad:?}");
    }
}

#[test]
fn list_suites_names_every_suite() {
    let out = qmpl(&["list-suites"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for s in Suite::EACH {
        assert!(text.lines().any(|l| l.starts_with(s.id())), "{s} missing");
    }
}

#[test]
fn reports_are_reproducible() {
    let run = |name: &str, jobs: &str| {
        let path = scratch(name);
        let out = qmpl(&[
            "verify", "--suite", "main-theorem", "--n-max", "3", "--mode", "eval", "--points", "4",
            "--seed", "5", "--jobs", jobs, "--out", path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        (std::fs::read(path).unwrap(), out.stdout)
    };
    let (a, ta) = run("a.json", "1");
    let (b, tb) = run("b.json", "2");
    assert_eq!(a, b);
    assert_eq!(ta, tb);
}

#[test]
fn report_document_shape() {
    let path = scratch("shape.json");
    let out = qmpl(&[
        "verify", "--suite", "main-theorem", "--n-max", "1", "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap();
    assert_eq!(doc["tool"], "qmpl");
    assert_eq!(doc["config"]["p_grid"], serde_json::json!(["1/3", "2/5", "1"]));
    let verdicts = doc["verdicts"].as_array().unwrap();
    assert_eq!(verdicts.len(), 14);
    assert_eq!(doc["summary"]["cases"], 14);
    assert_eq!(doc["summary"]["fails"], 0);
    assert!(doc.get("timings_ms").is_none());
    for v in verdicts {
        assert_eq!(v["status"], "pass");
        let s = v["params"]["s"].as_str().unwrap();
        let d = s.matches(',').count() + 1;
        assert_eq!(v["equation"], format!("(t{d})*x = (t{d})*x"));
    }
}

#[test]
fn summary_matches_verdicts() {
    let mut c = SuiteConfig::for_suite(Suite::Lemma41);
    c.n_max = 3;
    c.mutate = Some(4);
    let r = run_suite(&c).unwrap();
    assert_eq!(r.summary.cases, r.verdicts.len());
    assert_eq!(r.summary.fails, r.verdicts.iter().filter(|v| !v.passed()).count());
    assert_eq!(r.summary.passes + r.summary.fails, r.summary.cases);
    assert_eq!(r.exit_code(), 1);
}

#[test]
fn exhausted_budget_is_a_verdict() {
    let mut c = SuiteConfig::for_suite(Suite::MainTheorem);
    c.n_max = 4;
    c.term_budget = 5;
    let r = run_suite(&c).unwrap();
    assert!(r.summary.fails > 0);
    assert!(r.table().contains("error:"));
}
