use super::*;
use crate::numgeom::DEFAULT_SEED;
use crate::report::Status;
use crate::scalar::Field;

fn small(suite: &str) -> SuiteConfig {
    let mut cfg = SuiteConfig::new(suite);
    cfg.num.interval = 33;
    cfg.num.trials = 50;
    cfg
}

fn config_error(cfg: &SuiteConfig) -> String {
    match cfg.context() {
        Err(Error::Config(m)) => m,
        other => panic!("expected a config error, got {:?}", other.map(|_| ())),
    }
}

#[test]
fn catalog_names_are_unique_and_planned() {
    let names = suite_names();
    let mut sorted = names.clone();
    sorted.sort_unstable();
    sorted.dedup();
    assert_eq!(sorted.len(), SUITES.len() + 1);
    let ctx = SuiteConfig::new(ALL).context().unwrap();
    assert_eq!(plan(ALL, &ctx).len(), SUITES.iter().map(|s| plan(s.name, &ctx).len()).sum::<usize>());
    for name in names.into_iter().filter(|n| *n != ALL) {
        let checks = plan(name, &ctx);
        assert!(!checks.is_empty(), "{name}");
        assert!(checks.iter().all(|c| c.id.starts_with(&format!("{name}/"))), "{name}");
        assert!(checks.iter().filter(|c| c.id.contains("/mutant/")).count() >= 3, "{name}");
    }
    assert!(suite_info("parity-probe").unwrap().numeric);
    assert!(!suite_info("prolong").unwrap().numeric);
}

#[test]
fn config_errors_are_reported() {
    assert!(config_error(&SuiteConfig::new("hopf-axiom")).contains("did you mean hopf-axioms?"));
    assert!(!config_error(&SuiteConfig::new("zzzzzzzz")).contains("did you mean"));
    let mut cfg = SuiteConfig::new("prolong");
    cfg.q = Some("1/0".into());
    assert!(config_error(&cfg).contains("--q"));
    cfg.q = Some("0".into());
    assert!(config_error(&cfg).contains("nonzero"));
    let mut cfg = SuiteConfig::new("prolong");
    cfg.jobs = Some(0);
    assert!(config_error(&cfg).contains("--jobs"));
    let mut cfg = SuiteConfig::new("prolong");
    cfg.degree = Some(0);
    assert!(config_error(&cfg).contains("--degree"));
    let mut cfg = SuiteConfig::new("hopf-axioms");
    cfg.algebra = Some("su_q3".into());
    assert!(config_error(&cfg).contains("su_q2"));
    let mut cfg = SuiteConfig::new("covering");
    cfg.covering = Some("/nonexistent/covering.json".into());
    assert!(config_error(&cfg).contains("covering"));
    let mut cfg = SuiteConfig::new("mattprop");
    cfg.num.trials = 0;
    assert!(config_error(&cfg).contains("--trials"));
}

#[test]
fn q_accepts_gaussian_expressions() {
    let mut cfg = SuiteConfig::new("frame-obstruction");
    cfg.q = Some("(1 + I)*1/2".into());
    let ctx = cfg.context().unwrap();
    assert_eq!(ctx.q().unwrap().to_expr(), "(1/2 + 1/2*I)");
    cfg.q = Some("(1 + I)/2".into());
    assert!(config_error(&cfg).contains("trailing input"));
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let strip = |r: SuiteReport| r.records.into_iter().map(|r| Record { runtime_ms: 0, ..r }).collect::<Vec<_>>();
    let mut one = small("mattprop");
    one.jobs = Some(1);
    let mut four = one.clone();
    four.jobs = Some(4);
    let a = strip(run(&one).unwrap());
    let b = strip(run(&four).unwrap());
    assert_eq!(a, b);
    let c = strip(run(&one).unwrap());
    assert_eq!(a, c);
}

#[test]
fn seeds_follow_the_check_id() {
    let r = run(&small("peter-weyl")).unwrap();
    for rec in &r.records {
        assert_eq!(rec.seed, derive_seed(DEFAULT_SEED, &rec.check));
    }
    let mut other = small("peter-weyl");
    other.num.seed = 7;
    let r2 = run(&other).unwrap();
    assert_ne!(r.records[0].seed, r2.records[0].seed);
}

#[test]
fn frame_obstruction_fails_at_q_two() {
    let mut cfg = SuiteConfig::new("frame-obstruction");
    cfg.q = Some("2".into());
    let r = run(&cfg).unwrap();
    let v = r.record("frame-obstruction/verdict").unwrap();
    assert_eq!(v.status, Status::Fail);
    assert_eq!(v.witness.as_deref(), Some("7*μ*x"));
    assert_eq!(r.exit_code(), 1);
    assert!(r.records.iter().filter(|r| r.check.contains("/mutant/")).all(|r| r.pass));
}

#[test]
fn frame_obstruction_is_conditional_when_formal() {
    let r = run(&SuiteConfig::new("frame-obstruction")).unwrap();
    assert!(r.pass, "{}", r.to_markdown());
    assert!(r.record("frame-obstruction/verdict").unwrap().witness.as_deref().unwrap().contains("Q^3 - 1"));
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn parity_probe_at_a_hundred_trials() {
    let mut cfg = SuiteConfig::new("parity-probe");
    cfg.num.trials = 100;
    let r = run(&cfg).unwrap();
    assert!(r.pass, "{}", r.to_markdown());
    assert!(r.record("parity-probe/equivariant").unwrap().witness.as_deref().unwrap().starts_with("100/100 odd"));
}

#[test]
fn hopf_axioms_on_a_chosen_algebra() {
    let mut cfg = SuiteConfig::new("hopf-axioms");
    cfg.algebra = Some("su_q2".into());
    let r = run(&cfg).unwrap();
    assert!(r.pass, "{}", r.to_markdown());
    assert!(r.record("hopf-axioms/su_q2").is_some());
    assert!(r.record("hopf-axioms/c_z2").is_none());
}

#[test]
fn outcomes_classify_mutants() {
    assert!(Outcome::mutant(Ok(Some("caught".into()))).status == Status::Pass);
    assert!(Outcome::mutant(Ok(None)).status == Status::Fail);
    assert!(Outcome::mutant(Err(Error::NotInvertible("x".into()))).status == Status::Pass);
    let harness = Outcome::mutant(Err(Error::Config("bad".into())));
    assert_eq!(harness.status, Status::Fail);
    assert!(harness.witness.unwrap().contains("harness"));
}

#[test]
fn exit_codes_and_formats() {
    let rec = |status| Record {
        check: "x".into(),
        anchor: "a".into(),
        params: Value::Null,
        status,
        pass: status == Status::Pass,
        max_residual: Some(1e-13),
        witness: Some("a|b".into()),
        seed: 1,
        runtime_ms: 0,
    };
    let mut r = SuiteReport { suite: "s".into(), params: Value::Null, pass: true, records: vec![rec(Status::Pass)], runtime_ms: 0 };
    assert_eq!(r.exit_code(), 0);
    r.records.push(rec(Status::Undecided));
    assert_eq!(r.exit_code(), 3);
    r.records.push(rec(Status::Fail));
    assert_eq!(r.exit_code(), 1);
    assert_eq!(r.failures().count(), 1);
    let back: SuiteReport = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(back, r);
    assert!(r.to_markdown().contains("a\\|b"));
    let v: Value = serde_json::from_str(&r.to_json()).unwrap();
    for key in ["check", "params", "max_residual", "pass", "seed", "runtime_ms"] {
        assert!(v["records"][0].get(key).is_some(), "{key}");
    }
}
