//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero when a criterion that should hold does not.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use comodcheck::builtin::{self, FrameVerdict};
use comodcheck::comodule::StrongConnection;
use comodcheck::numgeom::{
    circle_map_checks, equivariant_parity_probe, surjectivity_conditions, peter_weyl_checks, round_trip_check, splitting_checks, LoopKind,
    NumConfig, NumReport, DEFAULT_CIRCLE,
};
use comodcheck::pullback::{prolong, sphere_trivialisation, Verdict};
use comodcheck::suite::{self, SuiteConfig, SUITES};
use comodcheck::{Field, Result, QI};

const TRIALS: usize = 1000;
const PW_POINTS: usize = 10_000;
const PROBE_TRIALS: usize = 100;

struct Outcome {
    pass: bool,
    detail: String,
}

fn ok(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { pass, detail: detail.into() })
}

fn within(r: &NumReport, tol: f64, names: &[&str]) -> (bool, String) {
    let mut pass = true;
    let mut parts = Vec::new();
    for name in names {
        match r.measure(name) {
            Some(m) => {
                pass &= m.max_residual < tol;
                parts.push(format!("{name}: {:.1e}", m.max_residual));
            }
            None => {
                pass = false;
                parts.push(format!("{name}: missing"));
            }
        }
    }
    (pass, parts.join(", "))
}

fn all_within(r: &NumReport, tol: f64) -> (bool, String) {
    let names: Vec<&str> = r.measures.iter().map(|m| m.identity.as_str()).collect();
    within(r, tol, &names)
}

fn axioms_at_degree_four() -> Result<Outcome> {
    let start = Instant::now();
    let mut failed = Vec::new();
    let mut checked = 0;
    for name in ["hopf-axioms", "comodule-axioms"] {
        let mut cfg = SuiteConfig::new(name);
        cfg.degree = Some(4);
        let r = suite::run(&cfg)?;
        for rec in r.records.iter().filter(|r| !r.check.contains("/mutant/")) {
            checked += 1;
            if !rec.pass {
                failed.push(rec.check.clone());
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ok(failed.is_empty() && secs < 120.0, format!("{checked} builtin checks, failing {failed:?}, {secs:.1} s"))
}

fn strong_connections() -> Result<Outcome> {
    let mut parts = Vec::new();
    let mut pass = true;
    for sm in [builtin::toeplitz_z2_smash(None)?, builtin::toeplitz_u1_smash(None)?] {
        let ell = StrongConnection::from_cleaving(&sm.cleaving()?, sm.hopf(), 4)?;
        let rep = ell.verify(sm.comodule());
        pass &= rep.ok();
        parts.push(format!("{}: {} checks, {} failures", sm.comodule().name(), rep.checked, rep.failures.len()));
    }
    ok(pass, parts.join("; "))
}

fn prolonged_sphere_reduces() -> Result<Outcome> {
    let (_, pi) = builtin::u1_to_z2()?;
    let pro = prolong(&sphere_trivialisation()?, &pi, &builtin::o_u1(None)?, 2)?;
    let g = pro.triv.hopf().algebra().parse("u*u - 1")?;
    let n = pro.triv.covering.len();
    let mut nonzero = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !pro.triv.transition(i, j, &g)?.is_zero() {
                nonzero.push((i, j));
            }
        }
    }
    let red = pro.triv.reducibility_check(&[g], 2)?;
    let reducible = red.verdict == Verdict::Reducible && red.reduced.is_some();
    ok(reducible && nonzero.is_empty(), format!("verdict {:?}, nonzero T_ij(u²-1) at {nonzero:?}", red.verdict))
}

fn frame_obstruction() -> Result<Outcome> {
    let start = Instant::now();
    let formal = builtin::frame_bundle_obstruction(None)?;
    let factor = formal.factor.to_string();
    let cube_roots = formal.cube_root_remainder.iter().all(num_traits::Zero::is_zero);
    let one = builtin::frame_bundle_obstruction(Some(&QI::from_i64(1)))?.verdict;
    let two = builtin::frame_bundle_obstruction(Some(&QI::from_i64(2)))?.verdict;
    let secs = start.elapsed().as_secs_f64();
    let pass = factor == "Q^3 - 1"
        && cube_roots
        && formal.report.ok()
        && one == FrameVerdict::Consistent
        && two == FrameVerdict::Obstructed("7*μ*x".into())
        && secs < 10.0;
    ok(pass, format!("factor {factor}, cube roots consistent {cube_roots}, q=1 {one:?}, q=2 {two:?}, {secs:.2} s"))
}

fn numeric_pullback() -> Result<Outcome> {
    let start = Instant::now();
    let cfg = NumConfig::default();
    let (c_ok, c_detail) = all_within(&circle_map_checks(DEFAULT_CIRCLE), 1e-12);
    let split = splitting_checks(&cfg, &mut cfg.rng("acceptance/splittings"), TRIALS)?;
    let (s_ok, s_detail) = all_within(&split, 1e-9);
    let surj = surjectivity_conditions(&cfg, &mut cfg.rng("acceptance/mattprop"), TRIALS)?;
    let (m_ok, m_detail) = within(&surj, 1e-9, &["kernel images agree", "cocycle of partial inverses"]);
    let secs = start.elapsed().as_secs_f64();
    ok(c_ok && s_ok && m_ok && secs < 60.0, format!("{c_detail}; {s_detail}; {m_detail}; {secs:.1} s"))
}

fn decomposition_round_trips() -> Result<Outcome> {
    let cfg = NumConfig::default();
    let r = round_trip_check(&cfg, &mut cfg.rng("acceptance/round-trips"), TRIALS);
    let (pass, detail) = within(&r, 1e-9, &["π_n± ∘ (π_n±)⁻¹ = id", "(π_n±)⁻¹ ∘ π_n± = id"]);
    ok(pass, format!("{TRIALS} elements; {detail}"))
}

/// The all-even control cannot show odd windings: `det L(-z) = det L(z)`
/// makes `det L` a function of `z²`, whose winding is even. The line reports
/// that honestly; the returned flag checks what does hold.
fn parity_probe() -> Result<(Outcome, bool)> {
    let start = Instant::now();
    let cfg = NumConfig::default();
    let eq = equivariant_parity_probe(&mut cfg.rng("acceptance/equivariant"), 2, PROBE_TRIALS, LoopKind::Equivariant, DEFAULT_CIRCLE);
    let even = equivariant_parity_probe(&mut cfg.rng("acceptance/all-even"), 2, PROBE_TRIALS, LoopKind::AllEven, DEFAULT_CIRCLE);
    let free = equivariant_parity_probe(&mut cfg.rng("acceptance/even-first-row"), 2, PROBE_TRIALS, LoopKind::EvenFirstRow, DEFAULT_CIRCLE);
    let secs = start.elapsed().as_secs_f64();
    let pass = eq.all_odd() && eq.odd == PROBE_TRIALS && even.both_parities() && secs < 30.0;
    let facts = eq.all_odd() && eq.odd == PROBE_TRIALS && even.odd == 0 && free.both_parities() && secs < 30.0;
    let detail = format!(
        "equivariant {}/{} odd; all-even control {} odd / {} even (det(-z) = det(z) forces even winding, so both parities cannot occur); \
         even-first-row control {} odd / {} even; {secs:.2} s",
        eq.odd, eq.trials, even.odd, even.even, free.odd, free.even
    );
    Ok((Outcome { pass, detail }, facts))
}

fn peter_weyl() -> Result<Outcome> {
    let cfg = NumConfig::default();
    let r = peter_weyl_checks(&mut cfg.rng("acceptance/peter-weyl"), PW_POINTS);
    let (pass, detail) = within(&r, 1e-9, &["(1 - ω²|a|²)(1 - ω²|c|²) = 0", "cleaving multiplicativity", "Γ(L_n) equivariance"]);
    ok(pass, format!("{PW_POINTS} points, n in -2..=2; {detail}"))
}

fn negative_controls() -> Result<Outcome> {
    let r = suite::run(&SuiteConfig::new(suite::ALL))?;
    let mut per_suite: BTreeMap<&str, (usize, Vec<String>)> = SUITES.iter().map(|s| (s.name, (0, Vec::new()))).collect();
    for rec in r.records.iter().filter(|r| r.check.contains("/mutant/")) {
        let name = rec.check.split('/').next().unwrap_or_default();
        if let Some(e) = per_suite.get_mut(name) {
            e.0 += 1;
            if !rec.pass {
                e.1.push(rec.check.clone());
            }
        }
    }
    let thin: Vec<&str> = per_suite.iter().filter(|(_, (n, _))| *n < 3).map(|(s, _)| *s).collect();
    let missed: Vec<String> = per_suite.values().flat_map(|(_, m)| m.clone()).collect();
    let total: usize = per_suite.values().map(|(n, _)| n).sum();
    ok(
        thin.is_empty() && missed.is_empty(),
        format!("{total} mutants over {} suites, suites with fewer than 3 {thin:?}, undetected {missed:?}", per_suite.len()),
    )
}

fn main() -> ExitCode {
    let mut healthy = true;
    let mut line = |n: usize, title: &str, v: Result<Outcome>, expected: bool| {
        let (pass, detail) = match v {
            Ok(v) => (v.pass, v.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        println!("criterion {n} [{}] {title}: {detail}", if pass { "PASS" } else { "FAIL" });
        if expected && !pass {
            healthy = false;
        }
    };
    line(1, "Hopf and comodule axioms at degree 4", axioms_at_degree_four(), true);
    line(2, "strong connections on the smash products at degree 4", strong_connections(), true);
    line(3, "prolonged sphere reduces along u²-1", prolonged_sphere_reduces(), true);
    line(4, "frame bundle obstruction", frame_obstruction(), true);
    line(5, "numeric pullback identities", numeric_pullback(), true);
    line(6, "Z2 decomposition round trips", decomposition_round_trips(), true);
    let (parity, facts) = match parity_probe() {
        Ok((v, f)) => (Ok(v), f),
        Err(e) => (Err(e), false),
    };
    line(7, "winding parity probe", parity, false);
    line(8, "Peter-Weyl identities", peter_weyl(), true);
    line(9, "negative controls", negative_controls(), true);
    if !facts {
        println!("criterion 7: the equivariant probe or its controls deviate from the expected parities");
        healthy = false;
    }
    if healthy {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
