//! Named verification suites. Each suite expands to a list of checks; every
//! check draws from its own generator seeded by the master seed and the
//! check id, so reports are reproducible for any `--jobs`.

mod numeric;
mod symbolic;

#[cfg(test)]
mod tests;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ncpoly::parse_expr;
use crate::numgeom::{derive_seed, NumConfig, NumReport};
use crate::pullback::PresentationRef;
use crate::report::{CheckReport, Status};
use crate::scalar::{Tower, QI};

/// A registered suite and the topic its checks cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteInfo {
    pub name: &'static str,
    pub topic: &'static str,
    pub numeric: bool,
}

pub const SUITES: [SuiteInfo; 15] = [
    SuiteInfo { name: "hopf-axioms", topic: "Hopf algebra axioms of the builtin Hopf algebras and their surjections", numeric: false },
    SuiteInfo { name: "comodule-axioms", topic: "coaction axioms, cleavings and confluence of the builtin comodule algebras", numeric: false },
    SuiteInfo { name: "strong-connection", topic: "strong connections built from cleavings of smash products", numeric: false },
    SuiteInfo { name: "smash", topic: "module-algebra actions, smash products and graded bases", numeric: false },
    SuiteInfo { name: "covering", topic: "distributive coverings by ideals and their multipullbacks", numeric: false },
    SuiteInfo { name: "transition", topic: "transition functions and gluing of piecewise trivial comodule algebras", numeric: false },
    SuiteInfo { name: "reduction-theorem", topic: "reduction of structure Hopf algebras along Hopf ideals", numeric: false },
    SuiteInfo { name: "prolong", topic: "prolongation of trivialised comodule algebras along Hopf surjections", numeric: false },
    SuiteInfo { name: "quantum-rp2", topic: "circle maps, colinear splittings and the Toeplitz quantum projective plane", numeric: true },
    SuiteInfo { name: "sphere-gluing", topic: "gauged gluing maps and the face atlas of the Toeplitz quantum sphere", numeric: true },
    SuiteInfo { name: "mattprop", topic: "surjectivity conditions for the sphere pullback", numeric: true },
    SuiteInfo { name: "disc-decomposition", topic: "Z2-parity decomposition of the sphere into discs", numeric: true },
    SuiteInfo { name: "parity-probe", topic: "determinant winding parity of equivariant matrix loops", numeric: true },
    SuiteInfo { name: "peter-weyl", topic: "three-sphere cleavings and sections of the Hopf line bundles", numeric: true },
    SuiteInfo { name: "frame-obstruction", topic: "reduction of the quantum-plane frame bundle from GL_q(2) to SL_q(2)", numeric: false },
];

pub const ALL: &str = "all";

/// Suite names accepted by `--suite`, including `all`.
pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.name).chain([ALL]).collect()
}

pub fn suite_info(name: &str) -> Option<&'static SuiteInfo> {
    SUITES.iter().find(|s| s.name == name)
}

/// Everything `verify` takes from the command line.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suite: String,
    pub algebra: Option<String>,
    pub covering: Option<PathBuf>,
    pub degree: Option<usize>,
    pub q: Option<String>,
    pub num: NumConfig,
    pub jobs: Option<usize>,
}

impl SuiteConfig {
    pub fn new(suite: &str) -> Self {
        SuiteConfig { suite: suite.into(), algebra: None, covering: None, degree: None, q: None, num: NumConfig::default(), jobs: None }
    }

    /// Validate the configuration and load the referenced inputs.
    pub fn context(&self) -> Result<Ctx> {
        let names = suite_names();
        if !names.contains(&self.suite.as_str()) {
            let near = crate::nearest(&self.suite, &names).map(|n| format!("; did you mean {n}?")).unwrap_or_default();
            return Err(Error::Config(format!("unknown suite {:?}{near}", self.suite)));
        }
        self.num.validate()?;
        if self.num.trials == 0 {
            return Err(Error::Config("--trials must be positive".into()));
        }
        if self.jobs == Some(0) {
            return Err(Error::Config("--jobs must be positive".into()));
        }
        if let Some(d) = self.degree {
            if !(1..=8).contains(&d) {
                return Err(Error::Config(format!("--degree {d} is outside 1..=8")));
            }
        }
        let q = match &self.q {
            None => None,
            Some(s) => {
                let v = parse_expr(s)
                    .and_then(|e| e.eval_scalar::<QI>(Tower::Gaussian, None))
                    .map_err(|e| Error::Config(format!("--q {s:?} is not a Q(i) scalar: {e}")))?;
                if num_traits::Zero::is_zero(&v) {
                    return Err(Error::Config("--q must be nonzero".into()));
                }
                Some(v)
            }
        };
        let algebra = match &self.algebra {
            None => None,
            Some(name) => {
                let r = PresentationRef::Name(name.clone());
                r.resolve().map_err(|e| match e {
                    Error::UnknownName(m) => Error::Config(format!("unknown algebra {m}")),
                    Error::Config(m) => Error::Config(m),
                    e => Error::Config(format!("algebra {name}: {e}")),
                })?;
                Some(name.clone())
            }
        };
        let covering = match &self.covering {
            None => None,
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("covering {}: {e}", path.display())))?;
                Some((path.display().to_string(), text))
            }
        };
        Ok(Ctx { degree: self.degree, q, algebra, covering, num: self.num.clone() })
    }

    fn params(&self) -> Value {
        json!({
            "suite": self.suite,
            "algebra": self.algebra,
            "covering": self.covering.as_ref().map(|p| p.display().to_string()),
            "degree": self.degree,
            "q": self.q,
            "grid_circle": self.num.circle,
            "grid_interval": self.num.interval,
            "tol": self.num.tol,
            "trunc": self.num.trunc,
            "seed": self.num.seed,
            "trials": self.num.trials,
        })
    }
}

/// Validated inputs shared by the checks of one run.
#[derive(Clone, Debug)]
pub struct Ctx {
    pub degree: Option<usize>,
    pub q: Option<QI>,
    pub algebra: Option<String>,
    /// Label and text of a covering file.
    pub covering: Option<(String, String)>,
    pub num: NumConfig,
}

impl Ctx {
    pub fn degree_or(&self, d: usize) -> usize {
        self.degree.unwrap_or(d)
    }

    pub fn q(&self) -> Option<&QI> {
        self.q.as_ref()
    }
}

/// Result of running one check.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub status: Status,
    pub max_residual: Option<f64>,
    pub witness: Option<String>,
}

const WITNESS_LEN: usize = 400;

fn clip(s: String) -> String {
    if s.chars().count() <= WITNESS_LEN {
        s
    } else {
        s.chars().take(WITNESS_LEN).chain("…".chars()).collect()
    }
}

impl Outcome {
    pub fn pass() -> Self {
        Outcome { status: Status::Pass, max_residual: None, witness: None }
    }

    pub fn fail(witness: impl Into<String>) -> Self {
        Outcome { status: Status::Fail, max_residual: None, witness: Some(clip(witness.into())) }
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(clip(w.into()));
        self
    }

    pub fn from_report(r: &CheckReport) -> Self {
        let witness = r.failures.first().or(r.undecided.first()).map(|f| clip(format!("{} at {}: {}", f.check, f.at, f.detail)));
        Outcome { status: r.status(), max_residual: None, witness }
    }

    /// Pass iff every measure is within `tol`; the witness names the worst
    /// measure and where it peaked.
    pub fn from_num(r: &NumReport, tol: f64) -> Self {
        let status = if r.passes(tol) { Status::Pass } else { Status::Fail };
        let witness = r.worst().filter(|_| status == Status::Fail).map(|m| clip(format!("{} = {:.3e} at {}", m.identity, m.max_residual, m.at)));
        Outcome { status, max_residual: Some(r.max_residual()), witness }
    }

    /// A negative control passes when the corruption is caught with a
    /// localized witness, either by a failed check or by a structural error
    /// at construction.
    pub fn mutant(caught: Result<Option<String>>) -> Self {
        match caught {
            Ok(Some(w)) if !w.is_empty() => Outcome::pass().with_witness(w),
            Ok(_) => Outcome::fail("mutant not detected"),
            Err(e) if localized(&e) => Outcome::pass().with_witness(e.to_string()),
            Err(e) => Outcome::fail(format!("mutant harness error: {e}")),
        }
    }
}

/// Errors that reject a corrupted structure at a named place.
fn localized(e: &Error) -> bool {
    matches!(
        e,
        Error::NotHopfIdeal { .. }
            | Error::NotInvertible(_)
            | Error::NotModuleAlgebra { .. }
            | Error::PropertyFail { .. }
            | Error::PreconditionFail(_)
            | Error::NotSurjective(_)
            | Error::Incompatible { .. }
            | Error::Inconsistent(_)
            | Error::Density { .. }
            | Error::Singular { .. }
    )
}

/// The first failure of a report, as a witness for a mutant.
pub fn caught(r: &CheckReport) -> Option<String> {
    r.failures.first().map(|f| format!("{} at {}: {}", f.check, f.at, f.detail))
}

/// The worst failing measure of a numerical report, as a mutant witness.
pub fn caught_num(r: &NumReport, tol: f64) -> Option<String> {
    r.measures
        .iter()
        .filter(|m| !m.passes(tol))
        .max_by(|a, b| a.max_residual.total_cmp(&b.max_residual))
        .map(|m| format!("{} = {:.3e} at {}", m.identity, m.max_residual, m.at))
}

type Run = Box<dyn Fn(&Ctx, &mut ChaCha8Rng) -> Result<Outcome> + Send + Sync>;

/// One check of a suite.
pub struct Check {
    pub id: String,
    pub anchor: &'static str,
    pub params: Value,
    run: Run,
}

impl Check {
    pub fn new(
        id: impl Into<String>,
        anchor: &'static str,
        params: Value,
        run: impl Fn(&Ctx, &mut ChaCha8Rng) -> Result<Outcome> + Send + Sync + 'static,
    ) -> Self {
        Check { id: id.into(), anchor, params, run: Box::new(run) }
    }

    fn execute(&self, ctx: &Ctx) -> Record {
        let seed = derive_seed(ctx.num.seed, &self.id);
        let mut rng = ctx.num.rng(&self.id);
        let start = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(|| (self.run)(ctx, &mut rng)));
        let runtime_ms = start.elapsed().as_millis() as u64;
        let out = match out {
            Ok(Ok(o)) => o,
            Ok(Err(e)) => Outcome::fail(e.to_string()),
            Err(p) => {
                let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
                Outcome::fail(format!("panic: {}", msg.unwrap_or_default()))
            }
        };
        Record {
            check: self.id.clone(),
            anchor: self.anchor.into(),
            params: self.params.clone(),
            status: out.status,
            pass: out.status == Status::Pass,
            max_residual: out.max_residual,
            witness: out.witness,
            seed,
            runtime_ms,
        }
    }
}

/// One line of a suite report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub check: String,
    pub anchor: String,
    pub params: Value,
    pub status: Status,
    pub pass: bool,
    pub max_residual: Option<f64>,
    pub witness: Option<String>,
    pub seed: u64,
    pub runtime_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub params: Value,
    pub pass: bool,
    pub records: Vec<Record>,
    pub runtime_ms: u64,
}

impl SuiteReport {
    pub fn record(&self, id: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.check == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    /// 0 when every check passes, 1 on any failure, 3 when the only
    /// non-passing checks are undecided.
    pub fn exit_code(&self) -> i32 {
        if self.records.iter().any(|r| r.status == Status::Fail) {
            1
        } else if self.records.iter().any(|r| r.status == Status::Undecided) {
            3
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("# Suite `{}`\n\n", self.suite);
        let passed = self.records.iter().filter(|r| r.pass).count();
        s.push_str(&format!("{passed}/{} checks pass, {} ms\n\n", self.records.len(), self.runtime_ms));
        s.push_str("| check | status | max residual | seed | ms | witness |\n|---|---|---|---|---|---|\n");
        for r in &self.records {
            let res = r.max_residual.map(|x| format!("{x:.3e}")).unwrap_or_else(|| "-".into());
            let w = r.witness.as_deref().unwrap_or("").replace('|', "\\|").replace('\n', " ");
            let status = serde_json::to_value(r.status).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
            s.push_str(&format!("| {} | {status} | {res} | {} | {} | {w} |\n", r.check, r.seed, r.runtime_ms));
        }
        s
    }
}

/// Checks of one suite, in catalog order.
pub fn plan(suite: &str, ctx: &Ctx) -> Vec<Check> {
    if suite == ALL {
        return SUITES.iter().flat_map(|s| plan(s.name, ctx)).collect();
    }
    match suite {
        "hopf-axioms" => symbolic::hopf_axioms(ctx),
        "comodule-axioms" => symbolic::comodule_axioms(ctx),
        "strong-connection" => symbolic::strong_connection(ctx),
        "smash" => symbolic::smash(ctx),
        "covering" => symbolic::covering(ctx),
        "transition" => symbolic::transition(ctx),
        "reduction-theorem" => symbolic::reduction_theorem(ctx),
        "prolong" => symbolic::prolong(ctx),
        "frame-obstruction" => symbolic::frame_obstruction(ctx),
        "quantum-rp2" => numeric::quantum_rp2(ctx),
        "sphere-gluing" => numeric::sphere_gluing(ctx),
        "mattprop" => numeric::mattprop(ctx),
        "disc-decomposition" => numeric::disc_decomposition(ctx),
        "parity-probe" => numeric::parity_probe(ctx),
        "peter-weyl" => numeric::peter_weyl(ctx),
        _ => Vec::new(),
    }
}

/// Run a suite. Checks run in parallel on `jobs` threads; records come back
/// in plan order.
pub fn run(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let ctx = Arc::new(cfg.context()?);
    let checks = plan(&cfg.suite, &ctx);
    let start = Instant::now();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cfg.jobs {
        builder = builder.num_threads(j);
    }
    let pool = builder.build().map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let records: Vec<Record> = pool.install(|| checks.par_iter().map(|c| c.execute(&ctx)).collect());
    let pass = records.iter().all(|r| r.pass);
    Ok(SuiteReport { suite: cfg.suite.clone(), params: cfg.params(), pass, records, runtime_ms: start.elapsed().as_millis() as u64 })
}
