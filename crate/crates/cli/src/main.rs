use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use comodcheck::numgeom::{self, NumConfig};
use comodcheck::pullback::PresentationRef;
use comodcheck::suite::{self, SuiteConfig, SUITES};
use comodcheck::{Error, Result};

const CONFIG_EXIT: u8 = 2;

#[derive(Parser)]
#[command(name = "comodcheck", version, about = "Verify Hopf-algebraic and numerical pullback constructions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and print its report.
    Verify(VerifyArgs),
    /// List the suite catalog.
    ListSuites {
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
    },
    /// Write the presentation JSON of an algebra.
    Export {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long)]
    suite: String,
    /// Builtin name or presentation file.
    #[arg(long)]
    algebra: Option<String>,
    /// Covering file.
    #[arg(long)]
    covering: Option<PathBuf>,
    #[arg(long)]
    degree: Option<usize>,
    /// Value of the deformation parameter, a Q(i) expression.
    #[arg(long)]
    q: Option<String>,
    #[arg(long, default_value_t = numgeom::DEFAULT_CIRCLE)]
    grid_circle: usize,
    #[arg(long, default_value_t = numgeom::DEFAULT_INTERVAL)]
    grid_interval: usize,
    #[arg(long, default_value_t = numgeom::DEFAULT_TOL)]
    tol: f64,
    #[arg(long, default_value_t = numgeom::DEFAULT_TRUNC)]
    trunc: usize,
    #[arg(long, default_value_t = numgeom::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = numgeom::DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Also write the report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl VerifyArgs {
    fn config(&self) -> SuiteConfig {
        SuiteConfig {
            suite: self.suite.clone(),
            algebra: self.algebra.clone(),
            covering: self.covering.clone(),
            degree: self.degree,
            q: self.q.clone(),
            num: NumConfig {
                circle: self.grid_circle,
                interval: self.grid_interval,
                tol: self.tol,
                trunc: self.trunc,
                seed: self.seed,
                trials: self.trials,
            },
            jobs: self.jobs,
        }
    }
}

/// Write through a temporary file in the same directory, then rename.
fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let io = |e: std::io::Error| Error::Config(format!("{}: {e}", path.display()));
    let tmp = path.with_extension("tmp");
    let mut f = std::fs::File::create(&tmp).map_err(io)?;
    f.write_all(text.as_bytes()).map_err(io)?;
    f.sync_all().map_err(io)?;
    std::fs::rename(&tmp, path).map_err(io)
}

/// Print to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn verify(args: &VerifyArgs) -> Result<u8> {
    let report = suite::run(&args.config())?;
    let text = match args.format {
        Format::Json => report.to_json(),
        Format::Md => report.to_markdown(),
    };
    if let Some(out) = &args.out {
        write_atomic(out, &text)?;
    }
    emit(&text);
    Ok(report.exit_code() as u8)
}

fn list_suites(format: Format) {
    match format {
        Format::Json => emit(&serde_json::to_string_pretty(&SUITES).expect("catalog serializes")),
        Format::Md => {
            let mut text = String::new();
            for s in &SUITES {
                let kind = if s.numeric { "numeric" } else { "exact" };
                text.push_str(&format!("{:<20} {kind:<8} {}\n", s.name, s.topic));
            }
            text.push_str(&format!("{:<20} {:<8} every suite above", suite::ALL, ""));
            emit(&text);
        }
    }
}

fn export(algebra: &str, out: &Path) -> Result<()> {
    let p = PresentationRef::Name(algebra.into()).resolve().map_err(|e| match e {
        Error::UnknownName(m) => Error::Config(format!("unknown algebra {m}")),
        e => e,
    })?;
    p.import::<comodcheck::builtin::Coeff>()?;
    write_atomic(out, &p.to_json())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match &cli.command {
        Command::Verify(args) => verify(args),
        Command::ListSuites { format } => {
            list_suites(*format);
            Ok(0)
        }
        Command::Export { algebra, out } => export(algebra, out).map(|_| 0),
    };
    match r {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let e = match e {
                Error::Config(_) => e,
                other => Error::Config(other.to_string()),
            };
            eprintln!("{e}");
            ExitCode::from(CONFIG_EXIT)
        }
    }
}
