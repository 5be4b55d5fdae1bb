//! Command-line driver: the expression language, the suite runner and the
//! report writer behind the `yangian` binary.

pub mod error;
pub mod eval;
pub mod lexer;
pub mod module_expr;
pub mod parser;
pub mod runner;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use anyhow::Context as _;
use clap::{Parser, Subcommand};
use yangian_core::cohom::ce_cohomology_dims;
use yangian_core::{Envelope, Fault, Report};

pub use error::DslError;
pub use eval::{Context, Value};
pub use parser::{parse, Expr};
pub use runner::{parse_types, run_suite, RunError, Suite, SuiteOptions};

/// Exit status of a run.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "yangian", version, about = "Exact verification of the Yangian of sl_n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Evaluate an expression and print its canonical form.
    Expand {
        expr: String,
        #[arg(long = "type", default_value = "A1")]
        ty: String,
    },
    /// Dimensions of Chevalley-Eilenberg cohomology of a module.
    Cohomology {
        /// e.g. `dual(adjoint) (x) pbw(2)`
        #[arg(long)]
        module: String,
        #[arg(long = "up-to", default_value_t = 2)]
        up_to: usize,
        #[arg(long = "type", default_value = "A1")]
        ty: String,
    },
}

#[derive(clap::Args, Debug)]
struct VerifyArgs {
    suite: String,
    /// Lie types, `A1` or a comma list such as `A1,A2`.
    #[arg(long = "type")]
    ty: Option<String>,
    /// Truncation degree (bicomplex, solver, whitehead) or symmetric degree (cartier).
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long = "max-u-degree")]
    max_u_degree: Option<u32>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Random cochain samples for `bicomplex`.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Number of consecutive seeds for `solver`.
    #[arg(long, default_value_t = 20)]
    seeds: u64,
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long = "inject-fault")]
    inject_fault: Option<String>,
    /// Report `elapsed_ms` as 0 so equal seeds give identical JSON.
    #[arg(long)]
    deterministic: bool,
}

/// A usage problem, reported with exit status 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct Usage(String);

fn usage(e: impl std::fmt::Display) -> anyhow::Error {
    Usage(e.to_string()).into()
}

fn single_rank(ty: &str) -> anyhow::Result<usize> {
    match parse_types(ty).map_err(usage)?.as_slice() {
        [r] => Ok(*r),
        _ => Err(usage(format!("expected a single Lie type, got `{ty}`"))),
    }
}

pub fn write_report(report: &Report, out: &mut dyn Write) -> std::io::Result<()> {
    for c in &report.checks {
        if c.pass {
            writeln!(out, "PASS {}  [{}]", c.id, c.anchor)?;
        } else {
            writeln!(out, "FAIL {}  [{}]", c.id, c.anchor)?;
            writeln!(out, "     residual: {}", c.residual.as_deref().unwrap_or(""))?;
        }
    }
    let passed = report.checks.iter().filter(|c| c.pass).count();
    writeln!(
        out,
        "{} on {}: {passed}/{} checks passed in {} ms",
        report.suite,
        report.algebra,
        report.checks.len(),
        report.elapsed_ms
    )
}

pub fn report_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let suite: Suite = a.suite.parse().map_err(usage)?;
    let fault = a.inject_fault.as_deref().map(str::parse::<Fault>).transpose().map_err(usage)?;
    let opts = SuiteOptions {
        ranks: a.ty.as_deref().map(parse_types).transpose().map_err(usage)?,
        degree: a.degree,
        max_u_degree: a.max_u_degree,
        seed: a.seed,
        fault,
        samples: a.samples,
        seeds: a.seeds,
    };
    let run = || run_suite(suite, &opts);
    let result = match a.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build().context("building thread pool")?.install(run),
        None => run(),
    };
    let mut report = result.map_err(usage)?;
    if a.deterministic {
        report.elapsed_ms = 0;
    }
    write_report(&report, out)?;
    if let Some(path) = a.json {
        std::fs::write(&path, report_json(&report)).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(if report.passed() { EXIT_PASS } else { EXIT_FAIL })
}

fn execute(cli: Cli, out: &mut dyn Write) -> anyhow::Result<i32> {
    match cli.command {
        Command::Verify(a) => verify(a, out),
        Command::Expand { expr, ty } => {
            let cx = Context::new(Envelope::sl(single_rank(&ty)? + 1)?)?;
            let v = cx.evaluate(&expr).map_err(usage)?;
            writeln!(out, "{}", cx.render(&v))?;
            Ok(EXIT_PASS)
        }
        Command::Cohomology { module, up_to, ty } => {
            let env = Envelope::sl(single_rank(&ty)? + 1)?;
            if up_to > 3 {
                return Err(usage("cohomology is computed in degrees 0 to 3"));
            }
            let m = module_expr::parse_module(&module, &env).map_err(usage)?;
            writeln!(out, "{} over {}, dim {}", m.name(), env.g().type_name(), m.dim())?;
            for (k, d) in ce_cohomology_dims(&m, up_to).into_iter().enumerate() {
                writeln!(out, "H^{k} = {d}")?;
            }
            Ok(EXIT_PASS)
        }
    }
}

/// Runs the tool on `args` (including the program name) and returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_USAGE
        }
    }
}
