//! Command-line front end: `run`, `classify`, `type` and `list-functions`.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::curves::{classify, eventually_in_admissible, Capture};
use crate::error::{Error, Result};
use crate::holo::CATALOG;
use crate::lindelof::{verify_theorem, ScenarioVerdict, VerificationReport};
use crate::report::{summary_line, write_outputs};
use crate::scenario::{parse_point, DomainSpec, Overrides, ScenarioFile};
use crate::schedule::ScheduleSpec;
use crate::type_analysis::{point_type, DEFAULT_DISC_DEGREE_BOUND, DEFAULT_TRUNCATION};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_BAD_SCENARIO: i32 = 2;
pub const EXIT_FAIL: i32 = 3;

pub const DEFAULT_OUT_DIR: &str = "lindelof-out";

#[derive(Debug, Parser)]
#[command(
    name = "lindelof",
    version,
    about = "Boundary limits of bounded holomorphic functions on finite-type domains"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify restricted admissible limits for one or more scenarios.
    Run {
        #[arg(required = true)]
        scenarios: Vec<PathBuf>,
        #[command(flatten)]
        flags: CommonFlags,
        #[arg(long)]
        limit_tol: Option<f64>,
        /// Output directory; defaults to the scenario's `out` key, then `lindelof-out`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Scenarios processed concurrently.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Print the classification table of a scenario's curves.
    Classify {
        scenario: PathBuf,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Compute the type of a boundary point.
    Type {
        /// `egg M`, `ball`, `egg_vertex M` or `sheared_egg M`.
        #[arg(long)]
        domain: String,
        /// `Re z1, Im z1, Re z2, Im z2`.
        #[arg(long, allow_hyphen_values = true)]
        zeta: String,
        #[arg(long, default_value_t = DEFAULT_DISC_DEGREE_BOUND)]
        disc_degree: usize,
    },
    /// List the catalog of test functions.
    ListFunctions,
}

#[derive(Debug, Clone, Args)]
pub struct CommonFlags {
    /// `FIRST:LAST:DIVISOR`, giving `t_k = 1 - 10^(-k / DIVISOR)`.
    #[arg(long)]
    pub schedule: Option<ScheduleSpec>,
    #[arg(long)]
    pub ratio_tol: Option<f64>,
    /// Fail when a declared type differs from the computed one.
    #[arg(long)]
    pub check_type: bool,
}

impl CommonFlags {
    fn overrides(&self, limit_tol: Option<f64>) -> Overrides {
        Overrides {
            schedule: self.schedule,
            ratio_tol: self.ratio_tol,
            limit_tol,
            check_type: self.check_type,
        }
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io(_) | Error::Parse { .. } | Error::UnknownFunction(_) => EXIT_IO,
        _ => EXIT_BAD_SCENARIO,
    }
}

fn verdict_code(v: ScenarioVerdict) -> i32 {
    match v {
        ScenarioVerdict::Pass => EXIT_PASS,
        ScenarioVerdict::Fail => EXIT_FAIL,
        ScenarioVerdict::BadScenario => EXIT_BAD_SCENARIO,
    }
}

/// Combines per-scenario codes: I/O beats bad scenario beats failure.
fn combine(codes: &[i32]) -> i32 {
    [EXIT_IO, EXIT_BAD_SCENARIO, EXIT_FAIL]
        .into_iter()
        .find(|c| codes.contains(c))
        .unwrap_or(EXIT_PASS)
}

/// Loads, verifies and writes outputs for one scenario. Bad scenarios
/// still produce a report.
pub fn run_scenario(
    path: &std::path::Path,
    overrides: &Overrides,
    out: Option<&std::path::Path>,
) -> Result<(VerificationReport, PathBuf)> {
    let file = ScenarioFile::load(path)?;
    let out_dir = out
        .map(PathBuf::from)
        .or_else(|| file.out.clone())
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR));
    let report = match file.theorem(overrides).and_then(|scn| verify_theorem(&scn)) {
        Ok(r) => r,
        Err(Error::BadScenario(reason)) => bad_report(&file, reason),
        Err(e) if exit_code(&e) == EXIT_BAD_SCENARIO => bad_report(&file, e.to_string()),
        Err(e) => return Err(e),
    };
    let dir = write_outputs(&out_dir, &report)?;
    Ok((report, dir))
}

fn bad_report(file: &ScenarioFile, reason: String) -> VerificationReport {
    VerificationReport {
        scenario_id: file.id.clone(),
        domain: file.domain_model().name,
        zeta: file.zeta,
        type_m: file.declared_type.unwrap_or(0),
        function: file.function.id().to_string(),
        verdict: ScenarioVerdict::BadScenario,
        reason: Some(reason),
        limit: None,
        curves: Vec::new(),
    }
}

fn cmd_run(
    scenarios: &[PathBuf],
    overrides: &Overrides,
    out: Option<&std::path::Path>,
    jobs: usize,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_IO;
        }
    };
    let results: Vec<_> = pool.install(|| {
        scenarios
            .par_iter()
            .map(|p| run_scenario(p, overrides, out))
            .collect()
    });
    let mut codes = Vec::new();
    for (path, res) in scenarios.iter().zip(results) {
        match res {
            Ok((report, dir)) => {
                let _ = writeln!(stdout, "{}: {:?}", report.scenario_id, report.verdict);
                if let Some(reason) = &report.reason {
                    let _ = writeln!(stdout, "  reason: {reason}");
                }
                if let Some(l) = report.limit {
                    let _ = writeln!(
                        stdout,
                        "  limit along reference: {:.9e}{:+.9e}i",
                        l.re, l.im
                    );
                }
                for c in &report.curves {
                    let _ = writeln!(stdout, "{}", summary_line(c));
                }
                let _ = writeln!(stdout, "  output: {}", dir.display());
                codes.push(verdict_code(report.verdict));
            }
            Err(e) => {
                let _ = writeln!(stderr, "error: {}: {e}", path.display());
                codes.push(exit_code(&e));
            }
        }
    }
    combine(&codes)
}

fn cmd_classify(
    path: &std::path::Path,
    overrides: &Overrides,
    stdout: &mut dyn Write,
) -> Result<()> {
    let file = ScenarioFile::load(path)?;
    let domain = file.domain_model();
    let frame = file.frame(&domain, overrides)?;
    let schedule = file.schedule(overrides);
    let tol = file.tolerances(overrides);
    let opts = crate::curves::ClassifyOptions {
        ratio_tol: tol.ratio_tol,
        alpha_grid: tol.alpha_grid.clone(),
        schedule: schedule.clone(),
    };
    writeln!(
        stdout,
        "{}: type {} at {}",
        file.id, frame.type_m, frame.zeta
    )?;
    writeln!(
        stdout,
        "{:<20} {:<10} {:<13} {:<15} {:<13} capture",
        "curve", "role", "special", "nontangential", "restricted"
    )?;
    for c in &file.curves {
        let class = classify(&c.curve, &frame, &opts)?;
        let capture = match eventually_in_admissible(&c.curve, &frame, &tol.alpha_grid, &schedule) {
            Capture::Captured { alpha, .. } => format!("alpha={alpha}"),
            Capture::NotCaptured => "NotCaptured".to_string(),
        };
        writeln!(
            stdout,
            "{:<20} {:<10} {:<13} {:<15} {:<13} {}",
            c.name,
            format!("{:?}", c.role),
            class.special.to_string(),
            class.nontangential_projection.to_string(),
            class.restricted.to_string(),
            capture
        )?;
    }
    Ok(())
}

fn cmd_type(domain: &str, zeta: &str, disc_degree: usize, stdout: &mut dyn Write) -> Result<()> {
    let spec = DomainSpec::parse(domain).map_err(|message| Error::Parse {
        line: 0,
        field: "domain".into(),
        message,
    })?;
    let zeta = parse_point(zeta)?;
    let m = point_type(&spec.build(), zeta, disc_degree, DEFAULT_TRUNCATION)?;
    writeln!(stdout, "{m}")?;
    Ok(())
}

fn report_error(res: Result<()>, stderr: &mut dyn Write) -> i32 {
    match res {
        Ok(()) => EXIT_PASS,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Executes a parsed command line and returns the process exit code.
pub fn execute(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    match cli.command {
        Command::Run {
            scenarios,
            flags,
            limit_tol,
            out,
            jobs,
        } => cmd_run(
            &scenarios,
            &flags.overrides(limit_tol),
            out.as_deref(),
            jobs,
            stdout,
            stderr,
        ),
        Command::Classify { scenario, flags } => report_error(
            cmd_classify(&scenario, &flags.overrides(None), stdout),
            stderr,
        ),
        Command::Type {
            domain,
            zeta,
            disc_degree,
        } => report_error(cmd_type(&domain, &zeta, disc_degree, stdout), stderr),
        Command::ListFunctions => {
            for f in CATALOG {
                let _ = writeln!(
                    stdout,
                    "{:<8} {:<22} sup <= {:.6}",
                    f.id(),
                    f.formula(),
                    f.sup_norm()
                );
            }
            EXIT_PASS
        }
    }
}

/// Parses `args` and runs; clap usage errors exit with code 1.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(
            cli,
            &mut std::io::stdout().lock(),
            &mut std::io::stderr().lock(),
        ),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                EXIT_IO
            } else {
                EXIT_PASS
            }
        }
    }
}
