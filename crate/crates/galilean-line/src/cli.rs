//! The `glg` command line: verification suites, the obstruction solver, the
//! equivalence experiment and the map-semigroup inverse search.
//!
//! Exit codes: 0 when every check passes, 1 on a failed check or runtime
//! diagnostic, 2 on a usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::config::{ConfigError, Format, RunConfig, CONFIG_ENV};
use crate::dynamics::{equivalence_experiment, EquivalenceParams, EquivalenceResult};
use crate::map_semigroup::Profile;
use crate::report::{canonical_json, CheckReport, CheckRow, Criterion};
use crate::suites::{inverse_json, obstruction_report, run_suite, Suite, EQUIVALENCE_TOL};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "glg", version, about = "Galilean line group verification and experiments")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand; they override the config file.
#[derive(Debug, Args, Default)]
pub struct GlobalArgs {
    /// Jet truncation order N [default: 8]
    #[arg(long, global = true)]
    pub order: Option<usize>,
    /// Map-semigroup truncation degree D [default: 3]
    #[arg(long, global = true)]
    pub degree: Option<usize>,
    /// Random trials per property [default: 100]
    #[arg(long, global = true)]
    pub trials: Option<u64>,
    /// Base seed; trial k uses seed XOR k [default: 42]
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Float tolerance [default: 1e-10]
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Velocity grid points [default: 512]
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    /// Velocity grid half-width [default: 20]
    #[arg(long, global = true)]
    pub vmax: Option<f64>,
    /// exact | float [default: exact]
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// json | csv [default: json]
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Output path (stdout when absent)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Config file with key=value lines (falls back to $GLG_CONFIG)
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Reduced Planck constant for grid dynamics [default: 1]
    #[arg(long, global = true)]
    pub hbar: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verification suite: group, extension, cocycle, generators,
    /// dynamics, semigroup or all.
    Verify { suite: String },
    /// Solve the central-extension constraints for N = 2..=n-max.
    Obstruction {
        /// Largest N (defaults to --order)
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Run a simulation experiment.
    Simulate {
        #[command(subcommand)]
        experiment: Experiment,
    },
    /// Map-semigroup tools.
    Semigroup {
        #[command(subcommand)]
        op: SemigroupOp,
    },
}

#[derive(Debug, Subcommand)]
pub enum Experiment {
    /// Accelerated frame versus linear gravity; writes a CSV time series to
    /// --out (default ./equivalence.csv) and a JSON summary to stdout.
    Equivalence(EquivalenceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Mode {
    /// A mass mismatch is reported, not failed.
    #[default]
    ExpectDifference,
    /// Any fidelity below 1 − 1e-6 fails.
    Assert,
}

#[derive(Debug, Args)]
pub struct EquivalenceArgs {
    /// Inertial mass
    #[arg(long, default_value_t = 1.0)]
    pub m: f64,
    /// Gravitational mass (defaults to m)
    #[arg(long)]
    pub mg: Option<f64>,
    /// Field strength
    #[arg(long, default_value_t = 0.5)]
    pub gamma: f64,
    /// Final time
    #[arg(long, default_value_t = 1.0)]
    pub b_final: f64,
    /// Split steps (a multiple of --outputs)
    #[arg(long, default_value_t = 1000)]
    pub steps: usize,
    /// Output times
    #[arg(long, default_value_t = 10)]
    pub outputs: usize,
    /// Initial packet width
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    #[arg(long, value_enum, default_value_t = Mode::ExpectDifference)]
    pub mode: Mode,
    /// Write the JSON summary here instead of stdout
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum SemigroupOp {
    /// Degree-by-degree search for a fixed-point inverse.
    Inverse {
        /// translation | line_group | spacetime_shift
        #[arg(long)]
        profile: String,
    },
}

/// A failure mapped to an exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(String),
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// Resolves the configuration: defaults, then the config file (`--config`
/// or `env_config`), then flags.
pub fn resolve_config(g: &GlobalArgs, env_config: Option<PathBuf>) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::default();
    if let Some(path) = g.config.clone().or(env_config) {
        cfg.apply_file(&path)?;
    }
    let flags: [(&str, Option<String>); 11] = [
        ("order", g.order.map(|v| v.to_string())),
        ("degree", g.degree.map(|v| v.to_string())),
        ("trials", g.trials.map(|v| v.to_string())),
        ("seed", g.seed.map(|v| v.to_string())),
        ("tol", g.tol.map(|v| v.to_string())),
        ("grid", g.grid.map(|v| v.to_string())),
        ("vmax", g.vmax.map(|v| v.to_string())),
        ("hbar", g.hbar.map(|v| v.to_string())),
        ("field", g.field.clone()),
        ("format", g.format.clone()),
        ("out", g.out.as_ref().map(|p| p.display().to_string())),
    ];
    for (k, v) in flags {
        if let Some(v) = v {
            cfg.set(k, &v)?;
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

fn render(report: &CheckReport, format: Format) -> String {
    match format {
        Format::Json => report.to_canonical_json() + "\n",
        Format::Csv => report.to_csv(),
    }
}

fn write_to(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", p.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(|e| CliError::Runtime(format!("cannot write output: {e}"))),
    }
}

fn emit(report: &CheckReport, cfg: &RunConfig, stdout: &mut dyn Write) -> Result<i32, CliError> {
    write_to(cfg.out.as_deref(), &render(report, cfg.format), stdout)?;
    Ok(if report.passed() { EXIT_PASS } else { EXIT_FAIL })
}

/// Time series CSV of the equivalence experiment.
pub fn equivalence_csv(r: &EquivalenceResult) -> String {
    let mut out = String::from("b,fidelity,normA,normB,fidelity_unaligned\n");
    for row in &r.rows {
        out.push_str(&format!(
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
            row.b, row.fidelity, row.norm_a, row.norm_b, row.fidelity_unaligned
        ));
    }
    out
}

/// Summary rows of the equivalence experiment.
pub fn equivalence_summary(p: &EquivalenceParams, r: &EquivalenceResult, mode: Mode) -> Vec<CheckRow> {
    let matched = p.m_g == p.m;
    let band = Criterion::Within(1.0 - EQUIVALENCE_TOL, 1.0 + EQUIVALENCE_TOL);
    let violated = r.fidelity_min < 1.0 - EQUIVALENCE_TOL;
    let fid = if matched || mode == Mode::Assert {
        CheckRow::float("equivalence_fidelity", "fidelity of accelerated-frame and gravity evolutions at every output time", r.fidelity_min, band)
    } else {
        CheckRow::float("equivalence_violated", "m_g ≠ m: fidelity deficit 1 - min fidelity", 1.0 - r.fidelity_min, Criterion::Report)
            .with("violated", json!(violated))
    };
    vec![
        fid.with("fidelity_unaligned_min", json!(r.fidelity_unaligned_min)),
        CheckRow::float("clipped_mass", "probability that left the grid", r.clipped_mass, Criterion::Vanishes(1e-12)),
    ]
}

fn run_equivalence(args: &EquivalenceArgs, cfg: &RunConfig, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let p = EquivalenceParams {
        m: args.m,
        m_g: args.mg.unwrap_or(args.m),
        gamma: args.gamma,
        b_final: args.b_final,
        steps: args.steps,
        outputs: args.outputs,
        sigma: args.sigma,
        grid: cfg.grid,
        vmax: cfg.vmax,
        hbar: cfg.hbar,
        order: cfg.order,
        ..Default::default()
    };
    if !(p.m > 0.0 && p.m_g > 0.0 && p.b_final > 0.0 && p.sigma > 0.0) || p.outputs == 0 || p.steps % p.outputs != 0 {
        return Err(CliError::Usage(
            "masses, b-final and sigma must be positive; steps must be a positive multiple of outputs".into(),
        ));
    }
    let csv_path = cfg.out.clone().unwrap_or_else(|| PathBuf::from("equivalence.csv"));
    let mut report = CheckReport::new("simulate_equivalence");
    report.metadata = cfg.metadata();
    report.metadata.insert("csv_path".into(), json!(csv_path.display().to_string()));
    report.metadata.insert(
        "params".into(),
        json!({"m": p.m, "m_g": p.m_g, "gamma": p.gamma, "b_final": p.b_final, "steps": p.steps,
               "outputs": p.outputs, "sigma": p.sigma, "mode": args.mode.to_possible_value().map(|v| v.get_name().to_string())}),
    );
    match equivalence_experiment(&p) {
        Ok(r) => {
            std::fs::write(&csv_path, equivalence_csv(&r))
                .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", csv_path.display())))?;
            for row in equivalence_summary(&p, &r, args.mode) {
                report.push(row);
            }
        }
        Err(e) => report.push(CheckRow::error("equivalence_run", "split-step and frame transformation", e.to_string())),
    }
    write_to(args.summary.as_deref(), &render(&report, cfg.format), stdout)?;
    Ok(if report.passed() { EXIT_PASS } else { EXIT_FAIL })
}

fn dispatch(cli: &Cli, env_config: Option<PathBuf>, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let cfg = resolve_config(&cli.global, env_config)?;
    match &cli.command {
        Command::Verify { suite } => {
            let suite = Suite::parse(suite).ok_or_else(|| {
                CliError::Usage(format!(
                    "unknown suite {suite:?}; expected group, extension, cocycle, generators, dynamics, semigroup or all"
                ))
            })?;
            emit(&run_suite(suite, &cfg), &cfg, stdout)
        }
        Command::Obstruction { n_max } => {
            let n = n_max.unwrap_or(cfg.order);
            if n < 2 {
                return Err(CliError::Usage("n-max must be at least 2".into()));
            }
            emit(&obstruction_report(n, &cfg), &cfg, stdout)
        }
        Command::Simulate { experiment: Experiment::Equivalence(args) } => run_equivalence(args, &cfg, stdout),
        Command::Semigroup { op: SemigroupOp::Inverse { profile } } => {
            let profile = Profile::parse(profile).ok_or_else(|| {
                CliError::Usage(format!("unknown profile {profile:?}; expected translation, line_group or spacetime_shift"))
            })?;
            if cfg.format != Format::Json {
                return Err(CliError::Usage("semigroup inverse emits json only".into()));
            }
            let value = inverse_json(profile, cfg.degree, &cfg).map_err(|e| CliError::Runtime(e.to_string()))?;
            write_to(cfg.out.as_deref(), &(canonical_json(&value) + "\n"), stdout)?;
            Ok(EXIT_PASS)
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing reports to `stdout` and diagnostics to `stderr`.
pub fn run_with(
    args: impl IntoIterator<Item = impl Into<OsString> + Clone>,
    env_config: Option<PathBuf>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = if e.use_stderr() { write!(stderr, "{e}") } else { write!(stdout, "{e}") };
            return code;
        }
    };
    match dispatch(&cli, env_config, stdout) {
        Ok(code) => code,
        Err(CliError::Usage(m)) => {
            let _ = writeln!(stderr, "usage error: {m}");
            EXIT_USAGE
        }
        Err(CliError::Runtime(m)) => {
            let _ = writeln!(stderr, "error: {m}");
            EXIT_FAIL
        }
    }
}

/// Entry point used by the `glg` binary.
pub fn main_exit_code() -> i32 {
    let env_config = std::env::var_os(CONFIG_ENV).map(PathBuf::from);
    run_with(std::env::args_os(), env_config, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
