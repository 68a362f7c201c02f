use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use tripartite::model::{derive_params, DerivedParams, PhysicalParams};
use tripartite::sweep::{self, Context, FigureOutput, OutputDir, RunConfig};
use tripartite::Error;

const EXIT_USAGE: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_FAILURES: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "tripartite", version, about = "Spin-magnon-phonon hybrid system simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// TOML run configuration
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for tables and reports
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Worker threads; overrides the config file
    #[arg(long, global = true, env = "TRIPARTITE_WORKERS")]
    workers: Option<usize>,
    /// Overwrite existing outputs
    #[arg(long, global = true)]
    force: bool,
    /// Also write a JSON mirror of every table
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// λ_eff and cooperativity maps over YIG radius and squeezing
    Fig2,
    /// Dissipative occupation dynamics for the four reference panels
    Fig3,
    /// Decay-free entanglement dynamics
    Fig4,
    /// Derived quantities over the [[sweep.axis]] grid
    Sweep,
    /// Print derived parameters for the configured inputs
    Derive,
    /// Run the oracle and invariant suite
    Selftest,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Fig2 => "fig2",
            Command::Fig3 => "fig3",
            Command::Fig4 => "fig4",
            Command::Sweep => "sweep",
            Command::Derive => "derive",
            Command::Selftest => "selftest",
        }
    }
}

#[derive(Serialize)]
struct DeriveReport<'a> {
    constants_sha256: String,
    params: &'a PhysicalParams,
    derived: &'a DerivedParams,
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let workers = cli.workers.or(cfg.workers).unwrap_or_else(default_workers);
    if workers == 0 {
        return Err(Error::Config("workers must be at least 1".into()));
    }
    let out = OutputDir::new(&cli.out, cli.force, cli.json);
    let cmd = cli.command;
    let hash = cfg.constants()?.hash();
    let output: FigureOutput = match cmd {
        Command::Derive => {
            let ctx = Context::from_config(&cfg, workers)?;
            let d = derive_params(&ctx.params, &ctx.constants).map_err(|e| Error::Config(e.to_string()))?;
            let report = DeriveReport { constants_sha256: hash, params: &ctx.params, derived: &d };
            println!("{}", serde_json::to_string_pretty(&report).map_err(|e| Error::Io(e.to_string()))?);
            return Ok(0);
        }
        Command::Selftest => {
            let report = sweep::run_selftest(cfg.seed.unwrap_or(0))?;
            for c in &report.checks {
                let tag = if c.passed { "ok" } else { "FAILED" };
                println!("{tag:6} {:40} {:.3e} (tol {:.0e})", c.name, c.value, c.tolerance);
            }
            out.check_report("selftest")?;
            out.write_report("selftest", &report)?;
            return Ok(if report.passed() { 0 } else { EXIT_FAILURES });
        }
        Command::Fig2 => sweep::fig2(&Context::from_config(&cfg, workers)?, &cfg)?,
        Command::Sweep => sweep::sweep(&Context::from_config(&cfg, workers)?, &cfg)?,
        Command::Fig3 => sweep::fig3(&cfg, &hash, workers)?,
        Command::Fig4 => sweep::fig4(&cfg, &hash, workers)?,
    };
    let sidecar = format!("{}_errors", cmd.name());
    let names: Vec<&str> = output.tables.iter().map(|t| t.name()).collect();
    out.check(&names)?;
    out.check_report(&sidecar)?;
    for p in out.write(&output.tables)? {
        println!("{}", p.display());
    }
    out.write_report(&sidecar, &output.report)?;
    for w in &output.report.warnings {
        eprintln!("warning: {w}");
    }
    for f in &output.report.failures {
        eprintln!("failed {} {:?}: {}", f.table, f.point, f.error);
    }
    if output.report.excessive_failures() {
        eprintln!("error: {} of {} points failed", output.report.failures.len(), output.report.total_points);
        return Ok(EXIT_FAILURES);
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}
