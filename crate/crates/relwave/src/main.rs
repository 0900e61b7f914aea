use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use relwave::config::Config;
use relwave::report::SuiteReport;
use relwave::{demo, run, specfile, suites, Error};

#[derive(Parser)]
#[command(name = "relwave", version, about = "Verify and evolve relativistic wave equations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Common {
    /// Flat `key = value` configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Seed for every random quantity; overrides the config file.
    #[arg(long, env = "RELWAVE_SEED")]
    seed: Option<u64>,
    /// Tolerance applied to every residual check.
    #[arg(long)]
    tol: Option<f64>,
    /// Write the JSON report here instead of standard output.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites.
    Verify {
        /// algebra, modes, solutions, transforms, evolve or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        common: Common,
    },
    /// Evolve a field on a grid and write dumps.
    Evolve {
        /// Output directory for the dumps.
        #[arg(long, default_value = "relwave-out")]
        out: PathBuf,
        /// Mode list to evolve; a random lattice-aligned spec is used otherwise.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Print a short showcase of every correspondence.
    Demo {
        #[arg(long, env = "RELWAVE_SEED", default_value_t = 42)]
        seed: u64,
    },
}

fn read_text(path: &Path) -> Result<String, Error> {
    Ok(std::fs::read_to_string(path)?)
}

fn load_config(common: &Common) -> Result<Config, Error> {
    let mut cfg = match &common.config {
        Some(p) => Config::parse(&read_text(p)?)?,
        None => Config::default(),
    };
    if let Some(s) = common.seed {
        cfg.seed = s;
    }
    if let Some(t) = common.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::Config(format!("--tol must be positive, got {t}")));
        }
        cfg.tol = Some(t);
    }
    Ok(cfg)
}

fn emit(report: &SuiteReport, path: Option<&Path>) -> Result<(), Error> {
    match path {
        Some(p) => {
            std::fs::write(p, report.to_json())?;
            eprint!("{}", report.summary());
        }
        None => print!("{}", report.to_json()),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Verify { suite, common } => {
            let cfg = load_config(&common)?;
            let report = suites::run_suite(&suite, &cfg)?;
            emit(&report, common.report.as_deref())?;
            Ok(report.exit_code())
        }
        Command::Evolve { out, spec, common } => {
            let cfg = load_config(&common)?;
            let spec = match spec {
                Some(p) => Some(specfile::parse_spec(&read_text(&p)?)?),
                None => None,
            };
            let result = run::run_evolution(&cfg, spec, &out)?;
            emit(&result.report, common.report.as_deref())?;
            Ok(result.report.exit_code())
        }
        Command::Demo { seed } => {
            print!("{}", demo::demo(seed)?);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::try_parse().unwrap_or_else(|e| {
        let _ = e.print();
        std::process::exit(if e.use_stderr() { 2 } else { 0 });
    });
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("relwave: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
