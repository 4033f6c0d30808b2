//! Command-line front end: `gen`, `run` and `verify` over JSON scenarios.
//!
//! Exit codes: 0 success, 1 a property was violated, 2 bad input or usage.

mod gen;
mod mechanisms;
mod run;
mod scenario;
mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

pub use gen::{generate, GenSpec, Kind, ValueKind};
pub use mechanisms::{
    applicable_properties, Mechanism, AVERAGE_MECHANISMS, GENERAL_MECHANISMS, INTERVAL_MECHANISMS,
    SET_MECHANISMS,
};
pub use run::{render, run_scenario, CoalitionValue, OutputDoc, RunReport, TraceDoc};
pub use scenario::{emit_scenario, parse_scenario, Profile, Scenario};
pub use verify::{
    check_property, select_properties, verify_scenario, verify_sweep, SweepDoc, VerifyReport,
};

use crate::error::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "info-exchange",
    version,
    about = "Exact information-exchange mechanisms and their property checker"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a seeded random scenario.
    Gen {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the scenario here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a mechanism on a scenario and print its outputs, benefits and utilities.
    Run {
        /// Scenario file, `-` for stdin.
        #[arg(long)]
        scenario: PathBuf,
        #[command(flatten)]
        mechanism: MechanismArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check properties on a scenario, or on a sweep of generated scenarios.
    Verify {
        /// Scenario file, `-` for stdin. Without it, scenarios are generated
        /// for seeds `seed..seed+count`.
        #[arg(long, conflicts_with_all = ["kind", "count"])]
        scenario: Option<PathBuf>,
        #[command(flatten)]
        spec: OptionalSpecArgs,
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        mechanism: MechanismArgs,
        /// Comma-separated property names, or `all` for the mechanism's
        /// claimed properties.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        properties: Vec<String>,
        /// Treat skipped properties and instances as violations.
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct SpecArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long, default_value_t = 3)]
    players: usize,
    /// Universe size for set-union and coverage scenarios.
    #[arg(long, default_value_t = 6)]
    elements: usize,
    /// Value table family for general scenarios.
    #[arg(long, value_enum, default_value_t = ValueKind::Coverage)]
    value: ValueKind,
}

#[derive(Args, Debug)]
struct OptionalSpecArgs {
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    #[arg(long, default_value_t = 3)]
    players: usize,
    #[arg(long, default_value_t = 6)]
    elements: usize,
    #[arg(long, value_enum, default_value_t = ValueKind::Coverage)]
    value: ValueKind,
}

#[derive(Args, Debug)]
struct MechanismArgs {
    /// Mechanism name; defaults to the standard mechanism of the scenario kind.
    #[arg(long)]
    mechanism: Option<String>,
    /// Apply the Pareto top-up after the three-party mechanism.
    #[arg(long)]
    pareto_repair: bool,
}

/// Entry point of the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the command line `args` (program name first), writing reports to
/// `out` and diagnostics to `err`. Returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn read_scenario(path: &Path) -> Result<Scenario> {
    let text = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| Error::Parse {
        location: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_scenario(&text)
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    let io_error = |e: std::io::Error| Error::Config(format!("cannot write output: {e}"));
    match path {
        Some(p) => std::fs::write(p, text).map_err(io_error),
        None => out.write_all(text.as_bytes()).map_err(io_error),
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Gen {
            spec,
            seed,
            out: path,
        } => {
            let spec = GenSpec {
                kind: spec.kind,
                players: spec.players,
                elements: spec.elements,
                value: spec.value,
            };
            emit(
                &emit_scenario(&generate(&spec, seed)?),
                path.as_deref(),
                out,
            )?;
            Ok(EXIT_OK)
        }
        Command::Run {
            scenario,
            mechanism,
            out: path,
        } => {
            let scenario = read_scenario(&scenario)?;
            let m = Mechanism::resolve(
                &scenario,
                mechanism.mechanism.as_deref(),
                mechanism.pareto_repair,
            )?;
            emit(&render(&run_scenario(&scenario, m)?), path.as_deref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            scenario,
            spec,
            count,
            seed,
            mechanism,
            properties,
            strict,
            out: path,
        } => {
            let report = match (scenario, spec.kind) {
                (Some(file), _) => {
                    let scenario = read_scenario(&file)?;
                    let m = Mechanism::resolve(
                        &scenario,
                        mechanism.mechanism.as_deref(),
                        mechanism.pareto_repair,
                    )?;
                    let selected = select_properties(&properties, scenario.kind(), &m)?;
                    verify_scenario(&scenario, m, &selected)?
                }
                (None, Some(kind)) => {
                    let spec = GenSpec {
                        kind,
                        players: spec.players,
                        elements: spec.elements,
                        value: spec.value,
                    };
                    verify_sweep(
                        &spec,
                        seed,
                        count,
                        mechanism.mechanism.as_deref(),
                        mechanism.pareto_repair,
                        &properties,
                    )?
                }
                (None, None) => {
                    return Err(Error::Config(
                        "give a scenario file or --kind for a sweep".to_string(),
                    ))
                }
            };
            emit(&render(&report), path.as_deref(), out)?;
            Ok(if report.violated(strict) {
                EXIT_VIOLATION
            } else {
                EXIT_OK
            })
        }
    }
}
