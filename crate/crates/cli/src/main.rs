//! `clockwork`: run, trace, check and pretty-print IMP programs.

mod args;
mod report;

use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use clockwork_core::smallstep::trace;
use clockwork_core::testkit::{run_property, GenConfig, PropertyId};
use clockwork_core::{parse_com, pretty, Com, OracleOutcome, Semantics};

use args::{initial_store, Binding, FuelSpec};
use report::RunReport;

const DEFAULT_CAP: &str = "10000";

#[derive(Debug, Parser)]
#[command(name = "clockwork", version, about = "Clocked evaluators for IMP")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a program and print one JSON report.
    Run {
        /// Program file, or `-` for stdin.
        file: PathBuf,
        /// ev, ev-min, cval, cval-guard or cval-tick.
        #[arg(long, default_value = "cval")]
        sem: Semantics,
        /// `N`, or `search:MAX` to find the least power of two that suffices.
        #[arg(long)]
        fuel: FuelSpec,
        /// Initial bindings, e.g. `x=3,y=1`.
        #[arg(long, value_delimiter = ',')]
        init: Vec<Binding>,
        /// Also run the small-step oracle and report its step count.
        #[arg(long)]
        oracle: bool,
        /// Step cap for the oracle.
        #[arg(long, default_value = DEFAULT_CAP)]
        cap: u64,
    },
    /// Print every small-step configuration.
    Trace {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        init: Vec<Binding>,
        #[arg(long, default_value = DEFAULT_CAP)]
        cap: u64,
    },
    /// Run property campaigns and print one JSON report per property.
    Check {
        /// Property ids (P1..P10, RT).
        properties: Vec<String>,
        #[arg(long, conflicts_with = "properties")]
        all: bool,
        #[arg(long, env = "CLOCKWORK_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        cases: u64,
    },
    /// Parse a program and print it in canonical form.
    Parse { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(if err.use_stderr() { 1 } else { 0 });
        }
    };
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(command: Command) -> Result<u8, String> {
    let mut out = io::stdout().lock();
    match command {
        Command::Run {
            file,
            sem,
            fuel,
            init,
            oracle,
            cap,
        } => {
            let c = load(&file)?;
            let report =
                RunReport::evaluate(sem, &c, &initial_store(&init), fuel, oracle.then_some(cap));
            let line = serde_json::to_string(&report).map_err(|e| e.to_string())?;
            writeln!(out, "{line}").map_err(|e| e.to_string())?;
            Ok(report.exit_code() as u8)
        }
        Command::Trace { file, init, cap } => {
            let c = load(&file)?;
            let (configs, outcome) = trace(&c, &initial_store(&init), cap);
            for config in &configs {
                writeln!(out, "{config}").map_err(|e| e.to_string())?;
            }
            let (line, code) = match outcome {
                OracleOutcome::Terminated { steps, .. } => (format!("steps: {steps}"), 0),
                OracleOutcome::StepLimit { cap } => (format!("step-limit: {cap}"), 2),
            };
            writeln!(out, "{line}").map_err(|e| e.to_string())?;
            Ok(code)
        }
        Command::Check {
            properties,
            all,
            seed,
            cases,
        } => {
            let ids: Vec<PropertyId> = if all {
                PropertyId::ALL.to_vec()
            } else if properties.is_empty() {
                return Err("name at least one property, or pass --all".into());
            } else {
                properties
                    .iter()
                    .map(|p| {
                        p.parse()
                            .map_err(|e: clockwork_core::testkit::UnknownProperty| e.to_string())
                    })
                    .collect::<Result<_, _>>()?
            };
            let cfg = GenConfig::with_seed(seed);
            let mut all_passed = true;
            for id in ids {
                let report = run_property(id, &cfg, cases);
                all_passed &= report.passed();
                writeln!(out, "{}", report.to_json_line()).map_err(|e| e.to_string())?;
            }
            Ok(if all_passed { 0 } else { 2 })
        }
        Command::Parse { file } => {
            let c = load(&file)?;
            writeln!(out, "{}", pretty(&c)).map_err(|e| e.to_string())?;
            Ok(0)
        }
    }
}

fn load(path: &Path) -> Result<Com, String> {
    let mut text = String::new();
    if path == Path::new("-") {
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| format!("stdin: {e}"))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    parse_com(&text).map_err(|e| format!("{}:{e}", path.display()))
}
