use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use heis_cli::commands;
use heis_cli::error::CliError;
use heis_cli::json::Mode;
use heis_cli::verify::{self, Config, GridConfig, Suite};
use serde_json::Value;

const MODE_VAR: &str = "HEIS_MODE";

#[derive(Parser)]
#[command(
    name = "heis",
    version,
    about = "Heisenberg group orbits, reductions and verification suites"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the coadjoint orbit of a dual element.
    Classify {
        /// JSON file, or `-` for stdin.
        #[arg(long, default_value = "-")]
        input: String,
    },
    /// Reduce a tuple in ĝ to its normal form.
    Reduce {
        #[arg(long, default_value = "-")]
        input: String,
    },
    /// Run verification suites and emit a JSON report.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Heisenberg dimension parameter for the algebraic suites.
        #[arg(long, default_value_t = verify::DEFAULT_N)]
        n: usize,
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        /// Instances per check [default: 1000, or 20 test functions for quantization].
        #[arg(long)]
        trials: Option<usize>,
        /// Overrides every defect tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// Quadrature grid as `N,L`: N samples on [−L, L].
        #[arg(long, default_value = "2048,8")]
        grid: GridConfig,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_input(path: &str) -> Result<Value, CliError> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path)?;
    }
    serde_json::from_str(&text).map_err(|e| CliError::Malformed(e.to_string()))
}

fn emit(doc: &Value, out: Option<&PathBuf>) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(doc).expect("values serialize");
    text.push('\n');
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn fail(err: &CliError) -> ExitCode {
    eprintln!("{}", err.diagnostic());
    ExitCode::from(CliError::EXIT_CODE as u8)
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    let env_mode = std::env::var(MODE_VAR).ok();
    let env_mode = env_mode.as_deref();
    match command {
        Command::Classify { input } => {
            emit(&commands::classify(&read_input(&input)?, env_mode)?, None)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Reduce { input } => {
            emit(&commands::reduce(&read_input(&input)?, env_mode)?, None)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            n,
            seed,
            trials,
            tol,
            grid,
            out,
        } => {
            if n == 0 {
                return Err(CliError::Dimension("n must be at least 1".into()));
            }
            if let Some(t) = tol {
                if !(t >= 0.0 && t.is_finite()) {
                    return Err(CliError::Malformed(format!(
                        "tolerance must be non-negative, got {t}"
                    )));
                }
            }
            let config = Config {
                n,
                seed,
                trials,
                tol,
                grid,
                mode: Mode::resolve(env_mode, Mode::Exact)?,
                ..Config::new(suite)
            };
            let report = verify::run(&config);
            emit(
                &serde_json::to_value(&report).expect("report serializes"),
                out.as_ref(),
            )?;
            Ok(if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&CliError::Malformed(e.to_string().trim_end().to_string())),
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => fail(&err),
    }
}
