//! `ensb`: resonant spontaneous bremsstrahlung scans for an electron
//! scattered by a nucleus in two pulsed circularly polarized laser waves.
//!
//! Subcommands: `profile` (resonance peak profiles), `ratio` (enhancement
//! over the field-free Bethe-Heitler baseline), `sweep` (generic parameter
//! sweep), `point` (single evaluation). Exit codes: 0 success, 2 config
//! error, 3 numerical error.

mod config;
mod output;
mod scans;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{parse_config, Format, Mode};

#[derive(Parser)]
#[command(name = "ensb", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// TOML configuration file (defaults apply when omitted).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Dotted-path override, e.g. --set electron.velocity=0.1 (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    set: Vec<String>,

    /// Output file (stdout when omitted); overrides output.path.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Output format; overrides output.format.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,

    /// Worker threads for grid evaluation; overrides ENSB_THREADS.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Resonance peak profile over the detuning parameter beta.
    Profile,
    /// Enhancement ratio over the Bethe-Heitler baseline vs initial velocity.
    Ratio,
    /// Sweep one configuration variable and tabulate derived observables.
    Sweep,
    /// Single-point evaluation at the configured parameters.
    Point,
}

const EXIT_CONFIG: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

fn thread_count(flag: Option<usize>) -> Result<usize, String> {
    let n = match flag {
        Some(n) => n,
        None => match std::env::var("ENSB_THREADS") {
            Ok(s) => s
                .parse::<usize>()
                .map_err(|_| format!("ENSB_THREADS = '{s}' is not a positive integer"))?,
            Err(_) => 1,
        },
    };
    if n == 0 {
        return Err("thread count must be at least 1".to_string());
    }
    Ok(n)
}

fn run(cli: Cli) -> Result<(), (u8, String)> {
    let mode = match cli.command {
        Command::Profile => Mode::Profile,
        Command::Ratio => Mode::Ratio,
        Command::Sweep => Mode::Sweep,
        Command::Point => Mode::Point,
    };
    let threads = thread_count(cli.threads).map_err(|e| (EXIT_CONFIG, format!("config error: {e}")))?;
    let mut resolved = parse_config(cli.config.as_deref(), &cli.set, mode)
        .map_err(|e| (EXIT_CONFIG, e.to_string()))?;
    if let Some(format) = cli.format {
        resolved.config.output.format = format;
    }
    if let Some(path) = &cli.output {
        resolved.config.output.path = Some(path.display().to_string());
    }
    for warning in &resolved.warnings {
        eprintln!("warning: {warning}");
    }

    let result = match mode {
        Mode::Profile => scans::run_profile_scan(&resolved, threads),
        Mode::Ratio => scans::run_ratio_scan(&resolved, threads),
        Mode::Sweep => scans::run_sweep(&resolved, threads),
        Mode::Point => scans::run_point(&resolved),
    }
    .map_err(|e| (EXIT_NUMERICAL, format!("numerical error: {e}")))?;

    let text = output::render(
        &resolved.echo(),
        &result,
        resolved.config.output.format,
        resolved.config.output.precision,
    );
    let path = resolved.config.output.path.as_ref().map(PathBuf::from);
    output::write_output(&text, path.as_deref())
        .map_err(|e| (EXIT_NUMERICAL, format!("output error: {e}")))?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, message)) => {
            eprintln!("{message}");
            ExitCode::from(code)
        }
    }
}
