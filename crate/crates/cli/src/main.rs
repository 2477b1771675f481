//! `bpfcheck`: exact verification reports with stable exit codes.
//!
//! Exit codes: 0 pass (or matches `--expect`), 1 fail or expectation
//! mismatch, 2 undecided, 64 usage error, 65 malformed manifest or
//! expectation file.

mod commands;
mod expect;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{ChainArgs, CommandError, ManifestSource};
use expect::Expectation;
use report::{render_csv, render_human, render_json, Output, Verdict};

const EXIT_USAGE: u8 = 64;
const MIN_PRECISION: u32 = 32;
const DEFAULT_PRECISION: u32 = 1000;
const PRECISION_ENV: &str = "BPF_PRECISION_CAP";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "bpfcheck", version, about = "Exact checks of basepoint-freeness threshold bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value = "human", global = true)]
    format: Format,
    /// Digit cap for interval refinement (at least 32). Overrides BPF_PRECISION_CAP.
    #[arg(long, global = true)]
    precision_digits: Option<u32>,
    /// JSON file pinning expected results.
    #[arg(long, global = true, value_name = "PATH")]
    expect: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Table of alpha_{g,d} with the minimising d marked.
    AlphaTable {
        #[arg(long, default_value_t = 6)]
        g_from: u32,
        #[arg(long, default_value_t = 12)]
        g_to: u32,
    },
    /// Classify every polarization type below the degree bound.
    Classify {
        #[arg(long)]
        g: u32,
    },
    /// Surface beta values from Pell equations and the bound for 6 <= d <= d-max.
    Pell {
        #[arg(long)]
        d_max: u64,
    },
    /// Run the builtin inequality ledger or a manifest file.
    Verify {
        /// Manifest JSON file (default: the builtin checks).
        #[arg(long, value_name = "PATH", conflicts_with = "falsified")]
        manifest: Option<String>,
        /// Run a falsified copy of each builtin check instead.
        #[arg(long)]
        falsified: bool,
    },
    /// Run the log canonical centre cutting chain for one profile.
    Chain {
        #[arg(long)]
        g: u32,
        /// Multiplicity at the point (default 801/100 for g = 5, 2g - alpha_g + margin otherwise).
        #[arg(long)]
        m: Option<String>,
        /// Margin above 2g - alpha_g (default 1/1000).
        #[arg(long)]
        margin: Option<String>,
        /// Use the weaker top-dimensional volume floor 5(g-2)!.
        #[arg(long)]
        ablate: bool,
    },
    /// Check g^g / (d^d C(g,d)) > (g-d)^(g-d), optionally with the sharper pi factor.
    Stirling {
        #[arg(long)]
        g_max: u32,
        #[arg(long)]
        refined: bool,
    },
}

fn precision_cap(flag: Option<u32>) -> Result<u32, CommandError> {
    let cap = match (flag, std::env::var(PRECISION_ENV)) {
        (Some(v), _) => v,
        (None, Ok(text)) => text
            .trim()
            .parse()
            .map_err(|_| CommandError::Usage(format!("{PRECISION_ENV} must be a positive integer, got {text:?}")))?,
        (None, Err(_)) => DEFAULT_PRECISION,
    };
    if cap < MIN_PRECISION {
        return Err(CommandError::Usage(format!("precision cap must be at least {MIN_PRECISION}, got {cap}")));
    }
    Ok(cap)
}

fn run(cli: &Cli) -> Result<Output, CommandError> {
    let cap = precision_cap(cli.precision_digits)?;
    match &cli.command {
        Command::AlphaTable { g_from, g_to } => commands::alpha_table(*g_from, *g_to),
        Command::Classify { g } => commands::classify_cmd(*g),
        Command::Pell { d_max } => commands::pell_cmd(*d_max),
        Command::Verify { manifest, falsified } => {
            let source = match (manifest, falsified) {
                (Some(path), _) => ManifestSource::File(path.clone()),
                (None, true) => ManifestSource::Falsified,
                (None, false) => ManifestSource::Builtin,
            };
            commands::verify_cmd(source, cap)
        }
        Command::Chain { g, m, margin, ablate } => commands::chain_cmd(&ChainArgs {
            g: *g,
            m: m.clone(),
            margin: margin.clone(),
            ablate: *ablate,
        }),
        Command::Stirling { g_max, refined } => commands::stirling_cmd(*g_max, *refined),
    }
}

fn load_expectation(path: &str) -> Result<Expectation, CommandError> {
    let text = std::fs::read_to_string(path).map_err(|e| CommandError::Input(format!("{path}: {e}")))?;
    Expectation::from_json(&text).map_err(|e| CommandError::Input(format!("{path}: {e}")))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let fail = |e: CommandError| {
        eprintln!("error: {}", e.message());
        ExitCode::from(e.exit_code() as u8)
    };
    let expectation = match cli.expect.as_deref().map(load_expectation).transpose() {
        Ok(x) => x,
        Err(e) => return fail(e),
    };
    let out = match run(&cli) {
        Ok(out) => out,
        Err(e) => return fail(e),
    };
    let text = match cli.format {
        Format::Human => render_human(&out),
        Format::Json => render_json(&out.report),
        Format::Csv => render_csv(&out.table),
    };
    print!("{text}");
    let verdict = out.report.verdict;
    let code = match &expectation {
        _ if verdict == Verdict::Undecided => verdict.exit_code(),
        Some(exp) => {
            let problems = exp.mismatches(&out.report);
            for p in &problems {
                eprintln!("expectation mismatch: {p}");
            }
            if problems.is_empty() { 0 } else { 1 }
        }
        None => verdict.exit_code(),
    };
    ExitCode::from(code as u8)
}
