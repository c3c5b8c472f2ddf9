use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use algk_core::dsl::{self, ElabOptions};
use algk_core::ledger::{sign_ledger, LedgerTable};
use algk_core::report::CheckReport;
use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "algk", version, about = "Run symbolic algebroid checks declared in .geo files")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute the `check` statements of a document.
    Run {
        file: PathBuf,
        /// Only run checks of this suite.
        #[arg(long)]
        suite: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Also print the sign-convention table.
        #[arg(long)]
        ledger: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Writes to stdout; a reader that went away early is not an error.
fn emit(s: &str) -> std::io::Result<()> {
    match std::io::stdout().lock().write_all(s.as_bytes()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => other,
    }
}

fn run(file: PathBuf, suite: Option<String>, format: Format, ledger: bool) -> anyhow::Result<ExitCode> {
    let bytes = std::fs::read(&file).with_context(|| format!("reading {}", file.display()))?;
    let src = String::from_utf8_lossy(&bytes).into_owned();
    let result = dsl::parse_bytes(&bytes)
        .and_then(|doc| dsl::run(&doc, suite.as_deref(), &ElabOptions::from_env()));
    let reports: Vec<CheckReport> = match result {
        Ok(r) => r,
        Err(diag) => {
            eprintln!("{}:{}", file.display(), diag.render(&src));
            return Ok(ExitCode::from(2));
        }
    };
    let all_pass = reports.iter().all(CheckReport::passed);
    match format {
        Format::Text => {
            let mut out = String::new();
            if ledger {
                writeln!(out, "{}", LedgerTable(&sign_ledger()))?;
            }
            for r in &reports {
                writeln!(out, "{r}")?;
            }
            writeln!(out, "{} report(s), {}", reports.len(), if all_pass { "all pass" } else { "FAIL" })?;
            emit(&out)?;
        }
        Format::Json => {
            let out = if ledger {
                #[derive(serde::Serialize)]
                struct WithLedger<'a> {
                    ledger: Vec<algk_core::ledger::LedgerEntry>,
                    reports: &'a [CheckReport],
                }
                serde_json::to_string_pretty(&WithLedger {
                    ledger: sign_ledger(),
                    reports: &reports,
                })?
            } else {
                serde_json::to_string_pretty(&reports)?
            };
            emit(&(out + "\n"))?;
        }
    }
    Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Command::Run { file, suite, format, ledger } = cli.command;
    match run(file, suite, format, ledger) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
