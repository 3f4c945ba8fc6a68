// Copyright 2026 The qsearch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::CliError;
use crate::output::Format;

/// Grover search over arbitrary-size search spaces.
#[derive(Debug, Parser)]
#[command(name = "qsearch", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the uniform preparation circuit for N items and report its size.
    Prepare(PrepareArgs),
    /// Simulate a search and report success probability and iteration counts.
    Search(SearchArgs),
    /// Compare padded and exact iteration counts for one (N, M).
    Compare(CompareArgs),
    /// Write an improvement sweep as CSV.
    Analyze(AnalyzeArgs),
    /// Write one circuit block as OpenQASM 3.
    ExportQasm(ExportArgs),
}

#[derive(Debug, Args)]
struct PrepareArgs {
    #[arg(long = "n-items", value_name = "N")]
    n_items: u64,
    /// Simulate the circuit and report uniformity and leakage.
    #[arg(long)]
    probabilities: bool,
    #[arg(long = "emit-qasm", value_name = "PATH")]
    emit_qasm: Option<std::path::PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long = "n-items", value_name = "N")]
    n_items: u64,
    /// Comma-separated marked indices, e.g. `9` or `1,5,7`.
    #[arg(long, value_name = "LIST")]
    marked: String,
    /// Iteration count; defaults to floor((pi/4) sqrt(N/M)).
    #[arg(long, value_name = "K")]
    iterations: Option<u64>,
    #[arg(long, value_name = "S")]
    shots: Option<u64>,
    #[arg(long, value_name = "SEED")]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[arg(long = "n-items", value_name = "N")]
    n_items: u64,
    #[arg(long, value_name = "M")]
    m: u64,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Series {
    /// N = 2^(n-1) + 1
    #[value(name = "pow2plus1")]
    Pow2Plus1,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("family").required(true).args(["sweep", "series"]))]
struct AnalyzeArgs {
    /// Every N in FROM..TO (inclusive).
    #[arg(long, value_name = "FROM..TO", value_parser = parse_range)]
    sweep: Option<(u64, u64)>,
    #[arg(long, value_enum, requires = "n")]
    series: Option<Series>,
    /// Exponent range for --series (inclusive).
    #[arg(long, value_name = "FROM..TO", value_parser = parse_range)]
    n: Option<(u64, u64)>,
    #[arg(long, value_name = "M")]
    m: u64,
    #[arg(long, value_name = "PATH")]
    out: std::path::PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Block {
    Prep,
    Oracle,
    ZeroReflection,
    Grover,
}

#[derive(Debug, Args)]
struct ExportArgs {
    #[arg(long, value_enum)]
    block: Block,
    #[arg(long = "n-items", value_name = "N")]
    n_items: u64,
    #[arg(long, value_name = "LIST")]
    marked: Option<String>,
    #[arg(long, value_name = "PATH")]
    out: std::path::PathBuf,
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (from, to) = s
        .split_once("..")
        .ok_or_else(|| format!("expected FROM..TO, got `{s}`"))?;
    let num = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("`{t}`: {e}"));
    Ok((num(from)?, num(to)?))
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Prepare(a) => {
            commands::prepare(a.n_items, a.probabilities, a.emit_qasm.as_deref(), a.format)
        }
        Command::Search(a) => commands::search(
            a.n_items,
            &a.marked,
            a.iterations,
            a.shots,
            a.seed,
            a.format,
        ),
        Command::Compare(a) => commands::compare(a.n_items, a.m, a.format),
        Command::Analyze(a) => {
            let family = match (a.sweep, a.series, a.n) {
                (Some((from, to)), None, _) => commands::Family::Sweep { from, to },
                (None, Some(Series::Pow2Plus1), Some((from, to))) => {
                    commands::Family::Pow2Plus1 { from, to }
                }
                _ => {
                    return Err(CliError::Usage(
                        "give either --sweep or --series with --n".into(),
                    ))
                }
            };
            commands::analyze(family, a.m, &a.out, a.format)
        }
        Command::ExportQasm(a) => {
            let block = match a.block {
                Block::Prep => commands::BlockKind::Prep,
                Block::Oracle => commands::BlockKind::Oracle,
                Block::ZeroReflection => commands::BlockKind::ZeroReflection,
                Block::Grover => commands::BlockKind::Grover,
            };
            commands::export_qasm(block, a.n_items, a.marked.as_deref(), &a.out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
