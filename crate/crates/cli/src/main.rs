//! `smtwb`: corpus cleaning, tagged-text extraction, language modelling,
//! alignment symmetrization and MT evaluation from one binary.

mod commands;
mod config;
mod error;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{align, corpus, lm, score};
use config::PipelineConfig;
use error::{CliError, CliResult};
use io::Output;

#[derive(Debug, Parser)]
#[command(name = "smtwb", version, about = "Statistical MT preprocessing and evaluation workbench")]
struct Cli {
    /// TOML configuration; flags override its values
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Print structured JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Repair a parallel corpus and write the cleaned pair
    Clean(corpus::CleanArgs),
    /// Report corruption findings and dictionary coverage without changing anything
    Diagnose(corpus::CorpusArgs),
    /// Base-form and SVO corpora from tagged XML
    Extract(corpus::ExtractArgs),
    /// n-gram language models
    #[command(subcommand)]
    Lm(lm::LmCommand),
    /// Combine two directional word alignments
    Symmetrize(align::SymmetrizeArgs),
    /// Monotone/swap/discontinuous orientation statistics
    Msd(align::MsdArgs),
    /// BLEU, NIST, TER and METEOR of a system output
    Score(score::ScoreArgs),
}

fn run(cli: &Cli) -> CliResult {
    let cfg = PipelineConfig::load(cli.config.as_deref())?;
    if let Some(n) = cli.jobs.or(cfg.jobs) {
        if n == 0 {
            return Err(error::invalid("--jobs must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(anyhow::Error::new)?;
    }
    let out = Output { json: cli.json };
    match &cli.command {
        Command::Clean(a) => corpus::clean(a, &cfg, out),
        Command::Diagnose(a) => corpus::diagnose(a, &cfg, out),
        Command::Extract(a) => corpus::extract(a, &cfg, out),
        Command::Lm(c) => lm::run(c, &cfg, out),
        Command::Symmetrize(a) => align::symmetrize(a, &cfg, out),
        Command::Msd(a) => align::msd(a, out),
        Command::Score(a) => score::score(a, &cfg, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { error::EXIT_INVALID } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("smtwb: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Internal(e.into())
    }
}
