//! Pipeline front-end: every corpus stage and metric as a subcommand,
//! driven by a strict JSON config, with one JSON report line per stage
//! on standard error.
//!
//! Exit codes: 0 success, 1 input/format error, 2 configuration or
//! usage error. `BITEXT_FORGE_LOG` (error/info/debug) controls logging.

mod commands;
mod config;
mod error;
mod ioutil;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{load_config, PipelineConfig};
use error::Result;

#[derive(Parser)]
#[command(
    name = "bitext-forge",
    version,
    about = "Parallel-corpus mining, filtering, and evaluation pipeline"
)]
struct Cli {
    /// Pipeline configuration file (strict JSON).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads (default: logical CPUs).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed override for randomized stages.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normalize text line by line (whitespace, punctuation, controls).
    Normalize(commands::text::NormalizeArgs),
    /// Filter sentences by length, language id, and blocklist.
    Filter(commands::text::FilterArgs),
    /// Drop duplicate lines, or mined pairs overlapping a benchmark set.
    Dedup(commands::text::DedupArgs),
    /// Build and save an IVF-PQ index over an embedding file.
    IndexBuild(commands::mining::IndexBuildArgs),
    /// Mine best-cosine pairs from two monolingual collections.
    MineMono(commands::mining::MineMonoArgs),
    /// Mine margin-scored pairs from two comparable documents.
    MineComparable(commands::mining::MineComparableArgs),
    /// Re-score an existing corpus, keeping pairs above the cosine threshold.
    Refilter(commands::mining::RefilterArgs),
    /// Corpus BLEU of a hypothesis file against a reference file.
    Bleu(commands::scoring::BleuArgs),
    /// Corpus chrF++ of a hypothesis file against a reference file.
    Chrfpp(commands::scoring::ChrfppArgs),
    /// Paired bootstrap significance test between two systems.
    Significance(commands::scoring::SignificanceArgs),
    /// Check per-system benchmark scores for contamination spread.
    QcCheck(commands::scoring::QcCheckArgs),
    /// Split a sentence budget across languages proportional to scores.
    BtAllocate(commands::scoring::BtAllocateArgs),
    /// Longest-common-subsequence ratio over aligned line pairs.
    Lcsr(commands::scoring::LcsrArgs),
    /// Pearson and Kendall tau-b correlation of two numeric columns.
    Correlate(commands::scoring::CorrelateArgs),
    /// Convert raw little-endian f32 embeddings to the EMBF format.
    EmbedConvert(commands::mining::EmbedConvertArgs),
}

fn effective_config(cli: &Cli) -> Result<PipelineConfig> {
    let mut config = match &cli.config {
        Some(path) => load_config(path)?,
        None => PipelineConfig::default(),
    };
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    Ok(config)
}

fn run(cli: Cli) -> Result<()> {
    let config = effective_config(&cli)?;
    match &cli.command {
        Command::Normalize(args) => commands::text::normalize(args, &config),
        Command::Filter(args) => commands::text::filter(args, &config),
        Command::Dedup(args) => commands::text::dedup(args, &config),
        Command::IndexBuild(args) => commands::mining::index_build(args, &config),
        Command::MineMono(args) => commands::mining::mine_mono(args, &config),
        Command::MineComparable(args) => commands::mining::mine_comparable(args, &config),
        Command::Refilter(args) => commands::mining::refilter(args, &config),
        Command::Bleu(args) => commands::scoring::bleu(args, &config),
        Command::Chrfpp(args) => commands::scoring::chrfpp(args, &config),
        Command::Significance(args) => commands::scoring::significance(args, &config),
        Command::QcCheck(args) => commands::scoring::qc_check(args, &config),
        Command::BtAllocate(args) => commands::scoring::bt_allocate(args, &config),
        Command::Lcsr(args) => commands::scoring::lcsr(args, &config),
        Command::Correlate(args) => commands::scoring::correlate(args, &config),
        Command::EmbedConvert(args) => commands::mining::embed_convert(args, &config),
    }
}

fn main() -> ExitCode {
    // Unknown subcommands and malformed flags exit 2 through clap with
    // the usage text.
    let cli = Cli::parse();
    env_logger::Builder::from_env(
        env_logger::Env::new().filter_or("BITEXT_FORGE_LOG", "error"),
    )
    .init();
    let jobs = cli.jobs.unwrap_or_else(|| {
        std::thread::available_parallelism().map(usize::from).unwrap_or(1)
    });
    // A failure here means a pool already exists (as in tests); the
    // existing one serves.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
