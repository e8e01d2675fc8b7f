//! Streaming text stages: normalize, filter, dedup. Memory stays
//! proportional to a bounded chunk plus (for dedup) the key set.

use std::collections::HashSet;
use std::io::BufRead;
use std::path::{Path, PathBuf};

use clap::Args;
use serde_json::json;

use bitext_forge::filter::{
    dedup_against_benchmarks, dedup_key, filter_sentences, Blocklist, FilterReport,
    LidPredictions, Sentence, SentenceFilterConfig,
};
use bitext_forge::lang::normalize as normalize_text;
use bitext_forge::mine::{format_mining_tsv, parse_mining_tsv, MineError};

use crate::config::PipelineConfig;
use crate::error::{config_err, input_err, Result};
use crate::ioutil::{
    data_err, flush, open_input, open_output, parse_lang_flag, read_lines, read_to_string,
    resolve_path,
};
use crate::report::Stage;

const CHUNK_LINES: usize = 8192;

fn read_line_checked(
    line: std::io::Result<String>,
    source: &str,
    line_no: usize,
) -> Result<String> {
    line.map_err(|e| input_err(format!("{source} line {line_no}: {e}")))
}

#[derive(Args)]
pub struct NormalizeArgs {
    /// Input text, one sentence per line (default: config `corpus`, else stdin).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Output file (default: stdout).
    #[arg(long)]
    output: Option<PathBuf>,
}

pub fn normalize(args: &NormalizeArgs, config: &PipelineConfig) -> Result<()> {
    let stage = Stage::begin("normalize");
    let input = resolve_path(args.input.as_deref(), config.corpus.as_deref());
    let (reader, input_name) = open_input(input)?;
    let (mut writer, output_name) = open_output(args.output.as_deref())?;
    let mut count = 0usize;
    for (idx, line) in reader.lines().enumerate() {
        let line = read_line_checked(line, &input_name, idx + 1)?;
        writeln!(writer, "{}", normalize_text(&line))
            .map_err(|e| input_err(format!("writing {output_name}: {e}")))?;
        count += 1;
    }
    flush(writer, &output_name)?;
    stage.finish(
        count,
        count,
        json!({ "input": input_name, "output": output_name, "config": config }),
    );
    Ok(())
}

#[derive(Args)]
pub struct FilterArgs {
    /// Expected language of every input sentence, e.g. hin_Deva.
    #[arg(long)]
    lang: String,
    /// Input text, one sentence per line (default: config `corpus`, else stdin).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Output file for kept sentences (default: stdout).
    #[arg(long)]
    output: Option<PathBuf>,
    /// Blocklist file (default: config `blocklist`).
    #[arg(long)]
    blocklist: Option<PathBuf>,
    /// External LID predictions (default: config `lid_predictions`).
    #[arg(long)]
    lid_predictions: Option<PathBuf>,
}

pub fn filter(args: &FilterArgs, config: &PipelineConfig) -> Result<()> {
    let stage = Stage::begin("filter");
    let expected = parse_lang_flag(&args.lang)?;
    let blocklist = match resolve_path(args.blocklist.as_deref(), config.blocklist.as_deref()) {
        Some(path) => Blocklist::parse(&read_to_string(path)?),
        None => Blocklist::default(),
    };
    let lid_predictions =
        match resolve_path(args.lid_predictions.as_deref(), config.lid_predictions.as_deref()) {
            Some(path) => Some(LidPredictions::parse(&read_to_string(path)?).map_err(data_err)?),
            None => None,
        };
    let filter_config = SentenceFilterConfig {
        min_words: config.min_words,
        max_words: config.max_words,
        expected: expected.clone(),
        min_lid_confidence: config.min_lid_confidence,
        blocklist,
        lid_predictions,
    };

    let input = resolve_path(args.input.as_deref(), config.corpus.as_deref());
    let (reader, input_name) = open_input(input)?;
    let (mut writer, output_name) = open_output(args.output.as_deref())?;
    let mut totals = FilterReport::new(0);
    let mut next_id = 0u64;
    let mut lines = reader.lines();
    loop {
        let mut chunk = Vec::with_capacity(CHUNK_LINES);
        for line in lines.by_ref().take(CHUNK_LINES) {
            let line = read_line_checked(line, &input_name, next_id as usize + chunk.len() + 1)?;
            let id = next_id + chunk.len() as u64;
            chunk.push(Sentence::new(id, line, expected.clone(), input_name.as_str()));
        }
        if chunk.is_empty() {
            break;
        }
        next_id += chunk.len() as u64;
        let (kept, report) = filter_sentences(chunk, &filter_config);
        totals.input_count += report.input_count;
        totals.kept_count += report.kept_count;
        for (reason, count) in report.dropped_by_reason {
            *totals.dropped_by_reason.entry(reason).or_default() += count;
        }
        for sentence in kept {
            writeln!(writer, "{}", sentence.text)
                .map_err(|e| input_err(format!("writing {output_name}: {e}")))?;
        }
    }
    flush(writer, &output_name)?;
    stage.finish(
        totals.input_count,
        totals.kept_count,
        json!({
            "input": input_name,
            "output": output_name,
            "lang": expected.code(),
            "filter": totals,
            "config": config,
        }),
    );
    Ok(())
}

#[derive(Args)]
pub struct DedupArgs {
    /// Input (default: config `corpus`, else stdin): plain text lines, or
    /// mined six-column TSV when --benchmarks is given.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Output file (default: stdout).
    #[arg(long)]
    output: Option<PathBuf>,
    /// Benchmark sentences to decontaminate against (default: config
    /// `benchmarks`); switches the input format to mined TSV.
    #[arg(long)]
    benchmarks: Option<PathBuf>,
    /// Source language of TSV pairs (required with --benchmarks).
    #[arg(long)]
    src_lang: Option<String>,
    /// Target language of TSV pairs (required with --benchmarks).
    #[arg(long)]
    tgt_lang: Option<String>,
}

pub fn dedup(args: &DedupArgs, config: &PipelineConfig) -> Result<()> {
    match resolve_path(args.benchmarks.as_deref(), config.benchmarks.as_deref()) {
        Some(benchmarks) => dedup_benchmarks(args, config, benchmarks),
        None => dedup_self(args, config),
    }
}

/// Keeps the first occurrence of each dedup key; later case, punctuation,
/// and spacing variants drop. Memory holds one key per distinct line.
fn dedup_self(args: &DedupArgs, config: &PipelineConfig) -> Result<()> {
    let stage = Stage::begin("dedup");
    let input = resolve_path(args.input.as_deref(), config.corpus.as_deref());
    let (reader, input_name) = open_input(input)?;
    let (mut writer, output_name) = open_output(args.output.as_deref())?;
    let mut seen: HashSet<String> = HashSet::new();
    let mut input_count = 0usize;
    let mut kept = 0usize;
    for (idx, line) in reader.lines().enumerate() {
        let line = read_line_checked(line, &input_name, idx + 1)?;
        input_count += 1;
        if seen.insert(dedup_key(&line).into_string()) {
            writeln!(writer, "{line}")
                .map_err(|e| input_err(format!("writing {output_name}: {e}")))?;
            kept += 1;
        }
    }
    flush(writer, &output_name)?;
    stage.finish(
        input_count,
        kept,
        json!({
            "input": input_name,
            "output": output_name,
            "mode": "self",
            "distinct_keys": seen.len(),
            "config": config,
        }),
    );
    Ok(())
}

/// Drops mined pairs whose source or target collides with a benchmark
/// sentence under the dedup key.
fn dedup_benchmarks(
    args: &DedupArgs,
    config: &PipelineConfig,
    benchmarks_path: &Path,
) -> Result<()> {
    let stage = Stage::begin("dedup");
    let (Some(src_lang), Some(tgt_lang)) = (&args.src_lang, &args.tgt_lang) else {
        return Err(config_err("dedup --benchmarks requires --src-lang and --tgt-lang"));
    };
    let src_lang = parse_lang_flag(src_lang)?;
    let tgt_lang = parse_lang_flag(tgt_lang)?;
    let benchmarks = read_lines(benchmarks_path)?;

    let input = resolve_path(args.input.as_deref(), config.corpus.as_deref());
    let (reader, input_name) = open_input(input)?;
    let (mut writer, output_name) = open_output(args.output.as_deref())?;
    let mut totals = FilterReport::new(0);
    let mut lines = reader.lines();
    let mut chunk_start = 1usize;
    loop {
        let mut chunk = Vec::with_capacity(CHUNK_LINES);
        for line in lines.by_ref().take(CHUNK_LINES) {
            chunk.push(read_line_checked(line, &input_name, chunk_start + chunk.len())?);
        }
        if chunk.is_empty() {
            break;
        }
        let pairs = parse_mining_tsv(&chunk.join("\n"), &src_lang, &tgt_lang).map_err(
            |e| match e {
                MineError::BitextLine { line, reason } => input_err(format!(
                    "{input_name} line {}: {reason}",
                    chunk_start + line - 1
                )),
                other => data_err(other),
            },
        )?;
        chunk_start += chunk.len();
        let (kept, report) = dedup_against_benchmarks(pairs, &benchmarks);
        totals.input_count += report.input_count;
        totals.kept_count += report.kept_count;
        for (reason, count) in report.dropped_by_reason {
            *totals.dropped_by_reason.entry(reason).or_default() += count;
        }
        write!(writer, "{}", format_mining_tsv(&kept))
            .map_err(|e| input_err(format!("writing {output_name}: {e}")))?;
    }
    flush(writer, &output_name)?;
    stage.finish(
        totals.input_count,
        totals.kept_count,
        json!({
            "input": input_name,
            "output": output_name,
            "mode": "benchmarks",
            "benchmarks": benchmarks_path.display().to_string(),
            "benchmark_count": benchmarks.len(),
            "filter": totals,
            "config": config,
        }),
    );
    Ok(())
}
