//! Evaluation stages: corpus metrics, significance testing, score QC,
//! budget allocation, and diagnostic correlations. Verdicts go to stdout;
//! exit codes only signal tool failures, never data verdicts.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde_json::json;

use bitext_forge::lang::LangScript;
use bitext_forge::metrics::{
    avg_lcsr, bleu as bleu_metric, bleu_pretokenized, bt_allocate as bt_allocate_metric,
    chrf_pp, lcsr as lcsr_metric, paired_bootstrap, qc_overlap_check, rank_correlations,
    BootstrapMetric, MetricResult,
};

use crate::config::PipelineConfig;
use crate::error::{input_err, Result};
use crate::ioutil::{data_err, read_floats, read_lines, read_to_string};
use crate::report::Stage;

fn print_metric(result: &MetricResult) {
    println!("{:.1}", result.score);
    println!("{}", result.signature);
}

/// Parses a JSON object of name → score, e.g. {"system_a": 41.2, ...}.
fn read_score_map(path: &Path) -> Result<BTreeMap<String, f64>> {
    let text = read_to_string(path)?;
    serde_json::from_str(&text)
        .map_err(|e| input_err(format!("{}: {e}", path.display())))
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Tokenization {
    /// Punctuation-splitting default tokenizer.
    #[value(name = "13a")]
    Thirteen,
    /// Split on whitespace only; input is already tokenized.
    #[value(name = "none")]
    Pretokenized,
}

#[derive(Args)]
pub struct BleuArgs {
    /// Hypothesis translations, one per line.
    #[arg(long)]
    hyp: PathBuf,
    /// Reference translations, line-aligned with --hyp.
    #[arg(long = "ref")]
    reference: PathBuf,
    /// Tokenization applied before n-gram counting.
    #[arg(long, value_enum, default_value = "13a")]
    tok: Tokenization,
}

pub fn bleu(args: &BleuArgs, config: &PipelineConfig) -> Result<()> {
    let stage = Stage::begin("bleu");
    let hyps = read_lines(&args.hyp)?;
    let refs = read_lines(&args.reference)?;
    let result = match args.tok {
        Tokenization::Thirteen => bleu_metric(&hyps, &refs),
        Tokenization::Pretokenized => bleu_pretokenized(&hyps, &refs),
    }
    .map_err(data_err)?;
    print_metric(&result);
    stage.finish(
        hyps.len(),
        1,
        json!({
            "hyp": args.hyp.display().to_string(),
            "ref": args.reference.display().to_string(),
            "score": result.score,
            "signature": result.signature,
            "config": config,
        }),
    );
    Ok(())
}

#[derive(Args)]
pub struct ChrfppArgs {
    /// Hypothesis translations, one per line.
    #[arg(long)]
    hyp: PathBuf,
    /// Reference translations, line-aligned with --hyp.
    #[arg(long = "ref")]
    reference: PathBuf,
}

pub fn chrfpp(args: &ChrfppArgs, config: &PipelineConfig) -> Result<()> {
    let stage = Stage::begin("chrfpp");
    let hyps = read_lines(&args.hyp)?;
    let refs = read_lines(&args.reference)?;
    let result = chrf_pp(&hyps, &refs).map_err(data_err)?;
    print_metric(&result);
    stage.finish(
        hyps.len(),
        1,
        json!({
            "hyp": args.hyp.display().to_string(),
            "ref": args.reference.display().to_string(),
            "score": result.score,
            "signature": result.signature,
            "config": config,
        }),
    );
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricChoice {
    Bleu,
    Chrfpp,
}

#[derive(Args)]
pub struct SignificanceArgs {
    /// Hypotheses from system A, one per line.
    #[arg(long)]
    hyp_a: PathBuf,
    /// Hypotheses from system B, line-aligned with --hyp-a.
    #[arg(long)]
    hyp_b: PathBuf,
    /// Shared references, line-aligned with both hypothesis files.
    #[arg(long = "ref")]
    reference: PathBuf,
    /// Metric to resample.
    #[arg(long, value_enum, default_value = "bleu")]
    metric: MetricChoice,
}

pub fn significance(args: &SignificanceArgs, config: &PipelineConfig) -> Result<()> {
    let stage = Stage::begin("significance");
    let hyps_a = read_lines(&args.hyp_a)?;
    let hyps_b = read_lines(&args.hyp_b)?;
    let refs = read_lines(&args.reference)?;
    let (metric, metric_name) = match args.metric {
        MetricChoice::Bleu => (BootstrapMetric::Bleu, "bleu"),
        MetricChoice::Chrfpp => (BootstrapMetric::ChrfPp, "chrfpp"),
    };
    let result = paired_bootstrap(
        &hyps_a,
        &hyps_b,
        &refs,
        metric,
        config.bootstrap_trials,
        config.seed,
        config.alpha,
    )
    .map_err(data_err)?;
    let verdict = json!({
        "metric": metric_name,
        "score_a": result.score_a,
        "score_b": result.score_b,
        "delta": result.delta,
        "p_value": result.p_value,
        "trials": result.trials,
        "seed": result.seed,
        "alpha": config.alpha,
        "significant": result.significant,
    });
    println!("{verdict}");
    stage.finish(
        refs.len(),
        1,
        json!({
            "hyp_a": args.hyp_a.display().to_string(),
            "hyp_b": args.hyp_b.display().to_string(),
            "ref": args.reference.display().to_string(),
            "verdict": verdict,
            "config": config,
        }),
    );
    Ok(())
}

#[derive(Args)]
pub struct QcCheckArgs {
    /// JSON object of system name → score on the shared overlap set.
    #[arg(long)]
    scores: PathBuf,
}

pub fn qc_check(args: &QcCheckArgs, config: &PipelineConfig) -> Result<()> {
    let stage = Stage::begin("qc-check");
    let scores = read_score_map(&args.scores)?;
    let verdict = qc_overlap_check(&scores, config.qc_delta).map_err(data_err)?;
    let out = json!({
        "per_system_bleu": verdict.per_system_bleu,
        "max_pairwise_delta": verdict.max_pairwise_delta,
        "delta": config.qc_delta,
        "accepted": verdict.accepted,
        "suspected": verdict.suspected,
    });
    println!("{out}");
    stage.finish(
        scores.len(),
        1,
        json!({
            "scores": args.scores.display().to_string(),
            "verdict": out,
            "config": config,
        }),
    );
    Ok(())
}

#[derive(Args)]
pub struct BtAllocateArgs {
    /// JSON object of language code → score, e.g. {"hin_Deva": 50.0}.
    #[arg(long)]
    scores: PathBuf,
    /// Total sentence budget to split.
    #[arg(long)]
    total: u64,
}

pub fn bt_allocate(args: &BtAllocateArgs, config: &PipelineConfig) -> Result<()> {
    let stage = Stage::begin("bt-allocate");
    let raw = read_score_map(&args.scores)?;
    let mut scores: BTreeMap<LangScript, f64> = BTreeMap::new();
    for (code, score) in raw {
        let lang = LangScript::parse(&code)
            .map_err(|e| input_err(format!("{}: {e}", args.scores.display())))?;
        scores.insert(lang, score);
    }
    let allocation = bt_allocate_metric(&scores, args.total).map_err(data_err)?;
    let per_lang: BTreeMap<String, u64> = allocation
        .per_lang_count
        .iter()
        .map(|(lang, &count)| (lang.code(), count))
        .collect();
    let out = json!({ "total": allocation.total, "per_lang_count": per_lang });
    println!("{out}");
    stage.finish(
        scores.len(),
        per_lang.len(),
        json!({
            "scores": args.scores.display().to_string(),
            "allocation": out,
            "config": config,
        }),
    );
    Ok(())
}

#[derive(Args)]
pub struct LcsrArgs {
    /// Left-hand strings, one per line.
    #[arg(long)]
    left: PathBuf,
    /// Right-hand strings, line-aligned with --left.
    #[arg(long)]
    right: PathBuf,
    /// Print one ratio per line instead of the corpus average.
    #[arg(long)]
    per_line: bool,
}

pub fn lcsr(args: &LcsrArgs, config: &PipelineConfig) -> Result<()> {
    let stage = Stage::begin("lcsr");
    let left = read_lines(&args.left)?;
    let right = read_lines(&args.right)?;
    if left.len() != right.len() {
        return Err(input_err(format!(
            "line counts differ: {} has {}, {} has {}",
            args.left.display(),
            left.len(),
            args.right.display(),
            right.len()
        )));
    }
    if args.per_line {
        for (a, b) in left.iter().zip(&right) {
            println!("{:.6}", lcsr_metric(a, b));
        }
    } else {
        let pairs: Vec<(String, String)> = left.iter().cloned().zip(right.iter().cloned()).collect();
        println!("{:.6}", avg_lcsr(&pairs).map_err(data_err)?);
    }
    stage.finish(
        left.len(),
        if args.per_line { left.len() } else { 1 },
        json!({
            "left": args.left.display().to_string(),
            "right": args.right.display().to_string(),
            "per_line": args.per_line,
            "config": config,
        }),
    );
    Ok(())
}

#[derive(Args)]
pub struct CorrelateArgs {
    /// First score series, one number per line.
    #[arg(long)]
    x: PathBuf,
    /// Second score series, line-aligned with --x.
    #[arg(long)]
    y: PathBuf,
}

pub fn correlate(args: &CorrelateArgs, config: &PipelineConfig) -> Result<()> {
    let stage = Stage::begin("correlate");
    let xs = read_floats(&args.x)?;
    let ys = read_floats(&args.y)?;
    let (pearson, kendall) = rank_correlations(&xs, &ys).map_err(data_err)?;
    let out = json!({ "pearson": pearson, "kendall_tau": kendall });
    println!("{out}");
    stage.finish(
        xs.len(),
        1,
        json!({
            "x": args.x.display().to_string(),
            "y": args.y.display().to_string(),
            "result": out,
            "config": config,
        }),
    );
    Ok(())
}
