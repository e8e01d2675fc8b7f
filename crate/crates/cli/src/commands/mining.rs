//! Index construction and bitext mining stages. These run in memory: the
//! embedding matrices dominate, and they must be resident to mine anyway.

use std::path::{Path, PathBuf};

use clap::Args;
use serde_json::json;

use bitext_forge::embed::{load_embeddings, save_embeddings, EmbeddingMatrix};
use bitext_forge::filter::Sentence;
use bitext_forge::index::{build_index, build_shard_set, save_index};
use bitext_forge::lang::LangScript;
use bitext_forge::mine::{
    self, filter_existing, format_mining_tsv, parse_bitext_tsv, retention_percent,
};

use crate::config::PipelineConfig;
use crate::error::{input_err, Result};
use crate::ioutil::{
    data_err, flush, open_output, parse_lang_flag, read_lines, read_to_string, require_path,
};
use crate::report::Stage;

fn load_normalized_embeddings(path: &Path) -> Result<EmbeddingMatrix> {
    let matrix = load_embeddings(path)
        .map_err(|e| input_err(format!("{}: {e}", path.display())))?;
    if !matrix.is_normalized() {
        return Err(input_err(format!(
            "{}: embeddings are not L2-normalized; rerun embed-convert with --normalize",
            path.display()
        )));
    }
    Ok(matrix)
}

/// Reads one sentence per line, assigning ids by line order — the same
/// order as the rows of the matching embedding file.
fn load_sentences(path: &Path, lang: &LangScript) -> Result<Vec<Sentence>> {
    let name = path.display().to_string();
    Ok(read_lines(path)?
        .into_iter()
        .enumerate()
        .map(|(id, text)| Sentence::new(id as u64, text, lang.clone(), name.as_str()))
        .collect())
}

fn write_pairs(
    output: Option<&Path>,
    pairs: &[bitext_forge::mine::BitextPair],
) -> Result<String> {
    let (mut writer, output_name) = open_output(output)?;
    write!(writer, "{}", format_mining_tsv(pairs))
        .map_err(|e| input_err(format!("writing {output_name}: {e}")))?;
    flush(writer, &output_name)?;
    Ok(output_name)
}

#[derive(Args)]
pub struct IndexBuildArgs {
    /// Normalized embeddings to index (default: config `embeddings`).
    #[arg(long)]
    embeddings: Option<PathBuf>,
    /// Where to write the serialized index.
    #[arg(long)]
    output: PathBuf,
}

pub fn index_build(args: &IndexBuildArgs, config: &PipelineConfig) -> Result<()> {
    let stage = Stage::begin("index-build");
    let path = require_path(
        args.embeddings.as_deref(),
        config.embeddings.as_deref(),
        "embeddings",
        "embeddings",
    )?;
    let matrix = load_normalized_embeddings(&path)?;
    let index = build_index(&matrix, config.k_c, config.m_sub, config.seed)
        .map_err(data_err)?;
    save_index(&args.output, &index)
        .map_err(|e| input_err(format!("{}: {e}", args.output.display())))?;
    stage.finish(
        matrix.n(),
        matrix.n(),
        json!({
            "embeddings": path.display().to_string(),
            "output": args.output.display().to_string(),
            "n": matrix.n(),
            "d": matrix.d(),
            "config": config,
        }),
    );
    Ok(())
}

#[derive(Args)]
pub struct MineMonoArgs {
    /// Query sentences, one per line.
    #[arg(long)]
    queries: PathBuf,
    /// Embeddings for the query sentences, row-aligned with --queries.
    #[arg(long)]
    query_embeds: PathBuf,
    /// Target sentences, one per line.
    #[arg(long)]
    targets: PathBuf,
    /// Embeddings for the target sentences, row-aligned with --targets.
    #[arg(long)]
    target_embeds: PathBuf,
    /// Language of the query side, e.g. eng_Latn.
    #[arg(long)]
    src_lang: String,
    /// Language of the target side, e.g. hin_Deva.
    #[arg(long)]
    tgt_lang: String,
    /// Output TSV (default: stdout).
    #[arg(long)]
    output: Option<PathBuf>,
}

pub fn mine_mono(args: &MineMonoArgs, config: &PipelineConfig) -> Result<()> {
    let stage = Stage::begin("mine-mono");
    let src_lang = parse_lang_flag(&args.src_lang)?;
    let tgt_lang = parse_lang_flag(&args.tgt_lang)?;
    let queries = load_sentences(&args.queries, &src_lang)?;
    let query_embeds = load_normalized_embeddings(&args.query_embeds)?;
    let targets = load_sentences(&args.targets, &tgt_lang)?;
    let target_embeds = load_normalized_embeddings(&args.target_embeds)?;
    let shards = build_shard_set(
        &target_embeds,
        config.shards,
        config.k_c,
        config.m_sub,
        config.seed,
    )
    .map_err(data_err)?;
    let pairs =
        mine::mine_monolingual(&queries, &query_embeds, &shards, &targets, &config.mining())
            .map_err(data_err)?;
    let output_name = write_pairs(args.output.as_deref(), &pairs)?;
    stage.finish(
        queries.len(),
        pairs.len(),
        json!({
            "queries": args.queries.display().to_string(),
            "targets": args.targets.display().to_string(),
            "target_count": targets.len(),
            "output": output_name,
            "config": config,
        }),
    );
    Ok(())
}

#[derive(Args)]
pub struct MineComparableArgs {
    /// Source-side sentences, one per line.
    #[arg(long)]
    src: PathBuf,
    /// Embeddings for the source side, row-aligned with --src.
    #[arg(long)]
    src_embeds: PathBuf,
    /// Target-side sentences, one per line.
    #[arg(long)]
    tgt: PathBuf,
    /// Embeddings for the target side, row-aligned with --tgt.
    #[arg(long)]
    tgt_embeds: PathBuf,
    /// Language of the source side.
    #[arg(long)]
    src_lang: String,
    /// Language of the target side.
    #[arg(long)]
    tgt_lang: String,
    /// Output TSV (default: stdout).
    #[arg(long)]
    output: Option<PathBuf>,
}

pub fn mine_comparable(args: &MineComparableArgs, config: &PipelineConfig) -> Result<()> {
    let stage = Stage::begin("mine-comparable");
    let src_lang = parse_lang_flag(&args.src_lang)?;
    let tgt_lang = parse_lang_flag(&args.tgt_lang)?;
    let src = load_sentences(&args.src, &src_lang)?;
    let src_embeds = load_normalized_embeddings(&args.src_embeds)?;
    let tgt = load_sentences(&args.tgt, &tgt_lang)?;
    let tgt_embeds = load_normalized_embeddings(&args.tgt_embeds)?;
    let pairs = mine::mine_comparable(&src, &src_embeds, &tgt, &tgt_embeds, &config.mining())
        .map_err(data_err)?;
    let output_name = write_pairs(args.output.as_deref(), &pairs)?;
    stage.finish(
        src.len(),
        pairs.len(),
        json!({
            "src": args.src.display().to_string(),
            "tgt": args.tgt.display().to_string(),
            "tgt_count": tgt.len(),
            "output": output_name,
            "config": config,
        }),
    );
    Ok(())
}

#[derive(Args)]
pub struct RefilterArgs {
    /// Existing pairs as TSV: source and target text, optional score column.
    #[arg(long)]
    pairs: PathBuf,
    /// Embeddings row-aligned with the source column of --pairs.
    #[arg(long)]
    src_embeds: PathBuf,
    /// Embeddings row-aligned with the target column of --pairs.
    #[arg(long)]
    tgt_embeds: PathBuf,
    /// Language of the source column.
    #[arg(long)]
    src_lang: String,
    /// Language of the target column.
    #[arg(long)]
    tgt_lang: String,
    /// Output TSV (default: stdout).
    #[arg(long)]
    output: Option<PathBuf>,
}

pub fn refilter(args: &RefilterArgs, config: &PipelineConfig) -> Result<()> {
    let stage = Stage::begin("refilter");
    let src_lang = parse_lang_flag(&args.src_lang)?;
    let tgt_lang = parse_lang_flag(&args.tgt_lang)?;
    let text = read_to_string(&args.pairs)?;
    let pairs = parse_bitext_tsv(&text, &src_lang, &tgt_lang)
        .map_err(|e| input_err(format!("{}: {e}", args.pairs.display())))?;
    let src_embeds = load_normalized_embeddings(&args.src_embeds)?;
    let tgt_embeds = load_normalized_embeddings(&args.tgt_embeds)?;
    let (kept, report) = filter_existing(
        pairs,
        &src_embeds,
        &tgt_embeds,
        config.cosine_threshold,
    )
    .map_err(data_err)?;
    let output_name = write_pairs(args.output.as_deref(), &kept)?;
    stage.finish(
        report.input_count,
        report.kept_count,
        json!({
            "pairs": args.pairs.display().to_string(),
            "output": output_name,
            "retention_percent": retention_percent(&report),
            "filter": report,
            "config": config,
        }),
    );
    Ok(())
}

#[derive(Args)]
pub struct EmbedConvertArgs {
    /// Raw little-endian f32 vectors, row-major.
    #[arg(long)]
    input: PathBuf,
    /// Dimensionality of each vector.
    #[arg(long)]
    dim: usize,
    /// Where to write the converted embedding file.
    #[arg(long)]
    output: PathBuf,
    /// L2-normalize rows during conversion.
    #[arg(long)]
    normalize: bool,
}

pub fn embed_convert(args: &EmbedConvertArgs, config: &PipelineConfig) -> Result<()> {
    let stage = Stage::begin("embed-convert");
    if args.dim == 0 {
        return Err(crate::error::config_err("--dim must be at least 1"));
    }
    let bytes = std::fs::read(&args.input)
        .map_err(|e| input_err(format!("{}: {e}", args.input.display())))?;
    if bytes.len() % 4 != 0 {
        return Err(input_err(format!(
            "{}: length {} bytes is not a whole number of f32 values",
            args.input.display(),
            bytes.len()
        )));
    }
    let values = bytes.len() / 4;
    if values % args.dim != 0 {
        return Err(input_err(format!(
            "{}: {values} f32 values do not divide into rows of dimension {}",
            args.input.display(),
            args.dim
        )));
    }
    let data: Vec<f32> = bytes
        .chunks_exact(4)
        .map(|b| f32::from_le_bytes([b[0], b[1], b[2], b[3]]))
        .collect();
    let n = values / args.dim;
    let mut matrix =
        EmbeddingMatrix::new(n, args.dim, data, false).map_err(data_err)?;
    if args.normalize {
        matrix = matrix.l2_normalize().map_err(data_err)?;
    }
    save_embeddings(&args.output, &matrix)
        .map_err(|e| input_err(format!("{}: {e}", args.output.display())))?;
    stage.finish(
        n,
        n,
        json!({
            "input": args.input.display().to_string(),
            "output": args.output.display().to_string(),
            "n": n,
            "d": args.dim,
            "normalized": matrix.is_normalized(),
            "config": config,
        }),
    );
    Ok(())
}
