//! The pipeline configuration file: strict JSON with mining thresholds,
//! metric parameters, index geometry, and optional default data paths.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use bitext_forge::mine::MiningConfig;

use crate::error::{config_err, Result};

/// Everything a pipeline run can be told through `--config`. Mining
/// fields sit at the top level of the JSON document; unknown keys are
/// rejected so a typo'd threshold cannot silently revert to its default.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    /// Default input corpus for the streaming text stages.
    pub corpus: Option<PathBuf>,
    /// Default embedding file for index building and conversion.
    pub embeddings: Option<PathBuf>,
    /// Benchmark sentences for decontamination.
    pub benchmarks: Option<PathBuf>,
    /// Toxicity blocklist, one token per line.
    pub blocklist: Option<PathBuf>,
    /// External language-id predictions (`id<TAB>lang<TAB>confidence`).
    pub lid_predictions: Option<PathBuf>,
    /// Cosine floor for accepting a mined pair.
    pub cosine_threshold: f64,
    /// Margin floor for accepting a mined pair.
    pub margin_threshold: f64,
    /// Neighborhood size in the margin denominator.
    pub k_nn: usize,
    /// Coarse cells probed per query.
    pub top_clusters: usize,
    /// Minimum sentence length in words for the filter stage.
    pub min_words: usize,
    /// Maximum sentence length in words for the filter stage.
    pub max_words: usize,
    /// Apply the cosine floor in addition to the margin floor.
    pub cosine_gate: bool,
    /// Keep only the best pair per target sentence.
    pub unique_targets: bool,
    /// Minimum LID confidence in the sentence filter.
    pub min_lid_confidence: f64,
    /// Benchmark-overlap tolerance in BLEU points.
    pub qc_delta: f64,
    /// Paired-bootstrap resampling trials.
    pub bootstrap_trials: u64,
    /// Significance level for the bootstrap verdict.
    pub alpha: f64,
    /// Seed for every randomized stage; never wall-clock.
    pub seed: u64,
    /// Shards the monolingual target collection is split into.
    pub shards: usize,
    /// Coarse cells per shard.
    pub k_c: usize,
    /// Product-quantization subspaces.
    pub m_sub: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        let mining = MiningConfig::default();
        PipelineConfig {
            corpus: None,
            embeddings: None,
            benchmarks: None,
            blocklist: None,
            lid_predictions: None,
            cosine_threshold: mining.cosine_threshold,
            margin_threshold: mining.margin_threshold,
            k_nn: mining.k_nn,
            top_clusters: mining.top_clusters,
            min_words: mining.min_words,
            max_words: mining.max_words,
            cosine_gate: mining.cosine_gate,
            unique_targets: mining.unique_targets,
            min_lid_confidence: 0.8,
            qc_delta: 10.0,
            bootstrap_trials: 1000,
            alpha: 0.05,
            seed: 0,
            shards: 5,
            k_c: 64,
            m_sub: 16,
        }
    }
}

impl PipelineConfig {
    /// The mining-stage view of this config.
    pub fn mining(&self) -> MiningConfig {
        MiningConfig {
            cosine_threshold: self.cosine_threshold,
            margin_threshold: self.margin_threshold,
            k_nn: self.k_nn,
            top_clusters: self.top_clusters,
            min_words: self.min_words,
            max_words: self.max_words,
            cosine_gate: self.cosine_gate,
            unique_targets: self.unique_targets,
        }
    }

    /// Checks every referenced path and every numeric parameter. Errors
    /// name the offending config key.
    pub fn validate(&self) -> Result<()> {
        let paths = [
            ("corpus", &self.corpus),
            ("embeddings", &self.embeddings),
            ("benchmarks", &self.benchmarks),
            ("blocklist", &self.blocklist),
            ("lid_predictions", &self.lid_predictions),
        ];
        for (key, path) in paths {
            if let Some(path) = path {
                if !path.exists() {
                    return Err(config_err(format!(
                        "config key `{key}`: path `{}` does not exist",
                        path.display()
                    )));
                }
            }
        }
        self.mining()
            .validate()
            .map_err(|e| config_err(format!("config: {e}")))?;
        if self.bootstrap_trials == 0 {
            return Err(config_err("config key `bootstrap_trials` must be at least 1"));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(config_err(format!(
                "config key `alpha` must lie in (0, 1), got {}",
                self.alpha
            )));
        }
        if self.qc_delta.is_nan() || self.qc_delta < 0.0 {
            return Err(config_err(format!(
                "config key `qc_delta` must be non-negative, got {}",
                self.qc_delta
            )));
        }
        if !(self.min_lid_confidence >= 0.0 && self.min_lid_confidence <= 1.0) {
            return Err(config_err(format!(
                "config key `min_lid_confidence` must lie in [0, 1], got {}",
                self.min_lid_confidence
            )));
        }
        for (key, value) in [("shards", self.shards), ("k_c", self.k_c), ("m_sub", self.m_sub)] {
            if value == 0 {
                return Err(config_err(format!("config key `{key}` must be at least 1")));
            }
        }
        Ok(())
    }
}

/// Loads and validates a config file; parse errors carry serde_json's
/// line/column and unknown-key errors name the key.
pub fn load_config(path: &Path) -> Result<PipelineConfig> {
    let text = fs::read_to_string(path)
        .map_err(|e| config_err(format!("config `{}`: {e}", path.display())))?;
    let config: PipelineConfig = serde_json::from_str(&text)
        .map_err(|e| config_err(format!("config `{}`: {e}", path.display())))?;
    config.validate()?;
    log::info!("loaded config from {}", path.display());
    Ok(config)
}
