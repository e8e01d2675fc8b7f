//! Corpus filtering: sentence segmentation, length/LID/toxicity predicates,
//! and normalization-key deduplication.

mod dedup;
mod lid;
mod predicates;
mod report;
mod segment;

pub use dedup::{dedup_against_benchmarks, dedup_key, self_dedup, DedupKey};
pub use lid::{lid_filter, lid_heuristic, LidPredictions};
pub use predicates::{
    length_filter, toxicity_filter, Blocklist, BT_ENGLISH_LENGTH_BOUNDS, MINING_LENGTH_BOUNDS,
};
pub use report::FilterReport;
pub use segment::{segment_sentences, segment_sentences_with, AbbreviationGuard};

use crate::lang::LangScript;

/// Errors from parsing the filter stage's external files.
#[derive(Debug, thiserror::Error)]
pub enum FilterError {
    #[error("LID prediction line {line}: {reason}")]
    LidLine { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, FilterError>;

/// One sentence of a corpus.
#[derive(Debug, Clone, PartialEq)]
pub struct Sentence {
    /// Stable identifier, unique within its corpus.
    pub id: u64,
    pub text: String,
    pub lang: LangScript,
    /// Provenance label (corpus or document name).
    pub source: String,
}

impl Sentence {
    pub fn new(id: u64, text: impl Into<String>, lang: LangScript, source: impl Into<String>) -> Self {
        Sentence { id, text: text.into(), lang, source: source.into() }
    }

    /// Whitespace-token count; every supported language is space-separated.
    pub fn word_count(&self) -> usize {
        self.text.split_whitespace().count()
    }
}

/// Settings for the standard sentence-filter chain.
#[derive(Debug, Clone)]
pub struct SentenceFilterConfig {
    pub min_words: usize,
    pub max_words: usize,
    pub expected: LangScript,
    /// Minimum heuristic-LID confidence when no external prediction exists.
    pub min_lid_confidence: f64,
    pub blocklist: Blocklist,
    pub lid_predictions: Option<LidPredictions>,
}

impl SentenceFilterConfig {
    /// Mining defaults: 4–40 words, heuristic LID at 0.8, empty blocklist.
    pub fn mining(expected: LangScript) -> Self {
        let (min_words, max_words) = MINING_LENGTH_BOUNDS;
        SentenceFilterConfig {
            min_words,
            max_words,
            expected,
            min_lid_confidence: 0.8,
            blocklist: Blocklist::default(),
            lid_predictions: None,
        }
    }
}

/// Applies length, LID, and toxicity in order, attributing each drop to the
/// first predicate that rejects. The kept set is order-independent (each
/// predicate is pure); only the drop attribution depends on this order.
pub fn filter_sentences(
    sentences: Vec<Sentence>,
    cfg: &SentenceFilterConfig,
) -> (Vec<Sentence>, FilterReport) {
    let mut report = FilterReport::new(sentences.len());
    let mut kept = Vec::with_capacity(sentences.len());
    for sentence in sentences {
        if !length_filter(&sentence, cfg.min_words, cfg.max_words) {
            report.drop_one("length");
        } else if !lid_filter(
            &sentence,
            &cfg.expected,
            cfg.lid_predictions.as_ref(),
            cfg.min_lid_confidence,
        ) {
            report.drop_one("lid");
        } else if !toxicity_filter(&sentence, &cfg.blocklist) {
            report.drop_one("toxicity");
        } else {
            report.keep_one();
            kept.push(sentence);
        }
    }
    (kept, report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ls(code: &str) -> LangScript {
        LangScript::parse(code).unwrap()
    }

    fn sent(id: u64, text: &str) -> Sentence {
        Sentence::new(id, text, ls("hin_Deva"), "test")
    }

    #[test]
    fn filter_chain_attributes_drops_and_conserves_counts() {
        let cfg = SentenceFilterConfig {
            blocklist: Blocklist::parse("बुरा"),
            ..SentenceFilterConfig::mining(ls("hin_Deva"))
        };
        let sentences = vec![
            sent(0, "यह घर बहुत अच्छा है"),
            sent(1, "छोटा"),
            sent(2, "this is english text only here"),
            sent(3, "यह एक बुरा वाक्य है"),
        ];
        let (kept, report) = filter_sentences(sentences, &cfg);
        assert_eq!(kept.len(), 1);
        assert_eq!(kept[0].id, 0);
        assert_eq!(report.input_count, 4);
        assert_eq!(report.kept_count, 1);
        assert_eq!(report.dropped("length"), 1);
        assert_eq!(report.dropped("lid"), 1);
        assert_eq!(report.dropped("toxicity"), 1);
        assert!(report.is_conserved());
    }

    #[test]
    fn kept_set_is_the_intersection_of_the_predicates() {
        let cfg = SentenceFilterConfig::mining(ls("hin_Deva"));
        let sentences: Vec<Sentence> = vec![
            sent(0, "यह घर बहुत अच्छा है"),
            sent(1, "एक दो तीन चार पांच छह"),
            sent(2, "abc"),
        ];
        let (kept, _) = filter_sentences(sentences.clone(), &cfg);
        let expected: Vec<u64> = sentences
            .iter()
            .filter(|s| length_filter(s, cfg.min_words, cfg.max_words))
            .filter(|s| lid_filter(s, &cfg.expected, None, cfg.min_lid_confidence))
            .filter(|s| toxicity_filter(s, &cfg.blocklist))
            .map(|s| s.id)
            .collect();
        let got: Vec<u64> = kept.iter().map(|s| s.id).collect();
        assert_eq!(got, expected);
    }
}
