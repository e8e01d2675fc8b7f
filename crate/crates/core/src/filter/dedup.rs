//! Normalization-key deduplication, within corpora and against benchmarks.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use unicode_properties::{GeneralCategoryGroup, UnicodeGeneralCategory};

use crate::lang::{map_numerals, normalize};
use crate::mine::BitextPair;

use super::{FilterReport, Sentence};

/// A sentence's identity for deduplication: normalized, digits unified to
/// ASCII, lowercased, with every punctuation, symbol, and whitespace
/// codepoint removed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DedupKey(String);

impl DedupKey {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl fmt::Display for DedupKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Computes the dedup key of a text.
pub fn dedup_key(text: &str) -> DedupKey {
    let prepared = map_numerals(&normalize(text));
    let key = prepared
        .to_lowercase()
        .chars()
        .filter(|&ch| {
            !ch.is_whitespace()
                && !matches!(
                    ch.general_category_group(),
                    GeneralCategoryGroup::Punctuation | GeneralCategoryGroup::Symbol
                )
        })
        .collect();
    DedupKey(key)
}

/// Keeps the first occurrence (in input order) of every dedup key. Keys are
/// computed in parallel; resolution is a sequential scan, so the lowest input
/// index always wins.
pub fn self_dedup(sentences: Vec<Sentence>) -> (Vec<Sentence>, FilterReport) {
    let keys: Vec<DedupKey> = sentences.par_iter().map(|s| dedup_key(&s.text)).collect();
    let mut report = FilterReport::new(sentences.len());
    let mut seen = HashSet::with_capacity(sentences.len());
    let mut unique = Vec::with_capacity(sentences.len());
    for (sentence, key) in sentences.into_iter().zip(keys) {
        if seen.insert(key) {
            report.keep_one();
            unique.push(sentence);
        } else {
            report.drop_one("duplicate");
        }
    }
    (unique, report)
}

/// Drops every pair whose source *or* target key collides with any benchmark
/// segment's key. Benchmarks are passed as flat monolingual segments (both
/// sides of every benchmark set).
pub fn dedup_against_benchmarks(
    pairs: Vec<BitextPair>,
    benchmarks: &[String],
) -> (Vec<BitextPair>, FilterReport) {
    let benchmark_keys: HashSet<DedupKey> =
        benchmarks.par_iter().map(|s| dedup_key(s)).collect();
    let mut report = FilterReport::new(pairs.len());
    let mut kept = Vec::with_capacity(pairs.len());
    for pair in pairs {
        let hit = benchmark_keys.contains(&dedup_key(&pair.src.text))
            || benchmark_keys.contains(&dedup_key(&pair.tgt.text));
        if hit {
            report.drop_one("benchmark_overlap");
        } else {
            report.keep_one();
            kept.push(pair);
        }
    }
    (kept, report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::LangScript;
    use crate::mine::MiningMethod;

    fn sent(id: u64, text: &str) -> Sentence {
        Sentence::new(id, text, LangScript::parse("eng_Latn").unwrap(), "test")
    }

    fn pair(id: u64, src: &str, tgt: &str) -> BitextPair {
        BitextPair {
            src: sent(id, src),
            tgt: Sentence::new(id, tgt, LangScript::parse("hin_Deva").unwrap(), "test"),
            score: 0.9,
            method: MiningMethod::Cosine,
        }
    }

    #[test]
    fn key_strips_case_punctuation_and_spaces() {
        assert_eq!(dedup_key("Hello, World!").as_str(), "helloworld");
        assert_eq!(dedup_key("भारत — महान।").as_str(), "भारतमहान");
    }

    #[test]
    fn key_unifies_digit_scripts() {
        assert_eq!(dedup_key("१२३ go"), dedup_key("123 GO"));
    }

    #[test]
    fn key_is_stable_under_normalize() {
        for text in ["A  b\u{200b} c.", "\u{201C}Quoted\u{201D} — text…", "nums ३.५%"] {
            assert_eq!(dedup_key(text), dedup_key(&normalize(text)));
        }
    }

    #[test]
    fn self_dedup_keeps_first_occurrence() {
        let input = vec![sent(0, "A b"), sent(1, "a B!"), sent(2, "c")];
        let (unique, report) = self_dedup(input);
        let ids: Vec<u64> = unique.iter().map(|s| s.id).collect();
        assert_eq!(ids, vec![0, 2]);
        assert_eq!(report.dropped("duplicate"), 1);
        assert!(report.is_conserved());
    }

    #[test]
    fn self_dedup_is_idempotent() {
        let input = vec![sent(0, "x y"), sent(1, "X, y"), sent(2, "z"), sent(3, "z ")];
        let (once, _) = self_dedup(input);
        let (twice, report) = self_dedup(once.clone());
        assert_eq!(once, twice);
        assert_eq!(report.dropped_total(), 0);
    }

    #[test]
    fn benchmark_overlap_drops_either_side() {
        let benchmarks = vec!["The cat sat.".to_owned(), "घर।".to_owned()];
        let pairs = vec![
            pair(0, "the cat sat", "कुछ और"),
            pair(1, "something else", "घर"),
            pair(2, "fresh text", "नया"),
        ];
        let (kept, report) = dedup_against_benchmarks(pairs, &benchmarks);
        assert_eq!(kept.len(), 1);
        assert_eq!(kept[0].src.id, 2);
        assert_eq!(report.dropped("benchmark_overlap"), 2);
        assert!(report.is_conserved());
    }

    #[test]
    fn empty_benchmarks_keep_everything() {
        let pairs = vec![pair(0, "a b", "c d"), pair(1, "e f", "g h")];
        let (kept, report) = dedup_against_benchmarks(pairs.clone(), &[]);
        assert_eq!(kept, pairs);
        assert_eq!(report.dropped_total(), 0);
    }
}
