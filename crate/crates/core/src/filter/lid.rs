//! Script-level language identification.

use std::collections::HashMap;

use unicode_properties::{GeneralCategoryGroup, UnicodeGeneralCategory};

use crate::lang::{LangScript, ScriptBlockMap};

use super::{FilterError, Result, Sentence};

/// Script buckets the heuristic can name: the nine Brahmi blocks plus the
/// non-Brahmi scripts of the registry.
fn script_of(ch: char) -> Option<&'static str> {
    let cp = ch as u32;
    for block in ScriptBlockMap::builtin().blocks() {
        if (block.start..block.start + block.len).contains(&cp) {
            // Return the static name to keep the hot path allocation-free.
            return Some(match block.script.as_str() {
                "Deva" => "Deva",
                "Beng" => "Beng",
                "Guru" => "Guru",
                "Gujr" => "Gujr",
                "Orya" => "Orya",
                "Taml" => "Taml",
                "Telu" => "Telu",
                "Knda" => "Knda",
                "Mlym" => "Mlym",
                _ => return None,
            });
        }
    }
    match cp {
        0x0041..=0x005A | 0x0061..=0x007A | 0x00C0..=0x024F | 0x1E00..=0x1EFF => Some("Latn"),
        0x0600..=0x06FF | 0x0750..=0x077F | 0x08A0..=0x08FF | 0xFB50..=0xFDFF
        | 0xFE70..=0xFEFF => Some("Arab"),
        0x1C50..=0x1C7F => Some("Olck"),
        0xAAE0..=0xAAFF | 0xABC0..=0xABFF => Some("Mtei"),
        _ => None,
    }
}

/// A codepoint counts as a letter when it is alphabetic or a combining mark
/// (vowel signs and matras carry as much script evidence as consonants).
/// Digits, punctuation, and spaces carry none.
fn is_letter(ch: char) -> bool {
    matches!(
        ch.general_category_group(),
        GeneralCategoryGroup::Letter | GeneralCategoryGroup::Mark
    )
}

/// Guesses the script holding the plurality of letter codepoints, with the
/// winning script's fraction of all letters as confidence. Letters of
/// unrecognized scripts still enter the denominator; text with no letters,
/// or whose plurality is unrecognized, yields `(None, 0.0)`. Ties break
/// toward the alphabetically first script tag.
pub fn lid_heuristic(text: &str) -> (Option<String>, f64) {
    let mut counts: HashMap<&'static str, usize> = HashMap::new();
    let mut total = 0usize;
    for ch in text.chars() {
        if !is_letter(ch) {
            continue;
        }
        total += 1;
        if let Some(script) = script_of(ch) {
            *counts.entry(script).or_default() += 1;
        }
    }
    if total == 0 {
        return (None, 0.0);
    }
    let named: usize = counts.values().sum();
    let unrecognized = total - named;
    let best = counts
        .into_iter()
        .max_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(a.0)));
    match best {
        Some((script, count)) if count > unrecognized => {
            (Some(script.to_owned()), count as f64 / total as f64)
        }
        _ => (None, 0.0),
    }
}

/// Per-sentence predictions from an external LID model, keyed by sentence id.
#[derive(Debug, Clone, Default)]
pub struct LidPredictions {
    by_id: HashMap<u64, (LangScript, f64)>,
}

impl LidPredictions {
    /// Parses TSV lines `id<TAB>lang_script<TAB>confidence`, `#` comments and
    /// blank lines ignored.
    pub fn parse(text: &str) -> Result<LidPredictions> {
        let mut by_id = HashMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut fields = raw.split('\t');
            let (id, code, conf) = match (fields.next(), fields.next(), fields.next(), fields.next()) {
                (Some(id), Some(code), Some(conf), None) => (id, code, conf),
                _ => {
                    return Err(FilterError::LidLine {
                        line,
                        reason: "expected 3 tab-separated fields".to_owned(),
                    })
                }
            };
            let id: u64 = id.trim().parse().map_err(|_| FilterError::LidLine {
                line,
                reason: format!("bad sentence id `{id}`"),
            })?;
            let code = LangScript::parse(code.trim()).map_err(|e| FilterError::LidLine {
                line,
                reason: e.to_string(),
            })?;
            let conf: f64 = conf.trim().parse().map_err(|_| FilterError::LidLine {
                line,
                reason: format!("bad confidence `{conf}`"),
            })?;
            by_id.insert(id, (code, conf));
        }
        Ok(LidPredictions { by_id })
    }

    pub fn get(&self, id: u64) -> Option<&(LangScript, f64)> {
        self.by_id.get(&id)
    }

    pub fn len(&self) -> usize {
        self.by_id.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_id.is_empty()
    }
}

/// Language gate: an external prediction, when present for this sentence id,
/// decides alone (keep iff it names exactly the expected combination).
/// Otherwise the script heuristic must match the expected script with at
/// least `min_conf` confidence.
pub fn lid_filter(
    s: &Sentence,
    expected: &LangScript,
    external: Option<&LidPredictions>,
    min_conf: f64,
) -> bool {
    if let Some((predicted, _)) = external.and_then(|p| p.get(s.id)) {
        return predicted == expected;
    }
    match lid_heuristic(&s.text) {
        (Some(script), conf) => script == expected.script() && conf >= min_conf,
        (None, _) => false,
    }
}
