//! Rule-based sentence segmentation.

use std::collections::BTreeSet;
use std::sync::LazyLock;

use crate::lang::LangScript;

use super::Sentence;

/// Tokens that end in a period mid-sentence ("Dr.", "e.g."). Stored
/// lowercased without the trailing period; lookups are case-insensitive.
#[derive(Debug, Clone, Default)]
pub struct AbbreviationGuard {
    tokens: BTreeSet<String>,
}

static DEFAULT_ENGLISH: LazyLock<AbbreviationGuard> = LazyLock::new(|| {
    AbbreviationGuard::parse(include_str!("../../data/abbreviations_eng.txt"))
});

impl AbbreviationGuard {
    /// The English list shipped with the crate.
    pub fn default_english() -> &'static AbbreviationGuard {
        &DEFAULT_ENGLISH
    }

    /// Parses a guard file: one abbreviation per line (trailing period
    /// optional), `#` comments and blank lines ignored.
    pub fn parse(text: &str) -> AbbreviationGuard {
        let tokens = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| l.trim_end_matches('.').to_lowercase())
            .filter(|l| !l.is_empty())
            .collect();
        AbbreviationGuard { tokens }
    }

    /// Whether `token` (without its trailing period) is a guarded
    /// abbreviation.
    pub fn contains(&self, token: &str) -> bool {
        self.tokens.contains(&token.to_lowercase())
    }
}

/// Sentence terminators. The period additionally consults the abbreviation
/// guard; the others always split.
fn is_terminator(ch: char) -> bool {
    matches!(ch, '.' | '?' | '!' | '\u{0964}' | '\u{0965}')
}

/// Splits a document at terminators followed by whitespace or end of input.
/// Uses the built-in English abbreviation guard.
pub fn segment_sentences(doc: &str, lang: &LangScript) -> Vec<Sentence> {
    segment_sentences_with(doc, lang, AbbreviationGuard::default_english())
}

/// [`segment_sentences`] with an explicit guard list.
pub fn segment_sentences_with(
    doc: &str,
    lang: &LangScript,
    guard: &AbbreviationGuard,
) -> Vec<Sentence> {
    let mut sentences = Vec::new();
    let mut start = 0;
    let chars: Vec<(usize, char)> = doc.char_indices().collect();
    let flush = |piece: &str, sentences: &mut Vec<Sentence>| {
        let trimmed = piece.trim();
        if !trimmed.is_empty() {
            let id = sentences.len() as u64;
            sentences.push(Sentence::new(id, trimmed, lang.clone(), ""));
        }
    };
    for (pos, &(byte, ch)) in chars.iter().enumerate() {
        if !is_terminator(ch) {
            continue;
        }
        let at_break = chars
            .get(pos + 1)
            .is_none_or(|&(_, next)| next.is_whitespace());
        if !at_break {
            continue;
        }
        if ch == '.' {
            // The token ending at this period ("Dr", "e.g") may be a guarded
            // abbreviation, in which case the period does not split.
            let token_start = doc[..byte]
                .rfind(char::is_whitespace)
                .map_or(0, |w| w + w_len(doc, w));
            if guard.contains(&doc[token_start..byte]) {
                continue;
            }
        }
        let end = byte + ch.len_utf8();
        flush(&doc[start..end], &mut sentences);
        start = end;
    }
    flush(&doc[start..], &mut sentences);
    sentences
}

fn w_len(doc: &str, byte: usize) -> usize {
    doc[byte..].chars().next().map_or(0, char::len_utf8)
}
