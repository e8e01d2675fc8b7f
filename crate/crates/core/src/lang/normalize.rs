//! Whitespace, control-character, and punctuation normalization.

use unicode_properties::{GeneralCategory, UnicodeGeneralCategory};

const ZWNJ: char = '\u{200C}';
const ZWJ: char = '\u{200D}';

/// The nine Brahmi blocks are contiguous, Devanagari (U+0900) through
/// Malayalam (ending U+0D7F). ZWJ/ZWNJ after one of these codepoints selects
/// a conjunct form and must survive normalization.
fn is_brahmi(ch: char) -> bool {
    ('\u{0900}'..='\u{0D7F}').contains(&ch)
}

/// Maps one character through the punctuation table, or `None` if it is not
/// in the table. Curly quotes become ASCII quotes, dashes become `-`, the
/// ellipsis becomes `...`.
fn punctuation(ch: char) -> Option<&'static str> {
    Some(match ch {
        '\u{2018}' | '\u{2019}' | '\u{201A}' | '\u{201B}' => "'",
        '\u{201C}' | '\u{201D}' | '\u{201E}' | '\u{201F}' => "\"",
        '\u{2013}' | '\u{2014}' | '\u{2015}' => "-",
        '\u{2026}' => "...",
        _ => return None,
    })
}

/// Normalizes text for the corpus pipeline: punctuation mapped to ASCII
/// equivalents, control and invisible format characters removed (ZWJ/ZWNJ
/// kept only directly after a Brahmi character), whitespace runs collapsed to
/// a single space, and the result trimmed. Dandas (।॥) are ordinary text and
/// pass through. Idempotent.
pub fn normalize(text: &str) -> String {
    let mut cleaned = String::with_capacity(text.len());
    let mut last_kept: Option<char> = None;
    for ch in text.chars() {
        if let Some(mapped) = punctuation(ch) {
            cleaned.push_str(mapped);
            last_kept = mapped.chars().last();
        } else if ch == ZWJ || ch == ZWNJ {
            if last_kept.is_some_and(is_brahmi) {
                cleaned.push(ch);
                last_kept = Some(ch);
            }
        } else if ch.is_whitespace() {
            cleaned.push(ch);
            last_kept = Some(ch);
        } else if ch.is_control() || ch.general_category() == GeneralCategory::Format {
            // Dropped: C0/C1 controls plus invisible format characters
            // (zero-width space, soft hyphen, directional marks, BOM).
        } else {
            cleaned.push(ch);
            last_kept = Some(ch);
        }
    }
    let mut out = String::with_capacity(cleaned.len());
    for token in cleaned.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(token);
    }
    out
}
