//! Length and toxicity predicates.

use std::collections::BTreeSet;

use super::dedup::dedup_key;
use super::Sentence;

/// Mining keeps sentences of 4–40 words inclusive.
pub const MINING_LENGTH_BOUNDS: (usize, usize) = (4, 40);
/// English selected for back-translation keeps 5–100 words inclusive.
pub const BT_ENGLISH_LENGTH_BOUNDS: (usize, usize) = (5, 100);

/// Keeps sentences whose whitespace-token count lies in
/// `min_words..=max_words`.
pub fn length_filter(s: &Sentence, min_words: usize, max_words: usize) -> bool {
    debug_assert!(min_words >= 1, "a zero-word sentence is never valid");
    (min_words..=max_words).contains(&s.word_count())
}

/// Offensive-token list, stored as dedup keys so lookups are insensitive to
/// case, punctuation, and digits' script.
#[derive(Debug, Clone, Default)]
pub struct Blocklist {
    keys: BTreeSet<String>,
}

impl Blocklist {
    /// Parses a blocklist: one token per line, `#` comments and blank lines
    /// ignored. Tokens are normalized with the dedup-key rules on load.
    pub fn parse(text: &str) -> Blocklist {
        let keys = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| dedup_key(l).into_string())
            .filter(|k| !k.is_empty())
            .collect();
        Blocklist { keys }
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    fn contains_key(&self, key: &str) -> bool {
        self.keys.contains(key)
    }
}

/// Keeps a sentence unless one of its whole tokens normalizes to a
/// blocklisted key. Substrings never trigger: "badwording" survives a
/// "badword" entry.
pub fn toxicity_filter(s: &Sentence, blocklist: &Blocklist) -> bool {
    if blocklist.is_empty() {
        return true;
    }
    !s.text.split_whitespace().any(|token| {
        let key = dedup_key(token);
        !key.as_str().is_empty() && blocklist.contains_key(key.as_str())
    })
}
