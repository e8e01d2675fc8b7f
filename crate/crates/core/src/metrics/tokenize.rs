//! The mteval-v13a tokenizer: the rule set behind `tok:13a` signatures.

use std::sync::LazyLock;

use regex::Regex;

static PAD_SYMBOLS: LazyLock<Regex> = LazyLock::new(|| {
    // ASCII symbols and punctuation except apostrophe, period, comma,
    // hyphen, and digits; period/comma/hyphen get the context-sensitive
    // rules below.
    Regex::new(r"([\x20-\x26\x28-\x2B\x2F\x3A-\x40\x5B-\x60\x7B-\x7E])").unwrap()
});
static PERIOD_COMMA_BEFORE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"([^0-9])([\.,])").unwrap());
static PERIOD_COMMA_AFTER: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"([\.,])([^0-9])").unwrap());
static DIGIT_DASH: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"([0-9])(-)").unwrap());

/// Tokenizes with the mteval-v13a rules: drop `<skipped>` markers, undo
/// end-of-line hyphenation, unescape the four XML entities, pad symbol
/// characters with spaces, split periods and commas except between
/// digits, and split a dash following a digit. Case is preserved.
pub fn tokenize_13a(text: &str) -> Vec<String> {
    let mut line = text.replace("<skipped>", "").replace("-\n", "").replace('\n', " ");
    if line.contains('&') {
        line = line
            .replace("&quot;", "\"")
            .replace("&amp;", "&")
            .replace("&lt;", "<")
            .replace("&gt;", ">");
    }
    let line = format!(" {line} ");
    let line = PAD_SYMBOLS.replace_all(&line, " $1 ");
    let line = PERIOD_COMMA_BEFORE.replace_all(&line, "$1 $2 ");
    let line = PERIOD_COMMA_AFTER.replace_all(&line, " $1 $2");
    let line = DIGIT_DASH.replace_all(&line, "$1 $2 ");
    line.split_whitespace().map(str::to_owned).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(text: &str) -> Vec<String> {
        tokenize_13a(text)
    }

    #[test]
    fn pads_punctuation() {
        assert_eq!(toks("Hello, world!"), ["Hello", ",", "world", "!"]);
    }

    #[test]
    fn keeps_periods_and_commas_inside_numbers() {
        assert_eq!(toks("3.5 km"), ["3.5", "km"]);
        assert_eq!(toks("1,000 cars."), ["1,000", "cars", "."]);
    }

    #[test]
    fn splits_a_dash_after_a_digit_only() {
        assert_eq!(toks("pre-war"), ["pre-war"]);
        assert_eq!(toks("3-4 days"), ["3", "-", "4", "days"]);
    }

    #[test]
    fn empty_and_whitespace_inputs_give_no_tokens() {
        assert!(toks("").is_empty());
        assert!(toks("   \t ").is_empty());
    }

    #[test]
    fn unescapes_xml_entities() {
        assert_eq!(toks("a &amp; b"), ["a", "&", "b"]);
        assert_eq!(toks("&quot;hi&quot;"), ["\"", "hi", "\""]);
    }

    #[test]
    fn removes_skip_markers_and_joins_hyphenated_line_breaks() {
        assert_eq!(toks("cat<skipped>s"), ["cats"]);
        assert_eq!(toks("wash-\ning"), ["washing"]);
        assert_eq!(toks("two\nlines"), ["two", "lines"]);
    }

    #[test]
    fn case_is_preserved() {
        assert_eq!(toks("McDonald had URLs"), ["McDonald", "had", "URLs"]);
    }

    #[test]
    fn apostrophes_stay_attached() {
        assert_eq!(toks("it's fine"), ["it's", "fine"]);
    }

    #[test]
    fn non_ascii_text_splits_on_whitespace_only() {
        assert_eq!(toks("यह वाक्य है।"), ["यह", "वाक्य", "है।"]);
    }
}
