//! Training-sample tag formatting.

use super::LangScript;

/// Prefixes normalized text with source and target tag tokens:
/// `{src} {tgt} {text}`. The caller is expected to pass already-normalized
/// text; the payload is not re-normalized here.
pub fn format_training_sample(src: &LangScript, tgt: &LangScript, text: &str) -> String {
    format!("{src} {tgt} {text}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ls(code: &str) -> LangScript {
        LangScript::parse(code).unwrap()
    }

    #[test]
    fn formats_direction_tags_then_payload() {
        let out = format_training_sample(&ls("eng_Latn"), &ls("hin_Deva"), "hello");
        assert_eq!(out, "eng_Latn hin_Deva hello");
    }

    #[test]
    fn empty_payload_keeps_the_trailing_space() {
        let out = format_training_sample(&ls("hin_Deva"), &ls("eng_Latn"), "");
        assert_eq!(out, "hin_Deva eng_Latn ");
    }

    #[test]
    fn adds_exactly_two_tokens() {
        let payload = "three token payload";
        let out = format_training_sample(&ls("tam_Taml"), &ls("eng_Latn"), payload);
        assert_eq!(
            out.split_whitespace().count(),
            payload.split_whitespace().count() + 2
        );
        let mut tokens = out.split_whitespace();
        assert!(LangScript::parse(tokens.next().unwrap()).unwrap().is_registered());
        assert!(LangScript::parse(tokens.next().unwrap()).unwrap().is_registered());
    }
}
