//! Language/script identities and the text transforms that depend on them:
//! script unification into Devanagari, numeral mapping, normalization,
//! do-not-translate tagging, and training-sample tag formatting.

mod dnt;
mod normalize;
mod numerals;
mod registry;
mod script;
mod tags;

pub use dnt::{strip_dnt, wrap_dnt, wrap_dnt_pair, DntKind, DntSpan};
pub use normalize::normalize;
pub use numerals::map_numerals;
pub use registry::{parse_lang_code, LangScript, Registry};
pub use script::{from_devanagari, to_devanagari, ScriptBlock, ScriptBlockMap, DEVANAGARI_START};
pub use tags::format_training_sample;

/// Errors from parsing language codes and applying script-level transforms.
#[derive(Debug, thiserror::Error)]
pub enum LangError {
    #[error("malformed language code `{code}`: expected `lll_Ssss` with a single underscore")]
    CodeShape { code: String },
    #[error("malformed language subtag `{lang}`: expected exactly three lowercase ASCII letters")]
    LangSubtag { lang: String },
    #[error("malformed script subtag `{script}`: expected four ASCII letters in titlecase")]
    ScriptSubtag { script: String },
    #[error("script `{script}` has no Devanagari block mapping")]
    UnsupportedScript { script: String },
    #[error("input already contains a literal `{tag}` tag")]
    TagCollision { tag: &'static str },
    #[error("script block table line {line}: {reason}")]
    BlockTable { line: usize, reason: String },
    #[error("registry line {line}: {source}")]
    RegistryEntry {
        line: usize,
        source: Box<LangError>,
    },
}

pub type Result<T> = std::result::Result<T, LangError>;
