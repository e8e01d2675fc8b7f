//! Language–script identities and the registry of supported combinations.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use super::{LangError, Result};

/// A language identified by ISO 639-3 subtag plus ISO 15924 script subtag,
/// serialized as `{lang}_{script}` (e.g. `hin_Deva`).
///
/// Any well-formed code parses; whether it is one of the supported
/// combinations is a separate question answered by [`LangScript::is_registered`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LangScript {
    lang: String,
    script: String,
}

impl LangScript {
    /// Parses a `{lang}_{script}` code, validating subtag shape and case.
    pub fn parse(code: &str) -> Result<Self> {
        let (lang, script) = match code.split_once('_') {
            Some(parts) if !parts.1.contains('_') => parts,
            _ => return Err(LangError::CodeShape { code: code.to_owned() }),
        };
        if lang.len() != 3 || !lang.bytes().all(|b| b.is_ascii_lowercase()) {
            return Err(LangError::LangSubtag { lang: lang.to_owned() });
        }
        let well_cased = script.len() == 4
            && script.bytes().next().is_some_and(|b| b.is_ascii_uppercase())
            && script.bytes().skip(1).all(|b| b.is_ascii_lowercase());
        if !well_cased {
            return Err(LangError::ScriptSubtag { script: script.to_owned() });
        }
        Ok(Self { lang: lang.to_owned(), script: script.to_owned() })
    }

    pub fn lang(&self) -> &str {
        &self.lang
    }

    pub fn script(&self) -> &str {
        &self.script
    }

    /// The serialized `{lang}_{script}` form.
    pub fn code(&self) -> String {
        format!("{}_{}", self.lang, self.script)
    }

    /// Whether this combination appears in the built-in registry.
    pub fn is_registered(&self) -> bool {
        Registry::builtin().contains(self)
    }
}

impl fmt::Display for LangScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.lang, self.script)
    }
}

impl FromStr for LangScript {
    type Err = LangError;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Parses a `{lang}_{script}` code and reports whether it is registered.
pub fn parse_lang_code(code: &str) -> Result<(LangScript, bool)> {
    let ls = LangScript::parse(code)?;
    let registered = ls.is_registered();
    Ok((ls, registered))
}

/// The set of supported language–script combinations.
#[derive(Debug, Clone)]
pub struct Registry {
    entries: BTreeSet<LangScript>,
}

static BUILTIN: LazyLock<Registry> = LazyLock::new(|| {
    Registry::parse(include_str!("../../data/registry.txt"))
        .expect("embedded registry table is well-formed")
});

impl Registry {
    /// The registry shipped with the crate: the 25 supported Indic
    /// combinations plus `eng_Latn`.
    pub fn builtin() -> &'static Registry {
        &BUILTIN
    }

    /// Parses a registry table: one `{lang}_{script}` per line, `#` comments
    /// and blank lines ignored.
    pub fn parse(table: &str) -> Result<Registry> {
        let mut entries = BTreeSet::new();
        for (idx, line) in table.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let ls = LangScript::parse(line).map_err(|e| LangError::RegistryEntry {
                line: idx + 1,
                source: Box::new(e),
            })?;
            entries.insert(ls);
        }
        Ok(Registry { entries })
    }

    pub fn contains(&self, ls: &LangScript) -> bool {
        self.entries.contains(ls)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// All entries in code order.
    pub fn iter(&self) -> impl Iterator<Item = &LangScript> {
        self.entries.iter()
    }
}
