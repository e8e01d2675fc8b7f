//! Fixed-offset script conversion between Brahmi-derived blocks and
//! Devanagari.
//!
//! The nine supported blocks (Devanagari through Malayalam, U+0900–U+0D7F)
//! are structurally parallel: a consonant, vowel, or sign usually sits at the
//! same offset in each block, so conversion is a per-codepoint shift. The
//! handful of codepoints without a Devanagari partner at the same offset —
//! script-specific signs, length marks, the currency/fraction zone — are
//! listed as exceptions and passed through unchanged.

use std::collections::BTreeSet;
use std::sync::LazyLock;

use super::{LangError, LangScript, Result};

/// First codepoint of the Devanagari block, the unification target.
pub const DEVANAGARI_START: u32 = 0x0900;

/// One script's Unicode block and its exception codepoints.
#[derive(Debug, Clone)]
pub struct ScriptBlock {
    pub script: String,
    pub start: u32,
    pub len: u32,
    pub exceptions: BTreeSet<u32>,
}

impl ScriptBlock {
    fn contains(&self, cp: u32) -> bool {
        (self.start..self.start + self.len).contains(&cp)
    }
}

/// Per-script block table driving [`to_devanagari`] and [`from_devanagari`].
#[derive(Debug, Clone)]
pub struct ScriptBlockMap {
    blocks: Vec<ScriptBlock>,
}

static BUILTIN: LazyLock<ScriptBlockMap> = LazyLock::new(|| {
    ScriptBlockMap::parse(include_str!("../../data/script_blocks.tsv"))
        .expect("embedded script block table is well-formed")
});

impl ScriptBlockMap {
    /// The table shipped with the crate, covering the nine Brahmi blocks.
    pub fn builtin() -> &'static ScriptBlockMap {
        &BUILTIN
    }

    /// Parses the tab-separated block table: `script, block_start (hex),
    /// block_len, exceptions (comma-separated hex)`. `#` comments and blank
    /// lines are ignored.
    pub fn parse(table: &str) -> Result<ScriptBlockMap> {
        let mut blocks = Vec::new();
        for (idx, raw) in table.lines().enumerate() {
            let line = idx + 1;
            if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = raw.split('\t').collect();
            // The exceptions field may be absent entirely for scripts with none.
            if fields.len() != 3 && fields.len() != 4 {
                return Err(LangError::BlockTable {
                    line,
                    reason: format!("expected 3 or 4 tab-separated fields, got {}", fields.len()),
                });
            }
            let parse_hex = |s: &str, what: &str| {
                u32::from_str_radix(s.trim(), 16).map_err(|_| LangError::BlockTable {
                    line,
                    reason: format!("bad {what} `{s}`: expected hex codepoint"),
                })
            };
            let start = parse_hex(fields[1], "block start")?;
            let len: u32 = fields[2].trim().parse().map_err(|_| LangError::BlockTable {
                line,
                reason: format!("bad block length `{}`", fields[2]),
            })?;
            // Every codepoint in the block must be a valid `char`, i.e. the
            // range stays below U+110000 and clear of the surrogate range.
            let valid_range = start.checked_add(len).is_some_and(|end| {
                end <= 0x11_0000 && (end <= 0xD800 || start >= 0xE000)
            });
            if len == 0 || !valid_range {
                return Err(LangError::BlockTable {
                    line,
                    reason: format!("block {start:#06x}+{len} is not a valid codepoint range"),
                });
            }
            let mut exceptions = BTreeSet::new();
            let exception_field = fields.get(3).copied().unwrap_or("");
            for item in exception_field.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let cp = parse_hex(item, "exception codepoint")?;
                if !(start..start + len).contains(&cp) {
                    return Err(LangError::BlockTable {
                        line,
                        reason: format!("exception {cp:#06x} lies outside the block"),
                    });
                }
                exceptions.insert(cp);
            }
            blocks.push(ScriptBlock {
                script: fields[0].trim().to_owned(),
                start,
                len,
                exceptions,
            });
        }
        Ok(ScriptBlockMap { blocks })
    }

    /// Looks up the block for a script subtag (e.g. `"Beng"`).
    pub fn block(&self, script: &str) -> Option<&ScriptBlock> {
        self.blocks.iter().find(|b| b.script == script)
    }

    pub fn blocks(&self) -> &[ScriptBlock] {
        &self.blocks
    }

    fn supported(&self, ls: &LangScript) -> Result<&ScriptBlock> {
        self.block(ls.script()).ok_or_else(|| LangError::UnsupportedScript {
            script: ls.script().to_owned(),
        })
    }

    /// Shifts every mappable codepoint of `src`'s block into Devanagari.
    /// Exception codepoints pass through unchanged and are counted; anything
    /// outside the block (spaces, Latin, shared dandas) also passes through,
    /// uncounted.
    pub fn to_devanagari(&self, text: &str, src: &LangScript) -> Result<(String, usize)> {
        let block = self.supported(src)?;
        let mut out = String::with_capacity(text.len());
        let mut unmapped = 0;
        for ch in text.chars() {
            let cp = ch as u32;
            if block.contains(cp) && !block.exceptions.contains(&cp) {
                let shifted = DEVANAGARI_START + (cp - block.start);
                out.push(char::from_u32(shifted).expect("blocks validated at parse time"));
            } else {
                if block.contains(cp) {
                    unmapped += 1;
                }
                out.push(ch);
            }
        }
        Ok((out, unmapped))
    }

    /// Inverse of [`Self::to_devanagari`]: shifts Devanagari codepoints into
    /// `tgt`'s block, except where the native partner is an exception (the
    /// Devanagari character is kept — this is what leaves dandas alone, since
    /// every script shares U+0964/U+0965).
    pub fn from_devanagari(&self, text: &str, tgt: &LangScript) -> Result<String> {
        let block = self.supported(tgt)?;
        let mut out = String::with_capacity(text.len());
        for ch in text.chars() {
            let cp = ch as u32;
            if (DEVANAGARI_START..DEVANAGARI_START + block.len).contains(&cp) {
                let native = block.start + (cp - DEVANAGARI_START);
                if block.exceptions.contains(&native) {
                    out.push(ch);
                } else {
                    out.push(char::from_u32(native).expect("blocks validated at parse time"));
                }
            } else {
                out.push(ch);
            }
        }
        Ok(out)
    }
}

/// [`ScriptBlockMap::to_devanagari`] against the built-in table.
pub fn to_devanagari(text: &str, src: &LangScript) -> Result<(String, usize)> {
    ScriptBlockMap::builtin().to_devanagari(text, src)
}

/// [`ScriptBlockMap::from_devanagari`] against the built-in table.
pub fn from_devanagari(text: &str, tgt: &LangScript) -> Result<String> {
    ScriptBlockMap::builtin().from_devanagari(text, tgt)
}
