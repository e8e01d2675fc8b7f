//! TSV interchange for mined and existing bitext.
//!
//! Mined pairs travel as `src_id<TAB>tgt_id<TAB>src<TAB>tgt<TAB>score<TAB>
//! method`. Existing corpora arrive as plain `src<TAB>tgt` with an
//! optional third score column; line order assigns their ids.

use std::fmt::Write as _;

use crate::filter::Sentence;
use crate::lang::LangScript;

use super::{BitextPair, MineError, MiningMethod, Result};

pub fn format_mining_tsv(pairs: &[BitextPair]) -> String {
    let mut out = String::new();
    for pair in pairs {
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{:.6}\t{}",
            pair.src.id, pair.tgt.id, pair.src.text, pair.tgt.text, pair.score, pair.method
        )
        .expect("writing to a String cannot fail");
    }
    out
}

fn line_err<T>(line: usize, reason: impl Into<String>) -> Result<T> {
    Err(MineError::BitextLine { line, reason: reason.into() })
}

/// Parses the six-column mined-pair format back. Lines are 1-based in
/// errors; blank lines are skipped.
pub fn parse_mining_tsv(
    text: &str,
    src_lang: &LangScript,
    tgt_lang: &LangScript,
) -> Result<Vec<BitextPair>> {
    let mut pairs = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.is_empty() {
            continue;
        }
        let line_no = idx + 1;
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 6 {
            return line_err(line_no, format!("expected 6 tab-separated fields, got {}", fields.len()));
        }
        let src_id: u64 = match fields[0].parse() {
            Ok(id) => id,
            Err(_) => return line_err(line_no, format!("bad src id `{}`", fields[0])),
        };
        let tgt_id: u64 = match fields[1].parse() {
            Ok(id) => id,
            Err(_) => return line_err(line_no, format!("bad tgt id `{}`", fields[1])),
        };
        let score: f64 = match fields[4].parse() {
            Ok(s) => s,
            Err(_) => return line_err(line_no, format!("bad score `{}`", fields[4])),
        };
        let method: MiningMethod = match fields[5].parse() {
            Ok(m) => m,
            Err(reason) => return line_err(line_no, reason),
        };
        pairs.push(BitextPair {
            src: Sentence::new(src_id, fields[2], src_lang.clone(), ""),
            tgt: Sentence::new(tgt_id, fields[3], tgt_lang.clone(), ""),
            score,
            method,
        });
    }
    Ok(pairs)
}

/// Parses an existing parallel corpus: `src<TAB>tgt` with an optional
/// score column. Ids number the data lines from zero, matching row order
/// in any accompanying embedding files.
pub fn parse_bitext_tsv(
    text: &str,
    src_lang: &LangScript,
    tgt_lang: &LangScript,
) -> Result<Vec<BitextPair>> {
    let mut pairs = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let score = match fields.len() {
            2 => 0.0,
            3 => match fields[2].parse() {
                Ok(s) => s,
                Err(_) => return line_err(idx + 1, format!("bad score `{}`", fields[2])),
            },
            got => {
                return line_err(idx + 1, format!("expected 2 or 3 tab-separated fields, got {got}"))
            }
        };
        let id = pairs.len() as u64;
        pairs.push(BitextPair {
            src: Sentence::new(id, fields[0], src_lang.clone(), ""),
            tgt: Sentence::new(id, fields[1], tgt_lang.clone(), ""),
            score,
            method: MiningMethod::Refilter,
        });
    }
    Ok(pairs)
}
