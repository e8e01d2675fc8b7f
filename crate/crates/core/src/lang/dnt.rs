//! Do-not-translate span detection and tagging.
//!
//! URLs, emails, dates, percentages, and numbers are wrapped as
//! `<dnt>{span}</dnt>` so a translation model passes them through verbatim.
//! Detection runs one detector at a time in priority order (url > email >
//! date > percent > number); each detector claims byte ranges leftmost-first
//! and may not overlap anything already claimed, which resolves e.g. the
//! digits inside a date in favor of the date.

use std::collections::HashMap;
use std::sync::LazyLock;

use regex::Regex;

use super::{LangError, Result};

const OPEN_TAG: &str = "<dnt>";
const CLOSE_TAG: &str = "</dnt>";

/// Category of a detected do-not-translate span.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DntKind {
    Url,
    Email,
    Number,
    Date,
    Percent,
}

impl DntKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DntKind::Url => "url",
            DntKind::Email => "email",
            DntKind::Number => "number",
            DntKind::Date => "date",
            DntKind::Percent => "percent",
        }
    }
}

/// A detected span, in char offsets into the *unwrapped* input text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DntSpan {
    pub start: usize,
    pub end: usize,
    pub kind: DntKind,
}

static URL: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"[A-Za-z][A-Za-z0-9+.-]*://\S+|www\.\S+").unwrap());
static EMAIL: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"[^\s@]+@[^\s@.]+(?:\.[^\s@.]+)+").unwrap());
static DATE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"\d{1,2}[./-]\d{1,2}[./-]\d{2,4}").unwrap());
static PERCENT: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"\d+(?:[.,]\d+)*%").unwrap());
static NUMBER: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"\d+(?:[.,]\d+)*").unwrap());

/// Detectors in claiming priority order.
fn detectors() -> [(DntKind, &'static Regex); 5] {
    [
        (DntKind::Url, &URL),
        (DntKind::Email, &EMAIL),
        (DntKind::Date, &DATE),
        (DntKind::Percent, &PERCENT),
        (DntKind::Number, &NUMBER),
    ]
}

/// A date match must not butt up against further digits on either side
/// (`\d{1,2}` could otherwise latch onto the tail of a longer digit run).
fn digit_bounded(text: &str, start: usize, end: usize) -> bool {
    let before_ok = text[..start].chars().next_back().is_none_or(|c| !c.is_numeric());
    let after_ok = text[end..].chars().next().is_none_or(|c| !c.is_numeric());
    before_ok && after_ok
}

/// Byte-offset spans, sorted and non-overlapping.
fn detect_bytes(text: &str) -> Vec<(usize, usize, DntKind)> {
    let mut claimed = vec![false; text.len()];
    let mut spans = Vec::new();
    for (kind, regex) in detectors() {
        for m in regex.find_iter(text) {
            if kind == DntKind::Date && !digit_bounded(text, m.start(), m.end()) {
                continue;
            }
            if claimed[m.start()..m.end()].iter().any(|&c| c) {
                continue;
            }
            claimed[m.start()..m.end()].fill(true);
            spans.push((m.start(), m.end(), kind));
        }
    }
    spans.sort_unstable_by_key(|&(start, ..)| start);
    spans
}

fn check_no_tags(text: &str) -> Result<()> {
    for tag in [OPEN_TAG, CLOSE_TAG] {
        if text.contains(tag) {
            return Err(LangError::TagCollision { tag });
        }
    }
    Ok(())
}

fn render(text: &str, spans: &[(usize, usize, DntKind)]) -> String {
    let mut out = String::with_capacity(text.len() + spans.len() * (OPEN_TAG.len() + CLOSE_TAG.len()));
    let mut pos = 0;
    for &(start, end, _) in spans {
        out.push_str(&text[pos..start]);
        out.push_str(OPEN_TAG);
        out.push_str(&text[start..end]);
        out.push_str(CLOSE_TAG);
        pos = end;
    }
    out.push_str(&text[pos..]);
    out
}

fn to_char_spans(text: &str, spans: &[(usize, usize, DntKind)]) -> Vec<DntSpan> {
    let byte_starts: Vec<usize> = text.char_indices().map(|(b, _)| b).collect();
    let char_offset = |byte: usize| byte_starts.partition_point(|&b| b < byte);
    spans
        .iter()
        .map(|&(start, end, kind)| DntSpan {
            start: char_offset(start),
            end: char_offset(end),
            kind,
        })
        .collect()
}

/// Wraps every detected span as `<dnt>{span}</dnt>` and reports the spans in
/// char offsets of the input. Stripping the tags from the output recovers the
/// input byte-exactly.
pub fn wrap_dnt(text: &str) -> Result<(String, Vec<DntSpan>)> {
    check_no_tags(text)?;
    let spans = detect_bytes(text);
    Ok((render(text, &spans), to_char_spans(text, &spans)))
}

/// Removes all `<dnt>`/`</dnt>` tags.
pub fn strip_dnt(text: &str) -> String {
    text.replace(OPEN_TAG, "").replace(CLOSE_TAG, "")
}

/// Wraps spans on a sentence pair, but only those whose exact surface string
/// is detected on *both* sides. When a string is detected more often on one
/// side than the other, the shared count is wrapped leftmost-first on each
/// side and the excess occurrences stay untagged.
pub fn wrap_dnt_pair(src: &str, tgt: &str) -> Result<(String, String)> {
    check_no_tags(src)?;
    check_no_tags(tgt)?;
    let src_spans = detect_bytes(src);
    let tgt_spans = detect_bytes(tgt);

    fn count<'a>(text: &'a str, spans: &[(usize, usize, DntKind)]) -> HashMap<&'a str, usize> {
        let mut counts = HashMap::new();
        for &(start, end, _) in spans {
            *counts.entry(&text[start..end]).or_default() += 1;
        }
        counts
    }
    let src_counts = count(src, &src_spans);
    let tgt_counts = count(tgt, &tgt_spans);
    let mut shared: HashMap<&str, usize> = HashMap::new();
    for (surface, &n) in &src_counts {
        if let Some(&m) = tgt_counts.get(surface) {
            shared.insert(surface, n.min(m));
        }
    }

    let select = |text: &str, spans: &[(usize, usize, DntKind)]| {
        let mut budget = shared.clone();
        spans
            .iter()
            .filter(|&&(start, end, _)| {
                match budget.get_mut(&text[start..end]) {
                    Some(n) if *n > 0 => {
                        *n -= 1;
                        true
                    }
                    _ => false,
                }
            })
            .copied()
            .collect::<Vec<_>>()
    };
    let src_selected = select(src, &src_spans);
    let tgt_selected = select(tgt, &tgt_spans);
    Ok((render(src, &src_selected), render(tgt, &tgt_selected)))
}
