//! Metric signatures: compact reproducibility strings attached to every
//! score, recording the parameters that shaped it, plus a parser that
//! recovers a metric specification from a signature.

use super::{MetricsError, Result};

const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Signature for corpus BLEU as computed here: single reference, cased,
/// 13a tokenization, exponential smoothing.
pub fn bleu_signature() -> String {
    format!("nrefs:1|case:mixed|eff:no|tok:13a|smooth:exp|version:{VERSION}")
}

/// Signature for corpus BLEU over pre-tokenized text (whitespace
/// splitting only, no tokenizer applied).
pub fn bleu_signature_pretokenized() -> String {
    format!("nrefs:1|case:mixed|eff:no|tok:none|smooth:exp|version:{VERSION}")
}

/// Signature for corpus chrF++ as computed here: single reference, cased,
/// effective order, character order 6, word order 2, whitespace stripped.
pub fn chrf_signature() -> String {
    format!("nrefs:1|case:mixed|eff:yes|nc:6|nw:2|space:no|version:{VERSION}")
}

/// Metric identified by a parsed signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MetricSpec {
    /// `tokenizer` is `"13a"` or `"none"` (pre-tokenized input).
    Bleu { tokenizer: String, version: String },
    ChrfPp { nc: usize, nw: usize, version: String },
}

fn field<'a>(pairs: &[(&'a str, &'a str)], key: &str) -> Result<&'a str> {
    pairs
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(_, v)| *v)
        .ok_or_else(|| MetricsError::BadSignature { reason: format!("missing field {key:?}") })
}

fn expect(pairs: &[(&str, &str)], key: &str, want: &str) -> Result<()> {
    let got = field(pairs, key)?;
    if got != want {
        return Err(MetricsError::BadSignature {
            reason: format!("field {key:?} is {got:?}, expected {want:?}"),
        });
    }
    Ok(())
}

/// Parses a signature produced by [`bleu_signature`] or
/// [`chrf_signature`] back into the metric it describes.
pub fn parse_signature(signature: &str) -> Result<MetricSpec> {
    let mut pairs = Vec::new();
    for part in signature.split('|') {
        let Some((key, value)) = part.split_once(':') else {
            return Err(MetricsError::BadSignature {
                reason: format!("field {part:?} is not key:value"),
            });
        };
        if pairs.iter().any(|(k, _)| *k == key) {
            return Err(MetricsError::BadSignature { reason: format!("duplicate field {key:?}") });
        }
        pairs.push((key, value));
    }
    expect(&pairs, "nrefs", "1")?;
    expect(&pairs, "case", "mixed")?;
    let version = field(&pairs, "version")?.to_string();
    match field(&pairs, "eff")? {
        "no" => {
            let tokenizer = match field(&pairs, "tok")? {
                tok @ ("13a" | "none") => tok.to_string(),
                other => {
                    return Err(MetricsError::BadSignature {
                        reason: format!("field \"tok\" is {other:?}, expected \"13a\" or \"none\""),
                    })
                }
            };
            expect(&pairs, "smooth", "exp")?;
            Ok(MetricSpec::Bleu { tokenizer, version })
        }
        "yes" => {
            expect(&pairs, "space", "no")?;
            let order = |key: &str| -> Result<usize> {
                field(&pairs, key)?.parse().map_err(|_| MetricsError::BadSignature {
                    reason: format!("field {key:?} is not a number"),
                })
            };
            Ok(MetricSpec::ChrfPp { nc: order("nc")?, nw: order("nw")?, version })
        }
        other => Err(MetricsError::BadSignature {
            reason: format!("field \"eff\" is {other:?}, expected \"yes\" or \"no\""),
        })
    }
}
