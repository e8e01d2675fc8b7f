//! Back-translation budget allocation: a fixed total of monolingual
//! sentences is split across languages in proportion to each language's
//! translation quality score, with largest-remainder rounding so the
//! counts sum exactly to the budget.

use std::collections::BTreeMap;

use crate::lang::LangScript;

use super::{MetricsError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BtAllocation {
    pub per_lang_count: BTreeMap<LangScript, u64>,
    pub total: u64,
}

/// Splits a budget of `n` sentences proportionally to per-language
/// scores. Fractional shares are floored and the remaining units go to
/// the languages with the largest remainders, ties broken by ascending
/// language code; the counts always sum to exactly `n`.
pub fn bt_allocate(scores: &BTreeMap<LangScript, f64>, n: u64) -> Result<BtAllocation> {
    if scores.is_empty() {
        return Err(MetricsError::EmptyScores);
    }
    for (lang, &score) in scores {
        if score.is_nan() || score <= 0.0 {
            return Err(MetricsError::NonPositiveScore { lang: lang.code(), score });
        }
    }
    let score_sum: f64 = scores.values().sum();
    let mut per_lang_count = BTreeMap::new();
    let mut remainders: Vec<(&LangScript, f64)> = Vec::with_capacity(scores.len());
    let mut allocated = 0u64;
    for (lang, &score) in scores {
        let share = score / score_sum * n as f64;
        let base = share.floor() as u64;
        per_lang_count.insert(lang.clone(), base);
        remainders.push((lang, share - base as f64));
        allocated += base;
    }
    remainders.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    let mut deficit = n - allocated;
    let mut cursor = remainders.iter().cycle();
    while deficit > 0 {
        let (lang, _) = cursor.next().expect("non-empty remainder list");
        *per_lang_count.get_mut(lang).expect("allocated above") += 1;
        deficit -= 1;
    }
    Ok(BtAllocation { per_lang_count, total: n })
}
