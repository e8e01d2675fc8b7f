//! Parallel-corpus mining and quality toolkit for Indic-English bitext.
//!
//! The crate is organized around the stages of a mining pipeline:
//!
//! * [`lang`] — language/script identities, script unification into
//!   Devanagari, numeral mapping, normalization, and do-not-translate tags.
//! * [`filter`] — sentence segmentation, length/LID/toxicity filters,
//!   deduplication, and benchmark decontamination.
//! * [`embed`] — dense embedding matrices and their binary file format.
//! * [`index`] — sharded IVF-PQ approximate nearest-neighbor indexes.
//! * [`mine`] — cosine- and margin-based bitext mining and refiltering.
//! * [`metrics`] — BLEU, chrF++, significance testing, QC checks,
//!   back-translation budgeting, and correlation utilities.

pub mod embed;
pub mod filter;
pub mod index;
pub mod lang;
pub mod metrics;
pub mod mine;
