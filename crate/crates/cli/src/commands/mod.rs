//! Subcommand implementations, grouped by pipeline phase.

pub mod mining;
pub mod scoring;
pub mod text;
