//! Stage reports: one JSON line per stage on standard error, carrying
//! counts, wall time, and the parameters the stage actually ran with.

use std::time::Instant;

use serde::Serialize;

#[derive(Serialize)]
pub struct StageReport {
    pub stage: &'static str,
    pub input_count: usize,
    pub output_count: usize,
    pub wall_ms: u64,
    pub parameters: serde_json::Value,
}

/// Times a stage from construction to [`Stage::finish`].
pub struct Stage {
    name: &'static str,
    started: Instant,
}

impl Stage {
    pub fn begin(name: &'static str) -> Self {
        log::info!("stage {name} started");
        Stage { name, started: Instant::now() }
    }

    /// Emits the report line to stderr.
    pub fn finish(self, input_count: usize, output_count: usize, parameters: serde_json::Value) {
        let report = StageReport {
            stage: self.name,
            input_count,
            output_count,
            wall_ms: u64::try_from(self.started.elapsed().as_millis()).unwrap_or(u64::MAX),
            parameters,
        };
        eprintln!(
            "{}",
            serde_json::to_string(&report).expect("stage reports always serialize")
        );
    }
}
