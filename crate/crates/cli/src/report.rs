//! Machine-readable run reports. Identical inputs and seed produce an
//! identical report except for the wall time.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use std::time::Instant;

#[derive(Serialize)]
pub struct InputRef {
    pub path: String,
    pub sha256: String,
}

#[derive(Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    pub version: String,
    pub seed: u64,
    pub inputs: Vec<InputRef>,
    pub parameters: Value,
    pub results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<Value>,
    pub wall_time_ms: u128,
}

pub struct ReportBuilder {
    command: String,
    seed: u64,
    inputs: Vec<InputRef>,
    start: Instant,
}

impl ReportBuilder {
    pub fn new(command: &str, seed: u64) -> ReportBuilder {
        ReportBuilder {
            command: command.to_string(),
            seed,
            inputs: Vec::new(),
            start: Instant::now(),
        }
    }

    pub fn input(&mut self, path: &str, contents: &[u8]) {
        let mut hasher = Sha256::new();
        hasher.update(contents);
        let digest = hasher.finalize();
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        self.inputs.push(InputRef {
            path: path.to_string(),
            sha256: hex,
        });
    }

    pub fn finish(self, parameters: Value, results: Value, verification: Option<Value>) -> RunReport {
        RunReport {
            schema: 1,
            command: self.command,
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed: self.seed,
            inputs: self.inputs,
            parameters,
            results,
            verification,
            wall_time_ms: self.start.elapsed().as_millis(),
        }
    }
}

pub fn emit(report: &RunReport, path: Option<&str>) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(report).expect("report serializes");
    match path {
        Some(p) => std::fs::write(p, text + "\n"),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}
