//! The JSON envelope every command prints.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// How a command's checks came out; maps onto the process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Violation,
    /// Checks could not be asserted (a precondition did not hold).
    Abstain,
}

impl Status {
    pub fn from_verdict(v: bool) -> Status {
        if v {
            Status::Pass
        } else {
            Status::Violation
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Violation => 2,
            Status::Abstain => 1,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_sha256: Option<String>,
    pub verdict: Option<bool>,
    pub counts: BTreeMap<String, u64>,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            tool: "acgraph",
            version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            parameters: BTreeMap::new(),
            input_sha256: None,
            verdict: None,
            counts: BTreeMap::new(),
            result: Value::Null,
            timing_ms: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.into(), value.to_string());
        self
    }

    pub fn count(mut self, key: &str, value: usize) -> Self {
        self.counts.insert(key.into(), value as u64);
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Print to stdout, or write to `out` when given.
pub fn emit(text: &str, out: Option<&Path>) -> std::io::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub struct Clock(Option<Instant>);

impl Clock {
    pub fn start(enabled: bool) -> Self {
        Clock(enabled.then(Instant::now))
    }

    pub fn stamp(&self, report: &mut RunReport) {
        report.timing_ms = self.0.map(|t| t.elapsed().as_millis() as u64);
    }
}
