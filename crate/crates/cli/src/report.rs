//! Machine-readable run reports: command echo, input digest, per-check
//! outcomes with witnesses, and the exit status they determine.

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub inputs_digest: String,
    pub checks: Vec<Check>,
    pub data: serde_json::Value,
    pub exit_status: u8,
}

/// Accumulates checks and data for one command run. The digest covers the
/// normalized command tokens and any input file contents, in order.
pub struct ReportBuilder {
    command: Vec<String>,
    hasher: Sha256,
    checks: Vec<Check>,
    data: serde_json::Map<String, serde_json::Value>,
}

impl ReportBuilder {
    pub fn new(command: &[String]) -> ReportBuilder {
        let mut hasher = Sha256::new();
        for token in command {
            hasher.update(token.as_bytes());
            hasher.update([0]);
        }
        ReportBuilder {
            command: command.to_vec(),
            hasher,
            checks: Vec::new(),
            data: serde_json::Map::new(),
        }
    }

    pub fn hash_input(&mut self, bytes: &[u8]) {
        self.hasher.update(bytes);
    }

    /// A failing check must carry a concrete witness.
    pub fn check(&mut self, name: &str, pass: bool, witness: Option<String>) {
        assert!(pass || witness.is_some(), "failing check `{name}` without witness");
        self.checks.push(Check {
            name: name.to_string(),
            pass,
            witness: if pass { None } else { witness },
        });
    }

    pub fn data(&mut self, key: &str, value: serde_json::Value) {
        self.data.insert(key.to_string(), value);
    }

    pub fn finish(self) -> RunReport {
        let pass = self.checks.iter().all(|c| c.pass);
        RunReport {
            command: self.command,
            inputs_digest: format!("{:x}", self.hasher.finalize()),
            checks: self.checks,
            data: serde_json::Value::Object(self.data),
            exit_status: u8::from(!pass),
        }
    }
}
