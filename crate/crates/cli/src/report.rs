//! The JSON envelope printed by every command.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Outcome {
    Pass,
    Fail,
    /// Output without a pass/fail judgement.
    Data,
}

impl Outcome {
    pub fn from_pass(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    /// Process exit code: zero unless the run failed.
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Fail => 1,
            _ => 0,
        }
    }
}

/// Result of one command. Identical inputs give byte-identical JSON.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub outcome: Outcome,
    pub payload: Value,
    /// Seconds, as a decimal string; set only on request since it breaks reproducibility.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time: Option<String>,
}

impl RunReport {
    pub fn new(command: &str, outcome: Outcome, payload: Value) -> Self {
        RunReport { command: command.into(), parameters: BTreeMap::new(), outcome, payload, wall_time: None }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.into(), value.to_string());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}
