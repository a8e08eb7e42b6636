//! Versioned JSON envelope for everything the tool writes.

use serde::{Deserialize, Serialize};
use svineq_core::fuzzer::{CampaignConfig, CampaignResult, SearchOutcome, SearchTarget, Witness};

use crate::repro::ReproResult;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub schema: u32,
    pub tool_version: String,
    #[serde(flatten)]
    pub body: ReportBody,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum ReportBody {
    Verify {
        files: Vec<String>,
        witness: Witness,
    },
    Repro {
        result: ReproResult,
    },
    Fuzz {
        config: CampaignConfig,
        result: CampaignResult,
    },
    Search {
        target: SearchTarget,
        seed: u64,
        outcome: SearchOutcome,
    },
}

impl ReportFile {
    pub fn new(body: ReportBody) -> Self {
        ReportFile {
            schema: SCHEMA_VERSION,
            tool_version: TOOL_VERSION.into(),
            body,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report values are finite");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        let file: ReportFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
        if file.schema != SCHEMA_VERSION {
            return Err(format!(
                "unsupported schema {} (expected {SCHEMA_VERSION})",
                file.schema
            ));
        }
        Ok(file)
    }

    /// Stored witnesses, in document order.
    pub fn witnesses(&self) -> Vec<&Witness> {
        match &self.body {
            ReportBody::Verify { witness, .. } => vec![witness],
            ReportBody::Repro { result } => result.witnesses.iter().collect(),
            ReportBody::Fuzz { result, .. } => result
                .targets
                .iter()
                .filter_map(|t| t.worst_witness.as_ref())
                .collect(),
            ReportBody::Search { outcome, .. } => match outcome {
                SearchOutcome::Found { witness, .. } => vec![witness],
                SearchOutcome::Exhausted { .. } => vec![],
            },
        }
    }
}
