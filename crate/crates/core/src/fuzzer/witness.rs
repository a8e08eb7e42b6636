use serde::{Deserialize, Serialize};

use super::FuzzError;
use crate::inequalities::{check_with, CheckOptions, InequalityId, InequalityReport};
use crate::numkernel::ComplexMatrix;
use crate::randgen::GeneratorClass;

/// Stored inputs and the report they produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub id: InequalityId,
    pub options: CheckOptions,
    pub inputs: Vec<ComplexMatrix>,
    pub report: InequalityReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<WitnessOrigin>,
}

/// Where a witness came from, for regenerating it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessOrigin {
    pub class: GeneratorClass,
    pub dim: usize,
    pub seed: u64,
    pub stream: u64,
    /// Accepted perturbation steps after the starting sample (search only).
    #[serde(default)]
    pub steps: u32,
}

impl Witness {
    pub fn new(
        inputs: Vec<ComplexMatrix>,
        report: InequalityReport,
        options: CheckOptions,
    ) -> Self {
        Witness {
            id: report.id,
            options,
            inputs,
            report,
            origin: None,
        }
    }
}

/// Re-runs the checker on the stored inputs.
///
/// Fails unless the fresh report reproduces the stored verdict and minimum
/// margin to within 1e-12.
pub fn replay(witness: &Witness) -> Result<InequalityReport, FuzzError> {
    let malformed = |msg: String| Err(FuzzError::MalformedWitness(msg));
    if witness.report.id != witness.id {
        return malformed(format!(
            "report is for {}, witness for {}",
            witness.report.id, witness.id
        ));
    }
    if witness.inputs.len() != witness.id.arity() {
        return malformed(format!(
            "{} takes {} inputs, witness stores {}",
            witness.id,
            witness.id.arity(),
            witness.inputs.len()
        ));
    }
    let dims: Vec<usize> = witness.inputs.iter().map(|m| m.n()).collect();
    if dims != witness.report.dims {
        return malformed(format!(
            "input dims {dims:?} differ from report dims {:?}",
            witness.report.dims
        ));
    }
    let fresh = check_with(witness.id, &witness.inputs, &witness.options)
        .or_else(|e| malformed(format!("checker rejected stored inputs: {e}")))?;
    if fresh.verdict != witness.report.verdict {
        return malformed(format!(
            "replayed verdict {} differs from stored {}",
            fresh.verdict.as_str(),
            witness.report.verdict.as_str()
        ));
    }
    if (fresh.min_margin - witness.report.min_margin).abs() > 1e-12 {
        return malformed(format!(
            "replayed min margin {:e} differs from stored {:e}",
            fresh.min_margin, witness.report.min_margin
        ));
    }
    Ok(fresh)
}
