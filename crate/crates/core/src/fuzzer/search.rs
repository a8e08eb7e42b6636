use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{FuzzError, Witness, WitnessOrigin};
use crate::inequalities::{check_with, CheckOptions, InequalityId, InequalityReport};
use crate::numkernel::{gram, ComplexMatrix, Tolerance, MAX_DIM};
use crate::randgen::{ginibre, GeneratorClass, PrngStream};

pub const DEFAULT_PERTURB_STEPS: u32 = 64;

/// Statements evaluated outside the hypotheses that make them true.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SearchId {
    /// `A` positive semidefinite, `B` only Hermitian.
    #[serde(rename = "bk-1.1-hermitian-B")]
    Bk11HermitianB,
    /// Normality dropped.
    #[serde(rename = "thm-2.1-nonnormal")]
    Thm21NonNormal,
    /// Löwner-order version for arbitrary `A`.
    #[serde(rename = "loewner-cartesian-general")]
    LoewnerCartesianGeneral,
}

impl SearchId {
    pub const ALL: [SearchId; 3] = [
        SearchId::Bk11HermitianB,
        SearchId::Thm21NonNormal,
        SearchId::LoewnerCartesianGeneral,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SearchId::Bk11HermitianB => "bk-1.1-hermitian-B",
            SearchId::Thm21NonNormal => "thm-2.1-nonnormal",
            SearchId::LoewnerCartesianGeneral => "loewner-cartesian-general",
        }
    }

    pub fn inequality(self) -> InequalityId {
        match self {
            SearchId::Bk11HermitianB => InequalityId::Bk11,
            SearchId::Thm21NonNormal => InequalityId::Thm21,
            SearchId::LoewnerCartesianGeneral => InequalityId::LoewnerCartesian,
        }
    }

    /// Number of Ginibre factors parametrizing one point of the ambient class.
    fn factors(self) -> usize {
        match self {
            SearchId::Bk11HermitianB => 2,
            _ => 1,
        }
    }

    /// Maps Ginibre factors to checker inputs in the ambient class.
    fn inputs(self, factors: &[ComplexMatrix]) -> Vec<ComplexMatrix> {
        match self {
            SearchId::Bk11HermitianB => vec![gram(&factors[0]), factors[1].hermitian_part()],
            _ => vec![factors[0].clone()],
        }
    }
}

impl fmt::Display for SearchId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SearchId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        SearchId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = SearchId::ALL.iter().map(|t| t.as_str()).collect();
                format!(
                    "unknown search target '{s}' (expected one of: {})",
                    known.join(", ")
                )
            })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchTarget {
    pub id: SearchId,
    /// Total checker evaluations across all restarts.
    pub budget: u64,
    pub perturb_steps: u32,
    /// Restarts cycle through these dimensions.
    pub dims: Vec<usize>,
    pub tol: Tolerance,
}

impl SearchTarget {
    pub fn new(id: SearchId, budget: u64) -> Self {
        SearchTarget {
            id,
            budget,
            perturb_steps: DEFAULT_PERTURB_STEPS,
            dims: vec![2, 3],
            tol: Tolerance::default(),
        }
    }

    pub fn validate(&self) -> Result<(), FuzzError> {
        if self.dims.is_empty() || self.dims.iter().any(|&d| d == 0 || d > MAX_DIM) {
            return Err(FuzzError::ConfigInvalid(format!(
                "search dims must be non-empty and within 1..={MAX_DIM}, got {:?}",
                self.dims
            )));
        }
        Tolerance::new(self.tol.tol_abs, self.tol.tol_rel).map_err(FuzzError::ConfigInvalid)?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SearchOutcome {
    Found {
        witness: Box<Witness>,
        evaluations: u64,
    },
    Exhausted {
        evaluations: u64,
        best_objective: Option<f64>,
    },
}

/// Margin normalized by the size of the compared quantities; lower is better.
fn objective(report: &InequalityReport) -> f64 {
    let scale = report.sides.iter().map(|s| s.scale).fold(0.0, f64::max);
    if scale > 0.0 {
        report.min_margin / scale
    } else {
        0.0
    }
}

fn is_witness(report: &InequalityReport) -> bool {
    report.min_margin < -10.0 * report.tol_used
}

/// Random restarts followed by greedy Gaussian perturbation.
///
/// Restart `r` draws its start and its steps from stream `r` under `seed`.
/// A step that does not lower the objective halves the step size. The first
/// evaluation whose minimum margin is below `−10·tol_used` is returned.
pub fn search_counterexample(target: &SearchTarget, seed: u64) -> Result<SearchOutcome, FuzzError> {
    target.validate()?;
    let opts = CheckOptions::relaxed(target.tol);
    let id = target.id.inequality();
    let mut evaluations = 0u64;
    let mut best: Option<f64> = None;

    let evaluate = |factors: &[ComplexMatrix], evaluations: &mut u64| {
        *evaluations += 1;
        let inputs = target.id.inputs(factors);
        check_with(id, &inputs, &opts).ok().map(|r| (inputs, r))
    };

    let mut restart = 0u64;
    while evaluations < target.budget {
        let dim = target.dims[(restart % target.dims.len() as u64) as usize];
        let mut rng = PrngStream::new(seed, restart);
        let mut current: Vec<ComplexMatrix> = (0..target.id.factors())
            .map(|_| ginibre(&mut rng, dim))
            .collect();
        let mut current_obj = f64::INFINITY;
        let mut step = 0.5;
        let mut accepted = 0u32;

        for attempt in 0..=target.perturb_steps {
            if evaluations >= target.budget {
                break;
            }
            let candidate: Vec<ComplexMatrix> = if attempt == 0 {
                current.clone()
            } else {
                current
                    .iter()
                    .map(|f| f + &ginibre(&mut rng, dim).scale_real(step))
                    .collect()
            };
            let Some((inputs, report)) = evaluate(&candidate, &mut evaluations) else {
                step *= 0.5;
                continue;
            };
            let obj = objective(&report);
            best = Some(best.map_or(obj, |b: f64| b.min(obj)));
            if obj < current_obj {
                current = candidate;
                current_obj = obj;
                if attempt > 0 {
                    accepted += 1;
                }
            } else {
                step *= 0.5;
            }
            if is_witness(&report) {
                let mut witness = Witness::new(inputs, report, opts);
                witness.origin = Some(WitnessOrigin {
                    class: GeneratorClass::Ginibre,
                    dim,
                    seed,
                    stream: restart,
                    steps: accepted,
                });
                return Ok(SearchOutcome::Found {
                    witness: Box::new(witness),
                    evaluations,
                });
            }
        }
        restart += 1;
    }
    Ok(SearchOutcome::Exhausted {
        evaluations,
        best_objective: best,
    })
}
