use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    draw_inputs, effective_dim, CampaignConfig, CampaignTarget, FuzzError, Witness, WitnessOrigin,
};
use crate::inequalities::{check_with, CheckOptions, InequalityId, InequalityReport, Verdict};
use crate::numkernel::ComplexMatrix;
use crate::randgen::{GeneratorClass, PrngStream};

/// Log-spaced histogram of per-trial minimum margins.
///
/// Margins below `lower`, including zero and negative ones, land in
/// `underflow`; margins at or above `upper` land in `overflow`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarginHistogram {
    pub lower: f64,
    pub upper: f64,
    pub underflow: u64,
    pub bins: Vec<u64>,
    pub overflow: u64,
}

impl MarginHistogram {
    pub const BINS: usize = 32;
    pub const LOWER: f64 = 1e-12;
    pub const UPPER: f64 = 1e4;

    pub fn new() -> Self {
        MarginHistogram {
            lower: Self::LOWER,
            upper: Self::UPPER,
            underflow: 0,
            bins: vec![0; Self::BINS],
            overflow: 0,
        }
    }

    /// Bin edges, `BINS + 1` values from `lower` to `upper`.
    pub fn edges(&self) -> Vec<f64> {
        let decades = (self.upper / self.lower).log10();
        (0..=Self::BINS)
            .map(|k| self.lower * 10f64.powf(decades * k as f64 / Self::BINS as f64))
            .collect()
    }

    pub fn add(&mut self, margin: f64) {
        if margin.is_nan() || margin < self.lower {
            self.underflow += 1;
        } else if margin >= self.upper {
            self.overflow += 1;
        } else {
            let pos = (margin / self.lower).log10() / (self.upper / self.lower).log10();
            let k = ((pos * Self::BINS as f64) as usize).min(Self::BINS - 1);
            self.bins[k] += 1;
        }
    }

    pub fn total(&self) -> u64 {
        self.underflow + self.overflow + self.bins.iter().sum::<u64>()
    }
}

impl Default for MarginHistogram {
    fn default() -> Self {
        Self::new()
    }
}

/// Per-side extremes over all trials whose hypotheses held.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SideStats {
    pub label: String,
    pub min_margin: f64,
    pub max_abs_margin: f64,
    /// Largest `|margin_j| / max(1, side scale)`.
    pub max_rel_abs_margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimSummary {
    pub dim: usize,
    pub trials: u64,
    pub holds: u64,
    pub violated: u64,
    pub hypothesis_violated: u64,
    pub errored: u64,
    pub min_margin: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TargetResult {
    pub id: InequalityId,
    pub class: GeneratorClass,
    pub expected_to_hold: bool,
    pub trials: u64,
    pub holds: u64,
    pub violated: u64,
    pub hypothesis_violated: u64,
    pub errored: u64,
    /// Smallest minimum margin among trials whose hypotheses held.
    pub min_margin: Option<f64>,
    pub histogram: MarginHistogram,
    pub sides: Vec<SideStats>,
    pub per_dim: Vec<DimSummary>,
    pub worst_witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_error: Option<String>,
}

impl TargetResult {
    pub fn side(&self, label: &str) -> Option<&SideStats> {
        self.sides.iter().find(|s| s.label == label)
    }

    /// Violations of a statement expected to hold.
    pub fn unexpected_violations(&self) -> u64 {
        if self.expected_to_hold {
            self.violated
        } else {
            0
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignResult {
    pub targets: Vec<TargetResult>,
}

impl CampaignResult {
    pub fn target(&self, id: InequalityId) -> Option<&TargetResult> {
        self.targets.iter().find(|t| t.id == id)
    }

    pub fn unexpected_violations(&self) -> u64 {
        self.targets
            .iter()
            .map(TargetResult::unexpected_violations)
            .sum()
    }
}

enum Outcome {
    Checked {
        report: InequalityReport,
        /// Kept only for violations, to build the witness.
        inputs: Option<Vec<ComplexMatrix>>,
    },
    Errored(String),
}

struct Trial {
    dim_pos: usize,
    stream: u64,
    outcome: Outcome,
}

/// Runs every target over every dimension.
///
/// Trial `k` at the `d`-th dimension uses stream `d·trials_per_dim + k` under
/// `config.seed`. Trials run in parallel and are folded in index order, so
/// the result does not depend on the thread count.
pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignResult, FuzzError> {
    config.validate()?;
    let targets = config
        .targets
        .iter()
        .map(|t| run_target(config, t))
        .collect();
    Ok(CampaignResult { targets })
}

fn run_target(config: &CampaignConfig, target: &CampaignTarget) -> TargetResult {
    let opts = CheckOptions::with_tol(config.tol);
    let per_dim = config.trials_per_dim;
    let total = per_dim * config.dims.len() as u64;

    let trials: Vec<Trial> = (0..total)
        .into_par_iter()
        .map(|stream| {
            let dim_pos = (stream / per_dim) as usize;
            let mut rng = PrngStream::new(config.seed, stream);
            let inputs = draw_inputs(target, config.dims[dim_pos], &mut rng);
            let outcome = match check_with(target.id, &inputs, &opts) {
                Ok(report) => {
                    let keep = report.verdict == Verdict::Violated;
                    Outcome::Checked {
                        report,
                        inputs: keep.then_some(inputs),
                    }
                }
                Err(e) => Outcome::Errored(e.to_string()),
            };
            Trial {
                dim_pos,
                stream,
                outcome,
            }
        })
        .collect();

    let mut result = TargetResult {
        id: target.id,
        class: target.class,
        expected_to_hold: target.expected_to_hold(),
        trials: 0,
        holds: 0,
        violated: 0,
        hypothesis_violated: 0,
        errored: 0,
        min_margin: None,
        histogram: MarginHistogram::new(),
        sides: Vec::new(),
        per_dim: config
            .dims
            .iter()
            .map(|&d| DimSummary {
                dim: effective_dim(target.id, d),
                trials: 0,
                holds: 0,
                violated: 0,
                hypothesis_violated: 0,
                errored: 0,
                min_margin: None,
            })
            .collect(),
        worst_witness: None,
        first_error: None,
    };

    for trial in trials {
        result.trials += 1;
        let dim = &mut result.per_dim[trial.dim_pos];
        dim.trials += 1;
        let (report, inputs) = match trial.outcome {
            Outcome::Errored(msg) => {
                result.errored += 1;
                dim.errored += 1;
                result.first_error.get_or_insert(msg);
                continue;
            }
            Outcome::Checked { report, inputs } => (report, inputs),
        };
        match report.verdict {
            Verdict::HypothesisViolated => {
                result.hypothesis_violated += 1;
                dim.hypothesis_violated += 1;
                continue;
            }
            Verdict::Holds => {
                result.holds += 1;
                dim.holds += 1;
            }
            Verdict::Violated => {
                result.violated += 1;
                dim.violated += 1;
            }
        }
        let m = report.min_margin;
        result.histogram.add(m);
        dim.min_margin = Some(dim.min_margin.map_or(m, |x| x.min(m)));
        if result.min_margin.is_none_or(|x| m < x) {
            result.min_margin = Some(m);
        }
        merge_sides(&mut result.sides, &report);
        if let Some(inputs) = inputs {
            let worse = result
                .worst_witness
                .as_ref()
                .is_none_or(|w| m < w.report.min_margin);
            if worse {
                let mut w = Witness::new(inputs, report, opts);
                w.origin = Some(WitnessOrigin {
                    class: target.class,
                    dim: dim.dim,
                    seed: config.seed,
                    stream: trial.stream,
                    steps: 0,
                });
                result.worst_witness = Some(w);
            }
        }
    }
    result
}

fn merge_sides(stats: &mut Vec<SideStats>, report: &InequalityReport) {
    for side in &report.sides {
        let max_abs = side
            .per_index
            .iter()
            .map(|m| m.margin.abs())
            .fold(0.0, f64::max);
        let rel = max_abs / side.scale.max(1.0);
        match stats.iter_mut().find(|s| s.label == side.label) {
            Some(s) => {
                s.min_margin = s.min_margin.min(side.min_margin);
                s.max_abs_margin = s.max_abs_margin.max(max_abs);
                s.max_rel_abs_margin = s.max_rel_abs_margin.max(rel);
            }
            None => stats.push(SideStats {
                label: side.label.clone(),
                min_margin: side.min_margin,
                max_abs_margin: max_abs,
                max_rel_abs_margin: rel,
            }),
        }
    }
}
