use serde::{Deserialize, Serialize};

use super::InequalityId;
use crate::numkernel::{LoewnerComparison, SingularSpectrum, Tolerance};
use crate::ComplexMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Violated,
    HypothesisViolated,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Violated => "violated",
            Verdict::HypothesisViolated => "hypothesis_violated",
        }
    }
}

/// How a side compares its two operands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// Entrywise comparison of two zero-padded singular spectra.
    Spectral,
    /// Löwner order `X ≤ Y`. Entry `j` is the `j`-th eigenpair `(λ_j, v_j)` of
    /// `Y − X` (ascending): `lhs = ⟨v_j, X v_j⟩`, `rhs = ⟨v_j, Y v_j⟩`, `margin = λ_j`.
    Loewner,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IndexMargin {
    /// One-based index.
    pub j: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

/// One inequality `lhs ≤ rhs` of a (possibly two-sided) statement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SideReport {
    pub label: String,
    pub statement: String,
    pub comparison: Comparison,
    /// Magnitude the tolerance scales with on this side.
    pub scale: f64,
    pub per_index: Vec<IndexMargin>,
    pub min_margin: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResidualBound {
    /// Satisfied when `residual ≤ threshold` (defects and norms).
    AtMost,
    /// Satisfied when `residual ≥ −threshold` (minimum eigenvalues).
    AtLeastNegated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub residual: f64,
    pub threshold: f64,
    pub bound: ResidualBound,
    pub satisfied: bool,
}

impl HypothesisCheck {
    pub fn at_most(name: impl Into<String>, residual: f64, threshold: f64) -> Self {
        HypothesisCheck {
            name: name.into(),
            residual,
            threshold,
            bound: ResidualBound::AtMost,
            satisfied: residual <= threshold,
        }
    }

    pub fn at_least_negated(name: impl Into<String>, residual: f64, threshold: f64) -> Self {
        HypothesisCheck {
            name: name.into(),
            residual,
            threshold,
            bound: ResidualBound::AtLeastNegated,
            satisfied: residual >= -threshold,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub id: InequalityId,
    pub dims: Vec<usize>,
    pub sides: Vec<SideReport>,
    pub min_margin: f64,
    pub verdict: Verdict,
    pub tol_used: f64,
    pub tolerance: Tolerance,
    pub hypotheses: Vec<HypothesisCheck>,
    pub hypotheses_enforced: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl InequalityReport {
    pub fn side(&self, label: &str) -> Option<&SideReport> {
        self.sides.iter().find(|s| s.label == label)
    }

    /// The first unsatisfied hypothesis, if any.
    pub fn failing_hypothesis(&self) -> Option<&HypothesisCheck> {
        self.hypotheses.iter().find(|h| !h.satisfied)
    }

    pub fn hypothesis(&self, name: &str) -> Option<&HypothesisCheck> {
        self.hypotheses.iter().find(|h| h.name == name)
    }
}

struct PendingSide {
    label: String,
    statement: String,
    comparison: Comparison,
    scale: f64,
    per_index: Vec<IndexMargin>,
}

/// Collects sides and hypotheses, then settles `tol_used` and the verdict.
pub(crate) struct ReportBuilder {
    id: InequalityId,
    dims: Vec<usize>,
    tol: Tolerance,
    enforce: bool,
    sides: Vec<PendingSide>,
    hypotheses: Vec<HypothesisCheck>,
    notes: Vec<String>,
}

impl ReportBuilder {
    pub fn new(id: InequalityId, inputs: &[&ComplexMatrix], tol: Tolerance, enforce: bool) -> Self {
        ReportBuilder {
            id,
            dims: inputs.iter().map(|m| m.n()).collect(),
            tol,
            enforce,
            sides: Vec::new(),
            hypotheses: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn with_dims(id: InequalityId, dims: Vec<usize>, tol: Tolerance, enforce: bool) -> Self {
        ReportBuilder {
            id,
            dims,
            tol,
            enforce,
            sides: Vec::new(),
            hypotheses: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn hypothesis(&mut self, h: HypothesisCheck) -> &mut Self {
        self.hypotheses.push(h);
        self
    }

    pub fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.notes.push(note.into());
        self
    }

    /// `lhs_j ≤ rhs_j` for every `j`, both spectra zero-padded to a common length.
    pub fn spectral(
        &mut self,
        label: &str,
        statement: &str,
        lhs: &SingularSpectrum,
        rhs: &SingularSpectrum,
    ) -> &mut Self {
        let len = lhs.len().max(rhs.len());
        let per_index = (0..len)
            .map(|k| {
                let (l, r) = (lhs.get(k), rhs.get(k));
                IndexMargin {
                    j: k + 1,
                    lhs: l,
                    rhs: r,
                    margin: r - l,
                }
            })
            .collect();
        self.sides.push(PendingSide {
            label: label.into(),
            statement: statement.into(),
            comparison: Comparison::Spectral,
            scale: lhs.largest().max(rhs.largest()),
            per_index,
        });
        self
    }

    /// Löwner side `X ≤ Y` from a completed comparison.
    pub fn loewner(
        &mut self,
        label: &str,
        statement: &str,
        x: &ComplexMatrix,
        y: &ComplexMatrix,
        cmp: &LoewnerComparison,
    ) -> &mut Self {
        let v = &cmp.difference.vectors;
        let n = v.n();
        let quad = |m: &ComplexMatrix, k: usize| -> f64 {
            let mut acc = 0.0;
            for i in 0..n {
                for l in 0..n {
                    acc += (v[(i, k)].conj() * m[(i, l)] * v[(l, k)]).re;
                }
            }
            acc
        };
        let per_index = cmp
            .difference
            .eigenvalues
            .iter()
            .enumerate()
            .map(|(k, &lambda)| IndexMargin {
                j: k + 1,
                lhs: quad(x, k),
                rhs: quad(y, k),
                margin: lambda,
            })
            .collect();
        self.sides.push(PendingSide {
            label: label.into(),
            statement: statement.into(),
            comparison: Comparison::Loewner,
            scale: cmp.difference_norm,
            per_index,
        });
        self
    }

    pub fn finish(self) -> InequalityReport {
        let scale = self.sides.iter().map(|s| s.scale).fold(0.0, f64::max);
        let tol_used = self.tol.effective(scale);
        let sides: Vec<SideReport> = self
            .sides
            .into_iter()
            .map(|s| {
                let min_margin = s
                    .per_index
                    .iter()
                    .map(|m| m.margin)
                    .fold(f64::INFINITY, f64::min);
                SideReport {
                    label: s.label,
                    statement: s.statement,
                    comparison: s.comparison,
                    scale: s.scale,
                    per_index: s.per_index,
                    min_margin,
                    holds: min_margin >= -tol_used,
                }
            })
            .collect();
        let min_margin = sides
            .iter()
            .map(|s| s.min_margin)
            .fold(f64::INFINITY, f64::min);
        let hypotheses_ok = self.hypotheses.iter().all(|h| h.satisfied);
        let verdict = if self.enforce && !hypotheses_ok {
            Verdict::HypothesisViolated
        } else if min_margin >= -tol_used {
            Verdict::Holds
        } else {
            Verdict::Violated
        };
        InequalityReport {
            id: self.id,
            dims: self.dims,
            sides,
            min_margin,
            verdict,
            tol_used,
            tolerance: self.tol,
            hypotheses: self.hypotheses,
            hypotheses_enforced: self.enforce,
            notes: self.notes,
        }
    }
}
