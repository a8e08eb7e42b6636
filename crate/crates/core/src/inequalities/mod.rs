//! The inequality catalog.
//!
//! Every statement is a checker returning an [`InequalityReport`] with the
//! per-index margins `rhs_j − lhs_j` of each side, the hypothesis residuals it
//! was evaluated under, and a verdict. Hypothesis failures are reported as
//! [`Verdict::HypothesisViolated`] rather than errors; errors are reserved for
//! malformed input.

mod checkers;
mod report;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use checkers::{
    check_ak_1_3, check_ak_1_4, check_bk_1_1, check_cor_2_9, check_loewner_cartesian,
    check_proof_facts_2_1, check_scalar_1_6, check_tao_1_2, check_thm_2_1, check_thm_2_4,
    check_thm_2_5, check_thm_2_7, check_thm_2_8, JordanSide,
};
pub use report::{
    Comparison, HypothesisCheck, IndexMargin, InequalityReport, ResidualBound, SideReport, Verdict,
};

use crate::numkernel::{ComplexMatrix, LinalgError, Tolerance};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InequalityError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("{id} takes {expected} matrices, got {got}")]
    ArityMismatch {
        id: InequalityId,
        expected: usize,
        got: usize,
    },
    #[error("scalar inputs must be real 1x1 matrices: {0}")]
    NotScalar(String),
}

pub type Result<T> = std::result::Result<T, InequalityError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum InequalityId {
    #[serde(rename = "scalar-1.6")]
    Scalar16,
    #[serde(rename = "bk-1.1")]
    Bk11,
    #[serde(rename = "tao-1.2")]
    Tao12,
    #[serde(rename = "ak-1.3")]
    Ak13,
    #[serde(rename = "ak-1.4")]
    Ak14,
    #[serde(rename = "thm-2.1")]
    Thm21,
    #[serde(rename = "thm-2.4")]
    Thm24,
    #[serde(rename = "thm-2.5-plus")]
    Thm25Plus,
    #[serde(rename = "thm-2.5-minus")]
    Thm25Minus,
    #[serde(rename = "thm-2.7")]
    Thm27,
    #[serde(rename = "thm-2.8")]
    Thm28,
    #[serde(rename = "cor-2.9")]
    Cor29,
    #[serde(rename = "loewner-cartesian")]
    LoewnerCartesian,
    #[serde(rename = "proof-facts-2.1")]
    ProofFacts21,
}

impl InequalityId {
    pub const ALL: [InequalityId; 14] = [
        InequalityId::Scalar16,
        InequalityId::Bk11,
        InequalityId::Tao12,
        InequalityId::Ak13,
        InequalityId::Ak14,
        InequalityId::Thm21,
        InequalityId::Thm24,
        InequalityId::Thm25Plus,
        InequalityId::Thm25Minus,
        InequalityId::Thm27,
        InequalityId::Thm28,
        InequalityId::Cor29,
        InequalityId::LoewnerCartesian,
        InequalityId::ProofFacts21,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            InequalityId::Scalar16 => "scalar-1.6",
            InequalityId::Bk11 => "bk-1.1",
            InequalityId::Tao12 => "tao-1.2",
            InequalityId::Ak13 => "ak-1.3",
            InequalityId::Ak14 => "ak-1.4",
            InequalityId::Thm21 => "thm-2.1",
            InequalityId::Thm24 => "thm-2.4",
            InequalityId::Thm25Plus => "thm-2.5-plus",
            InequalityId::Thm25Minus => "thm-2.5-minus",
            InequalityId::Thm27 => "thm-2.7",
            InequalityId::Thm28 => "thm-2.8",
            InequalityId::Cor29 => "cor-2.9",
            InequalityId::LoewnerCartesian => "loewner-cartesian",
            InequalityId::ProofFacts21 => "proof-facts-2.1",
        }
    }

    /// Number of matrix inputs the checker takes.
    pub fn arity(self) -> usize {
        match self {
            InequalityId::Thm21
            | InequalityId::Thm24
            | InequalityId::Thm25Plus
            | InequalityId::Thm25Minus
            | InequalityId::Thm27
            | InequalityId::LoewnerCartesian => 1,
            InequalityId::Scalar16
            | InequalityId::Bk11
            | InequalityId::Ak14
            | InequalityId::Thm28
            | InequalityId::Cor29
            | InequalityId::ProofFacts21 => 2,
            InequalityId::Tao12 | InequalityId::Ak13 => 3,
        }
    }

    /// Degree of homogeneity of both sides under `inputs ↦ c·inputs`.
    pub fn homogeneity(self) -> u32 {
        match self {
            InequalityId::Thm28 | InequalityId::Cor29 | InequalityId::ProofFacts21 => 2,
            _ => 1,
        }
    }

    /// One-line statement of the inequality.
    pub fn statement(self) -> &'static str {
        match self {
            InequalityId::Scalar16 => "(1/√2)|a+b| ≤ |a+ib| ≤ |a|+|b|",
            InequalityId::Bk11 => "A, B ≥ 0: s_j(A+B) ≤ √2·s_j(A+iB)",
            InequalityId::Tao12 => "[[A,B],[B*,C]] ≥ 0: 2·s_j(B) ≤ s_j([[A,B],[B*,C]])",
            InequalityId::Ak13 => "[[A,B],[B*,C]] ≥ 0: s_j(B) ≤ s_j(A ⊕ C)",
            InequalityId::Ak14 => "A = A*, ±A ≤ B: 2·s_j(A) ≤ s_j((B+A) ⊕ (B−A))",
            InequalityId::Thm21 => "A normal: (1/√2)·s_j(A₁+A₂) ≤ s_j(A) ≤ s_j(|A₁|+|A₂|)",
            InequalityId::Thm24 => "A normal, −A₂ ≤ A₁: s_j(A) ≤ s_j(2(A₁⁺+A₂⁺) ⊕ (A₁+A₂))",
            InequalityId::Thm25Plus => "A = A*: s_j(A⁺) ≤ s_j(|A| ⊕ (|A|−A)/2)",
            InequalityId::Thm25Minus => "A = A*: s_j(A⁻) ≤ s_j(|A| ⊕ (|A|+A)/2)",
            InequalityId::Thm27 => "√2·s_j(A₁+A₂) ≤ s_j(A+iA*) ≤ 2·s_j(A₁+A₂)",
            InequalityId::Thm28 => "s_j(AB+BA) ≤ s_j((A*A+B*B) ⊕ (AA*+BB*))",
            InequalityId::Cor29 => "A, B normal: s_j(AB+BA) ≤ s_j((AA*+BB*) ⊕ (AA*+BB*))",
            InequalityId::LoewnerCartesian => "(1/√2)|A₁+A₂| ≤ |A₁+iA₂| ≤ |A₁|+|A₂| (Löwner order)",
            InequalityId::ProofFacts21 => {
                "(A₁+A₂)² ≤ 2(A₁²+A₂²); [A₁,A₂] = 0: (A₁²+A₂²)^{1/2} ≤ |A₁|+|A₂|"
            }
        }
    }
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InequalityId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        InequalityId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = InequalityId::ALL.iter().map(|id| id.as_str()).collect();
                format!(
                    "unknown inequality '{s}' (expected one of: {})",
                    known.join(", ")
                )
            })
    }
}

/// Tolerance plus whether unmet hypotheses force `HypothesisViolated`.
///
/// Counterexample search turns enforcement off to evaluate a statement
/// outside its hypotheses; residuals are still recorded.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CheckOptions {
    pub tol: Tolerance,
    pub enforce_hypotheses: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            tol: Tolerance::default(),
            enforce_hypotheses: true,
        }
    }
}

impl CheckOptions {
    pub fn with_tol(tol: Tolerance) -> Self {
        CheckOptions {
            tol,
            enforce_hypotheses: true,
        }
    }

    pub fn relaxed(tol: Tolerance) -> Self {
        CheckOptions {
            tol,
            enforce_hypotheses: false,
        }
    }
}

/// Uniform entry point with hypotheses enforced.
pub fn check(
    id: InequalityId,
    inputs: &[ComplexMatrix],
    tol: &Tolerance,
) -> Result<InequalityReport> {
    check_with(id, inputs, &CheckOptions::with_tol(*tol))
}

pub fn check_with(
    id: InequalityId,
    inputs: &[ComplexMatrix],
    opts: &CheckOptions,
) -> Result<InequalityReport> {
    if inputs.len() != id.arity() {
        return Err(InequalityError::ArityMismatch {
            id,
            expected: id.arity(),
            got: inputs.len(),
        });
    }
    match id {
        InequalityId::Scalar16 => {
            let a = real_scalar(&inputs[0])?;
            let b = real_scalar(&inputs[1])?;
            Ok(check_scalar_1_6(a, b, opts))
        }
        InequalityId::Bk11 => check_bk_1_1(&inputs[0], &inputs[1], opts),
        InequalityId::Tao12 => check_tao_1_2(&inputs[0], &inputs[1], &inputs[2], opts),
        InequalityId::Ak13 => check_ak_1_3(&inputs[0], &inputs[1], &inputs[2], opts),
        InequalityId::Ak14 => check_ak_1_4(&inputs[0], &inputs[1], opts),
        InequalityId::Thm21 => check_thm_2_1(&inputs[0], opts),
        InequalityId::Thm24 => check_thm_2_4(&inputs[0], opts),
        InequalityId::Thm25Plus => check_thm_2_5(&inputs[0], JordanSide::Plus, opts),
        InequalityId::Thm25Minus => check_thm_2_5(&inputs[0], JordanSide::Minus, opts),
        InequalityId::Thm27 => check_thm_2_7(&inputs[0], opts),
        InequalityId::Thm28 => check_thm_2_8(&inputs[0], &inputs[1], opts),
        InequalityId::Cor29 => check_cor_2_9(&inputs[0], &inputs[1], opts),
        InequalityId::LoewnerCartesian => check_loewner_cartesian(&inputs[0], opts),
        InequalityId::ProofFacts21 => check_proof_facts_2_1(&inputs[0], &inputs[1], opts),
    }
}

fn real_scalar(m: &ComplexMatrix) -> Result<f64> {
    if m.n() != 1 {
        return Err(InequalityError::NotScalar(format!(
            "got a {0}x{0} matrix",
            m.n()
        )));
    }
    let z = m[(0, 0)];
    if z.im != 0.0 {
        return Err(InequalityError::NotScalar(format!(
            "entry {z} has an imaginary part"
        )));
    }
    Ok(z.re)
}
