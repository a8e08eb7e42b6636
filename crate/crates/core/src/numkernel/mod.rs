//! Dense complex linear algebra: matrices, a Hermitian Jacobi eigensolver, and
//! the spectral primitives (`|A|`, square roots, singular values, Löwner order)
//! every checker is built on.

mod eigen;
mod matrix;
mod spectrum;

pub use eigen::{
    abs_op, gram, hermitian_eig, loewner_compare, loewner_leq, psd_sqrt, singular_values,
    LoewnerComparison, LoewnerVerdict, SpectralDecomposition, HERMITIAN_PRECONDITION_RTOL,
    JACOBI_MAX_SWEEPS, JACOBI_OFF_RTOL, NEGATIVE_CLAMP_RTOL,
};
pub use matrix::{ComplexMatrix, MAX_DIM};
pub use num_complex::Complex64;
pub use spectrum::SingularSpectrum;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is not Hermitian: ‖M − M*‖_F = {defect:e} exceeds {tol:e}")]
    NotHermitian { defect: f64, tol: f64 },
    #[error("matrix is not positive semidefinite: min eigenvalue {min_eigenvalue:e} < −{tol:e}")]
    NotPsd { min_eigenvalue: f64, tol: f64 },
    #[error(
        "Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})"
    )]
    NoConvergence { sweeps: usize, off_norm: f64 },
    #[error("matrix has no rows")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    Ragged {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("dimension {n} exceeds the supported maximum {max}")]
    TooLarge { n: usize, max: usize },
    #[error("malformed matrix: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, LinalgError>;

/// Absolute and relative slack for order and positivity tests.
///
/// The effective tolerance at a given magnitude is
/// `tol_abs + tol_rel * max(1, scale)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub tol_abs: f64,
    pub tol_rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            tol_abs: 1e-12,
            tol_rel: 1e-9,
        }
    }
}

impl Tolerance {
    pub fn new(tol_abs: f64, tol_rel: f64) -> std::result::Result<Self, String> {
        if !(tol_abs >= 0.0 && tol_abs.is_finite() && tol_rel >= 0.0 && tol_rel.is_finite()) {
            return Err(format!(
                "tolerances must be finite and non-negative (got abs {tol_abs}, rel {tol_rel})"
            ));
        }
        Ok(Tolerance { tol_abs, tol_rel })
    }

    #[inline]
    pub fn effective(&self, scale: f64) -> f64 {
        self.tol_abs + self.tol_rel * scale.max(1.0)
    }
}
