use serde::{Deserialize, Serialize};

/// Singular values in nonincreasing order, repeated with multiplicity.
///
/// Indices past the stored length read as zero, matching the convention that a
/// finite matrix viewed as a compact operator has vanishing singular values
/// beyond its rank.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingularSpectrum {
    values: Vec<f64>,
}

impl SingularSpectrum {
    /// Sorts into nonincreasing order and clamps negatives to zero.
    pub fn from_unsorted(mut values: Vec<f64>) -> Self {
        for v in values.iter_mut() {
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        values.sort_by(|a, b| b.total_cmp(a));
        SingularSpectrum { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `s_{j+1}` (zero-based `j`), zero past the end.
    pub fn get(&self, j: usize) -> f64 {
        self.values.get(j).copied().unwrap_or(0.0)
    }

    pub fn largest(&self) -> f64 {
        self.get(0)
    }

    pub fn padded(&self, len: usize) -> Self {
        let mut values = self.values.clone();
        if values.len() < len {
            values.resize(len, 0.0);
        }
        SingularSpectrum { values }
    }

    /// Multiplies by a non-negative constant; order is preserved.
    pub fn scaled(&self, c: f64) -> Self {
        assert!(c >= 0.0, "spectrum scale factor must be non-negative");
        SingularSpectrum {
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// Spectrum of a direct sum: the sorted union of both lists.
    pub fn merged(&self, other: &Self) -> Self {
        let mut values = self.values.clone();
        values.extend_from_slice(&other.values);
        Self::from_unsorted(values)
    }
}
