//! Seeded generators for each hypothesis class.
//!
//! `generate` is a pure function of its [`GeneratorSpec`]: the spec's
//! `(seed, stream)` pair keys a [`PrngStream`] and every draw comes from it.

mod stream;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use stream::PrngStream;

use crate::numkernel::{abs_op, gram, ComplexMatrix, MAX_DIM};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorClass {
    Ginibre,
    Hermitian,
    Psd,
    Unitary,
    Normal,
    PsdBlock2,
    DominatedPair,
    NormalOrderConstrained,
    NormalPairSharedBasis,
}

impl GeneratorClass {
    pub const ALL: [GeneratorClass; 9] = [
        GeneratorClass::Ginibre,
        GeneratorClass::Hermitian,
        GeneratorClass::Psd,
        GeneratorClass::Unitary,
        GeneratorClass::Normal,
        GeneratorClass::PsdBlock2,
        GeneratorClass::DominatedPair,
        GeneratorClass::NormalOrderConstrained,
        GeneratorClass::NormalPairSharedBasis,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GeneratorClass::Ginibre => "ginibre",
            GeneratorClass::Hermitian => "hermitian",
            GeneratorClass::Psd => "psd",
            GeneratorClass::Unitary => "unitary",
            GeneratorClass::Normal => "normal",
            GeneratorClass::PsdBlock2 => "psd_block2",
            GeneratorClass::DominatedPair => "dominated_pair",
            GeneratorClass::NormalOrderConstrained => "normal_order_constrained",
            GeneratorClass::NormalPairSharedBasis => "normal_pair_shared_basis",
        }
    }

    /// Number of matrices one sample produces.
    pub fn arity(self) -> usize {
        match self {
            GeneratorClass::PsdBlock2 => 3,
            GeneratorClass::DominatedPair | GeneratorClass::NormalPairSharedBasis => 2,
            _ => 1,
        }
    }

    /// Largest `dim` the class accepts; `psd_block2` builds a `2·dim` Gram matrix.
    pub fn max_dim(self) -> usize {
        match self {
            GeneratorClass::PsdBlock2 => MAX_DIM / 2,
            _ => MAX_DIM,
        }
    }
}

impl fmt::Display for GeneratorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GeneratorClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        GeneratorClass::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = GeneratorClass::ALL.iter().map(|c| c.as_str()).collect();
                format!(
                    "unknown generator class '{s}' (expected one of: {})",
                    known.join(", ")
                )
            })
    }
}

fn default_scale() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub class: GeneratorClass,
    pub dim: usize,
    pub seed: u64,
    /// Stream index under `seed`; campaigns use the trial index.
    #[serde(default)]
    pub stream: u64,
    #[serde(default = "default_scale")]
    pub scale: f64,
}

impl GeneratorSpec {
    pub fn new(class: GeneratorClass, dim: usize, seed: u64) -> Self {
        GeneratorSpec {
            class,
            dim,
            seed,
            stream: 0,
            scale: 1.0,
        }
    }

    pub fn with_stream(mut self, stream: u64) -> Self {
        self.stream = stream;
        self
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    pub fn validate(&self) -> Result<(), GenError> {
        if self.dim == 0 || self.dim > self.class.max_dim() {
            return Err(GenError::InvalidSpec(format!(
                "dim {} outside 1..={} for class {}",
                self.dim,
                self.class.max_dim(),
                self.class
            )));
        }
        if !(self.scale.is_finite() && self.scale > 0.0) {
            return Err(GenError::InvalidSpec(format!(
                "scale must be positive, got {}",
                self.scale
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratedInput {
    pub matrices: Vec<ComplexMatrix>,
    pub provenance: GeneratorSpec,
}

pub fn generate(spec: &GeneratorSpec) -> Result<GeneratedInput, GenError> {
    spec.validate()?;
    let mut rng = PrngStream::new(spec.seed, spec.stream);
    Ok(GeneratedInput {
        matrices: sample(spec.class, spec.dim, spec.scale, &mut rng),
        provenance: *spec,
    })
}

/// Draws one sample of `class` from an existing stream.
///
/// Callers that need several samples per key (the fuzzer's pair adapters)
/// draw them in sequence from one stream. Panics on arguments that
/// [`GeneratorSpec::validate`] rejects.
pub fn sample(class: GeneratorClass, n: usize, s: f64, rng: &mut PrngStream) -> Vec<ComplexMatrix> {
    assert!(n >= 1 && n <= class.max_dim() && s.is_finite() && s > 0.0);
    match class {
        GeneratorClass::Ginibre => vec![ginibre(rng, n).scale_real(s)],
        GeneratorClass::Hermitian => vec![hermitian(rng, n).scale_real(s)],
        GeneratorClass::Psd => vec![psd(rng, n).scale_real(s)],
        GeneratorClass::Unitary => vec![unitary(rng, n)],
        GeneratorClass::Normal => {
            let u = unitary(rng, n);
            let d = gaussian_diag(rng, n, s);
            vec![conjugate(&u, &d)]
        }
        GeneratorClass::PsdBlock2 => {
            let block = psd(rng, 2 * n).scale_real(s);
            vec![
                block.submatrix(0, 0, n),
                block.submatrix(0, n, n),
                block.submatrix(n, n, n),
            ]
        }
        GeneratorClass::DominatedPair => {
            let a = hermitian(rng, n).scale_real(s);
            let p = psd(rng, n).scale_real(s);
            let abs = abs_op(&a).expect("finite Hermitian input");
            let b = (&abs + &p).hermitian_part();
            vec![a, b]
        }
        GeneratorClass::NormalOrderConstrained => {
            let u = unitary(rng, n);
            let d: Vec<Complex64> = (0..n)
                .map(|_| {
                    let d2 = rng.gaussian() * s;
                    let offset = rng.gaussian().abs() * s;
                    Complex64::new(-d2 + offset, d2)
                })
                .collect();
            vec![conjugate(&u, &d)]
        }
        GeneratorClass::NormalPairSharedBasis => {
            let u = unitary(rng, n);
            let d1 = gaussian_diag(rng, n, s);
            let d2 = gaussian_diag(rng, n, s);
            vec![conjugate(&u, &d1), conjugate(&u, &d2)]
        }
    }
}

/// I.i.d. standard complex Gaussian entries.
pub fn ginibre(rng: &mut PrngStream, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |_, _| rng.complex_gaussian())
}

fn hermitian(rng: &mut PrngStream, n: usize) -> ComplexMatrix {
    ginibre(rng, n).hermitian_part()
}

fn psd(rng: &mut PrngStream, n: usize) -> ComplexMatrix {
    gram(&ginibre(rng, n))
}

fn gaussian_diag(rng: &mut PrngStream, n: usize, scale: f64) -> Vec<Complex64> {
    (0..n).map(|_| rng.complex_gaussian() * scale).collect()
}

/// `U·diag(d)·U*`.
fn conjugate(u: &ComplexMatrix, d: &[Complex64]) -> ComplexMatrix {
    let n = u.n();
    ComplexMatrix::from_fn(n, |i, j| {
        (0..n).map(|k| u[(i, k)] * d[k] * u[(j, k)].conj()).sum()
    })
}

/// Householder QR of a Ginibre matrix with `R`'s diagonal made positive real.
pub fn unitary(rng: &mut PrngStream, n: usize) -> ComplexMatrix {
    let g = ginibre(rng, n);
    let mut r: Vec<Complex64> = g.as_slice().to_vec();
    let mut q: Vec<Complex64> = ComplexMatrix::identity(n).as_slice().to_vec();
    let mut phases = vec![Complex64::new(1.0, 0.0); n];

    for k in 0..n {
        let norm = (k..n).map(|i| r[i * n + k].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = r[k * n + k];
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        // Reflect x onto alpha·e₁ with alpha = −phase·‖x‖, avoiding cancellation.
        let alpha = -phase * norm;
        let mut v: Vec<Complex64> = (k..n).map(|i| r[i * n + k]).collect();
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for z in &mut v {
            *z /= vnorm;
        }
        // R ← (I − 2vv*) R on rows k..n.
        for j in k..n {
            let dot: Complex64 = (k..n).map(|i| v[i - k].conj() * r[i * n + j]).sum();
            for i in k..n {
                r[i * n + j] -= v[i - k] * dot * 2.0;
            }
        }
        // Q ← Q (I − 2vv*) on columns k..n.
        for i in 0..n {
            let dot: Complex64 = (k..n).map(|l| q[i * n + l] * v[l - k]).sum();
            for l in k..n {
                q[i * n + l] -= dot * v[l - k].conj() * 2.0;
            }
        }
        phases[k] = alpha / alpha.norm();
    }
    ComplexMatrix::from_fn(n, |i, j| q[i * n + j] * phases[j])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::{hermitian_eig, loewner_leq, Tolerance};

    fn unitarity(u: &ComplexMatrix) -> f64 {
        (&gram(u) - &ComplexMatrix::identity(u.n())).frobenius_norm()
    }

    fn normality(a: &ComplexMatrix) -> f64 {
        (&gram(a) - &gram(&a.adjoint())).frobenius_norm()
    }

    #[test]
    fn unitary_example() {
        let g = generate(&GeneratorSpec::new(GeneratorClass::Unitary, 4, 7)).unwrap();
        assert!(unitarity(&g.matrices[0]) <= 1e-10);
    }

    #[test]
    fn unitary_is_phase_fixed_qr() {
        // Reproduce the Ginibre draw and check R = U*G is upper triangular with positive diagonal.
        let n = 5;
        let u = unitary(&mut PrngStream::new(3, 4), n);
        let g = ginibre(&mut PrngStream::new(3, 4), n);
        let r = &u.adjoint() * &g;
        for i in 0..n {
            assert!(
                r[(i, i)].im.abs() < 1e-12 && r[(i, i)].re > 0.0,
                "{:?}",
                r[(i, i)]
            );
            for j in 0..i {
                assert!(r[(i, j)].norm() < 1e-12);
            }
        }
    }

    #[test]
    fn normal_example() {
        let g = generate(&GeneratorSpec::new(GeneratorClass::Normal, 3, 1)).unwrap();
        let a = &g.matrices[0];
        assert!(normality(a) <= 1e-9 * a.frobenius_norm().powi(2));
    }

    #[test]
    fn dominated_pair_example() {
        let g = generate(&GeneratorSpec::new(GeneratorClass::DominatedPair, 2, 42)).unwrap();
        let (a, b) = (&g.matrices[0], &g.matrices[1]);
        let tol = Tolerance::new(1e-10, 0.0).unwrap();
        assert!(loewner_leq(a, b, &tol).unwrap().holds);
        assert!(loewner_leq(&(-a), b, &tol).unwrap().holds);
        assert!(hermitian_eig(&(b - a)).unwrap().min_eigenvalue() >= -1e-10);
        assert!(hermitian_eig(&(b + a)).unwrap().min_eigenvalue() >= -1e-10);
    }

    #[test]
    fn arity_matches_output() {
        for class in GeneratorClass::ALL {
            let g = generate(&GeneratorSpec::new(class, 3, 0)).unwrap();
            assert_eq!(g.matrices.len(), class.arity(), "{class}");
            assert!(g.matrices.iter().all(|m| m.n() == 3));
            assert_eq!(class.as_str().parse::<GeneratorClass>().unwrap(), class);
        }
    }

    #[test]
    fn generation_is_pure() {
        for class in GeneratorClass::ALL {
            let spec = GeneratorSpec::new(class, 4, 99)
                .with_stream(12)
                .with_scale(2.5);
            assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
            let other = generate(&spec.with_stream(13)).unwrap();
            assert_ne!(generate(&spec).unwrap().matrices, other.matrices);
        }
    }

    #[test]
    fn scale_is_linear() {
        let base = generate(&GeneratorSpec::new(GeneratorClass::Psd, 3, 5)).unwrap();
        let scaled =
            generate(&GeneratorSpec::new(GeneratorClass::Psd, 3, 5).with_scale(4.0)).unwrap();
        let diff = (&base.matrices[0].scale_real(4.0) - &scaled.matrices[0]).frobenius_norm();
        assert!(diff < 1e-12);
    }

    #[test]
    fn invalid_specs() {
        let bad = [
            GeneratorSpec::new(GeneratorClass::Ginibre, 0, 0),
            GeneratorSpec::new(GeneratorClass::Ginibre, 65, 0),
            GeneratorSpec::new(GeneratorClass::PsdBlock2, 33, 0),
            GeneratorSpec::new(GeneratorClass::Ginibre, 2, 0).with_scale(0.0),
            GeneratorSpec::new(GeneratorClass::Ginibre, 2, 0).with_scale(f64::NAN),
        ];
        for spec in bad {
            assert!(
                matches!(generate(&spec), Err(GenError::InvalidSpec(_))),
                "{spec:?}"
            );
        }
        assert!(generate(&GeneratorSpec::new(GeneratorClass::PsdBlock2, 32, 0)).is_ok());
    }
}
