//! Verification toolkit for singular value inequalities of normal matrices.
//!
//! The crate is layered bottom-up:
//!
//! * [`numkernel`]: dense complex matrices, a Jacobi Hermitian eigensolver,
//!   `|A|`, singular values and the Löwner order.
//! * [`decomp`]: Cartesian and Jordan decompositions and hypothesis
//!   classification (Hermitian, PSD, normal, hyponormal).
//! * [`inequalities`]: one checker per inequality, each producing a per-index
//!   margin report.
//! * [`randgen`]: seeded generators for each hypothesis class.
//! * [`fuzzer`]: campaigns over generator classes and counterexample search.

pub mod decomp;
pub mod fuzzer;
pub mod inequalities;
pub mod numkernel;
pub mod randgen;

pub use numkernel::{ComplexMatrix, LinalgError, SingularSpectrum, Tolerance};
