//! Dense square complex matrices.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{LinalgError, Result};

/// Largest dimension accepted at input boundaries (files, generators).
///
/// Derived matrices such as direct sums and 2x2 block operators may be up to
/// twice this size.
pub const MAX_DIM: usize = 64;

/// Dense `n x n` complex matrix stored row-major. Entries are always finite.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr", into = "MatrixRepr")]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

/// Interchange form: `{"n": 2, "entries": [[[re, im], ...], ...]}`.
#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    n: usize,
    entries: Vec<Vec<[f64; 2]>>,
}

impl TryFrom<MatrixRepr> for ComplexMatrix {
    type Error = LinalgError;

    fn try_from(repr: MatrixRepr) -> Result<Self> {
        if repr.entries.len() != repr.n {
            return Err(LinalgError::Malformed(format!(
                "declared n = {} but found {} rows",
                repr.n,
                repr.entries.len()
            )));
        }
        let rows = repr
            .entries
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|[re, im]| Complex64::new(re, im))
                    .collect()
            })
            .collect();
        ComplexMatrix::from_rows(rows)
    }
}

impl From<ComplexMatrix> for MatrixRepr {
    fn from(m: ComplexMatrix) -> Self {
        let entries = (0..m.n)
            .map(|i| m.row(i).iter().map(|z| [z.re, z.im]).collect())
            .collect();
        MatrixRepr { n: m.n, entries }
    }
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "matrix dimension must be at least 1");
        ComplexMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from `f(i, j)`.
    ///
    /// Panics if `f` yields a non-finite entry.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let z = f(i, j);
                assert!(z.is_finite(), "non-finite entry at ({i}, {j})");
                m.data[i * n + j] = z;
            }
        }
        m
    }

    /// Validating constructor: square, non-empty, finite.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(LinalgError::Empty);
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(LinalgError::Ragged {
                    row: i,
                    len: row.len(),
                    expected: n,
                });
            }
            for (j, z) in row.into_iter().enumerate() {
                if !z.is_finite() {
                    return Err(LinalgError::NonFinite { row: i, col: j });
                }
                data.push(z);
            }
        }
        Ok(ComplexMatrix { n, data })
    }

    /// Convenience for tests and fixtures: rows of `(re, im)` pairs.
    pub fn from_pairs(rows: &[&[(f64, f64)]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&(re, im)| Complex64::new(re, im)).collect())
                .collect(),
        )
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&re| Complex64::new(re, 0.0)).collect())
                .collect(),
        )
    }

    pub fn from_diag(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &z) in diag.iter().enumerate() {
            assert!(z.is_finite(), "non-finite diagonal entry");
            m[(i, i)] = z;
        }
        m
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let d: Vec<Complex64> = diag.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_diag(&d)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.is_finite())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.n).map(|i| self[(i, i)]).collect()
    }

    pub fn trace(&self) -> Complex64 {
        self.diagonal().into_iter().sum()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        out
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(LinalgError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            let out_row = &mut out.data[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let b_row = &other.data[k * n..(k + 1) * n];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        ComplexMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        ComplexMatrix {
            n: self.n,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map(|z| z * c)
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.map(|z| z * c)
    }

    /// Block-diagonal `A ⊕ B`; the summands may have different sizes.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (na, nb) = (self.n, other.n);
        let mut out = Self::zeros(na + nb);
        for i in 0..na {
            for j in 0..na {
                out[(i, j)] = self[(i, j)];
            }
        }
        for i in 0..nb {
            for j in 0..nb {
                out[(na + i, na + j)] = other[(i, j)];
            }
        }
        out
    }

    /// Assembles `[[a, b], [c, d]]` from four equally sized blocks.
    pub fn block2(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        a.check_same_dim(b)?;
        a.check_same_dim(c)?;
        a.check_same_dim(d)?;
        let n = a.n;
        let mut out = Self::zeros(2 * n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = a[(i, j)];
                out[(i, n + j)] = b[(i, j)];
                out[(n + i, j)] = c[(i, j)];
                out[(n + i, n + j)] = d[(i, j)];
            }
        }
        Ok(out)
    }

    /// The `size x size` block starting at `(row, col)`.
    pub fn submatrix(&self, row: usize, col: usize, size: usize) -> Self {
        assert!(
            row + size <= self.n && col + size <= self.n,
            "submatrix out of range"
        );
        Self::from_fn(size, |i, j| self[(row + i, col + j)])
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `‖M − M*‖_F`.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.n;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// `(M + M*)/2`, exactly Hermitian: the lower triangle mirrors the upper and
    /// the diagonal is real.
    pub fn hermitian_part(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            out[(i, i)] = Complex64::new(self[(i, i)].re, 0.0);
            for j in i + 1..n {
                let h = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
                out[(i, j)] = h;
                out[(j, i)] = h.conj();
            }
        }
        out
    }

    /// `A·B − B·A`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.matmul(other)?.try_sub(&other.matmul(self)?)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

// Operator forms panic on mismatched dimensions; use the `try_*` / `matmul`
// methods on unvalidated inputs.
impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_add(rhs).expect("matrix dimensions must agree")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_sub(rhs).expect("matrix dimensions must agree")
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix dimensions must agree")
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.map(|z| -z)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:>10.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
