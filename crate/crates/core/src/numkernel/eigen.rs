//! Cyclic complex Jacobi eigensolver and the functional calculus built on it.

use num_complex::Complex64;

use super::{ComplexMatrix, LinalgError, Result, SingularSpectrum, Tolerance};

/// Relative Hermitian defect tolerated on input to [`hermitian_eig`].
pub const HERMITIAN_PRECONDITION_RTOL: f64 = 1e-12;
/// Convergence threshold on the off-diagonal Frobenius norm, relative to `max(1, ‖M‖_F)`.
pub const JACOBI_OFF_RTOL: f64 = 1e-14;
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Eigenvalues in `[−NEGATIVE_CLAMP_RTOL·max(1, ‖M‖_F), 0)` are treated as zero
/// when taking square roots.
pub const NEGATIVE_CLAMP_RTOL: f64 = 1e-12;

/// Eigen-decomposition `M = V·diag(λ)·V*` of a Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    /// Columns are the eigenvectors.
    pub vectors: ComplexMatrix,
}

impl SpectralDecomposition {
    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }

    /// `V·diag(f(λ))·V*` for a real function `f`, symmetrized to be exactly Hermitian.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.vectors.n();
        let v = &self.vectors;
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, &fk) in fl.iter().enumerate() {
                    if fk != 0.0 {
                        acc += v[(i, k)] * v[(j, k)].conj() * fk;
                    }
                }
                out[(i, j)] = acc;
            }
        }
        for i in 0..n {
            out[(i, i)] = Complex64::new(out[(i, i)].re, 0.0);
            for j in i + 1..n {
                out[(j, i)] = out[(i, j)].conj();
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.apply(|l| l)
    }

    /// `‖V*V − I‖_F`.
    pub fn unitarity_residual(&self) -> f64 {
        let n = self.vectors.n();
        (&(&self.vectors.adjoint() * &self.vectors) - &ComplexMatrix::identity(n)).frobenius_norm()
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.n();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// The input is symmetrized before iterating. Each rotation first removes the
/// phase of the pivot `a_pq` with a diagonal unitary, then applies a real
/// Jacobi rotation that annihilates it.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<SpectralDecomposition> {
    let n = m.n();
    let norm = m.frobenius_norm();
    if !norm.is_finite() {
        return Err(LinalgError::Malformed("matrix norm overflows".into()));
    }
    let scale = norm.max(1.0);
    let defect = m.hermitian_defect();
    let tol = HERMITIAN_PRECONDITION_RTOL * scale;
    if defect > tol {
        return Err(LinalgError::NotHermitian { defect, tol });
    }
    if m.is_zero() {
        return Ok(SpectralDecomposition {
            eigenvalues: vec![0.0; n],
            vectors: ComplexMatrix::identity(n),
        });
    }

    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let threshold = JACOBI_OFF_RTOL * scale;

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= threshold {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(LinalgError::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&k| a[(k, k)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, |i, j| v[(i, order[j])]);
    Ok(SpectralDecomposition {
        eigenvalues,
        vectors,
    })
}

/// One Jacobi step zeroing `a[p][q]`; updates `a ← G*·a·G` and `v ← v·G`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let n = a.n();
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let phase_conj = (apq / r).conj();

    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // G = diag(1, e^{-iφ}) · [[c, s], [-s, c]]
    let g_pp = Complex64::new(c, 0.0);
    let g_pq = Complex64::new(s, 0.0);
    let g_qp = phase_conj * (-s);
    let g_qq = phase_conj * c;

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;

        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }

    a[(p, p)] = Complex64::new(app - t * r, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * r, 0.0);
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
}

/// `M*·M`, exactly Hermitian.
pub fn gram(m: &ComplexMatrix) -> ComplexMatrix {
    (&m.adjoint() * m).hermitian_part()
}

/// Principal square root of a positive semidefinite matrix.
pub fn psd_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(m)?;
    let tol = NEGATIVE_CLAMP_RTOL * m.frobenius_norm().max(1.0);
    let min = eig.min_eigenvalue();
    if min < -tol {
        return Err(LinalgError::NotPsd {
            min_eigenvalue: min,
            tol,
        });
    }
    Ok(eig.apply(|l| l.max(0.0).sqrt()))
}

/// `|M| = (M*M)^{1/2}`.
pub fn abs_op(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    psd_sqrt(&gram(m))
}

/// Singular values as square roots of the eigenvalues of `M*M`, nonincreasing.
pub fn singular_values(m: &ComplexMatrix) -> Result<SingularSpectrum> {
    let g = gram(m);
    let eig = hermitian_eig(&g)?;
    Ok(SingularSpectrum::from_unsorted(
        eig.eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).collect(),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoewnerVerdict {
    pub holds: bool,
    /// Smallest eigenvalue of `Y − X`.
    pub min_eigenvalue: f64,
    pub tol_effective: f64,
}

/// Full comparison data for `X ≤ Y`: the verdict plus the eigen-decomposition
/// of `Y − X`.
#[derive(Debug, Clone)]
pub struct LoewnerComparison {
    pub verdict: LoewnerVerdict,
    pub difference: SpectralDecomposition,
    /// `‖Y − X‖_F`, the magnitude the effective tolerance scales with.
    pub difference_norm: f64,
}

fn check_hermitian(m: &ComplexMatrix) -> Result<()> {
    let defect = m.hermitian_defect();
    let tol = HERMITIAN_PRECONDITION_RTOL * m.frobenius_norm().max(1.0);
    if defect > tol {
        return Err(LinalgError::NotHermitian { defect, tol });
    }
    Ok(())
}

pub fn loewner_compare(
    x: &ComplexMatrix,
    y: &ComplexMatrix,
    tol: &Tolerance,
) -> Result<LoewnerComparison> {
    check_hermitian(x)?;
    check_hermitian(y)?;
    let d = y.try_sub(x)?.hermitian_part();
    let difference_norm = d.frobenius_norm();
    let difference = hermitian_eig(&d)?;
    let tol_effective = tol.effective(difference_norm);
    let min_eigenvalue = difference.min_eigenvalue();
    Ok(LoewnerComparison {
        verdict: LoewnerVerdict {
            holds: min_eigenvalue >= -tol_effective,
            min_eigenvalue,
            tol_effective,
        },
        difference,
        difference_norm,
    })
}

/// Löwner order test `X ≤ Y`, i.e. `Y − X` positive semidefinite within tolerance.
pub fn loewner_leq(
    x: &ComplexMatrix,
    y: &ComplexMatrix,
    tol: &Tolerance,
) -> Result<LoewnerVerdict> {
    loewner_compare(x, y, tol).map(|c| c.verdict)
}
