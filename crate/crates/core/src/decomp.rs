//! Cartesian and Jordan decompositions, and the hypothesis classification
//! (Hermitian / PSD / normal / hyponormal) that checkers consult.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::numkernel::{
    abs_op, gram, hermitian_eig, ComplexMatrix, LinalgError, Result, Tolerance,
};

/// `A = a1 + i·a2` with both parts Hermitian.
#[derive(Debug, Clone, PartialEq)]
pub struct CartesianPair {
    pub a1: ComplexMatrix,
    pub a2: ComplexMatrix,
}

impl CartesianPair {
    pub fn recombine(&self) -> ComplexMatrix {
        &self.a1 + &self.a2.scale(Complex64::new(0.0, 1.0))
    }
}

/// `A = plus − minus` with `plus`, `minus` PSD and `plus·minus = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct JordanPair {
    pub plus: ComplexMatrix,
    pub minus: ComplexMatrix,
}

/// `a1 = (A + A*)/2`, `a2 = (A − A*)/(2i)`, each exactly Hermitian.
pub fn cartesian(a: &ComplexMatrix) -> CartesianPair {
    let n = a.n();
    let mut a1 = ComplexMatrix::zeros(n);
    let mut a2 = ComplexMatrix::zeros(n);
    let half_over_i = Complex64::new(0.0, -0.5);
    for i in 0..n {
        a1[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
        a2[(i, i)] = Complex64::new(a[(i, i)].im, 0.0);
        for j in i + 1..n {
            let (x, y) = (a[(i, j)], a[(j, i)].conj());
            let h1 = (x + y) * 0.5;
            let h2 = (x - y) * half_over_i;
            a1[(i, j)] = h1;
            a1[(j, i)] = h1.conj();
            a2[(i, j)] = h2;
            a2[(j, i)] = h2.conj();
        }
    }
    CartesianPair { a1, a2 }
}

fn require_hermitian(a: &ComplexMatrix, tol: &Tolerance) -> Result<()> {
    let defect = a.hermitian_defect();
    let limit = tol.effective(a.frobenius_norm());
    if defect > limit {
        return Err(LinalgError::NotHermitian { defect, tol: limit });
    }
    Ok(())
}

/// Jordan decomposition by splitting the spectrum at zero.
pub fn jordan(a: &ComplexMatrix, tol: &Tolerance) -> Result<JordanPair> {
    require_hermitian(a, tol)?;
    let eig = hermitian_eig(&a.hermitian_part())?;
    Ok(JordanPair {
        plus: eig.apply(|l| l.max(0.0)),
        minus: eig.apply(|l| (-l).max(0.0)),
    })
}

/// Jordan parts via `(|A| ± A)/2`; an independent route used to cross-check [`jordan`].
pub fn jordan_via_abs(a: &ComplexMatrix, tol: &Tolerance) -> Result<JordanPair> {
    require_hermitian(a, tol)?;
    let h = a.hermitian_part();
    let abs = abs_op(&h)?;
    Ok(JordanPair {
        plus: (&abs + &h).scale_real(0.5).hermitian_part(),
        minus: (&abs - &h).scale_real(0.5).hermitian_part(),
    })
}

/// Hypothesis flags with the residuals they were decided from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassFlags {
    pub hermitian: bool,
    pub psd: bool,
    pub normal: bool,
    pub hyponormal: bool,
    /// `‖A − A*‖_F`.
    pub hermitian_defect: f64,
    /// Smallest eigenvalue of the Hermitian part of `A`.
    pub min_eigenvalue: f64,
    /// `‖A*A − AA*‖_F`.
    pub normality_defect: f64,
    /// Smallest eigenvalue of `A*A − AA*`.
    pub hyponormal_defect: f64,
    /// Tolerance applied to the first-order residuals (scale `‖A‖_F`).
    pub tol_linear: f64,
    /// Tolerance applied to the quadratic residuals (scale `‖A‖_F²`).
    pub tol_quadratic: f64,
}

/// Classifies `A`.
///
/// Hermitian and PSD flags use `tol.effective(‖A‖_F)`; the normal and
/// hyponormal flags compare quadratic quantities and use `tol.effective(‖A‖_F²)`.
pub fn classify(a: &ComplexMatrix, tol: &Tolerance) -> Result<ClassFlags> {
    let norm = a.frobenius_norm();
    let tol_linear = tol.effective(norm);
    let tol_quadratic = tol.effective(norm * norm);

    let hermitian_defect = a.hermitian_defect();
    let hermitian = hermitian_defect <= tol_linear;
    let min_eigenvalue = hermitian_eig(&a.hermitian_part())?.min_eigenvalue();
    let psd = hermitian && min_eigenvalue >= -tol_linear;

    // A*A − AA*; both Gram products are exactly Hermitian so the difference is too.
    let defect = (&gram(a) - &gram(&a.adjoint())).hermitian_part();
    let normality_defect = defect.frobenius_norm();
    let hyponormal_defect = hermitian_eig(&defect)?.min_eigenvalue();

    Ok(ClassFlags {
        hermitian,
        psd,
        normal: normality_defect <= tol_quadratic,
        hyponormal: hyponormal_defect >= -tol_quadratic,
        hermitian_defect,
        min_eigenvalue,
        normality_defect,
        hyponormal_defect,
        tol_linear,
        tol_quadratic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::{loewner_leq, psd_sqrt};
    use proptest::prelude::*;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn example_2_2() -> ComplexMatrix {
        ComplexMatrix::from_pairs(&[&[(2.0, -1.0), (0.0, 2.0)], &[(0.0, 2.0), (0.0, 2.0)]]).unwrap()
    }

    fn example_2_3() -> ComplexMatrix {
        ComplexMatrix::from_pairs(&[&[(1.0, 1.0), (1.0, 0.0)], &[(1.0, 0.0), (0.0, 1.0)]]).unwrap()
    }

    fn rel_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
        (a - b).frobenius_norm() / a.frobenius_norm().max(b.frobenius_norm()).max(1.0)
    }

    #[test]
    fn cartesian_examples() {
        let p = cartesian(&example_2_2());
        assert_eq!(
            p.a1,
            ComplexMatrix::from_real_rows(&[&[2.0, 0.0], &[0.0, 0.0]]).unwrap()
        );
        assert_eq!(
            p.a2,
            ComplexMatrix::from_real_rows(&[&[-1.0, 2.0], &[2.0, 2.0]]).unwrap()
        );

        let h =
            ComplexMatrix::from_pairs(&[&[(1.0, 0.0), (2.0, 3.0)], &[(2.0, -3.0), (-1.0, 0.0)]])
                .unwrap();
        let p = cartesian(&h);
        assert_eq!(p.a1, h);
        assert!(p.a2.is_zero());

        let p = cartesian(&example_2_3());
        assert_eq!(
            p.a1,
            ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[1.0, 0.0]]).unwrap()
        );
        assert_eq!(p.a2, ComplexMatrix::identity(2));
    }

    #[test]
    fn jordan_examples() {
        let j = jordan(&ComplexMatrix::from_real_diag(&[3.0, -4.0]), &tol()).unwrap();
        assert!(rel_diff(&j.plus, &ComplexMatrix::from_real_diag(&[3.0, 0.0])) < 1e-15);
        assert!(rel_diff(&j.minus, &ComplexMatrix::from_real_diag(&[0.0, 4.0])) < 1e-15);

        let p = ComplexMatrix::from_real_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap();
        let j = jordan(&p, &tol()).unwrap();
        assert!(rel_diff(&j.plus, &p) < 1e-14);
        assert!(j.minus.frobenius_norm() < 1e-14);

        // Spectral projections of Pauli-X onto ±1: (I ± X)/2.
        let x = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let i2 = ComplexMatrix::identity(2);
        let j = jordan(&x, &tol()).unwrap();
        assert!(rel_diff(&j.plus, &(&i2 + &x).scale_real(0.5)) < 1e-14);
        assert!(rel_diff(&j.minus, &(&i2 - &x).scale_real(0.5)) < 1e-14);

        let shift = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(
            jordan(&shift, &tol()),
            Err(LinalgError::NotHermitian { .. })
        ));
    }

    #[test]
    fn classify_examples() {
        let f = classify(&example_2_2(), &tol()).unwrap();
        assert!(!f.normal);
        // A*A − AA* = 2i[A₁, A₂], and ‖[A₁, A₂]‖_F = 4√2 for this matrix.
        let p = cartesian(&example_2_2());
        let comm = p.a1.commutator(&p.a2).unwrap().frobenius_norm();
        assert!((comm - 4.0 * 2f64.sqrt()).abs() < 1e-13);
        assert!((f.normality_defect - 8.0 * 2f64.sqrt()).abs() < 1e-12);

        let f = classify(&example_2_3(), &tol()).unwrap();
        assert!(f.normal && f.hyponormal && !f.hermitian);

        let f = classify(&ComplexMatrix::from_real_diag(&[1.0, 2.0]), &tol()).unwrap();
        assert!(f.hermitian && f.psd && f.normal);

        let f = classify(&ComplexMatrix::from_real_diag(&[1.0, -2.0]), &tol()).unwrap();
        assert!(f.hermitian && !f.psd);
    }

    #[test]
    fn shift_is_not_hyponormal_and_defect_is_traceless() {
        let a =
            ComplexMatrix::from_real_rows(&[&[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0], &[0.0, 0.0, 0.0]])
                .unwrap();
        let f = classify(&a, &tol()).unwrap();
        assert!(!f.hyponormal);
        let defect = &gram(&a) - &gram(&a.adjoint());
        assert!(defect.trace().norm() < 1e-15);
    }

    fn arb_matrix() -> impl Strategy<Value = ComplexMatrix> {
        (1usize..=6).prop_flat_map(|n| {
            proptest::collection::vec((-3.0f64..3.0, -3.0f64..3.0), n * n).prop_map(move |v| {
                ComplexMatrix::from_fn(n, |i, j| Complex64::new(v[i * n + j].0, v[i * n + j].1))
            })
        })
    }

    /// U·D·U* with U from a Cayley transform of a Hermitian matrix.
    fn normal_from(m: &ComplexMatrix, diag: &[Complex64]) -> ComplexMatrix {
        let n = m.n();
        let eig = hermitian_eig(&m.hermitian_part()).unwrap();
        let u = eig.vectors;
        let d = ComplexMatrix::from_diag(&diag[..n]);
        &(&u * &d) * &u.adjoint()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn cartesian_round_trip(a in arb_matrix()) {
            let p = cartesian(&a);
            prop_assert_eq!(p.a1.hermitian_defect(), 0.0);
            prop_assert_eq!(p.a2.hermitian_defect(), 0.0);
            prop_assert!(rel_diff(&p.recombine(), &a) <= 1e-12);
        }

        #[test]
        fn jordan_round_trip_and_routes_agree(a in arb_matrix()) {
            let h = a.hermitian_part();
            let j = jordan(&h, &tol()).unwrap();
            let scale = h.frobenius_norm().max(1.0);
            prop_assert!(rel_diff(&(&j.plus - &j.minus), &h) <= 1e-9);
            prop_assert!((&j.plus * &j.minus).frobenius_norm() <= 1e-9 * scale);
            prop_assert!(loewner_leq(&ComplexMatrix::zeros(h.n()), &j.plus, &tol()).unwrap().holds);
            prop_assert!(loewner_leq(&ComplexMatrix::zeros(h.n()), &j.minus, &tol()).unwrap().holds);
            let k = jordan_via_abs(&h, &tol()).unwrap();
            prop_assert!(rel_diff(&j.plus, &k.plus) <= 1e-9);
            prop_assert!(rel_diff(&j.minus, &k.minus) <= 1e-9);
        }

        #[test]
        fn normality_is_commuting_parts(a in arb_matrix()) {
            let f = classify(&a, &tol()).unwrap();
            let p = cartesian(&a);
            let comm = p.a1.commutator(&p.a2).unwrap().frobenius_norm();
            // A*A − AA* = 2i·[A₁, A₂] exactly; check the identity up to rounding.
            let scale = a.frobenius_norm().powi(2).max(1.0);
            prop_assert!((f.normality_defect - 2.0 * comm).abs() <= 1e-12 * scale);
            if 2.0 * comm <= 0.5 * f.tol_quadratic {
                prop_assert!(f.normal);
            }
            if 2.0 * comm >= 2.0 * f.tol_quadratic {
                prop_assert!(!f.normal);
            }
            prop_assert!(!f.psd || f.hermitian);
            prop_assert!(!f.normal || f.hyponormal);
        }

        #[test]
        fn generated_normal_is_flagged_and_hyponormal_implies_normal(
            m in arb_matrix(),
            d in proptest::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 6),
        ) {
            let diag: Vec<Complex64> = d.iter().map(|&(re, im)| Complex64::new(re, im)).collect();
            let a = normal_from(&m, &diag);
            let f = classify(&a, &tol()).unwrap();
            prop_assert!(f.normal && f.hyponormal);
            for x in [&a, &m] {
                let f = classify(x, &tol()).unwrap();
                if f.hyponormal {
                    let bound = (2.0 * x.n() as f64).sqrt() * f.tol_quadratic;
                    prop_assert!(f.normality_defect <= bound);
                }
            }
            // Commuting Hermitian parts give the square-root fact its hypothesis.
            let p = cartesian(&a);
            let s = psd_sqrt(&(&(&p.a1 * &p.a1) + &(&p.a2 * &p.a2)).hermitian_part()).unwrap();
            let r = (&abs_op(&p.a1).unwrap() + &abs_op(&p.a2).unwrap()).hermitian_part();
            prop_assert!(loewner_leq(&s, &r, &tol()).unwrap().holds);
        }
    }
}
