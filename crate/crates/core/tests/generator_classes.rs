//! Every class satisfies its defining residuals across many samples.

use svineq_core::inequalities::{check, InequalityId, Verdict};
use svineq_core::numkernel::{gram, hermitian_eig};
use svineq_core::randgen::{generate, GeneratorClass, GeneratorSpec};
use svineq_core::{ComplexMatrix, Tolerance};

const SAMPLES: u64 = 1000;
const DIMS: [usize; 4] = [2, 3, 5, 8];

fn bound(m: &ComplexMatrix) -> f64 {
    1e-10 * m.frobenius_norm().max(1.0)
}

fn min_eig(m: &ComplexMatrix) -> f64 {
    hermitian_eig(m).unwrap().min_eigenvalue()
}

fn assert_psd(m: &ComplexMatrix, what: &str) {
    assert_eq!(m.hermitian_defect(), 0.0, "{what}");
    assert!(min_eig(m) >= -bound(m), "{what}: {}", min_eig(m));
}

fn assert_normal(m: &ComplexMatrix, what: &str) {
    let defect = (&gram(m) - &gram(&m.adjoint())).frobenius_norm();
    assert!(
        defect <= 1e-10 * m.frobenius_norm().powi(2).max(1.0),
        "{what}: {defect}"
    );
}

fn check_sample(class: GeneratorClass, ms: &[ComplexMatrix], what: &str) {
    match class {
        GeneratorClass::Ginibre => assert!(ms[0].is_finite()),
        GeneratorClass::Hermitian => assert_eq!(ms[0].hermitian_defect(), 0.0, "{what}"),
        GeneratorClass::Psd => assert_psd(&ms[0], what),
        GeneratorClass::Unitary => {
            let r = (&gram(&ms[0]) - &ComplexMatrix::identity(ms[0].n())).frobenius_norm();
            assert!(r <= 1e-10, "{what}: {r}");
        }
        GeneratorClass::Normal => assert_normal(&ms[0], what),
        GeneratorClass::PsdBlock2 => {
            let block = ComplexMatrix::block2(&ms[0], &ms[1], &ms[1].adjoint(), &ms[2]).unwrap();
            assert!(min_eig(&block.hermitian_part()) >= -bound(&block), "{what}");
        }
        GeneratorClass::DominatedPair => {
            let (a, b) = (&ms[0], &ms[1]);
            assert_eq!(a.hermitian_defect(), 0.0);
            assert!(min_eig(&(b - a)) >= -bound(b), "{what}");
            assert!(min_eig(&(b + a)) >= -bound(b), "{what}");
        }
        GeneratorClass::NormalOrderConstrained => {
            let a = &ms[0];
            assert_normal(a, what);
            let sum = (&(a + &a.adjoint()).scale_real(0.5)
                + &(a - &a.adjoint()).scale(num_complex::Complex64::new(0.0, -0.5)))
                .hermitian_part();
            assert!(min_eig(&sum) >= -bound(a), "{what}");
        }
        GeneratorClass::NormalPairSharedBasis => {
            assert_normal(&ms[0], what);
            assert_normal(&ms[1], what);
            // Shared eigenbasis: the pair commutes.
            let c = ms[0].commutator(&ms[1]).unwrap().frobenius_norm();
            assert!(
                c <= 1e-10 * (ms[0].frobenius_norm() * ms[1].frobenius_norm()).max(1.0),
                "{what}"
            );
        }
    }
}

#[test]
fn class_residuals_hold_for_many_samples() {
    for class in GeneratorClass::ALL {
        for n in DIMS {
            for t in 0..SAMPLES {
                let spec = GeneratorSpec::new(class, n, 11).with_stream(t);
                let g = generate(&spec).unwrap();
                check_sample(class, &g.matrices, &format!("{class} n={n} t={t}"));
            }
        }
    }
}

#[test]
fn psd_block2_never_violates_block_hypothesis() {
    let tol = Tolerance::default();
    for n in DIMS {
        for t in 0..200 {
            let g = generate(&GeneratorSpec::new(GeneratorClass::PsdBlock2, n, 3).with_stream(t))
                .unwrap();
            for id in [InequalityId::Tao12, InequalityId::Ak13] {
                let r = check(id, &g.matrices, &tol).unwrap();
                assert_ne!(r.verdict, Verdict::HypothesisViolated, "{id} n={n} t={t}");
            }
        }
    }
}

#[test]
fn ak_1_3_random_block_example() {
    let g = generate(&GeneratorSpec::new(GeneratorClass::PsdBlock2, 3, 0)).unwrap();
    let r = check(InequalityId::Ak13, &g.matrices, &Tolerance::default()).unwrap();
    assert_eq!(r.verdict, Verdict::Holds);
}
