use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::report::{HypothesisCheck, InequalityReport, ReportBuilder};
use super::{CheckOptions, InequalityId, Result};
use crate::decomp::{cartesian, jordan};
use crate::numkernel::{
    abs_op, gram, hermitian_eig, loewner_compare, psd_sqrt, singular_values, ComplexMatrix,
    LinalgError, SingularSpectrum, Tolerance,
};

fn sv(m: &ComplexMatrix) -> Result<SingularSpectrum> {
    Ok(singular_values(m)?)
}

fn same_dim(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    if a.n() != b.n() {
        return Err(LinalgError::DimensionMismatch {
            left: a.n(),
            right: b.n(),
        }
        .into());
    }
    Ok(())
}

fn require_hermitian(m: &ComplexMatrix, tol: &Tolerance) -> Result<()> {
    let defect = m.hermitian_defect();
    let limit = tol.effective(m.frobenius_norm());
    if defect > limit {
        return Err(LinalgError::NotHermitian { defect, tol: limit }.into());
    }
    Ok(())
}

fn hermitian_hypothesis(name: &str, m: &ComplexMatrix, tol: &Tolerance) -> HypothesisCheck {
    HypothesisCheck::at_most(
        format!("{name}_hermitian_defect"),
        m.hermitian_defect(),
        tol.effective(m.frobenius_norm()),
    )
}

/// Hermitian defect plus minimum eigenvalue of the Hermitian part.
fn psd_hypotheses(name: &str, m: &ComplexMatrix, tol: &Tolerance) -> Result<[HypothesisCheck; 2]> {
    let min = hermitian_eig(&m.hermitian_part())?.min_eigenvalue();
    Ok([
        hermitian_hypothesis(name, m, tol),
        HypothesisCheck::at_least_negated(
            format!("{name}_min_eigenvalue"),
            min,
            tol.effective(m.frobenius_norm()),
        ),
    ])
}

/// `‖M*M − MM*‖_F` against a tolerance scaled by `‖M‖_F²`.
fn normal_hypothesis(name: &str, m: &ComplexMatrix, tol: &Tolerance) -> HypothesisCheck {
    let defect = (&gram(m) - &gram(&m.adjoint())).frobenius_norm();
    let norm = m.frobenius_norm();
    HypothesisCheck::at_most(
        format!("{name}_normality_defect"),
        defect,
        tol.effective(norm * norm),
    )
}

/// `X ≤ Y` as a hypothesis: minimum eigenvalue of `Y − X`.
fn order_hypothesis(
    name: &str,
    x: &ComplexMatrix,
    y: &ComplexMatrix,
    tol: &Tolerance,
) -> Result<HypothesisCheck> {
    let d = y.try_sub(x)?.hermitian_part();
    let min = hermitian_eig(&d)?.min_eigenvalue();
    Ok(HypothesisCheck::at_least_negated(
        name,
        min,
        tol.effective(d.frobenius_norm()),
    ))
}

/// The scalar inequality `(1/√2)|a+b| ≤ |a+ib| ≤ |a|+|b|`.
pub fn check_scalar_1_6(a: f64, b: f64, opts: &CheckOptions) -> InequalityReport {
    let modulus = (a * a + b * b).sqrt();
    let lower = FRAC_1_SQRT_2 * (a + b).abs();
    let upper = a.abs() + b.abs();
    let one = |x: f64| SingularSpectrum::from_unsorted(vec![x]);
    let mut r = ReportBuilder::with_dims(
        InequalityId::Scalar16,
        vec![1, 1],
        opts.tol,
        opts.enforce_hypotheses,
    );
    r.spectral("left", "(1/√2)|a+b| ≤ |a+ib|", &one(lower), &one(modulus))
        .spectral("right", "|a+ib| ≤ |a|+|b|", &one(modulus), &one(upper));
    r.finish()
}

pub fn check_bk_1_1(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    opts: &CheckOptions,
) -> Result<InequalityReport> {
    same_dim(a, b)?;
    let tol = &opts.tol;
    let mut r = ReportBuilder::new(InequalityId::Bk11, &[a, b], *tol, opts.enforce_hypotheses);
    for h in psd_hypotheses("a", a, tol)?
        .into_iter()
        .chain(psd_hypotheses("b", b, tol)?)
    {
        r.hypothesis(h);
    }
    let lhs = sv(&(a + b))?;
    let rhs = sv(&(a + &b.scale(Complex64::new(0.0, 1.0))))?.scaled(SQRT_2);
    r.spectral("main", "s_j(A+B) ≤ √2·s_j(A+iB)", &lhs, &rhs);
    Ok(r.finish())
}

fn psd_block(
    id: InequalityId,
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    opts: &CheckOptions,
) -> Result<(ReportBuilder, ComplexMatrix)> {
    same_dim(a, b)?;
    same_dim(a, c)?;
    let block = ComplexMatrix::block2(a, b, &b.adjoint(), c)?;
    let mut r = ReportBuilder::new(id, &[a, b, c], opts.tol, opts.enforce_hypotheses);
    for h in psd_hypotheses("block", &block, &opts.tol)? {
        r.hypothesis(h);
    }
    Ok((r, block))
}

pub fn check_tao_1_2(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    opts: &CheckOptions,
) -> Result<InequalityReport> {
    let (mut r, block) = psd_block(InequalityId::Tao12, a, b, c, opts)?;
    let lhs = sv(b)?.scaled(2.0).padded(2 * b.n());
    let rhs = sv(&block.hermitian_part())?;
    r.spectral("main", "2·s_j(B) ≤ s_j([[A,B],[B*,C]])", &lhs, &rhs);
    Ok(r.finish())
}

pub fn check_ak_1_3(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    opts: &CheckOptions,
) -> Result<InequalityReport> {
    let (mut r, _) = psd_block(InequalityId::Ak13, a, b, c, opts)?;
    let lhs = sv(b)?.padded(2 * b.n());
    let rhs = sv(&a.direct_sum(c))?;
    r.spectral("main", "s_j(B) ≤ s_j(A ⊕ C)", &lhs, &rhs);
    Ok(r.finish())
}

pub fn check_ak_1_4(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    opts: &CheckOptions,
) -> Result<InequalityReport> {
    same_dim(a, b)?;
    let tol = &opts.tol;
    let mut r = ReportBuilder::new(InequalityId::Ak14, &[a, b], *tol, opts.enforce_hypotheses);
    r.hypothesis(hermitian_hypothesis("a", a, tol));
    for h in psd_hypotheses("b", b, tol)? {
        r.hypothesis(h);
    }
    let (ah, bh) = (a.hermitian_part(), b.hermitian_part());
    r.hypothesis(order_hypothesis("a_leq_b", &ah, &bh, tol)?)
        .hypothesis(order_hypothesis("neg_a_leq_b", &(-&ah), &bh, tol)?);
    let lhs = sv(a)?.scaled(2.0).padded(2 * a.n());
    let rhs = sv(&(b + a).direct_sum(&(b - a)))?;
    r.spectral("main", "2·s_j(A) ≤ s_j((B+A) ⊕ (B−A))", &lhs, &rhs);
    Ok(r.finish())
}

pub fn check_thm_2_1(a: &ComplexMatrix, opts: &CheckOptions) -> Result<InequalityReport> {
    let mut r = ReportBuilder::new(InequalityId::Thm21, &[a], opts.tol, opts.enforce_hypotheses);
    r.hypothesis(normal_hypothesis("a", a, &opts.tol));
    let p = cartesian(a);
    let lower = sv(&(&p.a1 + &p.a2))?.scaled(FRAC_1_SQRT_2);
    let middle = sv(a)?;
    let upper = sv(&(&abs_op(&p.a1)? + &abs_op(&p.a2)?))?;
    r.spectral("left", "(1/√2)·s_j(A₁+A₂) ≤ s_j(A)", &lower, &middle)
        .spectral("right", "s_j(A) ≤ s_j(|A₁|+|A₂|)", &middle, &upper);
    Ok(r.finish())
}

pub fn check_thm_2_4(a: &ComplexMatrix, opts: &CheckOptions) -> Result<InequalityReport> {
    let tol = &opts.tol;
    let mut r = ReportBuilder::new(InequalityId::Thm24, &[a], *tol, opts.enforce_hypotheses);
    let p = cartesian(a);
    r.hypothesis(normal_hypothesis("a", a, tol))
        .hypothesis(order_hypothesis("neg_a2_leq_a1", &(-&p.a2), &p.a1, tol)?);
    let plus_sum = &jordan(&p.a1, tol)?.plus + &jordan(&p.a2, tol)?.plus;
    let lhs = sv(a)?.padded(2 * a.n());
    let rhs = sv(&plus_sum.scale_real(2.0).direct_sum(&(&p.a1 + &p.a2)))?;
    r.spectral("main", "s_j(A) ≤ s_j(2(A₁⁺+A₂⁺) ⊕ (A₁+A₂))", &lhs, &rhs);
    Ok(r.finish())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JordanSide {
    Plus,
    Minus,
}

pub fn check_thm_2_5(
    a: &ComplexMatrix,
    side: JordanSide,
    opts: &CheckOptions,
) -> Result<InequalityReport> {
    let tol = &opts.tol;
    require_hermitian(a, tol)?;
    let (id, statement) = match side {
        JordanSide::Plus => (InequalityId::Thm25Plus, "s_j(A⁺) ≤ s_j(|A| ⊕ (|A|−A)/2)"),
        JordanSide::Minus => (InequalityId::Thm25Minus, "s_j(A⁻) ≤ s_j(|A| ⊕ (|A|+A)/2)"),
    };
    let mut r = ReportBuilder::new(id, &[a], *tol, opts.enforce_hypotheses);
    r.hypothesis(hermitian_hypothesis("a", a, tol));
    let h = a.hermitian_part();
    let parts = jordan(&h, tol)?;
    let abs = abs_op(&h)?;
    let (part, companion) = match side {
        JordanSide::Plus => (parts.plus, &abs - &h),
        JordanSide::Minus => (parts.minus, &abs + &h),
    };
    let lhs = sv(&part)?.padded(2 * a.n());
    let rhs = sv(&abs.direct_sum(&companion.scale_real(0.5)))?;
    r.spectral("main", statement, &lhs, &rhs);
    Ok(r.finish())
}

pub fn check_thm_2_7(a: &ComplexMatrix, opts: &CheckOptions) -> Result<InequalityReport> {
    let mut r = ReportBuilder::new(InequalityId::Thm27, &[a], opts.tol, opts.enforce_hypotheses);
    let p = cartesian(a);
    let s = sv(&(&p.a1 + &p.a2))?;
    let t = sv(&(a + &a.adjoint().scale(Complex64::new(0.0, 1.0))))?;
    r.spectral("left", "√2·s_j(A₁+A₂) ≤ s_j(A+iA*)", &s.scaled(SQRT_2), &t)
        .spectral("right", "s_j(A+iA*) ≤ 2·s_j(A₁+A₂)", &t, &s.scaled(2.0));
    Ok(r.finish())
}

fn anticommutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    &(a * b) + &(b * a)
}

pub fn check_thm_2_8(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    opts: &CheckOptions,
) -> Result<InequalityReport> {
    same_dim(a, b)?;
    let mut r = ReportBuilder::new(
        InequalityId::Thm28,
        &[a, b],
        opts.tol,
        opts.enforce_hypotheses,
    );
    let lhs = sv(&anticommutator(a, b))?.padded(2 * a.n());
    let left_block = &gram(a) + &gram(b);
    let right_block = &gram(&a.adjoint()) + &gram(&b.adjoint());
    let rhs = sv(&left_block.direct_sum(&right_block))?;
    r.spectral(
        "main",
        "s_j(AB+BA) ≤ s_j((A*A+B*B) ⊕ (AA*+BB*))",
        &lhs,
        &rhs,
    );
    Ok(r.finish())
}

pub fn check_cor_2_9(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    opts: &CheckOptions,
) -> Result<InequalityReport> {
    same_dim(a, b)?;
    let tol = &opts.tol;
    let mut r = ReportBuilder::new(InequalityId::Cor29, &[a, b], *tol, opts.enforce_hypotheses);
    r.hypothesis(normal_hypothesis("a", a, tol))
        .hypothesis(normal_hypothesis("b", b, tol));
    let lhs = sv(&anticommutator(a, b))?.padded(2 * a.n());
    let block = &gram(&a.adjoint()) + &gram(&b.adjoint());
    let rhs = sv(&block.direct_sum(&block))?;
    r.spectral(
        "main",
        "s_j(AB+BA) ≤ s_j((AA*+BB*) ⊕ (AA*+BB*))",
        &lhs,
        &rhs,
    );
    Ok(r.finish())
}

/// Löwner-order analogue of the normal-case bounds, evaluated for any `A`.
///
/// Order failures are reported as a `Violated` verdict.
pub fn check_loewner_cartesian(a: &ComplexMatrix, opts: &CheckOptions) -> Result<InequalityReport> {
    let tol = &opts.tol;
    let mut r = ReportBuilder::new(
        InequalityId::LoewnerCartesian,
        &[a],
        *tol,
        opts.enforce_hypotheses,
    );
    let p = cartesian(a);
    let lower = abs_op(&(&p.a1 + &p.a2))?.scale_real(FRAC_1_SQRT_2);
    let middle = abs_op(a)?;
    let upper = &abs_op(&p.a1)? + &abs_op(&p.a2)?;
    let left = loewner_compare(&lower, &middle, tol)?;
    let right = loewner_compare(&middle, &upper, tol)?;
    r.loewner("left", "(1/√2)|A₁+A₂| ≤ |A₁+iA₂|", &lower, &middle, &left)
        .loewner("right", "|A₁+iA₂| ≤ |A₁|+|A₂|", &middle, &upper, &right);
    Ok(r.finish())
}

/// The two operator facts behind the normal-case bounds.
///
/// The square-root fact is only evaluated when `A₁` and `A₂` commute within
/// tolerance; otherwise the report carries a note instead of that side.
pub fn check_proof_facts_2_1(
    a1: &ComplexMatrix,
    a2: &ComplexMatrix,
    opts: &CheckOptions,
) -> Result<InequalityReport> {
    same_dim(a1, a2)?;
    let tol = &opts.tol;
    require_hermitian(a1, tol)?;
    require_hermitian(a2, tol)?;
    let (h1, h2) = (a1.hermitian_part(), a2.hermitian_part());
    let mut r = ReportBuilder::new(
        InequalityId::ProofFacts21,
        &[a1, a2],
        *tol,
        opts.enforce_hypotheses,
    );

    let sum_sq = (&gram(&h1) + &gram(&h2)).hermitian_part();
    let square_lhs = gram(&(&h1 + &h2));
    let square_rhs = sum_sq.scale_real(2.0);
    let cmp = loewner_compare(&square_lhs, &square_rhs, tol)?;
    r.loewner(
        "square",
        "(A₁+A₂)*(A₁+A₂) ≤ 2(A₁²+A₂²)",
        &square_lhs,
        &square_rhs,
        &cmp,
    );

    let commutator = h1.commutator(&h2)?.frobenius_norm();
    let limit = tol.effective(h1.frobenius_norm() * h2.frobenius_norm());
    if commutator <= limit {
        let root = psd_sqrt(&sum_sq)?;
        let bound = (&abs_op(&h1)? + &abs_op(&h2)?).hermitian_part();
        let cmp = loewner_compare(&root, &bound, tol)?;
        r.loewner("sqrt", "(A₁²+A₂²)^{1/2} ≤ |A₁|+|A₂|", &root, &bound, &cmp);
    } else {
        r.note(format!(
            "square-root fact skipped: ‖[A₁,A₂]‖_F = {commutator:e} exceeds {limit:e}"
        ));
    }
    Ok(r.finish())
}
