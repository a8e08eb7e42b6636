//! Embedded fixtures for the worked examples.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use svineq_core::decomp::{cartesian, classify};
use svineq_core::fuzzer::Witness;
use svineq_core::inequalities::{check, CheckOptions, InequalityId};
use svineq_core::numkernel::{abs_op, loewner_compare, singular_values, Complex64};
use svineq_core::{ComplexMatrix, LinalgError, Tolerance};

use crate::format::{list, matrix, sig6};

/// Gap above which a claimed approximate value counts as a discrepancy.
pub const DISCREPANCY_THRESHOLD: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Fixture {
    #[serde(rename = "ex-2.2")]
    Ex22,
    #[serde(rename = "ex-2.3")]
    Ex23,
}

impl Fixture {
    pub fn as_str(self) -> &'static str {
        match self {
            Fixture::Ex22 => "ex-2.2",
            Fixture::Ex23 => "ex-2.3",
        }
    }

    pub fn matrix(self) -> ComplexMatrix {
        let rows: &[&[(f64, f64)]] = match self {
            Fixture::Ex22 => &[&[(2.0, -1.0), (0.0, 2.0)], &[(0.0, 2.0), (0.0, 2.0)]],
            Fixture::Ex23 => &[&[(1.0, 1.0), (1.0, 0.0)], &[(1.0, 0.0), (0.0, 1.0)]],
        };
        ComplexMatrix::from_pairs(rows).expect("fixture is well formed")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedSpectrum {
    pub name: String,
    pub values: Vec<f64>,
}

/// One Löwner comparison `X ≤ Y` with the example's claim about it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderCheck {
    pub label: String,
    pub statement: String,
    /// Eigenvalues of `Y − X`, ascending.
    pub eigenvalues: Vec<f64>,
    pub min_eigenvalue: f64,
    pub tol_effective: f64,
    pub holds: bool,
    pub claimed_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValueCheck {
    pub name: String,
    pub recomputed: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claimed: Option<f64>,
    /// Closed-form value computed without the eigensolver.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<f64>,
    pub discrepancy: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReproResult {
    pub fixture: Fixture,
    pub a: ComplexMatrix,
    pub a1: ComplexMatrix,
    pub a2: ComplexMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parts_match_example: Option<bool>,
    pub normality_defect: f64,
    pub normal: bool,
    pub spectra: Vec<NamedSpectrum>,
    pub orders: Vec<OrderCheck>,
    pub values: Vec<ValueCheck>,
    pub witnesses: Vec<Witness>,
    pub discrepancies: Vec<String>,
}

pub fn run(fixture: Fixture) -> Result<ReproResult, LinalgError> {
    let tol = Tolerance::default();
    let a = fixture.matrix();
    let parts = cartesian(&a);
    let flags = classify(&a, &tol)?;
    let mut result = ReproResult {
        fixture,
        a: a.clone(),
        a1: parts.a1.clone(),
        a2: parts.a2.clone(),
        parts_match_example: None,
        normality_defect: flags.normality_defect,
        normal: flags.normal,
        spectra: Vec::new(),
        orders: Vec::new(),
        values: Vec::new(),
        witnesses: Vec::new(),
        discrepancies: Vec::new(),
    };
    match fixture {
        Fixture::Ex22 => example_2_2(&mut result, &tol)?,
        Fixture::Ex23 => example_2_3(&mut result, &tol)?,
    }
    Ok(result)
}

fn spectrum(name: &str, m: &ComplexMatrix) -> Result<NamedSpectrum, LinalgError> {
    Ok(NamedSpectrum {
        name: name.into(),
        values: singular_values(m)?.values().to_vec(),
    })
}

fn order(
    label: &str,
    statement: &str,
    x: &ComplexMatrix,
    y: &ComplexMatrix,
    claimed_holds: bool,
    tol: &Tolerance,
) -> Result<OrderCheck, LinalgError> {
    let cmp = loewner_compare(x, y, tol)?;
    Ok(OrderCheck {
        label: label.into(),
        statement: statement.into(),
        eigenvalues: cmp.difference.eigenvalues.clone(),
        min_eigenvalue: cmp.verdict.min_eigenvalue,
        tol_effective: cmp.verdict.tol_effective,
        holds: cmp.verdict.holds,
        claimed_holds,
    })
}

fn witness(id: InequalityId, inputs: Vec<ComplexMatrix>, tol: &Tolerance) -> Witness {
    let report = check(id, &inputs, tol).expect("fixture inputs are valid");
    Witness::new(inputs, report, CheckOptions::with_tol(*tol))
}

fn example_2_2(r: &mut ReproResult, tol: &Tolerance) -> Result<(), LinalgError> {
    let stated_a1 = ComplexMatrix::from_real_rows(&[&[2.0, 0.0], &[0.0, 0.0]]).expect("literal");
    let stated_a2 = ComplexMatrix::from_real_rows(&[&[-1.0, 2.0], &[2.0, 2.0]]).expect("literal");
    r.parts_match_example = Some(r.a1 == stated_a1 && r.a2 == stated_a2);

    let (a, a1, a2) = (&r.a, &r.a1, &r.a2);
    let i = Complex64::new(0.0, 1.0);
    let lower = abs_op(&(a1 + a2))?.scale_real(FRAC_1_SQRT_2);
    let printed_mid = abs_op(&(a1 + &a1.scale(i)))?;
    let mid = abs_op(a)?;
    let upper = &abs_op(a1)? + &abs_op(a2)?;

    r.spectra = vec![
        spectrum("s(A)", a)?,
        spectrum("s(A1 + A2)", &(a1 + a2))?,
        spectrum("s(|A1| + |A2|)", &upper)?,
    ];
    r.orders = vec![
        order(
            "left (as printed)",
            "(1/√2)|A1 + A2| ≤ |A1 + iA1|",
            &lower,
            &printed_mid,
            false,
            tol,
        )?,
        order(
            "left (A2 reading)",
            "(1/√2)|A1 + A2| ≤ |A1 + iA2|",
            &lower,
            &mid,
            false,
            tol,
        )?,
        order(
            "right",
            "|A1 + iA2| ≤ |A1| + |A2|",
            &mid,
            &upper,
            false,
            tol,
        )?,
    ];
    for o in &r.orders {
        if o.holds != o.claimed_holds {
            r.discrepancies.push(format!(
                "{}: {} holds (min eigenvalue {}), but the example states it fails",
                o.label,
                o.statement,
                sig6(o.min_eigenvalue)
            ));
        }
    }
    r.witnesses.push(witness(
        InequalityId::LoewnerCartesian,
        vec![a.clone()],
        tol,
    ));
    Ok(())
}

/// Eigenvalues of a 2x2 Hermitian matrix in closed form, descending.
fn eig2_hermitian(m: &ComplexMatrix) -> [f64; 2] {
    let (p, q, b) = (m[(0, 0)].re, m[(1, 1)].re, m[(0, 1)]);
    let mean = 0.5 * (p + q);
    let radius = (0.25 * (p - q) * (p - q) + b.norm_sqr()).sqrt();
    [mean + radius, mean - radius]
}

fn example_2_3(r: &mut ReproResult, tol: &Tolerance) -> Result<(), LinalgError> {
    let (a, a1, a2) = (&r.a, &r.a1, &r.a2);
    let s_a = singular_values(a)?;
    let upper = &abs_op(a1)? + &abs_op(a2)?;
    let s_upper = singular_values(&upper)?;

    // A2 = I, so A = A1 + iI has singular values |λ + i| and |A1| + |A2| has
    // eigenvalues |λ| + 1, with λ the eigenvalues of A1.
    let lambda = eig2_hermitian(a1);
    let mut oracle_a: Vec<f64> = lambda
        .iter()
        .map(|l| Complex64::new(*l, 1.0).norm())
        .collect();
    let mut oracle_upper: Vec<f64> = lambda.iter().map(|l| l.abs() + 1.0).collect();
    oracle_a.sort_by(|x, y| y.total_cmp(x));
    oracle_upper.sort_by(|x, y| y.total_cmp(x));
    let a2_is_identity = *a2 == ComplexMatrix::identity(2);

    r.spectra = vec![
        spectrum("s(A)", a)?,
        spectrum("s(A1 + A2)", &(a1 + a2))?,
        spectrum("s(|A1| + |A2|)", &upper)?,
    ];
    let value = |name: &str, recomputed: f64, claimed: Option<f64>, oracle: f64| ValueCheck {
        name: name.into(),
        recomputed,
        claimed,
        oracle: a2_is_identity.then_some(oracle),
        discrepancy: claimed.is_some_and(|c| (c - recomputed).abs() > DISCREPANCY_THRESHOLD),
    };
    r.values = vec![
        value("s1(A1 + iA2)", s_a.get(0), None, oracle_a[0]),
        value("s2(A1 + iA2)", s_a.get(1), Some(1.1756), oracle_a[1]),
        value(
            "s2(|A1| + |A2|)",
            s_upper.get(1),
            Some(0.9591),
            oracle_upper[1],
        ),
    ];
    for v in &r.values {
        if v.discrepancy {
            r.discrepancies.push(format!(
                "{}: example states ≈ {}, recomputed {}",
                v.name,
                v.claimed.map(|c| c.to_string()).unwrap_or_default(),
                sig6(v.recomputed)
            ));
        }
    }
    r.witnesses
        .push(witness(InequalityId::Thm21, vec![a.clone()], tol));
    Ok(())
}

pub fn render(r: &ReproResult) -> String {
    let mut out = String::new();
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    let _ = writeln!(out, "fixture {}", r.fixture.as_str());
    let _ = writeln!(out, "A  = {}", matrix(&r.a));
    let _ = writeln!(out, "A1 = {}", matrix(&r.a1));
    let _ = writeln!(out, "A2 = {}", matrix(&r.a2));
    if let Some(m) = r.parts_match_example {
        let _ = writeln!(out, "Cartesian parts match the example: {}", yes_no(m));
    }
    let _ = writeln!(
        out,
        "normal: {} (‖A*A − AA*‖_F = {})",
        yes_no(r.normal),
        sig6(r.normality_defect)
    );
    for s in &r.spectra {
        let _ = writeln!(out, "{} = {}", s.name, list(&s.values));
    }
    for o in &r.orders {
        let _ = writeln!(out, "order {}: {}", o.label, o.statement);
        let _ = writeln!(
            out,
            "  eigenvalues of difference = {}",
            list(&o.eigenvalues)
        );
        let _ = writeln!(
            out,
            "  min eigenvalue {} (tolerance {}): {}; example states: {}",
            sig6(o.min_eigenvalue),
            sig6(o.tol_effective),
            if o.holds { "holds" } else { "violated" },
            if o.claimed_holds { "holds" } else { "violated" }
        );
    }
    for v in &r.values {
        let _ = write!(out, "{} recomputed {}", v.name, sig6(v.recomputed));
        if let Some(o) = v.oracle {
            let _ = write!(out, ", closed form {}", sig6(o));
        }
        if let Some(c) = v.claimed {
            let _ = write!(out, ", example states ≈ {c}");
        }
        out.push('\n');
    }
    for w in &r.witnesses {
        let _ = writeln!(
            out,
            "check {}: {} (min margin {})",
            w.id,
            w.report.verdict.as_str(),
            sig6(w.report.min_margin)
        );
    }
    for d in &r.discrepancies {
        let _ = writeln!(out, "DISCREPANCY {d}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_2_2_orders() {
        let r = run(Fixture::Ex22).unwrap();
        assert_eq!(r.parts_match_example, Some(true));
        let printed = &r.orders[0];
        let corrected = &r.orders[1];
        let right = &r.orders[2];
        assert!(!printed.holds && printed.min_eigenvalue < -2.0);
        assert!(corrected.holds && corrected.min_eigenvalue > 0.3);
        assert!(!right.holds && right.min_eigenvalue < -0.24);
        assert_eq!(r.discrepancies.len(), 1);
        assert!(!r.normal);
    }

    #[test]
    fn example_2_3_values() {
        let r = run(Fixture::Ex23).unwrap();
        assert!(r.normal);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((r.values[0].recomputed - (phi * phi + 1.0).sqrt()).abs() < 1e-12);
        assert!(!r.values[1].discrepancy);
        assert!(r.values[2].discrepancy);
        assert!((r.values[2].oracle.unwrap() - (1.0 + 1.0 / phi)).abs() < 1e-15);
        assert_eq!(r.discrepancies.len(), 1);
    }

    #[test]
    fn closed_form_eigenvalues() {
        let m = ComplexMatrix::from_real_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap();
        assert_eq!(eig2_hermitian(&m), [3.0, 1.0]);
    }
}
