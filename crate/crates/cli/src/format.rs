//! Fixed-precision text formatting for human-readable output.

use svineq_core::numkernel::Complex64;
use svineq_core::ComplexMatrix;

/// `x` to six significant digits, without exponent for moderate magnitudes.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-4..6).contains(&mag) {
        return format!("{x:.5e}");
    }
    let decimals = (5 - mag).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

pub fn complex(z: Complex64) -> String {
    let re = sig6(z.re);
    if z.im == 0.0 {
        return re;
    }
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{re}{sign}{}i", sig6(z.im.abs()))
}

pub fn list(values: &[f64]) -> String {
    let items: Vec<String> = values.iter().map(|&v| sig6(v)).collect();
    format!("[{}]", items.join(", "))
}

pub fn matrix(m: &ComplexMatrix) -> String {
    let rows: Vec<String> = (0..m.n())
        .map(|i| {
            let cells: Vec<String> = m.row(i).iter().map(|&z| complex(z)).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}
