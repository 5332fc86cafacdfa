//! Number formatting for the JSON envelope.
//!
//! Reals are written as the shortest decimal that parses back to the same
//! `f64`, padded with trailing zeros to at least 15 significant digits.

use num_complex::Complex64;
use serde_json::{Number, Value};

use ghz_distill::{LocalOp, LocalVec};

pub const MIN_SIG_DIGITS: usize = 15;

fn significant_digits(mantissa: &str) -> usize {
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    digits.trim_start_matches('0').len().max(1)
}

fn pad(mantissa: &str) -> String {
    let missing = MIN_SIG_DIGITS.saturating_sub(significant_digits(mantissa));
    let mut s = mantissa.to_string();
    if !s.contains('.') {
        s.push('.');
    }
    s.extend(std::iter::repeat_n('0', missing));
    s
}

/// Text of a finite `f64` with at least 15 significant digits.
pub fn format_real(x: f64) -> String {
    let ax = x.abs();
    if ax == 0.0 || (1e-5..1e15).contains(&ax) {
        pad(&format!("{x}"))
    } else {
        let s = format!("{x:e}");
        let (m, e) = s.split_once('e').expect("exponent form");
        format!("{}e{e}", pad(m))
    }
}

/// A JSON number for `x`; non-finite values become `null`.
pub fn real(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Value::Number(format_real(x).parse::<Number>().expect("valid JSON number"))
}

pub fn reals(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| real(x)).collect())
}

/// `[re, im]`.
pub fn complex(z: Complex64) -> Value {
    Value::Array(vec![real(z.re), real(z.im)])
}

pub fn vector(v: &LocalVec) -> Value {
    Value::Array((0..2).map(|i| complex(v.component(i))).collect())
}

/// Row-major `[[z00, z01], [z10, z11]]`.
pub fn matrix(m: &LocalOp) -> Value {
    Value::Array(
        (0..2)
            .map(|r| Value::Array((0..2).map(|c| complex(m.entry(r, c))).collect()))
            .collect(),
    )
}

/// Inverse of [`matrix`].
pub fn parse_matrix(v: &Value) -> Option<LocalOp> {
    let rows = v.as_array().filter(|r| r.len() == 2)?;
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (r, row) in rows.iter().enumerate() {
        let row = row.as_array().filter(|c| c.len() == 2)?;
        for (c, z) in row.iter().enumerate() {
            let z = z.as_array().filter(|p| p.len() == 2)?;
            out[r][c] = Complex64::new(z[0].as_f64()?, z[1].as_f64()?);
        }
    }
    Some(LocalOp::from_rows(out))
}
