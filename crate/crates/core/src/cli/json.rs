//! Byte-stable JSON for inequality systems.
//!
//! `{"vars":[...],"rows":[{"coeffs":[...],"rhs":<num>,"family":"<tag>","params":{...}}]}`
//! with keys in that order and every real printed with 17 significant
//! digits, so the text round-trips to the same `f64` values.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::system::{InequalitySystem, Row};

/// Formats `x` like C's `%.17g`.
pub fn fmt_g17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    if !x.is_finite() {
        // JSON has no infinities; emit null rather than invalid text.
        return "null".into();
    }
    let sci = format!("{:.16e}", x);
    let (mant, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        let mant = trim_zeros(mant.to_string());
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mant}e{sign}{:02}", exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn write_str(out: &mut String, s: &str) {
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

fn write_row(out: &mut String, row: &Row) {
    out.push_str("{\"coeffs\":[");
    for (t, c) in row.coeffs.iter().enumerate() {
        if t > 0 {
            out.push(',');
        }
        let _ = write!(out, "{c}");
    }
    out.push_str("],\"rhs\":");
    out.push_str(&fmt_g17(row.rhs));
    out.push_str(",\"family\":");
    write_str(out, row.family.as_str());
    out.push_str(",\"params\":{");
    let mut first = true;
    for (key, val) in [
        ("m", row.params.m),
        ("l", row.params.l),
        ("i", row.params.i),
    ] {
        if let Some(v) = val {
            if !first {
                out.push(',');
            }
            first = false;
            let _ = write!(out, "\"{key}\":{v}");
        }
    }
    out.push_str("}}");
}

/// Renders a system in the stable schema, rows in stored order.
pub fn render_json(sys: &InequalitySystem) -> String {
    let mut out = String::from("{\"vars\":[");
    for (t, v) in sys.vars.iter().enumerate() {
        if t > 0 {
            out.push(',');
        }
        write_str(&mut out, v);
    }
    out.push_str("],\"rows\":[");
    for (t, r) in sys.rows.iter().enumerate() {
        if t > 0 {
            out.push(',');
        }
        write_row(&mut out, r);
    }
    out.push_str("]}");
    out
}

/// Parses the schema written by [`render_json`].
pub fn parse_json(text: &str) -> Result<InequalitySystem> {
    let sys: InequalitySystem =
        serde_json::from_str(text).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    for r in &sys.rows {
        if r.coeffs.len() != sys.dim() {
            return Err(Error::DimensionMismatch {
                expected: sys.dim(),
                actual: r.coeffs.len(),
            });
        }
    }
    Ok(sys)
}
