//! Output plumbing: significant-digit formatting, JSON number handling for
//! infinities, and a stdout-or-file sink.

use std::fs;
use std::io::{self, Write};

/// Formats `x` to `digits` significant digits, printf `%g` style: plain
/// decimal in the comfortable range, exponent notation outside it, trailing
/// zeros trimmed. Infinities print as `inf`/`-inf`.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let magnitude = x.abs().log10().floor() as i32;
    if magnitude < -4 || magnitude >= digits as i32 + 10 {
        let s = format!("{:.*e}", digits - 1, x);
        return trim_exponential(&s);
    }
    let decimals = (digits as i32 - 1 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    trim_decimal(&s)
}

fn trim_decimal(s: &str) -> String {
    if !s.contains('.') {
        return s.to_string();
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn trim_exponential(s: &str) -> String {
    match s.split_once('e') {
        Some((mantissa, exp)) => format!("{}e{exp}", trim_decimal(mantissa)),
        None => s.to_string(),
    }
}

/// JSON value for an `f64`: a number when finite, the strings
/// `"inf"`/`"-inf"` otherwise (JSON has no infinities).
pub fn json_number(x: f64) -> serde_json::Value {
    match serde_json::Number::from_f64(x) {
        Some(n) => serde_json::Value::Number(n),
        None => serde_json::Value::String(fmt_sig(x, 6)),
    }
}

/// Collects output lines and writes them to stdout or a file at the end.
pub struct Sink {
    out: Option<String>,
    buffer: String,
}

impl Sink {
    pub fn new(out: Option<&str>) -> Self {
        Sink {
            out: out.map(String::from),
            buffer: String::new(),
        }
    }

    pub fn line(&mut self, line: impl AsRef<str>) {
        self.buffer.push_str(line.as_ref());
        self.buffer.push('\n');
    }

    pub fn json(&mut self, value: serde_json::Value) {
        self.line(serde_json::to_string_pretty(&value).expect("JSON value serializes"));
    }

    pub fn finish(self) -> Result<(), infodiv::Error> {
        match self.out {
            Some(path) => fs::write(&path, self.buffer).map_err(|e| {
                infodiv::Error::BadTable(format!("cannot write output to '{path}': {e}"))
            }),
            None => {
                io::stdout()
                    .write_all(self.buffer.as_bytes())
                    .expect("stdout is writable");
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(fmt_sig(6.496769487678017, 6), "6.49677");
        assert_eq!(fmt_sig(0.011407757737461138, 6), "0.0114078");
        assert_eq!(fmt_sig(1.0, 6), "1");
        assert_eq!(fmt_sig(0.0, 6), "0");
        assert_eq!(fmt_sig(f64::INFINITY, 6), "inf");
        assert_eq!(fmt_sig(f64::NEG_INFINITY, 6), "-inf");
        assert_eq!(fmt_sig(-2.54, 3), "-2.54");
        assert_eq!(fmt_sig(1e-10, 6), "1e-10");
        assert_eq!(fmt_sig(0.2375, 4), "0.2375");
        assert_eq!(fmt_sig(13.284910589210838, 6), "13.2849");
    }

    #[test]
    fn json_numbers_handle_infinity() {
        assert_eq!(json_number(1.5), serde_json::json!(1.5));
        assert_eq!(json_number(f64::INFINITY), serde_json::json!("inf"));
    }
}
