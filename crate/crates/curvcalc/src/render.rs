//! Deterministic text rendering of numbers.

use serde_json::Value;

pub use crate::document::render_rational;

/// `%.12g`: twelve significant digits, trailing zeros dropped, scientific
/// notation outside `[1e-5, 1e12)`.
pub fn float(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..12).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{m}e{sign}{:02}", exp.abs());
    }
    let decimals = (11 - exp).max(0) as usize;
    trim_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// A JSON number carrying the same twelve significant digits.
pub fn json_float(x: f64) -> Value {
    float(x).parse::<f64>().ok().map_or(Value::Null, Value::from)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        assert_eq!(float(0.5), "0.5");
        assert_eq!(float(2.0), "2");
        assert_eq!(float(-1.0 / 3.0), "-0.333333333333");
        assert_eq!(float(0.1 + 0.2), "0.3");
        assert_eq!(float(1e-7), "1e-07");
        assert_eq!(float(123456789012345.0), "1.23456789012e+14");
        assert_eq!(float(999999999999.9), "1e+12");
        assert_eq!(float(0.0001234), "0.0001234");
    }

    #[test]
    fn json_numbers_are_rounded() {
        assert_eq!(json_float(0.1 + 0.2).to_string(), "0.3");
        assert_eq!(json_float(f64::NAN), Value::Null);
    }
}
