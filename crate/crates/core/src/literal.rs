//! Parsing and printing of complex literals of the form `re+imi`.

use num_complex::Complex64;

/// Parses `3`, `-2.5e-3`, `5i`, `-i`, `-4+3i`, `0.5-0.25i`. No spaces.
pub fn parse_complex(s: &str) -> Option<Complex64> {
    let s = s.trim();
    if s.is_empty() || s.contains(char::is_whitespace) {
        return None;
    }
    let Some(body) = s.strip_suffix('i') else {
        return parse_real(s).map(|re| Complex64::new(re, 0.0));
    };
    // split at the last sign that is not a leading sign or an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (parse_real(&body[..k])?, parse_imag(&body[k..])?),
        None => (0.0, parse_imag(body)?),
    };
    Some(Complex64::new(re, im))
}

fn parse_real(s: &str) -> Option<f64> {
    let v: f64 = s.parse().ok()?;
    v.is_finite().then_some(v)
}

fn parse_imag(s: &str) -> Option<f64> {
    match s {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        _ => parse_real(s),
    }
}

/// Shortest round-trip formatting with 17 significant digits, e.g.
/// `1.0000000000000000e0`.
pub fn format_real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "NaN".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// `re+imi` with both parts at 17 significant digits.
pub fn format_complex(z: Complex64) -> String {
    let im = format_real(z.im);
    let sep = if im.starts_with('-') { "" } else { "+" };
    format!("{}{sep}{im}i", format_real(z.re))
}
