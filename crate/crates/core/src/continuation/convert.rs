//! Conversions between exact rationals, literals and `rug` numbers.

use num_rational::BigRational;
use rug::{Complex, Float, Integer, Rational};

use crate::error::{HsumError, Result};

pub fn rational_to_float(q: &BigRational, prec: u32) -> Float {
    let num = Integer::from_str_radix(&q.numer().to_str_radix(16), 16).expect("hex integer");
    let den = Integer::from_str_radix(&q.denom().to_str_radix(16), 16).expect("hex integer");
    Float::with_val(prec, Rational::from((num, den)))
}

/// Parses `"a"`, `"a+bi"`, `"a-bi"`, `"bi"` (with `i` or `j`) into a complex
/// number at `prec` bits.
pub fn parse_complex(text: &str, prec: u32) -> Result<Complex> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || HsumError::Syntax {
        position: 0,
        message: format!("cannot parse complex number {text:?}"),
    };
    if s.is_empty() {
        return Err(bad());
    }
    let parse_real = |t: &str| -> Result<Float> {
        let parsed = Float::parse(t).map_err(|_| bad())?;
        Ok(Float::with_val(prec, parsed))
    };
    if let Some(body) = s.strip_suffix('i').or_else(|| s.strip_suffix('j')) {
        // split at the last sign that is not part of an exponent
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
                split = Some(k);
                break;
            }
        }
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => "1",
            "-" => "-1",
            other => other,
        };
        Ok(Complex::with_val(prec, (parse_real(re)?, parse_real(im)?)))
    } else {
        Ok(Complex::with_val(prec, (parse_real(&s)?, 0)))
    }
}

/// `a+bi` with `digits` significant digits in each part.
pub fn format_complex(z: &Complex, digits: usize) -> String {
    let re = z.real().to_string_radix(10, Some(digits));
    let im = z.imag();
    let (sign, mag) = if im.is_sign_negative() {
        ("-", Float::with_val(im.prec(), -im))
    } else {
        ("+", im.clone())
    };
    format!("{re}{sign}{}i", mag.to_string_radix(10, Some(digits)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        let z = parse_complex("0.3+0.7i", 64).unwrap();
        assert!((z.real().to_f64() - 0.3).abs() < 1e-15);
        assert!((z.imag().to_f64() - 0.7).abs() < 1e-15);
        let z = parse_complex("-1", 64).unwrap();
        assert_eq!(z.real().to_f64(), -1.0);
        assert_eq!(z.imag().to_f64(), 0.0);
        let z = parse_complex("-2.5e-1-3i", 64).unwrap();
        assert_eq!(z.real().to_f64(), -0.25);
        assert_eq!(z.imag().to_f64(), -3.0);
        let z = parse_complex("-i", 64).unwrap();
        assert_eq!(z.imag().to_f64(), -1.0);
        let z = parse_complex("1e-3+2e+1i", 64).unwrap();
        assert_eq!(z.imag().to_f64(), 20.0);
        assert!(parse_complex("abc", 64).is_err());
        assert!(parse_complex("", 64).is_err());
    }

    #[test]
    fn rationals_convert() {
        let q = BigRational::new((-7).into(), 4.into());
        assert_eq!(rational_to_float(&q, 64).to_f64(), -1.75);
    }
}
