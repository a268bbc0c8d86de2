use num::{BigInt, BigRational, One, Signed, Zero};
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer `{0}`")]
    BadInteger(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses a rational from the wire form `"p/q"` or `"p"`.
pub fn parse_rational(text: &str) -> Result<BigRational, RationalParseError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(RationalParseError::Empty);
    }
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let numer =
        BigInt::from_str(num).map_err(|_| RationalParseError::BadInteger(num.to_string()))?;
    let denom = match den {
        Some(d) => {
            BigInt::from_str(d).map_err(|_| RationalParseError::BadInteger(d.to_string()))?
        }
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(RationalParseError::ZeroDenominator(text.to_string()));
    }
    Ok(BigRational::new(numer, denom))
}

/// Renders a rational as `"p/q"`, or `"p"` when the denominator is 1.
pub fn format_rational(value: &BigRational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else if value.denom().is_negative() {
        // BigRational keeps denominators positive, but normalize anyway.
        format!("{}/{}", -value.numer(), -value.denom())
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}
