//! Numeric flag values: decimals or exact rationals such as `2/3`.

use anyhow::{anyhow, bail, Result};
use num_rational::Ratio;

/// Parses a decimal (`0.25`, `1e-3`) or an exact rational (`2/3`, `-1/2`).
///
/// Rationals are reduced in integer arithmetic and converted by one
/// correctly rounded division, so `2/3` and `4/6` give the same bits.
pub fn parse_number(text: &str) -> Result<f64> {
    let text = text.trim();
    if text.contains('/') {
        let r: Ratio<i64> = text
            .parse()
            .map_err(|e| anyhow!("`{text}` is not a rational number: {e}"))?;
        let (n, d) = (*r.numer(), *r.denom());
        if n.unsigned_abs() > 1 << 53 || d.unsigned_abs() > 1 << 53 {
            bail!("`{text}` has a numerator or denominator beyond 2^53");
        }
        return Ok(n as f64 / d as f64);
    }
    let v: f64 = text.parse().map_err(|e| anyhow!("`{text}` is not a number: {e}"))?;
    if !v.is_finite() {
        bail!("`{text}` is not finite");
    }
    Ok(v)
}

/// Clap value parser wrapper.
pub fn number(text: &str) -> Result<f64, String> {
    parse_number(text).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_exact() {
        assert_eq!(parse_number("2/3").unwrap(), 2.0 / 3.0);
        assert_eq!(parse_number("4/6").unwrap(), 2.0 / 3.0);
        assert_eq!(parse_number("-1/2").unwrap(), -0.5);
        assert_eq!(parse_number("3").unwrap(), 3.0);
    }

    #[test]
    fn decimals_and_errors() {
        assert_eq!(parse_number("1e-3").unwrap(), 1e-3);
        assert_eq!(parse_number(" 0.25 ").unwrap(), 0.25);
        assert!(parse_number("1/0").is_err());
        assert!(parse_number("abc").is_err());
        assert!(parse_number("inf").is_err());
    }
}
