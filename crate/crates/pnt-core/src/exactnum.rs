//! Exact integer and rational arithmetic with controlled float export.
//!
//! Counting and succession structures are held exactly; floating point enters
//! only at the final conversion, so every approximation is a single rounding
//! layer whose error can be stated.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision nonnegative integer.
pub type Natural = BigUint;
/// Arbitrary-precision rational, always stored in lowest terms.
pub type Ratio = num_rational::BigRational;
/// IEEE double, the only inexact type in the crate.
pub type Real64 = f64;

/// 10^k as an exact integer.
pub fn pow10(k: u32) -> Natural {
    Natural::from(10u32).pow(k)
}

/// Natural logarithm of a positive integer. Relative error stays below 1e-12
/// for all inputs; the mantissa/exponent split avoids overflow for values far
/// beyond f64 range.
pub fn ln_natural(x: &Natural) -> Result<Real64> {
    if x.is_zero() {
        return Err(Error::Domain("ln(0) is undefined".into()));
    }
    let bits = x.bits();
    if bits <= 53 {
        return Ok(x.to_f64().expect("fits in f64").ln());
    }
    // keep the top 53 bits exactly, account for the shift as a multiple of ln 2
    let shift = bits - 53;
    let mantissa = (x >> shift).to_f64().expect("53-bit value");
    Ok(mantissa.ln() + shift as f64 * std::f64::consts::LN_2)
}

/// Natural logarithm of a positive rational.
pub fn ln_ratio(q: &Ratio) -> Result<Real64> {
    if !q.is_positive() {
        return Err(Error::Domain(format!("ln of non-positive value {q}")));
    }
    let n = ln_natural(q.numer().magnitude())?;
    let d = ln_natural(q.denom().magnitude())?;
    Ok(n - d)
}

/// Convert a rational to f64 without overflowing on large numerators or
/// denominators: both sides are truncated to 64 significant bits and the
/// dropped scale is restored as an exact power of two.
pub fn ratio_to_real(q: &Ratio) -> Real64 {
    if q.is_zero() {
        return 0.0;
    }
    let neg = q.numer().sign() == Sign::Minus;
    let n = q.numer().magnitude();
    let d = q.denom().magnitude();
    let ns = n.bits().saturating_sub(64);
    let ds = d.bits().saturating_sub(64);
    let nt = (n >> ns).to_f64().expect("64-bit value");
    let dt = (d >> ds).to_f64().expect("64-bit value");
    let v = nt / dt * 2f64.powi(ns as i32 - ds as i32);
    if neg {
        -v
    } else {
        v
    }
}

/// Build a ratio from unsigned parts.
pub fn ratio(numer: u64, denom: u64) -> Ratio {
    Ratio::new(BigInt::from(numer), BigInt::from(denom))
}

/// Ratio holding an exact integer value.
pub fn ratio_from_natural(n: Natural) -> Ratio {
    Ratio::from_integer(BigInt::from_biguint(Sign::Plus, n))
}

/// Parse a nonnegative integer given either as plain digits or in scientific
/// form `<mantissa>e<exponent>` (for example `1e12` or `25e3`).
pub fn parse_natural(s: &str) -> Result<Natural> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    if let Some((m, e)) = t.split_once(['e', 'E']) {
        let mantissa: Natural = m
            .parse()
            .map_err(|_| Error::Parse(format!("invalid number {t:?}")))?;
        let exp: u32 = e
            .parse()
            .map_err(|_| Error::Parse(format!("invalid number {t:?}")))?;
        Ok(mantissa * pow10(exp))
    } else {
        t.parse()
            .map_err(|_| Error::Parse(format!("invalid number {t:?}")))
    }
}

/// Parse a nonnegative rational written as `p/q` or as a bare integer.
pub fn parse_ratio(s: &str) -> Result<Ratio> {
    let t = s.trim();
    match t.split_once('/') {
        Some((p, q)) => {
            let numer = parse_natural(p)?;
            let denom = parse_natural(q)?;
            if denom.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {t:?}")));
            }
            Ok(Ratio::new(
                BigInt::from_biguint(Sign::Plus, numer),
                BigInt::from_biguint(Sign::Plus, denom),
            ))
        }
        None => Ok(ratio_from_natural(parse_natural(t)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, rel: f64) {
        let scale = b.abs().max(1e-300);
        assert!(
            (a - b).abs() / scale <= rel,
            "{a} vs {b} (rel {})",
            (a - b).abs() / scale
        );
    }

    #[test]
    #[allow(clippy::approx_constant)] // frozen expected values
    fn ln_small_integers() {
        close(ln_natural(&Natural::from(10u32)).unwrap(), 2.30258509299405, 1e-12);
        assert_eq!(ln_natural(&Natural::from(1u32)).unwrap(), 0.0);
    }

    #[test]
    fn ln_beyond_f64_mantissa() {
        close(ln_natural(&pow10(25)).unwrap(), 57.5646273248511, 1e-12);
    }

    #[test]
    fn ln_rejects_zero() {
        assert!(ln_natural(&Natural::zero()).is_err());
    }

    #[test]
    fn ln_ratio_values() {
        close(ln_ratio(&ratio(5, 3)).unwrap(), 0.510825623765991, 1e-12);
        close(ln_ratio(&ratio(13, 6)).unwrap(), 0.773189888233482, 1e-12);
        assert!(ln_ratio(&Ratio::zero()).is_err());
    }

    #[test]
    fn ln_is_additive_over_products() {
        let mut rng = crate::rng::SplitMix64::new(0xabcdef);
        for _ in 0..1000 {
            let a = Natural::from(rng.range(2, u64::MAX));
            let b = Natural::from(rng.range(2, u64::MAX));
            let lhs = ln_natural(&(&a * &b)).unwrap();
            let rhs = ln_natural(&a).unwrap() + ln_natural(&b).unwrap();
            assert!((lhs - rhs).abs() < 1e-11, "{a} * {b}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn ratio_to_real_handles_huge_parts() {
        close(ratio_to_real(&ratio(5, 3)), 5.0 / 3.0, 1e-15);
        let big = pow10(40);
        let q = Ratio::new(
            BigInt::from_biguint(Sign::Plus, &big * 7u32),
            BigInt::from_biguint(Sign::Plus, &big * 2u32),
        );
        close(ratio_to_real(&q), 3.5, 1e-15);
        assert_eq!(ratio_to_real(&Ratio::zero()), 0.0);
    }

    #[test]
    fn parse_natural_forms() {
        assert_eq!(parse_natural("137").unwrap(), Natural::from(137u32));
        assert_eq!(parse_natural("1e25").unwrap(), pow10(25));
        assert_eq!(parse_natural("25e2").unwrap(), Natural::from(2500u32));
        assert!(parse_natural("abc").is_err());
        assert!(parse_natural("-3").is_err());
        assert!(parse_natural("1e").is_err());
        assert!(parse_natural("").is_err());
    }

    #[test]
    fn parse_ratio_forms() {
        assert_eq!(parse_ratio("5/3").unwrap(), ratio(5, 3));
        assert_eq!(parse_ratio("7").unwrap(), ratio(7, 1));
        assert!(parse_ratio("5/0").is_err());
    }
}
