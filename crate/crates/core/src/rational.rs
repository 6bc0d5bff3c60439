//! Exact rational scalars — the ground field for all symbolic work.
//!
//! `Rational` is an arbitrary-precision fraction kept permanently reduced
//! with a positive denominator, so structural equality is value equality.

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always reduced, denominator > 0.
pub type Rational = num_rational::BigRational;

/// Shorthand constructor from machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"`, or a plain decimal like `"0.75"` into an exact value.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in `{s}`")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in `{s}`")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let digits = frac_part.trim();
        if !digits.chars().all(|c| c.is_ascii_digit()) || digits.is_empty() {
            return Err(Error::Parse(format!("bad decimal `{s}`")));
        }
        let negative = int_part.trim_start().starts_with('-');
        let int_part = if int_part.trim().is_empty() || int_part.trim() == "-" {
            BigInt::zero()
        } else {
            int_part
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad decimal `{s}`")))?
        };
        let scale = BigInt::from(10u32).pow(digits.len() as u32);
        let frac: BigInt = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad decimal `{s}`")))?;
        let abs = int_part.abs() * &scale + frac;
        let signed = if negative { -abs } else { abs };
        return Ok(Rational::new(signed, scale));
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    Ok(Rational::from_integer(n))
}

/// Formats as `"p/q"` (or `"p"` when integral); inverse of [`parse_rational`].
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Nearest `f64`; rationals in this crate stay well inside the f64 range.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Out-of-range magnitude: fall back to the sign.
        match r.numer().sign() {
            Sign::Minus => f64::NEG_INFINITY,
            Sign::NoSign => 0.0,
            Sign::Plus => f64::INFINITY,
        }
    })
}

/// 10^-k as an exact rational, handy for tolerance thresholds.
pub fn pow10(k: i32) -> Rational {
    let base = BigInt::from(10u32);
    if k >= 0 {
        Rational::from_integer(base.pow(k as u32))
    } else {
        Rational::new(BigInt::one(), base.pow((-k) as u32))
    }
}

/// r^k for signed k (errors on 0^negative are the caller's problem; asserted).
pub fn pow_i(r: &Rational, k: i32) -> Rational {
    if k >= 0 {
        r.pow(k)
    } else {
        assert!(!r.is_zero(), "negative power of zero");
        r.pow(k)
    }
}
