//! Scalar field abstraction.
//!
//! Everything in this crate is written against [`Scalar`]. The exact
//! instantiation [`Rational`] is the one the verification predicates are meant
//! for: zero tests on floating point scalars are only as good as the rounding
//! that produced them.

use std::fmt::Debug;
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// A field element usable as a polynomial coefficient.
pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static {
    fn from_i64(n: i64) -> Self;

    fn from_usize(n: usize) -> Self {
        Self::from_i64(i64::try_from(n).expect("index fits in i64"))
    }
}

impl Scalar for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }
}

impl Scalar for f32 {
    fn from_i64(n: i64) -> Self {
        n as f32
    }
}

impl Scalar for Rational {
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
}

/// Builds `num/den` exactly. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `(-1)^k` in any scalar type.
pub fn sign_pow<T: Scalar>(k: usize) -> T {
    if k.is_multiple_of(2) {
        T::one()
    } else {
        -T::one()
    }
}

/// Canonical text form: `"num/den"` in lowest terms, or just `"num"` when the
/// denominator is one. The sign always sits on the numerator.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Parses `"num/den"` or `"num"` (optional leading sign, decimal digits only).
///
/// Non-canonical input such as `"2/4"` is accepted and reduced.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Parse {
        location: String::new(),
        message: format!("invalid rational {text:?}"),
    };
    let int_part = |p: &str| -> Result<BigInt> {
        let digits = p.strip_prefix(['-', '+']).unwrap_or(p);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        BigInt::from_str(p.strip_prefix('+').unwrap_or(p)).map_err(|_| bad())
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let den = int_part(d)?;
            if den.is_zero() || d.starts_with(['-', '+']) {
                return Err(bad());
            }
            Ok(Rational::new(int_part(n)?, den))
        }
        None => Ok(Rational::from_integer(int_part(s)?)),
    }
}

/// Decimal rendering with `digits` significant digits, rounded half away from zero.
/// Display only.
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let digits = digits.max(1);
    let negative = r.is_negative();
    let num = r.numer().abs();
    let den = r.denom().clone();

    // exponent e such that 10^e <= |r| < 10^(e+1)
    let mut e = num.to_string().len() as i64 - den.to_string().len() as i64;
    let ten = BigInt::from(10u32);
    let pow10 = |k: i64| -> BigInt { num_traits::pow(ten.clone(), k.unsigned_abs() as usize) };
    let ge = |e: i64| -> bool {
        // |r| >= 10^e
        if e >= 0 {
            num >= &den * pow10(e)
        } else {
            &num * pow10(e) >= den
        }
    };
    while !ge(e) {
        e -= 1;
    }
    while ge(e + 1) {
        e += 1;
    }

    // scaled = round(|r| * 10^(digits-1-e))
    let shift = digits as i64 - 1 - e;
    let (n, d) = if shift >= 0 {
        (&num * pow10(shift), den.clone())
    } else {
        (num.clone(), &den * pow10(shift))
    };
    let (q, rem) = n.div_rem(&d);
    let mut scaled = if rem * 2 >= d { q + 1 } else { q };
    let mut shift = shift;
    if scaled.to_string().len() > digits {
        scaled /= 10;
        shift -= 1;
    }

    let mut body = scaled.to_string();
    let text = if shift <= 0 {
        body.push_str(&"0".repeat((-shift) as usize));
        body
    } else {
        let shift = shift as usize;
        if body.len() <= shift {
            format!("0.{}{}", "0".repeat(shift - body.len()), body)
        } else {
            let (a, b) = body.split_at(body.len() - shift);
            format!("{a}.{b}")
        }
    };
    if negative {
        format!("-{text}")
    } else {
        text
    }
}

/// Least common multiple of the denominators, for clearing fractions.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_strings() {
        assert_eq!(format_rational(&ratio(6, -8)), "-3/4");
        assert_eq!(format_rational(&int(1)), "1");
        assert_eq!(format_rational(&ratio(0, 5)), "0");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/8").unwrap(), ratio(3, 8));
        assert_eq!(parse_rational("-2/4").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert_eq!(parse_rational("+5").unwrap(), int(5));
        for bad in ["", "1/0", "a/2", "1.5", "1/-2", "--1", "/3"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn decimals() {
        assert_eq!(to_decimal(&ratio(1, 3), 5), "0.33333");
        assert_eq!(to_decimal(&ratio(2, 3), 3), "0.667");
        assert_eq!(to_decimal(&ratio(-5, 8), 30), "-0.625000000000000000000000000000");
        assert_eq!(to_decimal(&int(1234), 2), "1200");
        assert_eq!(to_decimal(&ratio(999, 1000), 2), "1.0");
        assert_eq!(to_decimal(&ratio(1, 1000), 3), "0.00100");
    }

    #[test]
    fn sign_helpers() {
        assert_eq!(sign_pow::<Rational>(3), int(-1));
        assert!(is_integer(&int(4)));
        assert_eq!(common_denominator(&[ratio(1, 4), ratio(1, 6)]), BigInt::from(12));
    }
}
