//! Exact rationals and the `num/den` text form used at every boundary.

use alloc::format;
use alloc::string::String;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always stored reduced with a positive
/// denominator. Zero is `0/1`.
pub type Rational = BigRational;

/// Failure to read a rational string.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRationalError {
    #[error("empty rational string")]
    Empty,
    #[error("invalid integer `{0}`")]
    InvalidInteger(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("`{0}` is not in lowest terms with a positive denominator")]
    NotReduced(String),
}

/// Parses `num/den` (lowest terms, positive denominator) or a bare integer.
///
/// Decimal notation is deliberately not accepted.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let parse_int = |s: &str| -> Result<BigInt, ParseRationalError> {
        let s = s.trim();
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseRationalError::InvalidInteger(String::from(s)));
        }
        s.parse::<BigInt>().map_err(|_| ParseRationalError::InvalidInteger(String::from(s)))
    };
    match text.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(text)?)),
        Some((num, den)) => {
            let num = parse_int(num)?;
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(ParseRationalError::ZeroDenominator(String::from(text)));
            }
            if den.is_negative() || !num.gcd(&den).is_one() {
                return Err(ParseRationalError::NotReduced(String::from(text)));
            }
            Ok(Rational::new_raw(num, den))
        }
    }
}

/// Canonical `num/den` form; integers keep the `/1` so the format is uniform.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `base^exp` for a possibly negative exponent.
pub fn pow_i64(base: &Rational, exp: i64) -> Rational {
    let magnitude = exp.unsigned_abs();
    let mut acc = Rational::one();
    let mut sq = base.clone();
    let mut e = magnitude;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &sq;
        }
        e >>= 1;
        if e > 0 {
            sq = &sq * &sq;
        }
    }
    if exp < 0 {
        acc.recip()
    } else {
        acc
    }
}

pub fn big_pow(base: u64, exp: u64) -> BigUint {
    num_traits::pow::pow(BigUint::from(base), exp as usize)
}

/// Archimedean absolute value.
pub fn abs_inf(q: &Rational) -> Rational {
    q.abs()
}

/// Largest of `|q|_inf` over a slice, or `None` when empty.
pub fn max_abs<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Option<Rational> {
    values.into_iter().map(|q| q.abs()).max()
}

pub(crate) fn to_biguint(n: &BigInt) -> BigUint {
    n.magnitude().clone()
}

pub(crate) fn from_biguint(n: BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, n)
}

/// Exact `n`-th root of a nonnegative rational when both parts are perfect powers.
pub(crate) fn exact_nth_root(q: &Rational, n: u32) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let num = to_biguint(q.numer());
    let den = to_biguint(q.denom());
    let rn = num.nth_root(n);
    let rd = den.nth_root(n);
    let n = n as usize;
    if num_traits::pow::pow(rn.clone(), n) == num && num_traits::pow::pow(rd.clone(), n) == den {
        Some(Rational::new(from_biguint(rn), from_biguint(rd)))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_accepts_lowest_terms_and_integers() {
        assert_eq!(parse_rational("-1/3").unwrap(), ratio(-1, 3));
        assert_eq!(parse_rational("-3").unwrap(), int(-3));
        assert_eq!(parse_rational(" 24/73 ").unwrap(), ratio(24, 73));
        assert_eq!(parse_rational("0").unwrap(), int(0));
    }

    #[test]
    fn parse_rejects_non_canonical() {
        assert!(matches!(parse_rational("2/6"), Err(ParseRationalError::NotReduced(_))));
        assert!(matches!(parse_rational("1/-3"), Err(ParseRationalError::NotReduced(_))));
        assert!(matches!(parse_rational("1/0"), Err(ParseRationalError::ZeroDenominator(_))));
        assert!(matches!(parse_rational("0.5"), Err(ParseRationalError::InvalidInteger(_))));
        assert!(matches!(parse_rational(""), Err(ParseRationalError::Empty)));
    }

    #[test]
    fn format_is_uniform() {
        assert_eq!(format_rational(&int(-3)), "-3/1");
        assert_eq!(format_rational(&ratio(16, 6)), "8/3");
    }

    #[test]
    fn roots() {
        assert_eq!(exact_nth_root(&ratio(8, 27), 3), Some(ratio(2, 3)));
        assert_eq!(exact_nth_root(&ratio(9, 27), 3), None);
    }

    #[test]
    fn negative_powers() {
        assert_eq!(pow_i64(&ratio(2, 3), -2), ratio(9, 4));
        assert_eq!(pow_i64(&int(3), 0), int(1));
    }
}
