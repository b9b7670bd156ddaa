//! p-adic valuations, absolute values, Hensel digits and Weil heights over
//! exact rationals.
//!
//! Absolute values are carried as integer exponents of `p`; nothing here
//! touches floating point.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::{big_pow, pow_i64, Rational};

/// An odd prime `p >= 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u64);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PadicError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("empty digit window: lo = {lo} > hi = {hi}")]
    EmptyWindow { lo: i64, hi: i64 },
    #[error("{value} is not in Z[1/{p}]: denominator is not a power of {p}")]
    NotInZInvP { value: Rational, p: u64 },
}

impl Prime {
    pub fn new(p: u64) -> Result<Self, PadicError> {
        if is_odd_prime(p) {
            Ok(Prime(p))
        } else {
            Err(PadicError::NotOddPrime(p))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    pub fn as_bigint(self) -> BigInt {
        BigInt::from(self.0)
    }

    pub fn as_rational(self) -> Rational {
        Rational::from_integer(self.as_bigint())
    }

    /// `p^e` as an exact rational, negative exponents allowed.
    pub fn power(self, e: i64) -> Rational {
        pow_i64(&self.as_rational(), e)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// `v_p(q)`, with zero sent to [`Valuation::Infinity`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinity)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => f.write_str("inf"),
        }
    }
}

/// `|q|_p`, either `0` or `p^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PAdicNorm {
    Zero,
    Power(i64),
}

impl PAdicNorm {
    pub fn from_valuation(v: Valuation) -> Self {
        match v {
            Valuation::Finite(v) => PAdicNorm::Power(-v),
            Valuation::Infinity => PAdicNorm::Zero,
        }
    }

    pub fn to_rational(self, p: Prime) -> Rational {
        match self {
            PAdicNorm::Zero => Rational::zero(),
            PAdicNorm::Power(e) => p.power(e),
        }
    }
}

impl Ord for PAdicNorm {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (PAdicNorm::Zero, PAdicNorm::Zero) => Ordering::Equal,
            (PAdicNorm::Zero, _) => Ordering::Less,
            (_, PAdicNorm::Zero) => Ordering::Greater,
            (PAdicNorm::Power(a), PAdicNorm::Power(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for PAdicNorm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl core::ops::Mul for PAdicNorm {
    type Output = PAdicNorm;
    // p^a * p^b = p^(a+b)
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: PAdicNorm) -> PAdicNorm {
        match (self, rhs) {
            (PAdicNorm::Power(a), PAdicNorm::Power(b)) => PAdicNorm::Power(a + b),
            _ => PAdicNorm::Zero,
        }
    }
}

/// Strips every factor of `p` from a nonzero integer, returning the count.
pub(crate) fn strip_p(n: &BigInt, p: Prime) -> (i64, BigInt) {
    debug_assert!(!n.is_zero());
    let p = p.as_bigint();
    let mut count = 0i64;
    let mut rest = n.clone();
    loop {
        let (q, r) = rest.div_rem(&p);
        if !r.is_zero() {
            return (count, rest);
        }
        rest = q;
        count += 1;
    }
}

pub fn vp_int(n: &BigInt, p: Prime) -> Valuation {
    if n.is_zero() {
        Valuation::Infinity
    } else {
        Valuation::Finite(strip_p(n, p).0)
    }
}

pub fn vp(q: &Rational, p: Prime) -> Valuation {
    if q.is_zero() {
        return Valuation::Infinity;
    }
    // Reduced form: at most one of numerator and denominator carries p.
    let (vn, _) = strip_p(q.numer(), p);
    if vn > 0 {
        return Valuation::Finite(vn);
    }
    let (vd, _) = strip_p(q.denom(), p);
    Valuation::Finite(-vd)
}

pub fn abs_p(q: &Rational, p: Prime) -> PAdicNorm {
    PAdicNorm::from_valuation(vp(q, p))
}

/// Whether the denominator of `q` is a power of `p`.
pub fn in_z_inv_p(q: &Rational, p: Prime) -> bool {
    let (_, rest) = strip_p(q.denom(), p);
    rest.is_one()
}

/// `q = u * p^v` with `u` a p-adic unit; `None` for zero.
pub fn split_unit(q: &Rational, p: Prime) -> Option<(i64, Rational)> {
    let v = vp(q, p).finite()?;
    Some((v, q * p.power(-v)))
}

/// `q mod p^k` for `q` with `v_p(q) >= 0`, as the representative in `[0, p^k)`.
pub(crate) fn residue_mod_pow(q: &Rational, p: Prime, k: u64) -> BigUint {
    let modulus = BigInt::from(big_pow(p.get(), k));
    if k == 0 {
        return BigUint::zero();
    }
    let den = q.denom().mod_floor(&modulus);
    let inv = den.modinv(&modulus).expect("denominator must be a p-adic unit");
    let r = (q.numer().mod_floor(&modulus) * inv).mod_floor(&modulus);
    r.to_biguint().expect("mod_floor is nonnegative")
}

/// Hensel digits of `q` on positions `lo..=hi` together with the exact
/// contributions outside the window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitWindow {
    pub lo: i64,
    pub hi: i64,
    /// `digits[i]` is the coefficient of `p^(lo + i)`.
    pub digits: Vec<u64>,
    /// Sum of the digit terms at positions below `lo`.
    pub below: Rational,
    /// `q = below + sum(digits) + p^(hi + 1) * tail`, with `v_p(tail) >= 0`.
    pub tail: Rational,
}

impl DigitWindow {
    pub fn digit_sum(&self, p: Prime) -> Rational {
        let mut acc = Rational::zero();
        for (i, &d) in self.digits.iter().enumerate() {
            if d != 0 {
                acc += Rational::from_integer(BigInt::from(d)) * p.power(self.lo + i as i64);
            }
        }
        acc
    }

    /// Rebuilds `q` from the window; exact.
    pub fn reconstruct(&self, p: Prime) -> Rational {
        &self.below + self.digit_sum(p) + &self.tail * p.power(self.hi + 1)
    }
}

/// Canonical base-`p` digits `x_n in [0, p-1]` of `q` for `n = lo..=hi`.
///
/// Positions below `v_p(q)` hold the digit 0.
pub fn canonical_digits(q: &Rational, p: Prime, lo: i64, hi: i64) -> Result<Vec<u64>, PadicError> {
    digit_window(q, p, lo, hi).map(|w| w.digits)
}

pub fn digit_window(q: &Rational, p: Prime, lo: i64, hi: i64) -> Result<DigitWindow, PadicError> {
    if lo > hi {
        return Err(PadicError::EmptyWindow { lo, hi });
    }
    let start = match vp(q, p) {
        Valuation::Finite(v) => v.min(lo),
        Valuation::Infinity => lo,
    };
    let pr = p.as_rational();
    // y runs through q / p^n minus the digits already emitted.
    let mut y = q * p.power(-start);
    let mut below = Rational::zero();
    let mut digits = Vec::with_capacity((hi - lo + 1) as usize);
    for n in start..=hi {
        let d = residue_mod_pow(&y, p, 1).to_u64().expect("digit fits in u64");
        if n < lo {
            below += Rational::from_integer(BigInt::from(d)) * p.power(n);
        } else {
            digits.push(d);
        }
        y = (y - Rational::from_integer(BigInt::from(d))) / &pr;
    }
    Ok(DigitWindow { lo, hi, digits, below, tail: y })
}

/// Multiplicative Weil height of a point of `Z[1/p]^N`.
pub fn weil_height(z: &[Rational], p: Prime) -> Result<Rational, PadicError> {
    let mut arch = Rational::one();
    let mut nonarch = Rational::one();
    for zi in z {
        if !in_z_inv_p(zi, p) {
            return Err(PadicError::NotInZInvP { value: zi.clone(), p: p.get() });
        }
        let a = zi.abs();
        if a > arch {
            arch = a;
        }
        let n = abs_p(zi, p).to_rational(p);
        if n > nonarch {
            nonarch = n;
        }
    }
    Ok(arch * nonarch)
}

/// `true` when `|q|_p > 1`, i.e. `q` can serve as a partial quotient past `a_0`.
pub fn is_polar(q: &Rational, p: Prime) -> bool {
    matches!(vp(q, p), Valuation::Finite(v) if v < 0)
}
