use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Symbol, WordError};
use crate::rational::Rational;

/// The quadratic irrational `(a + b sqrt(d)) / c`, with `d > 1` not a
/// square, `b != 0`, normalised to `c > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticIrrational {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl QuadraticIrrational {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self, WordError> {
        if c.is_zero() {
            return Err(WordError::InvalidSlope("zero denominator"));
        }
        if b.is_zero() {
            return Err(WordError::InvalidSlope("b = 0 gives a rational slope"));
        }
        if d <= BigInt::one() || d.sqrt().pow(2) == d {
            return Err(WordError::InvalidSlope("d must be a positive non-square"));
        }
        let (a, b, c) = if c.is_negative() { (-a, -b, -c) } else { (a, b, c) };
        Ok(QuadraticIrrational { a, b, c, d })
    }

    /// `(1 + sqrt 5) / 2`.
    pub fn golden_ratio() -> Self {
        Self::new(1.into(), 1.into(), 2.into(), 5.into()).expect("valid")
    }

    /// `(sqrt 5 - 1) / 2 = 1 / phi`.
    pub fn inverse_golden_ratio() -> Self {
        Self::new((-1).into(), 1.into(), 2.into(), 5.into()).expect("valid")
    }

    pub fn parts(&self) -> (&BigInt, &BigInt, &BigInt, &BigInt) {
        (&self.a, &self.b, &self.c, &self.d)
    }

    /// `floor(n * self + beta)`, exactly.
    pub fn floor_affine(&self, n: &BigInt, beta: &Rational) -> BigInt {
        let (r, s) = (beta.numer(), beta.denom());
        let x = n * &self.a * s + r * &self.c;
        let y = n * &self.b * s;
        let den = &self.c * s;
        floor_quadratic(&x, &y, &self.d, &den)
    }

    fn in_unit_interval(&self) -> bool {
        // 0 < a + b sqrt d < c
        sign_quadratic(&self.a, &self.b, &self.d) > 0 && sign_quadratic(&(&self.c - &self.a), &(-&self.b), &self.d) > 0
    }
}

/// Sign of `x + y sqrt(d)` for non-square `d`.
fn sign_quadratic(x: &BigInt, y: &BigInt, d: &BigInt) -> i32 {
    let sx = x.signum();
    let sy = y.signum();
    if sy.is_zero() {
        return if sx.is_zero() {
            0
        } else if sx.is_positive() {
            1
        } else {
            -1
        };
    }
    if sx.is_zero() || sx == sy {
        return if sy.is_positive() { 1 } else { -1 };
    }
    // Opposite signs: compare x^2 with y^2 d (never equal).
    let x_wins = x * x > y * y * d;
    match (x_wins, x.is_positive()) {
        (true, true) | (false, false) => 1,
        _ => -1,
    }
}

/// `floor((x + y sqrt(d)) / den)` for `den > 0` and non-square `d`.
fn floor_quadratic(x: &BigInt, y: &BigInt, d: &BigInt, den: &BigInt) -> BigInt {
    debug_assert!(den.is_positive());
    let fy = if y.is_zero() {
        BigInt::zero()
    } else {
        let root: BigInt = (y * y * d).sqrt();
        // y sqrt(d) is irrational, so its floor is root or -(root + 1).
        if y.is_positive() {
            root
        } else {
            -(root + BigInt::one())
        }
    };
    (x + fy).div_floor(den)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    Floor,
    Ceil,
}

/// The mechanical word with slope `alpha` in `(0, 1)` and intercept `beta`:
/// letter `a` when `round((n+1) alpha + beta) - round(n alpha + beta) = 0`,
/// `b` otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sturmian {
    slope: QuadraticIrrational,
    intercept: Rational,
    rounding: Rounding,
}

impl Sturmian {
    pub fn new(slope: QuadraticIrrational, intercept: Rational, rounding: Rounding) -> Result<Self, WordError> {
        if !slope.in_unit_interval() {
            return Err(WordError::InvalidSlope("slope must lie in (0, 1)"));
        }
        Ok(Sturmian { slope, intercept, rounding })
    }

    /// Characteristic word (`beta = 0`) of slope `1/phi`.
    pub fn golden() -> Self {
        Self::new(QuadraticIrrational::inverse_golden_ratio(), Rational::zero(), Rounding::Floor).expect("valid")
    }

    pub fn slope(&self) -> &QuadraticIrrational {
        &self.slope
    }

    pub fn intercept(&self) -> &Rational {
        &self.intercept
    }

    pub fn rounding(&self) -> Rounding {
        self.rounding
    }

    fn round(&self, n: &BigInt) -> BigInt {
        match self.rounding {
            Rounding::Floor => self.slope.floor_affine(n, &self.intercept),
            Rounding::Ceil => {
                // ceil(t) = -floor(-t), and -(n alpha + beta) = n (-alpha) + (-beta).
                let neg = QuadraticIrrational {
                    a: -&self.slope.a,
                    b: -&self.slope.b,
                    c: self.slope.c.clone(),
                    d: self.slope.d.clone(),
                };
                -neg.floor_affine(n, &-&self.intercept)
            }
        }
    }

    pub fn letter(&self, n: u64) -> Symbol {
        let n = BigInt::from(n);
        let diff = self.round(&(&n + 1)) - self.round(&n);
        if diff.is_zero() {
            'a'
        } else {
            'b'
        }
    }
}

/// `2 + floor(n phi) - floor((n+1) phi)` as `'0'` or `'1'`.
pub fn fibonacci_letter(n: u64) -> Symbol {
    let phi = QuadraticIrrational::golden_ratio();
    let zero = Rational::zero();
    let n = BigInt::from(n);
    let v = BigInt::from(2) + phi.floor_affine(&n, &zero) - phi.floor_affine(&(&n + 1), &zero);
    if v.is_zero() {
        '0'
    } else {
        '1'
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn floor_of_multiples_of_phi() {
        let phi = QuadraticIrrational::golden_ratio();
        let zero = Rational::zero();
        // floor(n phi) for n = 1..10
        let expected = [1, 3, 4, 6, 8, 9, 11, 12, 14, 16];
        for (i, e) in expected.iter().enumerate() {
            let n = BigInt::from(i as u64 + 1);
            assert_eq!(phi.floor_affine(&n, &zero), BigInt::from(*e));
        }
        // negative coefficient path: floor(-phi) = -2
        assert_eq!(phi.floor_affine(&BigInt::from(-1), &zero), BigInt::from(-2));
    }

    #[test]
    fn floor_against_float_far_from_boundaries() {
        let alpha = QuadraticIrrational::new(3.into(), (-1).into(), 7.into(), 2.into()).unwrap();
        let beta = ratio(1, 3);
        let af = (3.0 - 2f64.sqrt()) / 7.0;
        for n in -200i64..200 {
            let t = n as f64 * af + 1.0 / 3.0;
            if (t - t.round()).abs() > 1e-6 {
                assert_eq!(alpha.floor_affine(&BigInt::from(n), &beta), BigInt::from(t.floor() as i64));
            }
        }
    }

    #[test]
    fn slope_validation() {
        assert!(QuadraticIrrational::new(1.into(), 1.into(), 2.into(), 4.into()).is_err());
        assert!(QuadraticIrrational::new(1.into(), 0.into(), 2.into(), 5.into()).is_err());
        assert!(QuadraticIrrational::new(1.into(), 1.into(), 0.into(), 5.into()).is_err());
        let phi = QuadraticIrrational::golden_ratio();
        assert!(Sturmian::new(phi, Rational::zero(), Rounding::Floor).is_err());
        // normalised sign: (1 - sqrt 5) / -2 = 1/phi
        let s = QuadraticIrrational::new(1.into(), (-1).into(), (-2).into(), 5.into()).unwrap();
        assert_eq!(s, QuadraticIrrational::inverse_golden_ratio());
    }

    #[test]
    fn fibonacci_prefix() {
        let w: alloc::string::String = (1..=12).map(fibonacci_letter).collect();
        assert_eq!(w, "010010100100");
    }

    #[test]
    fn golden_sturmian_is_fibonacci_with_swapped_letters() {
        let s = Sturmian::golden();
        for n in 1..2000 {
            let swapped = if s.letter(n) == 'a' { '1' } else { '0' };
            assert_eq!(swapped, fibonacci_letter(n), "n = {n}");
        }
    }

    #[test]
    fn ceil_variant_with_zero_intercept_matches_floor_for_irrational_points() {
        let f = Sturmian::new(QuadraticIrrational::inverse_golden_ratio(), ratio(1, 5), Rounding::Floor).unwrap();
        let c = Sturmian::new(QuadraticIrrational::inverse_golden_ratio(), ratio(1, 5), Rounding::Ceil).unwrap();
        // n alpha + beta is never an integer for n >= 1, so ceil = floor + 1
        for n in 1..500 {
            assert_eq!(f.letter(n), c.letter(n));
        }
    }
}
