//! Truncated p-adic numbers `u * p^v + O(p^(v+N))`.
//!
//! Every operation reports the precision its operands justify and no more.

use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::padic::{residue_mod_pow, split_unit, strip_p, vp, Prime, Valuation};
use crate::rational::{big_pow, from_biguint, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ApproxError {
    #[error("operands use different primes ({0} and {1})")]
    PrimeMismatch(u64, u64),
    #[error("cannot invert a value indistinguishable from zero modulo p^{0}")]
    InvertZero(i64),
    #[error("precision must be at least 1")]
    ZeroPrecision,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    /// `unit * p^valuation + O(p^(valuation + precision))`, unit coprime to p.
    Unit { valuation: i64, unit: BigUint, precision: u32 },
    /// `O(p^abs_precision)`; `i64::MAX` marks an exact zero.
    Zero { abs_precision: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PAdicApprox {
    p: Prime,
    repr: Repr,
}

const EXACT: i64 = i64::MAX;

impl PAdicApprox {
    /// Reduces an exact rational to relative precision `precision`.
    pub fn reduce(q: &Rational, p: Prime, precision: u32) -> Result<Self, ApproxError> {
        if precision == 0 {
            return Err(ApproxError::ZeroPrecision);
        }
        let repr = match split_unit(q, p) {
            None => Repr::Zero { abs_precision: EXACT },
            Some((valuation, unit)) => {
                Repr::Unit { valuation, unit: residue_mod_pow(&unit, p, precision as u64), precision }
            }
        };
        Ok(PAdicApprox { p, repr })
    }

    /// `O(p^abs_precision)`.
    pub fn zero(p: Prime, abs_precision: i64) -> Self {
        PAdicApprox { p, repr: Repr::Zero { abs_precision } }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    /// `None` when the value is indistinguishable from zero.
    pub fn valuation(&self) -> Option<i64> {
        match &self.repr {
            Repr::Unit { valuation, .. } => Some(*valuation),
            Repr::Zero { .. } => None,
        }
    }

    /// Lower bound on the valuation that holds for every value in the ball.
    pub fn valuation_lower_bound(&self) -> Valuation {
        match &self.repr {
            Repr::Unit { valuation, .. } => Valuation::Finite(*valuation),
            Repr::Zero { abs_precision: EXACT } => Valuation::Infinity,
            Repr::Zero { abs_precision } => Valuation::Finite(*abs_precision),
        }
    }

    pub fn unit(&self) -> Option<&BigUint> {
        match &self.repr {
            Repr::Unit { unit, .. } => Some(unit),
            Repr::Zero { .. } => None,
        }
    }

    /// Number of known p-adic digits past the valuation.
    pub fn relative_precision(&self) -> Option<u32> {
        match &self.repr {
            Repr::Unit { precision, .. } => Some(*precision),
            Repr::Zero { .. } => None,
        }
    }

    /// The value is known modulo `p^absolute_precision`.
    pub fn absolute_precision(&self) -> i64 {
        match &self.repr {
            Repr::Unit { valuation, precision, .. } => valuation + *precision as i64,
            Repr::Zero { abs_precision } => *abs_precision,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero { .. })
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero { abs_precision: EXACT })
    }

    /// A rational inside the ball this value denotes.
    pub fn representative(&self) -> Rational {
        match &self.repr {
            Repr::Unit { valuation, unit, .. } => {
                Rational::from_integer(from_biguint(unit.clone())) * self.p.power(*valuation)
            }
            Repr::Zero { .. } => Rational::zero(),
        }
    }

    /// Whether the exact rational `q` lies in the ball.
    pub fn contains(&self, q: &Rational) -> bool {
        match vp(&(q - self.representative()), self.p) {
            Valuation::Infinity => true,
            Valuation::Finite(v) => self.absolute_precision() != EXACT && v >= self.absolute_precision(),
        }
    }

    fn check_prime(&self, other: &Self) -> Result<(), ApproxError> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(ApproxError::PrimeMismatch(self.p.get(), other.p.get()))
        }
    }

    fn modulus(&self, k: i64) -> BigUint {
        big_pow(self.p.get(), k as u64)
    }

    /// Normalises `s * p^shift` known modulo `p^abs`.
    fn from_scaled(p: Prime, s: BigUint, shift: i64, abs: i64) -> Self {
        if s.is_zero() {
            return PAdicApprox::zero(p, abs);
        }
        let (t, rest) = strip_p(&from_biguint(s), p);
        let valuation = shift + t;
        if valuation >= abs {
            return PAdicApprox::zero(p, abs);
        }
        let precision = (abs - valuation) as u32;
        let m = BigInt::from(big_pow(p.get(), precision as u64));
        let unit = rest.mod_floor(&m).to_biguint().expect("nonnegative");
        PAdicApprox { p, repr: Repr::Unit { valuation, unit, precision } }
    }

    pub fn add(&self, other: &Self) -> Result<Self, ApproxError> {
        self.check_prime(other)?;
        let abs = self.absolute_precision().min(other.absolute_precision());
        let terms: [(i64, &BigUint); 2] = match (&self.repr, &other.repr) {
            (Repr::Zero { .. }, Repr::Zero { .. }) => return Ok(PAdicApprox::zero(self.p, abs)),
            (Repr::Unit { .. }, Repr::Zero { .. }) => return Ok(self.truncate_abs(abs)),
            (Repr::Zero { .. }, Repr::Unit { .. }) => return Ok(other.truncate_abs(abs)),
            (Repr::Unit { valuation: va, unit: ua, .. }, Repr::Unit { valuation: vb, unit: ub, .. }) => {
                [(*va, ua), (*vb, ub)]
            }
        };
        let m = terms[0].0.min(terms[1].0);
        if m >= abs {
            return Ok(PAdicApprox::zero(self.p, abs));
        }
        let modulus = self.modulus(abs - m);
        let mut s = BigUint::zero();
        for (v, u) in terms {
            s += u * self.modulus(v - m);
        }
        Ok(Self::from_scaled(self.p, s % modulus, m, abs))
    }

    fn truncate_abs(&self, abs: i64) -> Self {
        match &self.repr {
            Repr::Unit { valuation, unit, .. } => Self::from_scaled(self.p, unit.clone(), *valuation, abs),
            Repr::Zero { abs_precision } => PAdicApprox::zero(self.p, (*abs_precision).min(abs)),
        }
    }

    pub fn neg(&self) -> Self {
        match &self.repr {
            Repr::Unit { valuation, unit, precision } => {
                let m = self.modulus(*precision as i64);
                PAdicApprox {
                    p: self.p,
                    repr: Repr::Unit { valuation: *valuation, unit: &m - unit, precision: *precision },
                }
            }
            Repr::Zero { .. } => self.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ApproxError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ApproxError> {
        self.check_prime(other)?;
        let out = match (&self.repr, &other.repr) {
            (
                Repr::Unit { valuation: va, unit: ua, precision: na },
                Repr::Unit { valuation: vb, unit: ub, precision: nb },
            ) => {
                let precision = (*na).min(*nb);
                let unit = (ua * ub) % self.modulus(precision as i64);
                Repr::Unit { valuation: va + vb, unit, precision }
            }
            (Repr::Zero { abs_precision: z }, Repr::Unit { valuation, .. })
            | (Repr::Unit { valuation, .. }, Repr::Zero { abs_precision: z }) => {
                Repr::Zero { abs_precision: z.saturating_add(*valuation) }
            }
            (Repr::Zero { abs_precision: za }, Repr::Zero { abs_precision: zb }) => {
                Repr::Zero { abs_precision: za.saturating_add(*zb) }
            }
        };
        Ok(PAdicApprox { p: self.p, repr: out })
    }

    pub fn inv(&self) -> Result<Self, ApproxError> {
        match &self.repr {
            Repr::Unit { valuation, unit, precision } => {
                let m = self.modulus(*precision as i64);
                let inv = unit.modinv(&m).expect("unit is coprime to p");
                Ok(PAdicApprox {
                    p: self.p,
                    repr: Repr::Unit { valuation: -valuation, unit: inv, precision: *precision },
                })
            }
            Repr::Zero { abs_precision } => Err(ApproxError::InvertZero(*abs_precision)),
        }
    }
}

impl fmt::Display for PAdicApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Unit { valuation, unit, .. } => {
                write!(f, "{unit}*{p}^{valuation} + O({p}^{abs})", p = self.p, abs = self.absolute_precision())
            }
            Repr::Zero { abs_precision: EXACT } => f.write_str("0"),
            Repr::Zero { abs_precision } => write!(f, "O({}^{abs_precision})", self.p),
        }
    }
}

/// Square root of `d` to relative precision `precision`, or `None` when `d`
/// is not a square in `Q_p`.
///
/// Branch: the unit part of the root reduces modulo `p` to the smallest
/// positive square root of the unit part of `d`.
pub fn hensel_sqrt(d: &Rational, p: Prime, precision: u32) -> Result<Option<PAdicApprox>, ApproxError> {
    if precision == 0 {
        return Err(ApproxError::ZeroPrecision);
    }
    let Some((v, unit)) = split_unit(d, p) else {
        return Ok(Some(PAdicApprox::zero(p, EXACT)));
    };
    if v.rem_euclid(2) == 1 {
        return Ok(None);
    }
    let u_mod_p = residue_mod_pow(&unit, p, 1).to_u64().expect("fits");
    let Some(r) = sqrt_mod_prime(u_mod_p, p.get()) else {
        return Ok(None);
    };
    let modulus = big_pow(p.get(), precision as u64);
    let target = residue_mod_pow(&unit, p, precision as u64);
    let two = BigUint::from(2u32);
    let mut x = BigUint::from(r);
    // Newton steps; each one doubles the number of correct digits.
    loop {
        let sq = (&x * &x) % &modulus;
        if sq == target {
            break;
        }
        let diff = (sq + &modulus - &target) % &modulus;
        let inv = ((&two * &x) % &modulus).modinv(&modulus).expect("2x is a unit");
        let step = (diff * inv) % &modulus;
        x = (x + &modulus - step) % &modulus;
    }
    Ok(Some(PAdicApprox { p, repr: Repr::Unit { valuation: v / 2, unit: x, precision } }))
}

/// Smallest `r` in `1..p` with `r^2 = n (mod p)`, for `n` a nonzero residue.
pub fn sqrt_mod_prime(n: u64, p: u64) -> Option<u64> {
    let n = n % p;
    if n == 0 {
        return None;
    }
    let pm = BigUint::from(p);
    let nb = BigUint::from(n);
    let legendre = nb.modpow(&BigUint::from((p - 1) / 2), &pm);
    if !legendre.is_one() {
        return None;
    }
    // Tonelli-Shanks.
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2u64;
    while BigUint::from(z).modpow(&BigUint::from((p - 1) / 2), &pm) != BigUint::from(p - 1) {
        z += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let powmod = |b: u64, e: u64| BigUint::from(b).modpow(&BigUint::from(e), &pm).to_u64().unwrap();
    let mut m = s;
    let mut c = powmod(z, q);
    let mut t = powmod(n, q);
    let mut r = powmod(n, q.div_ceil(2));
    while t != 1 {
        let mut i = 0u32;
        let mut tt = t;
        while tt != 1 {
            tt = mulmod(tt, tt);
            i += 1;
        }
        let b = powmod(c, 1u64 << (m - i - 1));
        m = i;
        c = mulmod(b, b);
        t = mulmod(t, c);
        r = mulmod(r, b);
    }
    Some(r.min(p - r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn identity_times_identity() {
        let one = PAdicApprox::reduce(&int(1), p(3), 5).unwrap();
        let sq = one.mul(&one).unwrap();
        assert_eq!(sq, one);
        assert_eq!(sq.absolute_precision(), 5);
    }

    #[test]
    fn reduce_minus_three() {
        let a = PAdicApprox::reduce(&int(-3), p(3), 4).unwrap();
        assert_eq!(a.valuation(), Some(1));
        assert_eq!(a.unit().unwrap() % 27u32, BigUint::from(26u32));
        assert_eq!(a.unit().unwrap(), &BigUint::from(80u32));
    }

    #[test]
    fn cancellation_is_detected_only_with_enough_precision() {
        // 24/73 + 3 = 243/73 has valuation 5.
        let x = PAdicApprox::reduce(&ratio(24, 73), p(3), 4).unwrap();
        let y = PAdicApprox::reduce(&int(-3), p(3), 4).unwrap();
        let d = x.sub(&y).unwrap();
        assert!(d.is_zero());
        assert_eq!(d.valuation_lower_bound(), Valuation::Finite(5));

        let x = PAdicApprox::reduce(&ratio(24, 73), p(3), 5).unwrap();
        let y = PAdicApprox::reduce(&int(-3), p(3), 5).unwrap();
        let d = x.sub(&y).unwrap();
        assert_eq!(d.valuation(), Some(5));
        assert_eq!(d.relative_precision(), Some(1));
        assert!(d.contains(&ratio(243, 73)));
    }

    #[test]
    fn inversion() {
        let x = PAdicApprox::reduce(&ratio(8, 3), p(3), 6).unwrap();
        let inv = x.inv().unwrap();
        assert_eq!(inv.valuation(), Some(1));
        assert!(inv.contains(&ratio(3, 8)));
        let z = PAdicApprox::zero(p(3), 4);
        assert_eq!(z.inv(), Err(ApproxError::InvertZero(4)));
    }

    #[test]
    fn mixed_primes_rejected() {
        let a = PAdicApprox::reduce(&int(1), p(3), 2).unwrap();
        let b = PAdicApprox::reduce(&int(1), p(5), 2).unwrap();
        assert_eq!(a.add(&b), Err(ApproxError::PrimeMismatch(3, 5)));
    }

    #[test]
    fn sqrt_examples() {
        let r = hensel_sqrt(&int(10), p(3), 3).unwrap().unwrap();
        assert_eq!(r.unit(), Some(&BigUint::from(19u32)));
        assert_eq!(hensel_sqrt(&int(2), p(5), 4).unwrap(), None);
        let one = hensel_sqrt(&int(1), p(7), 5).unwrap().unwrap();
        assert_eq!(one.unit(), Some(&BigUint::one()));
        // odd valuation
        assert_eq!(hensel_sqrt(&int(3), p(3), 4).unwrap(), None);
        // 9/4 has valuation 2 at p=3 and unit 1/4 whose root is 1/2 = 2 mod 3
        let r = hensel_sqrt(&ratio(9, 4), p(3), 4).unwrap().unwrap();
        assert_eq!(r.valuation(), Some(1));
        let sq = r.mul(&r).unwrap();
        assert!(sq.contains(&ratio(9, 4)));
    }

    #[test]
    fn tonelli_against_brute_force() {
        for &q in &[3u64, 5, 7, 11, 13, 17, 41, 97, 193] {
            for n in 1..q {
                let brute = (1..q).find(|r| r * r % q == n);
                assert_eq!(sqrt_mod_prime(n, q), brute, "p={q} n={n}");
            }
        }
    }
}
