use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use super::CertifyError;
use crate::cf::continuants;
use crate::combinatorics::Kind;
use crate::padic::{vp, Prime};
use crate::rational::{exact_nth_root, int, Rational};

/// Exponents beyond this are rejected rather than expanded.
const MAX_EXPONENT: u32 = 1 << 20;

/// Grid denominator for certified rational upper bounds.
pub const GRID: u64 = 1_000_000;

fn small_exponent(e: &BigInt) -> Result<u32, CertifyError> {
    e.to_u32().filter(|&e| e <= MAX_EXPONENT).ok_or(CertifyError::ExponentTooLarge)
}

/// Exponent `t` with `k = floor(t log C / log p) + 1`.
pub fn k_multiplier(kind: Kind, c: &Rational) -> Rational {
    match kind {
        Kind::Spade => (int(6) * c + int(2)).max(int(3)),
        Kind::Club if c.is_zero() => int(1),
        Kind::Club => int(4) + int(6) * c,
    }
}

/// `base^exp` compared with `rhs`, for `base > 0`, `exp >= 0`, `rhs > 0`.
pub fn compare_power(base: &Rational, exp: &Rational, rhs: &Rational) -> Result<core::cmp::Ordering, CertifyError> {
    debug_assert!(base.is_positive() && !exp.is_negative() && rhs.is_positive());
    // (bn/bd)^(en/ed) vs rn/rd  <=>  bn^en rd^ed vs rn^ed bd^en
    let en = small_exponent(exp.numer())?;
    let ed = small_exponent(exp.denom())?;
    let lhs = Pow::pow(base.numer(), en) * Pow::pow(rhs.denom(), ed);
    let rhs = Pow::pow(rhs.numer(), ed) * Pow::pow(base.denom(), en);
    Ok(lhs.cmp(&rhs))
}

/// Largest `k0 >= 0` with `p^k0 <= C^t`, for `C > 1` and `t > 0`, by exact
/// comparison `p^(k0 td) Cd^tn <= Cn^tn`.
pub fn floor_log_power(p: Prime, c_inf: &Rational, t: &Rational) -> Result<u64, CertifyError> {
    let (tn, td) = (small_exponent(t.numer())?, small_exponent(t.denom())?);
    let cn = Pow::pow(c_inf.numer(), tn);
    let cd = Pow::pow(c_inf.denom(), tn);
    let pb = p.as_bigint();
    let fits = |k: u64| -> Result<bool, CertifyError> {
        let e = small_exponent(&(BigInt::from(k) * td))?;
        Ok(Pow::pow(&pb, e) * &cd <= cn)
    };
    let mut hi = 1u64;
    while fits(hi)? {
        hi *= 2;
    }
    // fits(0) holds because C^t > 1.
    let mut lo = 0u64;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if fits(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Least `k` such that letters with `|a_n|_p >= p^k` meet the exponent
/// hypothesis for a word with this condition and growth constant.
pub fn required_k(kind: Kind, p: Prime, c: &Rational, c_inf: &Rational) -> Result<u64, CertifyError> {
    if *c_inf <= Rational::one() {
        return Err(CertifyError::GrowthConstantTooSmall);
    }
    if c.is_negative() {
        return Err(CertifyError::NegativeConstant);
    }
    let t = k_multiplier(kind, c);
    Ok(floor_log_power(p, c_inf, &t)? + 1)
}

/// Indices `n` (1-based) where `x_n > c^n`.
fn violations(sizes: &[Rational], c: &Rational) -> Vec<usize> {
    let mut out = Vec::new();
    let mut pow = (BigInt::one(), BigInt::one());
    for (i, x) in sizes.iter().enumerate() {
        pow.0 *= c.numer();
        pow.1 *= c.denom();
        if x.numer() * &pow.1 > &pow.0 * x.denom() {
            out.push(i + 1);
        }
    }
    out
}

/// Least `C` on the grid `m / GRID` (or an exact root `x_n^(1/n)` when that
/// is smaller) with `x_n <= C^n` for all `n`; `upper` seeds the search.
fn least_certified(sizes: &[Rational], upper: &Rational) -> Rational {
    let d = BigInt::from(GRID);
    let at = |m: &BigInt| Rational::new(m.clone(), d.clone());
    let mut lo = d.clone(); // C = 1 is a lower bound for x_1 >= 1
    let mut hi = (upper * Rational::from_integer(d.clone())).ceil().to_integer();
    if violations(sizes, &at(&lo)).is_empty() {
        return Rational::one();
    }
    while !violations(sizes, &at(&hi)).is_empty() {
        hi *= 2;
    }
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi).div_floor(&BigInt::from(2));
        if violations(sizes, &at(&mid)).is_empty() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let mut best = at(&hi);
    for n in violations(sizes, &at(&lo)) {
        if let Some(r) = exact_nth_root(&sizes[n - 1], n as u32) {
            if r < best && violations(sizes, &r).is_empty() {
                best = r;
            }
        }
    }
    best
}

/// Smallest `m / GRID` (or the exact value when rational) that is at least
/// `(T + sqrt(T^2 + 4)) / 2`.
pub fn alphabet_growth_bound(t: &Rational) -> Rational {
    let disc = t * t + int(4);
    if let Some(root) = exact_nth_root(&disc, 2) {
        return (t + root) / int(2);
    }
    let d = Rational::from_integer(BigInt::from(GRID));
    // x >= (T + sqrt(disc))/2  <=>  2x - T >= 0 and (2x - T)^2 >= disc
    let ok = |m: &BigInt| {
        let x = Rational::from_integer(m.clone()) / &d;
        let y = int(2) * x - t;
        !y.is_negative() && &y * &y >= disc
    };
    let mut lo = (t * &d).floor().to_integer();
    let mut hi = ((t + int(1)) * &d).ceil().to_integer();
    debug_assert!(ok(&hi));
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi).div_floor(&BigInt::from(2));
        if ok(&mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Rational::from_integer(hi) / d
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthBounds {
    /// Continuants of `[0, a_1, ..., a_n]` for `n` in `1..=n_max`.
    pub n_max: usize,
    /// Least certified `C` with `max(|A_n|, |B_n|) <= C^n` on the range.
    pub observed_c_inf: Rational,
    /// `T = max |a_i|`.
    pub letter_bound: Rational,
    /// `min(ceil((T + sqrt(T^2 + 4)) / 2), T + 1)`, valid for every `n`.
    pub alphabet_c_inf: Rational,
    /// `max_n (-v_p(B_n)) / n`, so `|B_n|_p <= p^(e n)` on the range.
    pub c_p_exponent: Rational,
    /// `max_i (-v_p(a_i))`: `|B_n|_p <= (p^e)^n` for every `n`.
    pub letter_p_exponent: i64,
    /// Every `n` in range satisfied both archimedean bounds when checked
    /// by exact powering.
    pub verified: bool,
}

impl GrowthBounds {
    /// The constant used for the exponent requirement: the alphabet bound,
    /// which holds for all `n`.
    pub fn c_inf(&self) -> &Rational {
        &self.alphabet_c_inf
    }
}

/// Growth data for the word `a_1 .. a_L` (so `alpha = [0, a_1, a_2, ...]`).
pub fn growth_bounds(letters: &[Rational], p: Prime) -> Result<GrowthBounds, CertifyError> {
    if letters.is_empty() {
        return Err(CertifyError::EmptyWord);
    }
    let mut word = Vec::with_capacity(letters.len() + 1);
    word.push(Rational::zero());
    word.extend_from_slice(letters);
    let states = continuants(&word);

    let letter_bound = letters.iter().map(|q| q.abs()).max().expect("nonempty");
    let alphabet_c_inf = alphabet_growth_bound(&letter_bound).min(&letter_bound + int(1));

    let mut sizes = Vec::with_capacity(letters.len());
    let mut c_p_exponent = Rational::zero();
    for s in states.iter().skip(1) {
        if let Some(vb) = vp(&s.b, p).finite() {
            let e = Rational::new(BigInt::from(-vb), BigInt::from(s.n));
            if e > c_p_exponent {
                c_p_exponent = e;
            }
        }
        sizes.push(s.a.abs().max(s.b.abs()));
    }
    let alphabet_ok = violations(&sizes, &alphabet_c_inf).is_empty();
    let observed = least_certified(&sizes, &(&letter_bound + int(1)));
    let verified = alphabet_ok && violations(&sizes, &observed).is_empty();
    let letter_p_exponent = letters.iter().filter_map(|q| vp(q, p).finite()).map(|v| -v).max().unwrap_or(0);
    Ok(GrowthBounds {
        n_max: letters.len(),
        observed_c_inf: observed,
        letter_bound,
        alphabet_c_inf,
        c_p_exponent,
        letter_p_exponent,
        verified,
    })
}
