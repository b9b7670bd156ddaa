//! Factor complexity, repetition/mirror witnesses and prefix scans.

mod detect;
mod strings;

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::{One, Zero};

pub use detect::{
    detect, detect_naive, detect_partial, outer_positions, witnesses_for, CProfile, Detection, Kind, PartialProfile,
    Witness,
};
pub use strings::z_array;

use crate::rational::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CombinatoricsError {
    #[error("factor length {n} exceeds prefix length {len}")]
    FactorTooLong { n: usize, len: usize },
    #[error("factor length must be positive")]
    ZeroLength,
    #[error("complexity constant must be positive")]
    NonPositiveConstant,
}

/// Number of distinct length-`n` factors of `prefix`; a lower bound for the
/// complexity of any infinite word extending it.
pub fn complexity<T: Ord>(prefix: &[T], n: usize) -> Result<usize, CombinatoricsError> {
    if n == 0 {
        return Err(CombinatoricsError::ZeroLength);
    }
    if n > prefix.len() {
        return Err(CombinatoricsError::FactorTooLong { n, len: prefix.len() });
    }
    Ok(prefix.windows(n).collect::<BTreeSet<_>>().len())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventualPeriod {
    pub preperiod: usize,
    pub period: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixScan {
    /// Largest `l` with `prefix[..l] == prefix[l..2l]` (0 if none).
    pub longest_square: usize,
    /// Every such `l`, increasing.
    pub square_lengths: Vec<usize>,
    /// Largest `l` with `prefix[..l]` a palindrome.
    pub longest_palindrome: usize,
    /// Minimal preperiod for each period `q <= len/3` whose periodic tail
    /// covers at least `3q` letters.
    pub eventual_periods: Vec<EventualPeriod>,
}

impl PrefixScan {
    pub fn looks_periodic(&self) -> bool {
        !self.eventual_periods.is_empty()
    }
}

pub fn scan_special_prefixes<T: Eq>(prefix: &[T]) -> PrefixScan {
    let len = prefix.len();
    let z = z_array(prefix);
    let square_lengths: Vec<usize> = (1..=len / 2).filter(|&l| z[l] >= l).collect();
    let longest_square = square_lengths.last().copied().unwrap_or(0);

    let longest_palindrome = strings::longest_palindromic_prefix(prefix);

    let mut eventual_periods = Vec::new();
    for q in 1..=len / 3 {
        // Smallest k with prefix[i] == prefix[i+q] for all i >= k.
        let preperiod = (0..len - q).rev().find(|&i| prefix[i] != prefix[i + q]).map_or(0, |i| i + 1);
        if len - preperiod >= 3 * q {
            eventual_periods.push(EventualPeriod { preperiod, period: q });
        }
    }
    PrefixScan { longest_square, square_lengths, longest_palindrome, eventual_periods }
}

/// Constant `3C + 1` of the repetition condition implied by complexity
/// `p(n) <= C n`.
pub fn spade_constant_from_complexity(c: &Rational) -> Result<Rational, CombinatoricsError> {
    if *c <= Rational::zero() {
        return Err(CombinatoricsError::NonPositiveConstant);
    }
    Ok(int(3) * c + Rational::one())
}
