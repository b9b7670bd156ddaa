//! Eventually periodic expansions and the quadratic polynomial they satisfy,
//! plus the palindromic continuant identities.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::cf::{eval_cf, CfError, ContinuantTable, Mat2};
use crate::padic::{is_polar, vp, Prime, Valuation};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuadraticError {
    #[error("the period is empty")]
    EmptyPeriod,
    #[error("the preperiod must start with a_0 = 0")]
    PreperiodMustStartWithZero,
    #[error("letter a_{index} = {value} does not satisfy |a|_p > 1")]
    LetterNotPolar { index: usize, value: Rational },
    #[error("a word of length 1 has no B_(n-1)/B_n quotient")]
    TooShort,
    #[error("a_0 must be 0 or satisfy |a_0|_p > 1")]
    BadLeadingQuotient,
    #[error("continued fraction evaluation failed: {0}")]
    Cf(#[from] CfError),
    #[error("B_n / B_(n-1) disagrees with the reversed word: {quotient} vs {reversed}")]
    ReversalMismatch { quotient: Rational, reversed: Rational },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadraticStatus {
    Nondegenerate,
    /// All three coefficients vanish.
    Degenerate,
}

/// `P(X) = a X^2 - b X + c` fixed by `[0, a_1, .., a_w, (a_{w+1} .. a_l)*]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticCertificate {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    /// `a_0 ..= a_w`.
    pub preperiod: Vec<Rational>,
    /// `a_{w+1} ..= a_l`.
    pub period: Vec<Rational>,
    pub status: QuadraticStatus,
}

impl QuadraticCertificate {
    pub fn eval(&self, x: &Rational) -> Rational {
        &self.a * x * x - &self.b * x + &self.c
    }

    /// `w` such that the preperiod is `a_0..a_w`.
    pub fn w(&self) -> usize {
        self.preperiod.len() - 1
    }

    /// `l` such that the first period ends at `a_l`.
    pub fn l(&self) -> usize {
        self.w() + self.period.len()
    }

    /// The first `len` letters of the infinite word.
    pub fn unroll(&self, len: usize) -> Vec<Rational> {
        let mut word = self.preperiod.clone();
        let mut i = 0;
        while word.len() < len {
            word.push(self.period[i % self.period.len()].clone());
            i += 1;
        }
        word
    }

    /// The Moebius map fixing the limit: `(A_l, A_{l-1}; B_l, B_{l-1})`
    /// times the adjugate of `(A_w, A_{w-1}; B_w, B_{w-1})`.
    pub fn fixed_point_matrix(&self) -> Mat2 {
        let word = self.unroll(self.l() + 1);
        let t = ContinuantTable::new(&word);
        let (w, l) = (self.w() as isize, self.l() as isize);
        Mat2([
            [t.a(l) * t.b(w - 1) - t.a(l - 1) * t.b(w), -(t.a(l) * t.a(w - 1)) + t.a(l - 1) * t.a(w)],
            [t.b(l) * t.b(w - 1) - t.b(l - 1) * t.b(w), -(t.b(l) * t.a(w - 1)) + t.b(l - 1) * t.a(w)],
        ])
    }
}

/// Coefficients of the quadratic satisfied by `[preperiod, period, period, ...]`.
pub fn periodic_to_quadratic(
    preperiod: &[Rational],
    period: &[Rational],
    p: Prime,
) -> Result<QuadraticCertificate, QuadraticError> {
    if period.is_empty() {
        return Err(QuadraticError::EmptyPeriod);
    }
    match preperiod.first() {
        Some(a0) if a0.is_zero() => {}
        _ => return Err(QuadraticError::PreperiodMustStartWithZero),
    }
    for (i, q) in preperiod.iter().chain(period).enumerate().skip(1) {
        if !is_polar(q, p) {
            return Err(QuadraticError::LetterNotPolar { index: i, value: q.clone() });
        }
    }
    let w = preperiod.len() as isize - 1;
    let l = w + period.len() as isize;
    let word: Vec<Rational> = preperiod.iter().chain(period).cloned().collect();
    let t = ContinuantTable::new(&word);
    let a = t.b(w - 1) * t.b(l) - t.b(w) * t.b(l - 1);
    let b = t.b(w - 1) * t.a(l) - t.b(w) * t.a(l - 1) + t.a(w - 1) * t.b(l) - t.a(w) * t.b(l - 1);
    let c = t.a(w - 1) * t.a(l) - t.a(w) * t.a(l - 1);
    let status = if a.is_zero() && b.is_zero() && c.is_zero() {
        QuadraticStatus::Degenerate
    } else {
        QuadraticStatus::Nondegenerate
    };
    Ok(QuadraticCertificate { a, b, c, preperiod: preperiod.to_vec(), period: period.to_vec(), status })
}

/// `v_p(P(x_N))` where `x_N` evaluates the word unrolled to at least `n`
/// letters (never fewer than preperiod plus one period).
pub fn verify_root(cert: &QuadraticCertificate, n: usize, p: Prime) -> Result<Valuation, QuadraticError> {
    let len = n.max(cert.l() + 1);
    let x = eval_cf(&cert.unroll(len))?;
    Ok(vp(&cert.eval(&x), p))
}

/// [`verify_root`] over a ladder of truncation lengths.
pub fn root_ladder(cert: &QuadraticCertificate, ladder: &[usize], p: Prime) -> Result<Vec<Valuation>, QuadraticError> {
    ladder.iter().map(|&n| verify_root(cert, n, p)).collect()
}

pub fn strictly_increasing(vals: &[Valuation]) -> bool {
    vals.windows(2).all(|w| match (w[0], w[1]) {
        (Valuation::Finite(x), Valuation::Finite(y)) => y > x,
        (Valuation::Finite(_), Valuation::Infinity) => true,
        (Valuation::Infinity, _) => false,
    })
}

/// Outcome of [`palindrome_symmetry`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryWitness {
    pub symmetric: bool,
    /// `A_m` of `[0, a_1, .., a_m]`.
    pub a_m: Rational,
    /// `B_{m-1}` of `[0, a_1, .., a_m]`.
    pub b_m_minus_1: Rational,
}

/// Whether the product of the letter matrices of `a_1..a_m` is symmetric,
/// i.e. `A_m = B_{m-1}` for `[0, a_1, .., a_m]`.
pub fn palindrome_symmetry(word: &[Rational]) -> SymmetryWitness {
    let m = Mat2::of_word(word);
    // (0 1; 1 0) * M = (A_m A_{m-1}; B_m B_{m-1}) for [0, a_1..a_m].
    let a_m = m.0[1][0].clone();
    let b_m_minus_1 = m.0[0][1].clone();
    SymmetryWitness { symmetric: m.is_symmetric(), a_m, b_m_minus_1 }
}

/// `B_{n-1}/B_n = [0, a_n, ..., a_1]` when `a_0 = 0`, and
/// `B_n/B_{n-1} = [a_n, ..., a_1]` when `|a_0|_p > 1`, checked exactly against
/// the reversed continued fraction. In the second case `A_n/A_{n-1} =
/// [a_n, ..., a_0]` is checked as well.
pub fn reversal_quotient(word: &[Rational], p: Prime) -> Result<Rational, QuadraticError> {
    if word.len() < 2 {
        return Err(QuadraticError::TooShort);
    }
    let n = word.len() as isize - 1;
    let t = ContinuantTable::new(word);
    let (quotient, reversed) = if word[0].is_zero() {
        let mut rev: Vec<Rational> = Vec::with_capacity(word.len());
        rev.push(Rational::zero());
        rev.extend(word[1..].iter().rev().cloned());
        (t.b(n - 1) / t.b(n), eval_cf(&rev)?)
    } else if is_polar(&word[0], p) {
        // B_n / B_{n-1} = [a_n, ..., a_1]; the full reversal gives A_n / A_{n-1}.
        if t.b(n - 1).is_zero() {
            return Err(QuadraticError::Cf(CfError::MalformedWord { index: n as usize - 1 }));
        }
        let full: Vec<Rational> = word.iter().rev().cloned().collect();
        if !t.a(n - 1).is_zero() {
            let a_ratio = t.a(n) / t.a(n - 1);
            let a_rev = eval_cf(&full)?;
            if a_ratio != a_rev {
                return Err(QuadraticError::ReversalMismatch { quotient: a_ratio, reversed: a_rev });
            }
        }
        (t.b(n) / t.b(n - 1), eval_cf(&full[..full.len() - 1])?)
    } else {
        return Err(QuadraticError::BadLeadingQuotient);
    };
    if quotient != reversed {
        return Err(QuadraticError::ReversalMismatch { quotient, reversed });
    }
    Ok(quotient)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn minus_three_polynomial() {
        let cert = periodic_to_quadratic(&[int(0)], &[ratio(8, 3)], p(3)).unwrap();
        assert_eq!((cert.a.clone(), cert.b.clone(), cert.c.clone()), (int(-1), ratio(8, 3), int(1)));
        assert_eq!(cert.eval(&int(-3)), int(0));
        assert_eq!(cert.status, QuadraticStatus::Nondegenerate);
        // The Moebius map fixes -3.
        assert_eq!(cert.fixed_point_matrix().apply(&int(-3)), Some(int(-3)));
    }

    #[test]
    fn single_letter_period_pattern() {
        for t in [ratio(1, 5), ratio(-7, 25), ratio(12, 5)] {
            let cert = periodic_to_quadratic(&[int(0)], core::slice::from_ref(&t), p(5)).unwrap();
            assert_eq!((cert.a, cert.b, cert.c), (int(-1), t, int(1)));
        }
    }

    #[test]
    fn convergents_approach_minus_three() {
        let cert = periodic_to_quadratic(&[int(0)], &[ratio(8, 3)], p(3)).unwrap();
        let vals = root_ladder(&cert, &[4, 8, 16], p(3)).unwrap();
        assert!(strictly_increasing(&vals), "{vals:?}");
    }

    #[test]
    fn preconditions() {
        assert_eq!(periodic_to_quadratic(&[int(0)], &[], p(3)), Err(QuadraticError::EmptyPeriod));
        assert_eq!(
            periodic_to_quadratic(&[int(1)], &[ratio(1, 3)], p(3)),
            Err(QuadraticError::PreperiodMustStartWithZero)
        );
        assert!(matches!(
            periodic_to_quadratic(&[int(0)], &[int(2)], p(3)),
            Err(QuadraticError::LetterNotPolar { index: 1, .. })
        ));
    }

    #[test]
    fn tampered_coefficient_stalls() {
        let mut cert = periodic_to_quadratic(&[int(0), ratio(1, 5)], &[ratio(-2, 5), ratio(7, 25)], p(5)).unwrap();
        cert.c += int(1);
        let vals = root_ladder(&cert, &[8, 16, 32], p(5)).unwrap();
        assert_eq!(vals[1], vals[2]);
    }

    #[test]
    fn symmetry_examples() {
        let x = ratio(2, 3);
        let y = ratio(-4, 9);
        assert!(palindrome_symmetry(&[x.clone(), y, x]).symmetric);
        let w = palindrome_symmetry(&[ratio(2, 3), ratio(1, 3)]);
        assert!(!w.symmetric);
        assert_eq!(w.a_m, ratio(1, 3));
        assert_eq!(w.b_m_minus_1, ratio(2, 3));
        let tm = [ratio(1, 3), ratio(2, 3), ratio(2, 3), ratio(1, 3)];
        assert!(palindrome_symmetry(&tm).symmetric);
    }

    #[test]
    fn reversal_examples() {
        let e = ratio(8, 3);
        let q = reversal_quotient(&[int(0), e.clone(), e.clone()], p(3)).unwrap();
        assert_eq!(q, ratio(24, 73));
        assert_eq!(reversal_quotient(&[ratio(1, 3)], p(3)), Err(QuadraticError::TooShort));
        assert_eq!(reversal_quotient(&[int(1), ratio(1, 3)], p(3)), Err(QuadraticError::BadLeadingQuotient));
        let q = reversal_quotient(&[ratio(1, 3), ratio(2, 3), ratio(-1, 9)], p(3)).unwrap();
        assert_eq!(q, eval_cf(&[ratio(-1, 9), ratio(2, 3)]).unwrap());
    }
}
