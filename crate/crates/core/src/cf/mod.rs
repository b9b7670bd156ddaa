//! The continued fraction algorithm `gamma_{n+1} = 1 / (gamma_n - s(gamma_n))`
//! over exact rationals, continuants, and evaluation of finite expansions.

mod identities;

pub use identities::{verify_identities, IdentityCheck, IdentityKind, IdentityReport};

use alloc::vec::Vec;
use core::ops::Mul;

use num_traits::{One, Zero};

use crate::floor::FloorFunction;
use crate::padic::Prime;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CfError {
    #[error("empty word")]
    EmptyWord,
    #[error("zero denominator while evaluating at index {index}")]
    MalformedWord { index: usize },
    #[error("degenerate tail: gamma * B_(k-1) + B_(k-2) = 0")]
    DegenerateTail,
    #[error("max_terms must be at least 1")]
    NoTerms,
}

/// The trajectory of one run of the algorithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionRecord {
    pub floor: FloorFunction,
    pub alpha: Rational,
    pub partial_quotients: Vec<Rational>,
    /// `gamma_0 ..= gamma_n`, aligned with `partial_quotients`.
    pub complete_quotients: Vec<Rational>,
    pub terminated: bool,
    pub truncated: bool,
}

impl ExpansionRecord {
    pub fn prime(&self) -> Prime {
        self.floor.prime()
    }

    pub fn len(&self) -> usize {
        self.partial_quotients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partial_quotients.is_empty()
    }

    /// `gamma_{n+1}` after the last recorded step, if the run was truncated.
    pub fn next_complete_quotient(&self) -> Option<Rational> {
        if self.terminated {
            return None;
        }
        let n = self.len().checked_sub(1)?;
        let d = &self.complete_quotients[n] - &self.partial_quotients[n];
        (!d.is_zero()).then(|| d.recip())
    }
}

/// Runs the algorithm on `alpha` for at most `max_terms` partial quotients.
pub fn expand(alpha: &Rational, s: &FloorFunction, max_terms: usize) -> Result<ExpansionRecord, CfError> {
    if max_terms == 0 {
        return Err(CfError::NoTerms);
    }
    let mut a = Vec::new();
    let mut gammas = Vec::new();
    let mut gamma = alpha.clone();
    let mut terminated = false;
    for _ in 0..max_terms {
        let an = s.apply(&gamma);
        let rest = &gamma - &an;
        a.push(an);
        gammas.push(gamma);
        if rest.is_zero() {
            terminated = true;
            break;
        }
        gamma = rest.recip();
    }
    Ok(ExpansionRecord {
        floor: s.clone(),
        alpha: alpha.clone(),
        partial_quotients: a,
        complete_quotients: gammas,
        terminated,
        truncated: !terminated,
    })
}

/// `(A_{n-1}, A_n, B_{n-1}, B_n)` at index `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuantState {
    pub n: usize,
    pub a_prev: Rational,
    pub a: Rational,
    pub b_prev: Rational,
    pub b: Rational,
}

impl ContinuantState {
    /// `A_n B_{n-1} - B_n A_{n-1}`, which equals `(-1)^(n+1)`.
    pub fn determinant(&self) -> Rational {
        &self.a * &self.b_prev - &self.b * &self.a_prev
    }

    pub fn convergent(&self) -> Option<Rational> {
        (!self.b.is_zero()).then(|| &self.a / &self.b)
    }

    pub fn matrix(&self) -> Mat2 {
        Mat2([[self.a.clone(), self.a_prev.clone()], [self.b.clone(), self.b_prev.clone()]])
    }
}

/// Continuants with `A_{-1} = 1, A_0 = a_0, B_{-1} = 0, B_0 = 1`.
pub fn continuants(word: &[Rational]) -> Vec<ContinuantState> {
    let mut out: Vec<ContinuantState> = Vec::with_capacity(word.len());
    let (mut a_prev, mut b_prev) = (Rational::one(), Rational::zero());
    let (mut a_cur, mut b_cur) = (Rational::zero(), Rational::one());
    for (n, q) in word.iter().enumerate() {
        let (a_next, b_next) =
            if n == 0 { (q.clone(), Rational::one()) } else { (q * &a_cur + &a_prev, q * &b_cur + &b_prev) };
        if n > 0 {
            a_prev = a_cur;
            b_prev = b_cur;
        }
        a_cur = a_next;
        b_cur = b_next;
        out.push(ContinuantState {
            n,
            a_prev: a_prev.clone(),
            a: a_cur.clone(),
            b_prev: b_prev.clone(),
            b: b_cur.clone(),
        });
    }
    out
}

/// `A_k` and `B_k` for `k >= -2`, following the matrix convention
/// `A_{-2} = 0, B_{-2} = 1`.
#[derive(Debug, Clone)]
pub struct ContinuantTable {
    a: Vec<Rational>,
    b: Vec<Rational>,
}

impl ContinuantTable {
    pub fn new(word: &[Rational]) -> Self {
        let mut a = Vec::with_capacity(word.len() + 2);
        let mut b = Vec::with_capacity(word.len() + 2);
        a.push(Rational::zero());
        a.push(Rational::one());
        b.push(Rational::one());
        b.push(Rational::zero());
        for q in word {
            let k = a.len();
            a.push(q * &a[k - 1] + &a[k - 2]);
            b.push(q * &b[k - 1] + &b[k - 2]);
        }
        ContinuantTable { a, b }
    }

    /// Number of letters the table was built from.
    pub fn len(&self) -> usize {
        self.a.len() - 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `A_k` for `-2 <= k < len`.
    pub fn a(&self, k: isize) -> &Rational {
        &self.a[(k + 2) as usize]
    }

    pub fn b(&self, k: isize) -> &Rational {
        &self.b[(k + 2) as usize]
    }
}

/// A 2x2 matrix over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat2(pub [[Rational; 2]; 2]);

impl Mat2 {
    pub fn identity() -> Self {
        Mat2([[Rational::one(), Rational::zero()], [Rational::zero(), Rational::one()]])
    }

    /// `(a 1; 1 0)`.
    pub fn letter(a: &Rational) -> Self {
        Mat2([[a.clone(), Rational::one()], [Rational::one(), Rational::zero()]])
    }

    /// Product of the letter matrices, `(A_n A_{n-1}; B_n B_{n-1})`.
    pub fn of_word(word: &[Rational]) -> Self {
        word.iter().fold(Mat2::identity(), |acc, q| &acc * &Mat2::letter(q))
    }

    pub fn is_symmetric(&self) -> bool {
        self.0[0][1] == self.0[1][0]
    }

    pub fn determinant(&self) -> Rational {
        &self.0[0][0] * &self.0[1][1] - &self.0[0][1] * &self.0[1][0]
    }

    /// Image of `x` under the Moebius map `(m00 x + m01) / (m10 x + m11)`.
    pub fn apply(&self, x: &Rational) -> Option<Rational> {
        let den = &self.0[1][0] * x + &self.0[1][1];
        (!den.is_zero()).then(|| (&self.0[0][0] * x + &self.0[0][1]) / den)
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: &Mat2) -> Mat2 {
        let m = &self.0;
        let r = &rhs.0;
        Mat2([
            [&m[0][0] * &r[0][0] + &m[0][1] * &r[1][0], &m[0][0] * &r[0][1] + &m[0][1] * &r[1][1]],
            [&m[1][0] * &r[0][0] + &m[1][1] * &r[1][0], &m[1][0] * &r[0][1] + &m[1][1] * &r[1][1]],
        ])
    }
}

/// `[a_0, ..., a_n]` by backward evaluation, cross-checked against `A_n / B_n`.
pub fn eval_cf(word: &[Rational]) -> Result<Rational, CfError> {
    let (last, init) = word.split_last().ok_or(CfError::EmptyWord)?;
    let mut x = last.clone();
    for (i, q) in init.iter().enumerate().rev() {
        if x.is_zero() {
            return Err(CfError::MalformedWord { index: i + 1 });
        }
        x = q + x.recip();
    }
    let table = ContinuantTable::new(word);
    let n = word.len() as isize - 1;
    if table.b(n).is_zero() {
        return Err(CfError::MalformedWord { index: word.len() - 1 });
    }
    debug_assert_eq!(x, table.a(n) / table.b(n));
    Ok(x)
}

/// `alpha = (gamma A_{k-1} + A_{k-2}) / (gamma B_{k-1} + B_{k-2})` for the
/// prefix `a_0..a_{k-1}`.
pub fn tail_reconstruct(prefix: &[Rational], gamma: &Rational) -> Result<Rational, CfError> {
    let table = ContinuantTable::new(prefix);
    let k = prefix.len() as isize;
    let den = gamma * table.b(k - 1) + table.b(k - 2);
    if den.is_zero() {
        return Err(CfError::DegenerateTail);
    }
    Ok((gamma * table.a(k - 1) + table.a(k - 2)) / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn expand_examples() {
        let rec = expand(&int(0), &FloorFunction::ruban(p(3)), 10).unwrap();
        assert_eq!(rec.partial_quotients, [int(0)]);
        assert!(rec.terminated && !rec.truncated);

        let rec = expand(&int(-3), &FloorFunction::browkin(p(3)), 10).unwrap();
        assert_eq!(rec.partial_quotients, [int(0), ratio(-1, 3)]);
        assert!(rec.terminated);

        let rec = expand(&int(-3), &FloorFunction::ruban(p(3)), 5).unwrap();
        let e = ratio(8, 3);
        assert_eq!(rec.partial_quotients, [int(0), e.clone(), e.clone(), e.clone(), e]);
        assert!(rec.truncated && !rec.terminated);
        assert_eq!(rec.complete_quotients[1], ratio(-1, 3));
        assert_eq!(rec.next_complete_quotient(), Some(ratio(-1, 3)));
    }

    #[test]
    fn expand_rejects_zero_terms() {
        assert_eq!(expand(&int(1), &FloorFunction::ruban(p(3)), 0), Err(CfError::NoTerms));
    }

    #[test]
    fn continuant_examples() {
        let c = continuants(&[int(0), ratio(8, 3), ratio(8, 3)]);
        let a: Vec<_> = c.iter().map(|s| s.a.clone()).collect();
        let b: Vec<_> = c.iter().map(|s| s.b.clone()).collect();
        assert_eq!(a, [int(0), int(1), ratio(8, 3)]);
        assert_eq!(b, [int(1), ratio(8, 3), ratio(73, 9)]);
        for s in &c {
            let sign = if s.n % 2 == 0 { int(-1) } else { int(1) };
            assert_eq!(s.determinant(), sign);
        }
        let single = continuants(&[ratio(7, 5)]);
        assert_eq!(single[0].a, ratio(7, 5));
        assert_eq!(single[0].b, int(1));
        assert_eq!(c[1].determinant(), int(1));
    }

    #[test]
    fn matrix_matches_recurrence() {
        let w = [ratio(1, 3), ratio(-4, 9), ratio(2, 3), int(5)];
        let c = continuants(&w);
        assert_eq!(Mat2::of_word(&w), c[3].matrix());
    }

    #[test]
    fn eval_examples() {
        assert_eq!(eval_cf(&[int(0), ratio(-1, 3)]).unwrap(), int(-3));
        assert_eq!(eval_cf(&[int(0), ratio(8, 3), ratio(8, 3)]).unwrap(), ratio(24, 73));
        assert_eq!(eval_cf(&[ratio(7, 5)]).unwrap(), ratio(7, 5));
        assert_eq!(eval_cf(&[]), Err(CfError::EmptyWord));
        assert_eq!(eval_cf(&[int(1), int(0)]), Err(CfError::MalformedWord { index: 1 }));
        // 1 + 1/(-1 + 1/1) hits 1/0 inside
        assert!(eval_cf(&[int(1), int(-1), int(1)]).is_err());
    }

    #[test]
    fn tail_examples() {
        assert_eq!(tail_reconstruct(&[], &ratio(5, 7)).unwrap(), ratio(5, 7));
        assert_eq!(tail_reconstruct(&[int(0)], &ratio(-1, 3)).unwrap(), int(-3));
        assert_eq!(tail_reconstruct(&[int(0), ratio(8, 3)], &ratio(-1, 3)).unwrap(), int(-3));
        assert_eq!(tail_reconstruct(&[int(0)], &int(0)), Err(CfError::DegenerateTail));
    }

    #[test]
    fn tail_round_trip_every_step() {
        let s = FloorFunction::browkin(p(5));
        let alpha = ratio(-1234, 77);
        let rec = expand(&alpha, &s, 40).unwrap();
        for k in 0..rec.len() {
            let got = tail_reconstruct(&rec.partial_quotients[..k], &rec.complete_quotients[k]).unwrap();
            assert_eq!(got, alpha, "k = {k}");
        }
        if rec.terminated {
            assert_eq!(eval_cf(&rec.partial_quotients).unwrap(), alpha);
        }
    }
}
