use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::{continuants, tail_reconstruct, ContinuantState, ExpansionRecord};
use crate::padic::{vp, Prime, Valuation};
use crate::rational::{pow_i64, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityKind {
    /// `a_i = s(gamma_i)` and `gamma_{i+1} = 1 / (gamma_i - a_i)`.
    RecordConsistency,
    /// `alpha = (gamma_k A_{k-1} + A_{k-2}) / (gamma_k B_{k-1} + B_{k-2})`.
    TailRoundTrip,
    /// `A_n B_{n-1} - B_n A_{n-1} = (-1)^(n+1)`.
    Determinant,
    /// `|A_n|_p = prod_{i=2..n} |a_i|_p`, `|B_n|_p = prod_{i=1..n} |a_i|_p`.
    PAdicProducts,
    /// `|A_n|_p < |A_{n+1}|_p`, `|B_n|_p < |B_{n+1}|_p`, `|A_n|_p <= |B_n|_p`.
    Monotonicity,
    /// `v_p(B_n alpha - A_n) = -sum_{j=1..n+1} v_p(a_j)`.
    ApproximationValuation,
    /// `v_p(alpha - A_n/B_n) = -v_p(B_n) - v_p(B_{n+1})`, strictly increasing and `>= n+1`.
    Convergence,
    /// `max(|A_n|, |B_n|) <= (M+1)^n` with `M = max |a_i|`.
    ArchimedeanBound,
}

impl IdentityKind {
    pub fn name(self) -> &'static str {
        match self {
            IdentityKind::RecordConsistency => "record_consistency",
            IdentityKind::TailRoundTrip => "tail_round_trip",
            IdentityKind::Determinant => "determinant",
            IdentityKind::PAdicProducts => "padic_products",
            IdentityKind::Monotonicity => "monotonicity",
            IdentityKind::ApproximationValuation => "approximation_valuation",
            IdentityKind::Convergence => "convergence",
            IdentityKind::ArchimedeanBound => "archimedean_bound",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub kind: IdentityKind,
    /// Number of indices examined.
    pub checked: usize,
    pub first_failure: Option<usize>,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(IdentityCheck::passed)
    }

    pub fn get(&self, kind: IdentityKind) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.kind == kind)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

struct Tally {
    kind: IdentityKind,
    checked: usize,
    first_failure: Option<usize>,
}

impl Tally {
    fn new(kind: IdentityKind) -> Self {
        Tally { kind, checked: 0, first_failure: None }
    }

    fn record(&mut self, index: usize, ok: bool) {
        self.checked += 1;
        if !ok && self.first_failure.is_none() {
            self.first_failure = Some(index);
        }
    }

    fn finish(self) -> IdentityCheck {
        IdentityCheck { kind: self.kind, checked: self.checked, first_failure: self.first_failure }
    }
}

fn v(q: &Rational, p: Prime) -> Valuation {
    vp(q, p)
}

/// Checks the record invariants and the continuant identities exactly.
///
/// The `|A_n|_p` statements hold for expansions with `a_0 = 0`; they are
/// checked on the continuants of `[0, a_1, a_2, ...]`, which is the expansion
/// of `alpha - a_0`. The `B_n` do not depend on `a_0`.
pub fn verify_identities(rec: &ExpansionRecord) -> IdentityReport {
    let p = rec.prime();
    let a = &rec.partial_quotients;
    let gammas = &rec.complete_quotients;
    let n_terms = a.len();
    let mut checks = Vec::new();

    let mut t = Tally::new(IdentityKind::RecordConsistency);
    for i in 0..n_terms {
        let mut ok = rec.floor.apply(&gammas[i]) == a[i];
        if i == 0 {
            ok &= gammas[0] == rec.alpha;
        } else {
            let d = &gammas[i - 1] - &a[i - 1];
            ok &= !d.is_zero() && d.recip() == gammas[i];
        }
        if i == n_terms - 1 {
            ok &= rec.terminated == (gammas[i] == a[i]);
        }
        t.record(i, ok);
    }
    checks.push(t.finish());

    let mut t = Tally::new(IdentityKind::TailRoundTrip);
    for k in 0..n_terms {
        let ok = matches!(tail_reconstruct(&a[..k], &gammas[k]), Ok(x) if x == rec.alpha);
        t.record(k, ok);
    }
    checks.push(t.finish());

    let states = continuants(a);
    let mut t = Tally::new(IdentityKind::Determinant);
    for s in &states {
        let expected = if s.n % 2 == 1 { Rational::one() } else { -Rational::one() };
        t.record(s.n, s.determinant() == expected);
    }
    checks.push(t.finish());

    // Continuants of [0, a_1, a_2, ...].
    let mut shifted = a.clone();
    if let Some(first) = shifted.first_mut() {
        *first = Rational::zero();
    }
    let norm_states: Vec<ContinuantState> = continuants(&shifted);

    // Letter valuations for i >= 1, with the next letter of a truncated run
    // appended so that lem:approx also covers the last recorded index.
    let mut letters: Vec<Rational> = a.clone();
    if let Some(g) = rec.next_complete_quotient() {
        letters.push(rec.floor.apply(&g));
    }
    let letter_v: Vec<Option<i64>> = letters.iter().map(|q| v(q, p).finite()).collect();
    // prefix_sum[n] = sum_{i=1..n} v_p(a_i), None once a letter is zero.
    let mut prefix_sum: Vec<Option<i64>> = Vec::with_capacity(letters.len());
    prefix_sum.push(Some(0));
    for i in 1..letters.len() {
        let prev = prefix_sum[i - 1];
        prefix_sum.push(prev.and_then(|s| letter_v[i].map(|x| s + x)));
    }

    let mut t = Tally::new(IdentityKind::PAdicProducts);
    for s in norm_states.iter().skip(2) {
        let n = s.n;
        let b_ok = prefix_sum[n].map(Valuation::Finite) == Some(v(&s.b, p));
        let a_ok = match (prefix_sum[n], letter_v[1]) {
            (Some(total), Some(v1)) => v(&s.a, p) == Valuation::Finite(total - v1),
            _ => false,
        };
        t.record(n, a_ok && b_ok);
    }
    checks.push(t.finish());

    let mut t = Tally::new(IdentityKind::Monotonicity);
    for (i, s) in norm_states.iter().enumerate() {
        // Larger valuation means smaller absolute value.
        let mut ok = v(&s.a, p) >= v(&s.b, p);
        if let Some(next) = norm_states.get(i + 1) {
            ok &= v(&s.a, p) > v(&next.a, p) && v(&s.b, p) > v(&next.b, p);
        }
        t.record(s.n, ok);
    }
    checks.push(t.finish());

    let stop = if rec.terminated { n_terms.saturating_sub(1) } else { n_terms };
    let mut t = Tally::new(IdentityKind::ApproximationValuation);
    let mut conv = Tally::new(IdentityKind::Convergence);
    let mut last_conv: Option<i64> = None;
    for s in states.iter().take(stop) {
        let n = s.n;
        let Some(Some(expected)) = prefix_sum.get(n + 1).map(|x| x.map(|v| -v)) else {
            t.record(n, false);
            continue;
        };
        t.record(n, v(&(&s.b * &rec.alpha - &s.a), p) == Valuation::Finite(expected));

        // |alpha - A_n/B_n|_p = 1 / |B_n B_{n+1}|_p.
        let (Some(vb), Some(vb_next)) = (prefix_sum[n], prefix_sum[n + 1]) else {
            conv.record(n, false);
            continue;
        };
        let predicted = -vb - vb_next;
        let ok = match s.convergent() {
            Some(c) => v(&(&rec.alpha - c), p) == Valuation::Finite(predicted),
            None => false,
        };
        let increasing = last_conv.is_none_or(|prev| predicted > prev);
        conv.record(n, ok && increasing && predicted > n as i64);
        last_conv = Some(predicted);
    }
    checks.push(t.finish());
    checks.push(conv.finish());

    let mut t = Tally::new(IdentityKind::ArchimedeanBound);
    if let Some(m) = a.iter().skip(1).map(|q| q.abs()).max() {
        let base = m + Rational::one();
        for s in &norm_states {
            let bound = pow_i64(&base, s.n as i64);
            t.record(s.n, s.a.abs() <= bound && s.b.abs() <= bound);
        }
    }
    checks.push(t.finish());

    IdentityReport { checks }
}
