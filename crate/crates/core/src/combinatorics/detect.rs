use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use num_bigint::BigInt;
use num_traits::Signed;

use super::strings::{match_lengths, z_array};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    /// Prefix `W U V U`.
    Spade,
    /// Prefix `W U V rev(U)`.
    Club,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Spade => "spade",
            Kind::Club => "club",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub kind: Kind,
    pub w: usize,
    pub u: usize,
    pub v: usize,
    pub prefix_length_used: usize,
}

impl Witness {
    /// `max(w, v) / u`.
    pub fn ratio(&self) -> Rational {
        ratio_of(self.w, self.u, self.v)
    }

    /// Length of the prefix `W U V U`.
    pub fn end(&self) -> usize {
        self.w + 2 * self.u + self.v
    }

    /// Direct check of the block equality, independent of any search.
    pub fn validate<T: Eq>(&self, prefix: &[T]) -> bool {
        if self.u == 0 || self.end() > self.prefix_length_used || self.end() > prefix.len() {
            return false;
        }
        let first = &prefix[self.w..self.w + self.u];
        let second = &prefix[self.w + self.u + self.v..self.end()];
        match self.kind {
            Kind::Spade => first == second,
            Kind::Club => first.iter().eq(second.iter().rev()),
        }
    }
}

fn ratio_of(w: usize, u: usize, v: usize) -> Rational {
    Rational::new(BigInt::from(w.max(v)), BigInt::from(u))
}

fn key(wv: (usize, usize)) -> (usize, usize, usize) {
    (wv.0.max(wv.1), wv.0, wv.1)
}

/// `max(w, v) <= c u`, exactly.
fn within(w: usize, u: usize, v: usize, c: &Rational) -> bool {
    if c.is_negative() {
        return false;
    }
    BigInt::from(w.max(v)) * c.denom() <= c.numer() * BigInt::from(u)
}

/// Best `(w, v)` per `u`, minimising `(max(w, v), w, v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CProfile {
    pub kind: Kind,
    pub prefix_length: usize,
    /// Index `u`, for `u` in `0..=prefix_length/2`; index 0 is unused.
    best: Vec<Option<(usize, usize)>>,
}

impl CProfile {
    pub fn max_u(&self) -> usize {
        self.best.len() - 1
    }

    pub fn best(&self, u: usize) -> Option<Witness> {
        let (w, v) = (*self.best.get(u)?)?;
        Some(Witness { kind: self.kind, w, u, v, prefix_length_used: self.prefix_length })
    }

    /// `min max(v/u, w/u)` over admissible `(w, v)`, or `None`.
    pub fn ratio(&self, u: usize) -> Option<Rational> {
        self.best(u).map(|w| w.ratio())
    }

    /// `(u, best witness)` for every `u` that has one.
    pub fn entries(&self) -> impl Iterator<Item = Witness> + '_ {
        (1..=self.max_u()).filter_map(|u| self.best(u))
    }
}

/// Best entries found from a sub-range of outer positions, for merging.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialProfile {
    kind: Kind,
    len: usize,
    best: Vec<Option<(usize, usize)>>,
}

impl PartialProfile {
    pub fn empty(kind: Kind, len: usize) -> Self {
        PartialProfile { kind, len, best: vec![None; len / 2 + 1] }
    }

    fn offer(&mut self, u: usize, wv: (usize, usize)) {
        let slot = &mut self.best[u];
        match slot {
            Some(cur) if key(*cur) <= key(wv) => {}
            _ => *slot = Some(wv),
        }
    }

    /// Order-independent: merging partials in any order gives the same result.
    pub fn merge(mut self, other: &PartialProfile) -> PartialProfile {
        assert_eq!((self.kind, self.len), (other.kind, other.len));
        for (u, wv) in other.best.iter().enumerate() {
            if let Some(wv) = wv {
                self.offer(u, *wv);
            }
        }
        self
    }

    pub fn finish(self) -> CProfile {
        CProfile { kind: self.kind, prefix_length: self.len, best: self.best }
    }
}

/// Range of outer positions the search iterates over: the start `w` of `U`
/// for spades, the end `w + u` of `U` for clubs.
pub fn outer_positions(kind: Kind, len: usize) -> Range<usize> {
    match kind {
        Kind::Spade => 0..len,
        Kind::Club => 1..len + 1,
    }
}

/// Searches the outer positions in `range` (clamped to
/// [`outer_positions`]); `O(len)` per position.
pub fn detect_partial<T: Eq>(kind: Kind, prefix: &[T], range: Range<usize>) -> PartialProfile {
    let len = prefix.len();
    let full = outer_positions(kind, len);
    let range = range.start.max(full.start)..range.end.min(full.end);
    let mut part = PartialProfile::empty(kind, len);
    let mut matches = Vec::new();
    match kind {
        Kind::Spade => {
            for w in range {
                let s = &prefix[w..];
                let z = z_array(s);
                // Largest u already placed for this w; the first offset j
                // covering u gives the least v = j - u.
                let mut covered = 0;
                let limit = s.len() / 2;
                for (j, &zj) in z.iter().enumerate().take(s.len()).skip(1) {
                    let cap = j.min(zj).min(s.len() - j);
                    if cap > covered {
                        for u in covered + 1..=cap {
                            part.offer(u, (w, j - u));
                        }
                        covered = cap;
                        if covered == limit {
                            break;
                        }
                    }
                }
            }
        }
        Kind::Club => {
            for e in range {
                // U ends at e; match rev(prefix[..e]) against prefix[e..].
                let pattern: Vec<&T> = prefix[..e].iter().rev().collect();
                let text: Vec<&T> = prefix[e..].iter().collect();
                let zp = z_array(&pattern);
                match_lengths(&pattern, &zp, &text, &mut matches);
                let mut covered = 0;
                for (v, &g) in matches.iter().enumerate() {
                    if g > covered {
                        for u in covered + 1..=g {
                            part.offer(u, (e - u, v));
                        }
                        covered = g;
                    }
                }
            }
        }
    }
    part
}

/// Brute-force profile, for cross-checking the accelerated search.
pub fn detect_naive<T: Eq>(kind: Kind, prefix: &[T]) -> CProfile {
    let len = prefix.len();
    let mut part = PartialProfile::empty(kind, len);
    for u in 1..=len / 2 {
        for w in 0..=len - 2 * u {
            if part.best[u].is_some_and(|b| key(b).0 < w) {
                break;
            }
            for v in 0..=len - 2 * u - w {
                let cand = Witness { kind, w, u, v, prefix_length_used: len };
                if cand.validate(prefix) {
                    part.offer(u, (w, v));
                    break;
                }
            }
        }
    }
    part.finish()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Detection {
    pub kind: Kind,
    pub c_max: Rational,
    pub prefix_length: usize,
    pub profile: CProfile,
    /// Best witness for every `u` with ratio at most `c_max`, increasing `u`.
    pub family: Vec<Witness>,
    pub min_witnesses: usize,
}

impl Detection {
    pub fn from_profile(profile: CProfile, c_max: Rational, min_witnesses: usize) -> Self {
        let family: Vec<Witness> = profile.entries().filter(|w| within(w.w, w.u, w.v, &c_max)).collect();
        Detection { kind: profile.kind, c_max, prefix_length: profile.prefix_length, profile, family, min_witnesses }
    }

    pub fn enough_witnesses(&self) -> bool {
        self.family.len() >= self.min_witnesses
    }

    pub fn largest_u(&self) -> Option<usize> {
        self.family.last().map(|w| w.u)
    }

    /// `(w + 2u + v) / L` for the witness with the largest `u`.
    pub fn prefix_fraction(&self) -> Option<Rational> {
        let w = self.family.last()?;
        Some(Rational::new(BigInt::from(w.end()), BigInt::from(self.prefix_length.max(1))))
    }

    /// Least `c` whose witness family reaches at least half of the largest
    /// witnessed `u`: the minimum best ratio over `u` in
    /// `[ceil(u_max/2), u_max]`.
    pub fn tail_constant(&self) -> Option<Rational> {
        let top = self.profile.entries().last()?.u;
        self.profile.entries().filter(|w| 2 * w.u >= top).map(|w| w.ratio()).min()
    }
}

/// Profile of `prefix` plus the witness family within `c_max`.
pub fn detect<T: Eq>(kind: Kind, prefix: &[T], c_max: &Rational, min_witnesses: usize) -> Detection {
    let part = detect_partial(kind, prefix, outer_positions(kind, prefix.len()));
    Detection::from_profile(part.finish(), c_max.clone(), min_witnesses)
}

/// All admissible `(w, v)` for this `u` with `max(w, v) <= c_max u`, in
/// `(max(w, v), w, v)` order, each checked directly.
pub fn witnesses_for<T: Eq>(kind: Kind, prefix: &[T], u: usize, c_max: &Rational) -> Vec<Witness> {
    let len = prefix.len();
    let mut out = Vec::new();
    if u == 0 || 2 * u > len {
        return out;
    }
    let room = len - 2 * u;
    for w in 0..=room {
        if !within(w, u, 0, c_max) {
            break;
        }
        for v in 0..=room - w {
            if !within(w, u, v, c_max) {
                break;
            }
            let cand = Witness { kind, w, u, v, prefix_length_used: len };
            if cand.validate(prefix) {
                out.push(cand);
            }
        }
    }
    out.sort_by_key(|a| key((a.w, a.v)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::words::{Generator, WordSpec};

    fn word(g: Generator, len: usize) -> Vec<char> {
        WordSpec::unmapped(g).unwrap().symbols(len).unwrap()
    }

    #[test]
    fn thue_morse_spade_length_8() {
        let tm = word(Generator::ThueMorse, 8);
        let all = witnesses_for(Kind::Spade, &tm, 2, &int(2));
        let expected = Witness { kind: Kind::Spade, w: 0, u: 2, v: 4, prefix_length_used: 8 };
        assert!(all.contains(&expected));
        assert!(expected.validate(&tm));
        let det = detect(Kind::Spade, &tm, &int(2), 1);
        let best = det.profile.best(2).unwrap();
        assert!(best.validate(&tm));
        assert_eq!((best.w, best.v), (0, 1));
    }

    #[test]
    fn thue_morse_club_length_4() {
        let tm = word(Generator::ThueMorse, 4);
        let det = detect(Kind::Club, &tm, &int(0), 1);
        assert_eq!(det.family, vec![Witness { kind: Kind::Club, w: 0, u: 2, v: 0, prefix_length_used: 4 }]);
    }

    #[test]
    fn fibonacci_square() {
        let fib = word(Generator::Fibonacci, 10);
        let det = detect(Kind::Spade, &fib, &int(0), 1);
        assert_eq!(det.largest_u(), Some(5));
        assert_eq!(det.family.last().unwrap().w, 0);
    }

    #[test]
    fn accelerated_matches_naive_on_families() {
        let gens = [
            Generator::ThueMorse,
            Generator::RudinShapiro,
            Generator::Paperfolding,
            Generator::Fibonacci,
            Generator::Periodic { preperiod: vec!['x'], period: vec!['y', 'x', 'y'] },
        ];
        for g in gens {
            let w = word(g, 300);
            for kind in [Kind::Spade, Kind::Club] {
                let fast = detect_partial(kind, &w, outer_positions(kind, w.len())).finish();
                assert_eq!(fast, detect_naive(kind, &w));
                for wit in fast.entries() {
                    assert!(wit.validate(&w));
                }
            }
        }
    }

    #[test]
    fn split_ranges_merge_to_the_same_profile() {
        let w = word(Generator::RudinShapiro, 257);
        for kind in [Kind::Spade, Kind::Club] {
            let whole = detect_partial(kind, &w, outer_positions(kind, w.len()));
            let r = outer_positions(kind, w.len());
            let mid = (r.start + r.end) / 3;
            let a = detect_partial(kind, &w, r.start..mid);
            let b = detect_partial(kind, &w, mid..r.end);
            assert_eq!(b.clone().merge(&a), whole);
            assert_eq!(a.merge(&b), whole);
        }
    }

    #[test]
    fn invalid_witnesses() {
        let tm = word(Generator::ThueMorse, 8);
        let bad = Witness { kind: Kind::Spade, w: 0, u: 2, v: 0, prefix_length_used: 8 };
        assert!(!bad.validate(&tm));
        let too_long = Witness { kind: Kind::Spade, w: 0, u: 4, v: 1, prefix_length_used: 8 };
        assert!(!too_long.validate(&tm));
        let zero = Witness { kind: Kind::Club, w: 0, u: 0, v: 0, prefix_length_used: 8 };
        assert!(!zero.validate(&tm));
    }
}
