//! Detector profiles split over worker threads.

use std::thread;

use padic_cf::combinatorics::{detect_partial, outer_positions, CProfile, Kind, PartialProfile};
use padic_cf::words::Symbol;

pub const THREADS_VAR: &str = "PADIC_CF_THREADS";

/// Worker count: `PADIC_CF_THREADS` if set to a positive integer, else the
/// available parallelism.
pub fn thread_count() -> usize {
    std::env::var(THREADS_VAR)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Same result as the serial profile for any thread count: the partial
/// profiles are merged in range order and the merge is order-independent
/// anyway.
pub fn profile(kind: Kind, prefix: &[Symbol], threads: usize) -> CProfile {
    let range = outer_positions(kind, prefix.len());
    let threads = threads.clamp(1, range.len().max(1));
    if threads == 1 {
        return detect_partial(kind, prefix, range).finish();
    }
    // Early outer positions do more work, so hand out interleaved slices.
    let chunk = range.len().div_ceil(threads * 8).max(1);
    let starts: Vec<usize> = range.clone().step_by(chunk).collect();
    let parts: Vec<PartialProfile> = thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let starts = &starts;
                let end = range.end;
                s.spawn(move || {
                    let mut acc = PartialProfile::empty(kind, prefix.len());
                    for &lo in starts.iter().skip(t).step_by(threads) {
                        acc = acc.merge(&detect_partial(kind, prefix, lo..(lo + chunk).min(end)));
                    }
                    acc
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("detector worker panicked")).collect()
    });
    parts.iter().fold(PartialProfile::empty(kind, prefix.len()), |acc, p| acc.merge(p)).finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use padic_cf::words::{Generator, WordSpec};

    #[test]
    fn thread_count_does_not_change_the_profile() {
        for g in [Generator::ThueMorse, Generator::Fibonacci, Generator::RudinShapiro] {
            let w = WordSpec::unmapped(g).unwrap().symbols(500).unwrap();
            for kind in [Kind::Spade, Kind::Club] {
                let serial = profile(kind, &w, 1);
                for t in [2, 3, 7] {
                    assert_eq!(profile(kind, &w, t), serial);
                }
            }
        }
    }
}
