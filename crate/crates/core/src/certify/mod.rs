//! Growth constants, exponent requirements, corollary checks and evidence
//! certificates for words of partial quotients.

mod bounds;
mod corollary;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

pub use bounds::{
    alphabet_growth_bound, compare_power, floor_log_power, growth_bounds, k_multiplier, required_k, GrowthBounds, GRID,
};
pub use corollary::{
    builtin_c_inf, check_corollary, min_letter_exponent, ConditionCheck, CorollaryInput, CorollaryReport,
};

use crate::cf::{eval_cf, expand, verify_identities};
use crate::combinatorics::{
    detect_partial, outer_positions, scan_special_prefixes, CProfile, Detection, EventualPeriod, Kind, Witness,
};
use crate::floor::FloorFunction;
use crate::padic::Prime;
use crate::rational::{format_rational, Rational};
use crate::words::{Symbol, WordError, WordSpec};

pub const CERTIFICATE_VERSION: u32 = 1;
pub const SCOPE: &str = "evidence-only";
pub const DISCLAIMER: &str = "All checks run on a finite prefix. Prefix evidence does not prove the repetition \
condition, its unbounded growth, or aperiodicity for the infinite word, and this report makes no claim that \
any number is transcendental.";

/// Shortest prefix accepted by [`certify`].
pub const MIN_PREFIX: usize = 16;
/// Letters used for the re-expansion spot check.
pub const SPOT_CHECK_TERMS: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertifyError {
    #[error("growth constant must exceed 1")]
    GrowthConstantTooSmall,
    #[error("constant must be nonnegative")]
    NegativeConstant,
    #[error("exponent too large for exact powering")]
    ExponentTooLarge,
    #[error("empty word")]
    EmptyWord,
    #[error("malformed alphabet: {0}")]
    MalformedAlphabet(&'static str),
    #[error("prefix length {0} is below the minimum of 16")]
    PrefixTooShort(usize),
    #[error("letter {index} = {value} is not fixed by the floor function")]
    LetterNotFixed { index: usize, value: Rational },
    #[error("floor prime {floor} differs from the requested prime {requested}")]
    PrimeMismatch { floor: u64, requested: u64 },
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionHint {
    pub kind: Kind,
    pub c: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionSource {
    Hint,
    Detector,
}

/// What the detector found for one condition kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetectorSummary {
    pub kind: Kind,
    /// Least best ratio over the upper half of witnessed `u`.
    pub derived_c: Option<Rational>,
    pub largest_u: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    HypothesesEvidenced,
    Failed(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub version: u32,
    pub p: Prime,
    pub floor: FloorFunction,
    pub word: WordSpec,
    pub prefix_length: usize,
    pub hint: Option<ConditionHint>,
    pub detectors: Vec<DetectorSummary>,
    pub condition: ConditionHint,
    pub condition_source: ConditionSource,
    /// Best witness per `u` with ratio at most the condition's `c`.
    pub witnesses: Vec<Witness>,
    pub growth: GrowthBounds,
    pub required_k: u64,
    pub min_letter_exponent: i64,
    pub spot_check_terms: usize,
    /// Shortest eventual period seen on the prefix, if any.
    pub periodic: Option<EventualPeriod>,
    pub checks: Vec<SubCheck>,
    pub verdict: Verdict,
    pub scope: &'static str,
    pub disclaimer: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifyRequest {
    pub floor: FloorFunction,
    pub word: WordSpec,
    pub prefix_length: usize,
    pub hint: Option<ConditionHint>,
}

/// Serial profile computation.
pub fn serial_profile(kind: Kind, prefix: &[Symbol]) -> CProfile {
    detect_partial(kind, prefix, outer_positions(kind, prefix.len())).finish()
}

pub fn certify(req: &CertifyRequest) -> Result<Certificate, CertifyError> {
    certify_with(req, serial_profile)
}

/// `u_max * 4 (1 + c) >= L`: the largest witness uses at least half the room
/// a ratio of `c` allows.
fn witness_growth_ok(largest_u: Option<usize>, c: &Rational, len: usize) -> bool {
    let Some(u) = largest_u else { return false };
    let lhs = BigInt::from(u) * 4 * (c.numer() + c.denom());
    lhs >= BigInt::from(len) * c.denom()
}

/// As [`certify`], with the profile computation supplied by the caller (for
/// parallel search).
pub fn certify_with<F>(req: &CertifyRequest, profile: F) -> Result<Certificate, CertifyError>
where
    F: Fn(Kind, &[Symbol]) -> CProfile,
{
    let p = req.floor.prime();
    let len = req.prefix_length;
    if len < MIN_PREFIX {
        return Err(CertifyError::PrefixTooShort(len));
    }
    let letters = req.word.prefix(len, Some(p))?;
    if letters.len() < len {
        return Err(CertifyError::Word(WordError::InvalidParameters("word shorter than the requested prefix")));
    }
    for (i, x) in letters.iter().enumerate() {
        if !req.floor.fixes(x) {
            return Err(CertifyError::LetterNotFixed { index: i + 1, value: x.clone() });
        }
    }
    let symbols = req.word.symbols(len)?;

    let growth = growth_bounds(&letters, p)?;
    let c_inf = growth.c_inf().clone();

    let kinds: Vec<Kind> = match &req.hint {
        Some(h) => alloc::vec![h.kind],
        None => alloc::vec![Kind::Spade, Kind::Club],
    };
    let mut detections: Vec<Detection> = Vec::new();
    let mut detectors = Vec::new();
    for &kind in &kinds {
        let prof = profile(kind, &symbols);
        let provisional = Detection::from_profile(prof, Rational::zero(), 1);
        let derived_c = provisional.tail_constant();
        let largest_u = provisional.profile.entries().last().map(|w| w.u);
        detectors.push(DetectorSummary { kind, derived_c, largest_u });
        detections.push(provisional);
    }

    let (condition, source, det) = match &req.hint {
        Some(h) => (h.clone(), ConditionSource::Hint, detections.swap_remove(0)),
        None => {
            let mut best: Option<(u64, usize)> = None;
            for (i, d) in detectors.iter().enumerate() {
                if let Some(c) = &d.derived_c {
                    let k = required_k(d.kind, p, c, &c_inf)?;
                    if best.is_none_or(|(bk, _)| k < bk) {
                        best = Some((k, i));
                    }
                }
            }
            let i = best.map_or(0, |(_, i)| i);
            let kind = detectors[i].kind;
            let c = detectors[i].derived_c.clone().unwrap_or_else(Rational::zero);
            (ConditionHint { kind, c }, ConditionSource::Detector, detections.swap_remove(i))
        }
    };
    if condition.c < Rational::zero() {
        return Err(CertifyError::NegativeConstant);
    }
    let det = Detection::from_profile(det.profile, condition.c.clone(), 1);

    let k = required_k(condition.kind, p, &condition.c, &c_inf)?;
    let min_exp = min_letter_exponent(&letters, p).unwrap_or(0);

    let terms = SPOT_CHECK_TERMS.min(len);
    let mut truncated = alloc::vec![Rational::zero()];
    truncated.extend_from_slice(&letters[..terms]);
    let spot_ok = match eval_cf(&truncated) {
        Ok(x) => match expand(&x, &req.floor, terms + 1) {
            Ok(rec) => rec.terminated && rec.partial_quotients == truncated && verify_identities(&rec).all_passed(),
            Err(_) => false,
        },
        Err(_) => false,
    };

    let scan = scan_special_prefixes(&symbols);
    let periodic = scan.eventual_periods.first().cloned();

    let checks = alloc::vec![
        SubCheck {
            name: "witness_growth",
            passed: witness_growth_ok(det.largest_u(), &condition.c, len),
            detail: format!(
                "{} witnesses with ratio <= {}; largest u = {}; rule 4 (1 + c) u_max >= L",
                det.family.len(),
                format_rational(&condition.c),
                det.largest_u().map_or(String::from("none"), |u| format!("{u}")),
            ),
        },
        SubCheck {
            name: "growth_bounds",
            passed: growth.verified,
            detail: format!(
                "max(|A_n|, |B_n|) <= C^n for n <= {} with C = {} (observed {})",
                growth.n_max,
                format_rational(&c_inf),
                format_rational(&growth.observed_c_inf),
            ),
        },
        SubCheck {
            name: "letter_exponent",
            passed: min_exp >= k as i64,
            detail: format!("min -v_p(a_n) = {min_exp}, required k = {k}"),
        },
        SubCheck {
            name: "approximation_spot_check",
            passed: spot_ok,
            detail: format!("re-expansion of [0, a_1, ..., a_{terms}] and identity checks"),
        },
    ];
    let failures: Vec<String> =
        checks.iter().filter(|c| !c.passed).map(|c| format!("{}: {}", c.name, c.detail)).collect();
    let verdict = if failures.is_empty() { Verdict::HypothesesEvidenced } else { Verdict::Failed(failures) };

    Ok(Certificate {
        version: CERTIFICATE_VERSION,
        p,
        floor: req.floor.clone(),
        word: req.word.clone(),
        prefix_length: len,
        hint: req.hint.clone(),
        detectors,
        condition,
        condition_source: source,
        witnesses: det.family,
        growth,
        required_k: k,
        min_letter_exponent: min_exp,
        spot_check_terms: terms,
        periodic,
        checks,
        verdict,
        scope: SCOPE,
        disclaimer: DISCLAIMER,
    })
}
