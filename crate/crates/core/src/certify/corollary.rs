use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::bounds::{compare_power, k_multiplier, required_k};
use super::CertifyError;
use crate::combinatorics::Kind;
use crate::floor::{Builtin, FloorFunction};
use crate::padic::{is_odd_prime, vp, Prime, Valuation};
use crate::rational::{format_rational, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorollaryInput {
    /// Ruban or Browkin expansion whose word starts with arbitrarily long
    /// repetitions (spade) or palindromes (club): checks the letter
    /// exponents against the table for `c = 0`.
    BrowkinRuban { p: Prime, floor: Builtin, kind: Kind, letters: Vec<Rational> },
    /// Finite alphabet with `T = max |a|`.
    FiniteAlphabet { p: Prime, kind: Kind, c: Rational, alphabet: Vec<Rational> },
    /// Binary alphabet `{a, b}` of a word with complexity `p(n) <= C n`.
    AutomaticBinary { p: Prime, a: Rational, b: Rational, complexity: Rational },
    /// Least odd prime in `[from, to]` making `{n/p, m/p}` pass the binary
    /// alphabet conditions.
    LargeP { n: i64, m: i64, complexity: Rational, from: u64, to: u64 },
}

impl CorollaryInput {
    pub fn name(&self) -> &'static str {
        match self {
            CorollaryInput::BrowkinRuban { .. } => "browkin_ruban",
            CorollaryInput::FiniteAlphabet { .. } => "finite_alphabet",
            CorollaryInput::AutomaticBinary { .. } => "automatic_binary",
            CorollaryInput::LargeP { .. } => "large_p",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionCheck {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorollaryReport {
    pub which: &'static str,
    pub conditions: Vec<ConditionCheck>,
    /// For `LargeP`: the least passing prime in the range.
    pub least_prime: Option<u64>,
}

impl CorollaryReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.holds)
    }

    pub fn condition(&self, name: &str) -> Option<&ConditionCheck> {
        self.conditions.iter().find(|c| c.name == name)
    }
}

fn check(name: &str, holds: bool, detail: String) -> ConditionCheck {
    ConditionCheck { name: String::from(name), holds, detail }
}

/// Growth constant of a builtin floor's letters: `p + 1` (Ruban), `p/2 + 1`
/// (Browkin).
pub fn builtin_c_inf(b: Builtin, p: Prime) -> Rational {
    match b {
        Builtin::Ruban => p.as_rational() + int(1),
        Builtin::Browkin => p.as_rational() / int(2) + int(1),
    }
}

fn validate_alphabet(values: &[Rational]) -> Result<(), CertifyError> {
    if values.is_empty() {
        return Err(CertifyError::MalformedAlphabet("empty alphabet"));
    }
    if values.iter().any(Zero::is_zero) {
        return Err(CertifyError::MalformedAlphabet("zero letter"));
    }
    for (i, x) in values.iter().enumerate() {
        if values[..i].contains(x) {
            return Err(CertifyError::MalformedAlphabet("repeated letter"));
        }
    }
    Ok(())
}

/// `(T + 1)^t < p`.
fn power_below_prime(t_letter: &Rational, exp: &Rational, p: Prime) -> Result<bool, CertifyError> {
    Ok(compare_power(&(t_letter + int(1)), exp, &p.as_rational())?.is_lt())
}

fn finite_alphabet_condition(kind: Kind, c: &Rational, t: &Rational, p: Prime) -> Result<ConditionCheck, CertifyError> {
    Ok(match kind {
        Kind::Club if c.is_zero() => {
            let holds = *t < p.as_rational() - int(1);
            check("T < p - 1", holds, format!("T = {}, p = {}", format_rational(t), p.get()))
        }
        _ => {
            let exp = match kind {
                Kind::Spade => k_multiplier(Kind::Spade, c),
                Kind::Club => int(4) + int(6) * c,
            };
            let holds = power_below_prime(t, &exp, p)?;
            check(
                "(T + 1)^t < p",
                holds,
                format!("T = {}, t = {}, p = {}", format_rational(t), format_rational(&exp), p.get()),
            )
        }
    })
}

fn binary_conditions(
    p: Prime,
    a: &Rational,
    b: &Rational,
    complexity: &Rational,
) -> Result<Vec<ConditionCheck>, CertifyError> {
    validate_alphabet(&[a.clone(), b.clone()])?;
    if !complexity.is_positive() {
        return Err(CertifyError::NegativeConstant);
    }
    let v_diff = vp(&(a - b), p);
    let cond1 =
        check("(i) |a - b|_p >= 1", v_diff <= Valuation::Finite(0), format!("v_p(a - b) = {}", fmt_valuation(v_diff)));
    let (va, vb) = (vp(a, p), vp(b, p));
    let cond2 = check(
        "(ii) min(|a|_p, |b|_p) >= p",
        va <= Valuation::Finite(-1) && vb <= Valuation::Finite(-1),
        format!("v_p(a) = {}, v_p(b) = {}", fmt_valuation(va), fmt_valuation(vb)),
    );
    let t = a.abs().max(b.abs());
    let exp = int(18) * complexity + int(8);
    let cond3 = check(
        "(iii) (max(|a|, |b|) + 1)^(18C + 8) < p",
        power_below_prime(&t, &exp, p)?,
        format!("max = {}, exponent = {}", format_rational(&t), format_rational(&exp)),
    );
    Ok(alloc::vec![cond1, cond2, cond3])
}

fn fmt_valuation(v: Valuation) -> String {
    match v {
        Valuation::Finite(e) => format!("{e}"),
        Valuation::Infinity => String::from("inf"),
    }
}

pub fn check_corollary(input: &CorollaryInput) -> Result<CorollaryReport, CertifyError> {
    let which = input.name();
    let mut least_prime = None;
    let conditions = match input {
        CorollaryInput::BrowkinRuban { p, floor, kind, letters } => {
            validate_alphabet(&dedup(letters))?;
            let s = FloorFunction::builtin(*p, *floor);
            let fixed = letters.iter().all(|x| s.fixes(x));
            let k = required_k(*kind, *p, &Rational::zero(), &builtin_c_inf(*floor, *p))?;
            let min_exp = min_letter_exponent(letters, *p);
            let mut out = alloc::vec![
                check("letters in the image of s", fixed, format!("floor = {}", floor.name())),
                check(
                    "|a_n|_p >= p^k",
                    min_exp.is_some_and(|e| e >= k as i64),
                    format!("k = {k}, min -v_p(a_n) = {}", min_exp.map_or(String::from("none"), |e| format!("{e}"))),
                ),
            ];
            if *floor == Builtin::Ruban {
                out.push(check("alpha irrational", true, String::from("assumed; not decidable from a finite prefix")));
            }
            out
        }
        CorollaryInput::FiniteAlphabet { p, kind, c, alphabet } => {
            validate_alphabet(alphabet)?;
            if c.is_negative() {
                return Err(CertifyError::NegativeConstant);
            }
            let t = alphabet.iter().map(|x| x.abs()).max().expect("nonempty");
            alloc::vec![finite_alphabet_condition(*kind, c, &t, *p)?]
        }
        CorollaryInput::AutomaticBinary { p, a, b, complexity } => binary_conditions(*p, a, b, complexity)?,
        CorollaryInput::LargeP { n, m, complexity, from, to } => {
            if n == m || *n == 0 || *m == 0 {
                return Err(CertifyError::MalformedAlphabet("n and m must be distinct and nonzero"));
            }
            for q in (*from).max(3)..=*to {
                if !is_odd_prime(q) {
                    continue;
                }
                let p = Prime::new(q).expect("odd prime");
                let a = Rational::new(BigInt::from(*n), p.as_bigint());
                let b = Rational::new(BigInt::from(*m), p.as_bigint());
                if binary_conditions(p, &a, &b, complexity)?.iter().all(|c| c.holds) {
                    least_prime = Some(q);
                    break;
                }
            }
            alloc::vec![check(
                "passing prime in range",
                least_prime.is_some(),
                format!(
                    "range [{from}, {to}], least = {}",
                    least_prime.map_or(String::from("none"), |q| format!("{q}"))
                ),
            )]
        }
    };
    Ok(CorollaryReport { which, conditions, least_prime })
}

fn dedup(letters: &[Rational]) -> Vec<Rational> {
    let mut v: Vec<Rational> = letters.to_vec();
    v.sort();
    v.dedup();
    v
}

/// `min_n (-v_p(a_n))`, or `None` for an empty list or a zero letter.
pub fn min_letter_exponent(letters: &[Rational], p: Prime) -> Option<i64> {
    let mut best: Option<i64> = None;
    for x in letters {
        let e = -vp(x, p).finite()?;
        best = Some(best.map_or(e, |b| b.min(e)));
    }
    best
}
