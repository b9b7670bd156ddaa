//! p-adic floor functions: Ruban's, Browkin's, and finite remap tables over
//! either of them.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::Rng;

use crate::padic::{in_z_inv_p, residue_mod_pow, vp, Prime, Valuation};
use crate::rational::{from_biguint, Rational};

/// The built-in digit-truncation floors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Builtin {
    /// Digits in `[0, p-1]`.
    Ruban,
    /// Digits in `[-(p-1)/2, (p-1)/2]`.
    Browkin,
}

impl Builtin {
    pub fn name(self) -> &'static str {
        match self {
            Builtin::Ruban => "ruban",
            Builtin::Browkin => "browkin",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FloorKind {
    Builtin(Builtin),
    /// Classes (keyed by their Ruban representative) mapped to chosen
    /// representatives; everything else falls back to `default`.
    Custom {
        remap: BTreeMap<Rational, Rational>,
        default: Builtin,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FloorError {
    #[error("class key {0} is not a canonical Ruban representative")]
    NotCanonicalClass(Rational),
    #[error("representative {rep} for class {class} is not in Z[1/p]")]
    RepOutsideImage { class: Rational, rep: Rational },
    #[error("representative {rep} is not congruent to class {class} modulo pZ_p")]
    WrongClass { class: Rational, rep: Rational },
    #[error("the class of 0 must map to 0")]
    ZeroNotFixed,
}

/// A validated p-adic floor function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloorFunction {
    p: Prime,
    kind: FloorKind,
}

impl FloorFunction {
    pub fn ruban(p: Prime) -> Self {
        FloorFunction { p, kind: FloorKind::Builtin(Builtin::Ruban) }
    }

    pub fn browkin(p: Prime) -> Self {
        FloorFunction { p, kind: FloorKind::Builtin(Builtin::Browkin) }
    }

    pub fn builtin(p: Prime, b: Builtin) -> Self {
        FloorFunction { p, kind: FloorKind::Builtin(b) }
    }

    /// A remap table, checked entry by entry against the floor axioms.
    pub fn custom(p: Prime, remap: BTreeMap<Rational, Rational>, default: Builtin) -> Result<Self, FloorError> {
        for (class, rep) in &remap {
            if ruban_floor(class, p) != *class {
                return Err(FloorError::NotCanonicalClass(class.clone()));
            }
            if !in_z_inv_p(rep, p) {
                return Err(FloorError::RepOutsideImage { class: class.clone(), rep: rep.clone() });
            }
            if class.is_zero() && !rep.is_zero() {
                return Err(FloorError::ZeroNotFixed);
            }
            if !matches!(vp(&(rep - class), p), Valuation::Infinity | Valuation::Finite(1..)) {
                return Err(FloorError::WrongClass { class: class.clone(), rep: rep.clone() });
            }
        }
        Ok(FloorFunction { p, kind: FloorKind::Custom { remap, default } })
    }

    /// Builds a remap table without checking it. Only useful for exercising
    /// [`validate_floor`] on broken tables.
    pub fn custom_unchecked(p: Prime, remap: BTreeMap<Rational, Rational>, default: Builtin) -> Self {
        FloorFunction { p, kind: FloorKind::Custom { remap, default } }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn kind(&self) -> &FloorKind {
        &self.kind
    }

    /// The built-in floor, if this is one.
    pub fn as_builtin(&self) -> Option<Builtin> {
        match self.kind {
            FloorKind::Builtin(b) => Some(b),
            FloorKind::Custom { .. } => None,
        }
    }

    pub fn name(&self) -> String {
        match &self.kind {
            FloorKind::Builtin(b) => String::from(b.name()),
            FloorKind::Custom { remap, default } => {
                format!("custom({} classes, default {})", remap.len(), default.name())
            }
        }
    }

    pub fn apply(&self, q: &Rational) -> Rational {
        match &self.kind {
            FloorKind::Builtin(b) => builtin_floor(*b, q, self.p),
            FloorKind::Custom { remap, default } => {
                let class = ruban_floor(q, self.p);
                match remap.get(&class) {
                    Some(rep) => rep.clone(),
                    None => builtin_floor(*default, q, self.p),
                }
            }
        }
    }

    /// Whether `x` is its own floor, i.e. `x` lies in `Im(s)`.
    pub fn fixes(&self, x: &Rational) -> bool {
        self.apply(x) == *x
    }
}

pub fn floor_apply(s: &FloorFunction, q: &Rational) -> Rational {
    s.apply(q)
}

pub fn builtin_floor(b: Builtin, q: &Rational, p: Prime) -> Rational {
    match b {
        Builtin::Ruban => ruban_floor(q, p),
        Builtin::Browkin => browkin_floor(q, p),
    }
}

/// `q * p^k mod p^(k+1)` for `k = -min(v_p(q), 0)`, or `None` when `v_p(q) >= 1`.
fn scaled_residue(q: &Rational, p: Prime) -> Option<(i64, BigInt)> {
    let k = match vp(q, p) {
        Valuation::Infinity => return None,
        Valuation::Finite(v) if v >= 1 => return None,
        Valuation::Finite(v) => -v,
    };
    let scaled = q * p.power(k);
    Some((k, from_biguint(residue_mod_pow(&scaled, p, (k + 1) as u64))))
}

/// Sum of the canonical digits on positions `v_p(q)..=0`.
pub fn ruban_floor(q: &Rational, p: Prime) -> Rational {
    match scaled_residue(q, p) {
        None => Rational::zero(),
        Some((k, r)) => Rational::from_integer(r) * p.power(-k),
    }
}

/// Balanced-digit version of [`ruban_floor`]. The balanced digits on the
/// `k+1` positions represent exactly the symmetric residues modulo `p^(k+1)`.
pub fn browkin_floor(q: &Rational, p: Prime) -> Rational {
    match scaled_residue(q, p) {
        None => Rational::zero(),
        Some((k, r)) => {
            let modulus = BigInt::from(crate::rational::big_pow(p.get(), (k + 1) as u64));
            let half = (&modulus - 1) / 2;
            let sym = if r > half { r - &modulus } else { r };
            debug_assert!(sym.mod_floor(&modulus) >= BigInt::zero());
            Rational::from_integer(sym) * p.power(-k)
        }
    }
}

/// Which floor-function axiom a sample broke.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FloorCheck {
    /// `|q - s(q)|_p < 1`.
    Approximation,
    /// `s(q)` lies in `Z[1/p]`.
    Image,
    /// `s(q) = s(q + p t)` for `v_p(t) >= 0`.
    ClassConsistency,
    /// `s(0) = 0`.
    ZeroFixed,
}

impl FloorCheck {
    pub fn name(self) -> &'static str {
        match self {
            FloorCheck::Approximation => "approximation",
            FloorCheck::Image => "image",
            FloorCheck::ClassConsistency => "class_consistency",
            FloorCheck::ZeroFixed => "zero_fixed",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloorViolation {
    pub check: FloorCheck,
    pub input: Rational,
    pub output: Rational,
    /// For class consistency: the perturbed input whose floor differed.
    pub witness: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloorReport {
    pub samples_checked: usize,
    pub perturbations_per_sample: usize,
    pub violations: Vec<FloorViolation>,
}

impl FloorReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the floor axioms on `samples`, perturbing each one by
/// `perturbations` random elements of `pZ_p`.
pub fn validate_floor<R: Rng + ?Sized>(
    s: &FloorFunction,
    samples: &[Rational],
    perturbations: usize,
    rng: &mut R,
) -> FloorReport {
    let p = s.prime();
    let mut violations = Vec::new();
    let zero = Rational::zero();
    let s0 = s.apply(&zero);
    if !s0.is_zero() {
        violations.push(FloorViolation { check: FloorCheck::ZeroFixed, input: zero, output: s0, witness: None });
    }
    for q in samples {
        let out = s.apply(q);
        if !in_z_inv_p(&out, p) {
            violations.push(FloorViolation {
                check: FloorCheck::Image,
                input: q.clone(),
                output: out.clone(),
                witness: None,
            });
        }
        if !matches!(vp(&(q - &out), p), Valuation::Infinity | Valuation::Finite(1..)) {
            violations.push(FloorViolation {
                check: FloorCheck::Approximation,
                input: q.clone(),
                output: out.clone(),
                witness: None,
            });
        }
        for _ in 0..perturbations {
            let t = random_p_integral(p, rng);
            let shifted = q + p.as_rational() * t;
            let out2 = s.apply(&shifted);
            if out2 != out {
                violations.push(FloorViolation {
                    check: FloorCheck::ClassConsistency,
                    input: q.clone(),
                    output: out.clone(),
                    witness: Some(shifted),
                });
                break;
            }
        }
    }
    FloorReport { samples_checked: samples.len(), perturbations_per_sample: perturbations, violations }
}

/// A random rational with `v_p >= 0`: an integer or a fraction whose
/// denominator is coprime to `p`.
fn random_p_integral<R: Rng + ?Sized>(p: Prime, rng: &mut R) -> Rational {
    let num: i64 = rng.gen_range(-10_000..=10_000);
    let mut den: i64 = rng.gen_range(1..=1_000);
    while den % p.get() as i64 == 0 {
        den += 1;
    }
    Rational::new(BigInt::from(num), BigInt::from(den))
}
