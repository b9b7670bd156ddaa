//! Exact p-adic continued fractions under pluggable floor functions.
//!
//! The crate covers the expansion algorithm and its continuant identities,
//! the classical word families used as partial-quotient sequences, prefix
//! detectors for repetitive structure, and checks of the explicit
//! hypotheses under which a p-adic continued fraction is known to be
//! rational, quadratic or transcendental. Every quantity is an exact
//! rational; p-adic absolute values are integer exponents of `p`.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]
// Error payloads carry the offending exact rationals.
#![allow(clippy::result_large_err)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod approx;
pub mod certify;
pub mod cf;
pub mod combinatorics;
pub mod floor;
pub mod padic;
pub mod quadratic;
pub mod rational;
pub mod words;

pub use approx::{hensel_sqrt, PAdicApprox};
pub use cf::{continuants, eval_cf, expand, tail_reconstruct, verify_identities, ExpansionRecord};
pub use floor::{floor_apply, validate_floor, Builtin, FloorFunction};
pub use padic::{abs_p, canonical_digits, vp, weil_height, PAdicNorm, Prime, Valuation};
pub use rational::{format_rational, parse_rational, Rational};
