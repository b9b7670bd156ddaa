//! Letter streams for automatic, Sturmian, periodic and palindromic words.

mod dfao;
mod sturmian;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_integer::Roots;

pub use dfao::{dfao_eval, Dfao};
pub use sturmian::{fibonacci_letter, QuadraticIrrational, Rounding, Sturmian};

use crate::padic::{is_polar, Prime};
use crate::rational::Rational;

pub type Symbol = char;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("invalid automaton: {0}")]
    InvalidDfao(&'static str),
    #[error("invalid Sturmian slope: {0}")]
    InvalidSlope(&'static str),
    #[error("invalid generator parameters: {0}")]
    InvalidParameters(&'static str),
    #[error("letters are indexed from 1")]
    ZeroIndex,
    #[error("symbol {0:?} is not in the alphabet map")]
    UnmappedSymbol(Symbol),
    #[error("alphabet map sends two symbols to the same value")]
    DuplicateValues,
    #[error("letter {index} has value {value} with |value|_p <= 1")]
    NotPolar { index: usize, value: Rational },
}

/// How the seed list `R_0, R_1, ...` of a palindromic closure continues past
/// its end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedMode {
    /// `R_n = seeds[n mod len]`.
    Cycle,
    /// `R_n = seeds[len - 1]` for `n >= len`.
    RepeatLast,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Staircase {
    /// Concatenation of `0^i 1^i` for `i = 1, 2, ...`.
    ZeroOne,
    /// Groups `b_{2^n} .. b_{2^{n+1}-1}` followed by their mirror image,
    /// with `b_i = 0 1^i`.
    MirroredBlocks,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    ThueMorse,
    RudinShapiro,
    Paperfolding,
    Fibonacci,
    Sturmian(Sturmian),
    /// `letter(n) = machine.eval(n - 1 + offset)`.
    Dfao {
        machine: Dfao,
        offset: u64,
    },
    Periodic {
        preperiod: Vec<Symbol>,
        period: Vec<Symbol>,
    },
    PalindromicClosure {
        seeds: Vec<Vec<Symbol>>,
        mode: SeedMode,
    },
    BlockStaircase(Staircase),
    /// A finite word; letters past its end are out of range.
    Explicit(Vec<Symbol>),
}

impl Generator {
    pub fn name(&self) -> &'static str {
        match self {
            Generator::ThueMorse => "thue_morse",
            Generator::RudinShapiro => "rudin_shapiro",
            Generator::Paperfolding => "paperfolding",
            Generator::Fibonacci => "fibonacci",
            Generator::Sturmian(_) => "sturmian",
            Generator::Dfao { .. } => "dfao",
            Generator::Periodic { .. } => "periodic",
            Generator::PalindromicClosure { .. } => "palindromic_closure",
            Generator::BlockStaircase(_) => "block_staircase",
            Generator::Explicit(_) => "explicit",
        }
    }

    fn validate(&self) -> Result<(), WordError> {
        match self {
            Generator::Periodic { period, .. } if period.is_empty() => {
                Err(WordError::InvalidParameters("period must be nonempty"))
            }
            Generator::PalindromicClosure { seeds, .. } if seeds.is_empty() || seeds.iter().any(Vec::is_empty) => {
                Err(WordError::InvalidParameters("seeds must be nonempty words"))
            }
            _ => Ok(()),
        }
    }

    /// Whether `letter(n)` is computed directly rather than by building a
    /// prefix.
    fn is_indexed(&self) -> bool {
        !matches!(self, Generator::PalindromicClosure { .. } | Generator::BlockStaircase(Staircase::MirroredBlocks))
    }

    fn indexed_letter(&self, n: u64) -> Option<Symbol> {
        debug_assert!(n >= 1);
        Some(match self {
            Generator::ThueMorse => {
                if (n - 1).count_ones().is_multiple_of(2) {
                    'a'
                } else {
                    'b'
                }
            }
            Generator::RudinShapiro => {
                let m = n - 1;
                if (m & (m >> 1)).count_ones().is_multiple_of(2) {
                    'a'
                } else {
                    'b'
                }
            }
            Generator::Paperfolding => {
                if (n >> n.trailing_zeros()) % 4 == 1 {
                    'a'
                } else {
                    'b'
                }
            }
            Generator::Fibonacci => fibonacci_letter(n),
            Generator::Sturmian(s) => s.letter(n),
            Generator::Dfao { machine, offset } => machine.eval(n - 1 + offset),
            Generator::Periodic { preperiod, period } => {
                let i = (n - 1) as usize;
                if i < preperiod.len() {
                    preperiod[i]
                } else {
                    period[(i - preperiod.len()) % period.len()]
                }
            }
            Generator::BlockStaircase(Staircase::ZeroOne) => {
                // Block i occupies positions i(i-1) .. i(i+1) - 1.
                let pos = n - 1;
                let mut i = (1 + 4 * pos).sqrt().div_ceil(2);
                while i * (i - 1) > pos {
                    i -= 1;
                }
                while (i + 1) * i <= pos {
                    i += 1;
                }
                if pos - i * (i - 1) < i {
                    '0'
                } else {
                    '1'
                }
            }
            Generator::Explicit(w) => return w.get((n - 1) as usize).copied(),
            Generator::PalindromicClosure { .. } | Generator::BlockStaircase(Staircase::MirroredBlocks) => return None,
        })
    }

    fn materialize(&self, len: usize) -> Vec<Symbol> {
        match self {
            Generator::PalindromicClosure { seeds, mode } => {
                let seed = |n: usize| match mode {
                    SeedMode::Cycle => &seeds[n % seeds.len()],
                    SeedMode::RepeatLast => &seeds[n.min(seeds.len() - 1)],
                };
                let mut t: Vec<Symbol> = seed(0).clone();
                let mut n = 0;
                while t.len() < len {
                    n += 1;
                    t.extend_from_slice(seed(n));
                    let mirror: Vec<Symbol> = t.iter().rev().copied().collect();
                    t.extend(mirror);
                }
                t.truncate(len);
                t
            }
            Generator::BlockStaircase(Staircase::MirroredBlocks) => {
                let mut out = Vec::with_capacity(len);
                let mut group = 0u32;
                while out.len() < len {
                    let start = out.len();
                    for i in (1u64 << group)..(1u64 << (group + 1)) {
                        out.push('0');
                        out.extend(core::iter::repeat_n('1', i as usize));
                        if out.len() >= len {
                            break;
                        }
                    }
                    let mirror: Vec<Symbol> = out[start..].iter().rev().copied().collect();
                    out.extend(mirror);
                    group += 1;
                }
                out.truncate(len);
                out
            }
            g => (1..=len as u64).map_while(|n| g.indexed_letter(n)).collect(),
        }
    }
}

/// A word generator together with the values assigned to its symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordSpec {
    generator: Generator,
    alphabet: BTreeMap<Symbol, Rational>,
}

impl WordSpec {
    /// An empty `alphabet` leaves the word unmapped; only symbols are
    /// available.
    pub fn new(generator: Generator, alphabet: BTreeMap<Symbol, Rational>) -> Result<Self, WordError> {
        generator.validate()?;
        let mut seen: Vec<&Rational> = alphabet.values().collect();
        seen.sort();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(WordError::DuplicateValues);
        }
        Ok(WordSpec { generator, alphabet })
    }

    pub fn unmapped(generator: Generator) -> Result<Self, WordError> {
        Self::new(generator, BTreeMap::new())
    }

    pub fn generator(&self) -> &Generator {
        &self.generator
    }

    pub fn alphabet(&self) -> &BTreeMap<Symbol, Rational> {
        &self.alphabet
    }

    fn check_symbol(&self, sym: Symbol) -> Result<Symbol, WordError> {
        if !self.alphabet.is_empty() && !self.alphabet.contains_key(&sym) {
            return Err(WordError::UnmappedSymbol(sym));
        }
        Ok(sym)
    }

    /// The `n`-th letter, `n >= 1`.
    pub fn letter(&self, n: u64) -> Result<Symbol, WordError> {
        if n == 0 {
            return Err(WordError::ZeroIndex);
        }
        let sym = if self.generator.is_indexed() {
            self.generator.indexed_letter(n)
        } else {
            self.generator.materialize(n as usize).last().copied()
        };
        let sym = sym.ok_or(WordError::InvalidParameters("index past the end of an explicit word"))?;
        self.check_symbol(sym)
    }

    /// Letters `1..=len`; shorter only for an explicit word.
    pub fn symbols(&self, len: usize) -> Result<Vec<Symbol>, WordError> {
        let word = self.generator.materialize(len);
        for &s in &word {
            self.check_symbol(s)?;
        }
        Ok(word)
    }

    pub fn value_of(&self, sym: Symbol) -> Result<&Rational, WordError> {
        self.alphabet.get(&sym).ok_or(WordError::UnmappedSymbol(sym))
    }

    /// Mapped values of letters `1..=len`. With `partial_quotients = Some(p)`
    /// every value must satisfy `|v|_p > 1`.
    pub fn prefix(&self, len: usize, partial_quotients: Option<Prime>) -> Result<Vec<Rational>, WordError> {
        let syms = self.symbols(len)?;
        let mut out = Vec::with_capacity(syms.len());
        for (i, s) in syms.into_iter().enumerate() {
            let v = self.value_of(s)?.clone();
            if let Some(p) = partial_quotients {
                if !is_polar(&v, p) {
                    return Err(WordError::NotPolar { index: i + 1, value: v });
                }
            }
            out.push(v);
        }
        Ok(out)
    }
}
