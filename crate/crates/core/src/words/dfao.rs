use alloc::vec;
use alloc::vec::Vec;

use super::{Symbol, WordError};

/// Deterministic finite automaton with output, reading base-`k` digits
/// most significant first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfao {
    base: u32,
    initial: usize,
    /// `transitions[state][digit]`.
    transitions: Vec<Vec<usize>>,
    outputs: Vec<Symbol>,
}

impl Dfao {
    pub fn new(
        base: u32,
        initial: usize,
        transitions: Vec<Vec<usize>>,
        outputs: Vec<Symbol>,
    ) -> Result<Self, WordError> {
        let states = transitions.len();
        if base < 2 {
            return Err(WordError::InvalidDfao("base must be at least 2"));
        }
        if states == 0 || outputs.len() != states {
            return Err(WordError::InvalidDfao("one output per state is required"));
        }
        if initial >= states {
            return Err(WordError::InvalidDfao("initial state out of range"));
        }
        for row in &transitions {
            if row.len() != base as usize {
                return Err(WordError::InvalidDfao("transitions must be total on the digits"));
            }
            if row.iter().any(|&t| t >= states) {
                return Err(WordError::InvalidDfao("transition target out of range"));
            }
        }
        Ok(Dfao { base, initial, transitions, outputs })
    }

    /// Two states toggled by the digit 1.
    pub fn thue_morse() -> Self {
        Dfao::new(2, 0, vec![vec![0, 1], vec![1, 0]], vec!['a', 'b']).expect("valid")
    }

    /// States (last bit, parity of `11` blocks).
    pub fn rudin_shapiro() -> Self {
        // 0: last 0, even; 1: last 1, even; 2: last 0, odd; 3: last 1, odd
        Dfao::new(2, 0, vec![vec![0, 1], vec![0, 3], vec![2, 3], vec![2, 1]], vec!['a', 'a', 'b', 'b']).expect("valid")
    }

    /// States (last bit read, bit preceding the most recent 1); the output
    /// depends on `m mod 4` for `n = 2^k m`, `m` odd.
    pub fn paperfolding() -> Self {
        // 0: nothing read yet / last 0, ans 0; 1: last 1, ans 0;
        // 2: last 0, ans 1; 3: last 1, ans 1
        Dfao::new(2, 0, vec![vec![0, 1], vec![0, 3], vec![2, 1], vec![2, 3]], vec!['a', 'a', 'b', 'b']).expect("valid")
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn transitions(&self) -> &[Vec<usize>] {
        &self.transitions
    }

    pub fn outputs(&self) -> &[Symbol] {
        &self.outputs
    }

    /// Output of the state reached after reading the digits of `n`; `n = 0`
    /// reads nothing.
    pub fn eval(&self, n: u64) -> Symbol {
        let mut digits = Vec::new();
        let mut m = n;
        while m > 0 {
            digits.push((m % self.base as u64) as usize);
            m /= self.base as u64;
        }
        let state = digits.iter().rev().fold(self.initial, |s, &d| self.transitions[s][d]);
        self.outputs[state]
    }
}

pub fn dfao_eval(m: &Dfao, n: u64) -> Symbol {
    m.eval(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thue_morse_examples() {
        let tm = Dfao::thue_morse();
        assert_eq!(tm.eval(3), 'a');
        assert_eq!(tm.eval(0), 'a');
        assert_eq!(tm.eval(4), 'b');
    }

    #[test]
    fn thue_morse_matches_bit_parity() {
        let tm = Dfao::thue_morse();
        for n in 0..(1u64 << 16) {
            let expected = if n.count_ones() % 2 == 0 { 'a' } else { 'b' };
            assert_eq!(tm.eval(n), expected, "n = {n}");
        }
    }

    #[test]
    fn rudin_shapiro_matches_block_count() {
        let rs = Dfao::rudin_shapiro();
        for n in 0..4096u64 {
            let blocks = (n & (n >> 1)).count_ones();
            let expected = if blocks % 2 == 0 { 'a' } else { 'b' };
            assert_eq!(rs.eval(n), expected, "n = {n}");
        }
    }

    #[test]
    fn paperfolding_matches_odd_part() {
        let pf = Dfao::paperfolding();
        for n in 1..4096u64 {
            let m = n >> n.trailing_zeros();
            let expected = if m % 4 == 1 { 'a' } else { 'b' };
            assert_eq!(pf.eval(n), expected, "n = {n}");
        }
    }

    #[test]
    fn malformed_automata() {
        assert!(Dfao::new(1, 0, vec![vec![0]], vec!['a']).is_err());
        assert!(Dfao::new(2, 0, vec![vec![0]], vec!['a']).is_err());
        assert!(Dfao::new(2, 0, vec![vec![0, 2]], vec!['a']).is_err());
        assert!(Dfao::new(2, 1, vec![vec![0, 0]], vec!['a']).is_err());
        assert!(Dfao::new(2, 0, vec![vec![0, 0]], vec![]).is_err());
    }
}
