use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Alphabet, Symbol, Word};

/// A complete deterministic finite automaton over a fixed alphabet.
///
/// Transitions live in a dense `state_count × σ` table indexed by symbol
/// rank, so every `(state, symbol)` pair has exactly one successor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dfa {
    alphabet: Alphabet,
    state_count: usize,
    start: usize,
    accepting: Vec<bool>,
    table: Vec<usize>,
}

impl Dfa {
    /// Builds a DFA from an explicit transition list. Missing or duplicate
    /// `(state, symbol)` entries are rejected rather than completed.
    pub fn new(
        alphabet: Alphabet,
        state_count: usize,
        start: usize,
        accepting: &[usize],
        transitions: &[(usize, Symbol, usize)],
    ) -> Result<Self> {
        if state_count == 0 {
            return Err(Error::InvalidDfa("a DFA needs at least one state".into()));
        }
        if start >= state_count {
            return Err(Error::InvalidDfa(format!("start state {start} out of range")));
        }
        let sigma = alphabet.len();
        let mut acc = vec![false; state_count];
        for &q in accepting {
            if q >= state_count {
                return Err(Error::InvalidDfa(format!("accepting state {q} out of range")));
            }
            acc[q] = true;
        }
        let mut table = vec![usize::MAX; state_count * sigma];
        for &(from, symbol, to) in transitions {
            if from >= state_count || to >= state_count {
                return Err(Error::InvalidDfa(format!(
                    "transition {from} -{symbol}-> {to} uses an unknown state"
                )));
            }
            let r = alphabet.rank(symbol).ok_or(Error::UnknownSymbol { symbol })?;
            let slot = &mut table[from * sigma + r];
            if *slot != usize::MAX {
                return Err(Error::InvalidDfa(format!(
                    "state {from} has two transitions on symbol {symbol}"
                )));
            }
            *slot = to;
        }
        if let Some(i) = table.iter().position(|&t| t == usize::MAX) {
            return Err(Error::InvalidDfa(format!(
                "incomplete: state {} has no transition on symbol {}",
                i / sigma,
                alphabet.symbol(i % sigma)
            )));
        }
        Ok(Dfa {
            alphabet,
            state_count,
            start,
            accepting: acc,
            table,
        })
    }

    /// Two-state DFA accepting `allowed*`: a loop on the allowed symbols and
    /// a rejecting sink for the rest.
    pub fn star(alphabet: Alphabet, allowed: &[Symbol]) -> Result<Self> {
        let mut transitions = Vec::new();
        for s in alphabet.iter() {
            transitions.push((0, s, if allowed.contains(&s) { 0 } else { 1 }));
            transitions.push((1, s, 1));
        }
        Dfa::new(alphabet, 2, 0, &[0], &transitions)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn accepting_states(&self) -> Vec<usize> {
        (0..self.state_count).filter(|&q| self.accepting[q]).collect()
    }

    /// Number of entries in the transition table.
    pub fn transition_count(&self) -> usize {
        self.table.len()
    }

    #[inline]
    pub fn step_rank(&self, state: usize, rank: usize) -> usize {
        self.table[state * self.alphabet.len() + rank]
    }

    pub fn step(&self, state: usize, symbol: Symbol) -> Result<usize> {
        let r = self
            .alphabet
            .rank(symbol)
            .ok_or(Error::UnknownSymbol { symbol })?;
        Ok(self.step_rank(state, r))
    }

    pub fn run(&self, word: &[Symbol]) -> Result<usize> {
        word.iter().try_fold(self.start, |q, &s| self.step(q, s))
    }

    pub fn accepts(&self, word: &Word) -> Result<bool> {
        Ok(self.accepting[self.run(word)?])
    }

    /// `(from, symbol, to)` for every table entry, ordered by state then symbol.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, Symbol, usize)> + '_ {
        let sigma = self.alphabet.len();
        self.table
            .iter()
            .enumerate()
            .map(move |(i, &to)| (i / sigma, self.alphabet.symbol(i % sigma), to))
    }
}
