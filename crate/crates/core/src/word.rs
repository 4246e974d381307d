//! Alphabets, words and embeddings.
//!
//! Symbols are small nonnegative integers and their numeric order is the
//! alphabet order used by every lexicographic comparison in the crate.
//! Positions in public contracts are 1-based, matching the usual notation
//! `w[1..n]`; slices underneath are 0-based.

use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Symbol = u32;

/// A non-empty, strictly increasing list of symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Symbol>", into = "Vec<Symbol>")]
pub struct Alphabet {
    symbols: Vec<Symbol>,
}

impl Alphabet {
    pub fn new(mut symbols: Vec<Symbol>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet must not be empty".into()));
        }
        let len = symbols.len();
        symbols.sort_unstable();
        symbols.dedup();
        if symbols.len() != len {
            return Err(Error::InvalidAlphabet("duplicate symbols".into()));
        }
        Ok(Alphabet { symbols })
    }

    /// The alphabet `{0, 1, ..., size - 1}`.
    pub fn range(size: usize) -> Result<Self> {
        Alphabet::new((0..size as Symbol).collect())
    }

    /// The smallest alphabet containing every symbol of the given words,
    /// or `{0}` when all of them are empty.
    pub fn of_words<'a>(words: impl IntoIterator<Item = &'a Word>) -> Self {
        let mut symbols: Vec<Symbol> = words.into_iter().flat_map(|w| w.iter().copied()).collect();
        symbols.sort_unstable();
        symbols.dedup();
        if symbols.is_empty() {
            symbols.push(0);
        }
        Alphabet { symbols }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn iter(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.symbols.iter().copied()
    }

    /// Position of `symbol` in the alphabet order.
    pub fn rank(&self, symbol: Symbol) -> Option<usize> {
        self.symbols.binary_search(&symbol).ok()
    }

    pub fn symbol(&self, rank: usize) -> Symbol {
        self.symbols[rank]
    }

    pub fn contains(&self, symbol: Symbol) -> bool {
        self.rank(symbol).is_some()
    }

    pub fn validate(&self, word: &Word) -> Result<()> {
        match word.iter().find(|&&s| !self.contains(s)) {
            Some(&symbol) => Err(Error::UnknownSymbol { symbol }),
            None => Ok(()),
        }
    }

    /// Maps a word onto symbol ranks.
    pub fn ranks(&self, word: &Word) -> Result<Vec<usize>> {
        word.iter()
            .map(|&s| self.rank(s).ok_or(Error::UnknownSymbol { symbol: s }))
            .collect()
    }

    /// Every word of exactly `len` symbols, in lexicographic order.
    pub fn words_of_len(&self, len: usize) -> WordsOfLen<'_> {
        WordsOfLen {
            alphabet: self,
            ranks: vec![0; len],
            done: false,
        }
    }
}

impl TryFrom<Vec<Symbol>> for Alphabet {
    type Error = Error;

    fn try_from(symbols: Vec<Symbol>) -> Result<Self> {
        Alphabet::new(symbols)
    }
}

impl From<Alphabet> for Vec<Symbol> {
    fn from(a: Alphabet) -> Self {
        a.symbols
    }
}

/// Iterator over `Σ^len` in lexicographic order.
pub struct WordsOfLen<'a> {
    alphabet: &'a Alphabet,
    ranks: Vec<usize>,
    done: bool,
}

impl Iterator for WordsOfLen<'_> {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.done {
            return None;
        }
        let word = Word(self.ranks.iter().map(|&r| self.alphabet.symbol(r)).collect());
        // odometer increment, rightmost digit fastest
        let sigma = self.alphabet.len();
        let mut i = self.ranks.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.ranks[i] += 1;
            if self.ranks[i] < sigma {
                break;
            }
            self.ranks[i] = 0;
        }
        Some(word)
    }
}

/// A finite sequence of symbols.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn into_inner(self) -> Vec<Symbol> {
        self.0
    }

    /// The 1-based factor `w[i..j]`, empty when `i > j`. Out-of-range
    /// bounds are clamped to the word.
    pub fn factor(&self, i: usize, j: usize) -> Word {
        let lo = i.max(1);
        let hi = j.min(self.len());
        if lo > hi {
            return Word::empty();
        }
        Word(self.0[lo - 1..hi].to_vec())
    }

    /// `|w|_a`
    pub fn count(&self, a: Symbol) -> usize {
        self.iter().filter(|&&s| s == a).count()
    }

    /// `alph(w)` in alphabet order.
    pub fn alph(&self) -> Vec<Symbol> {
        let mut v = self.0.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Shortlex order: shorter words first, ties broken lexicographically.
    pub fn shortlex_cmp(&self, other: &Word) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl Deref for Word {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl From<&[Symbol]> for Word {
    fn from(v: &[Symbol]) -> Self {
        Word(v.to_vec())
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Letters are printed as `a`, `b`, ... for symbols below 26, otherwise as
/// bracketed integers.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("ε");
        }
        for &s in self.iter() {
            if s < 26 {
                write!(f, "{}", (b'a' + s as u8) as char)?;
            } else {
                write!(f, "[{s}]")?;
            }
        }
        Ok(())
    }
}

/// Parses the letters `a..z` into symbols `0..25`. Test and example helper.
pub fn word(s: &str) -> Word {
    s.bytes()
        .map(|b| {
            assert!(b.is_ascii_lowercase(), "word() takes lowercase ascii letters");
            (b - b'a') as Symbol
        })
        .collect()
}

/// A strictly increasing sequence of 1-based positions into a target word.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Embedding(Vec<usize>);

impl Embedding {
    pub fn new(positions: Vec<usize>) -> Result<Self> {
        if positions.first() == Some(&0) {
            return Err(Error::arg("embedding positions are 1-based"));
        }
        if positions.windows(2).any(|p| p[0] >= p[1]) {
            return Err(Error::arg("embedding positions must be strictly increasing"));
        }
        Ok(Embedding(positions))
    }

    pub(crate) fn from_sorted(positions: Vec<usize>) -> Self {
        debug_assert!(positions.windows(2).all(|p| p[0] < p[1]));
        Embedding(positions)
    }

    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `e(k) - e(1) + 1`, or 0 for the empty embedding.
    pub fn span(&self) -> usize {
        match (self.0.first(), self.0.last()) {
            (Some(a), Some(b)) => b - a + 1,
            _ => 0,
        }
    }

    /// The `j`-th gap (1-based), `w[e(j)+1 .. e(j+1)-1]`.
    pub fn gap(&self, w: &Word, j: usize) -> Word {
        w.factor(self.0[j - 1] + 1, self.0[j] - 1)
    }

    fn check(&self, w: &Word) -> Result<()> {
        match self.0.last() {
            Some(&last) if last > w.len() => Err(Error::arg(format!(
                "embedding position {last} exceeds word length {}",
                w.len()
            ))),
            _ => Ok(()),
        }
    }
}

/// The subsequence `w[e(1)] w[e(2)] ... w[e(k)]` induced by `e`.
pub fn subseq_of_embedding(w: &Word, e: &Embedding) -> Result<Word> {
    e.check(w)?;
    Ok(e.positions().iter().map(|&p| w[p - 1]).collect())
}

/// Leftmost greedy test for `u ⪯ w`.
pub fn is_subsequence(u: &[Symbol], w: &[Symbol]) -> bool {
    let mut it = w.iter();
    u.iter().all(|a| it.any(|b| b == a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_rejects_duplicates_and_empty() {
        assert!(Alphabet::new(vec![]).is_err());
        assert!(Alphabet::new(vec![1, 1]).is_err());
        let a = Alphabet::new(vec![3, 1, 2]).unwrap();
        assert_eq!(a.symbols(), &[1, 2, 3]);
        assert_eq!(a.rank(2), Some(1));
        assert_eq!(a.rank(7), None);
    }

    #[test]
    fn subseq_of_embedding_examples() {
        let w = word("abba");
        let e = Embedding::new(vec![1, 3]).unwrap();
        assert_eq!(subseq_of_embedding(&w, &e).unwrap(), word("ab"));
        let e = Embedding::new(vec![]).unwrap();
        assert_eq!(subseq_of_embedding(&word("ab"), &e).unwrap(), Word::empty());
        let e = Embedding::new(vec![2, 4]).unwrap();
        assert_eq!(subseq_of_embedding(&word("bbaa"), &e).unwrap(), word("ba"));
    }

    #[test]
    fn embedding_out_of_range() {
        let e = Embedding::new(vec![1, 5]).unwrap();
        let err = subseq_of_embedding(&word("abba"), &e).unwrap_err();
        assert_eq!(err.code(), "input_error");
        assert!(Embedding::new(vec![2, 2]).is_err());
        assert!(Embedding::new(vec![0, 2]).is_err());
    }

    #[test]
    fn words_of_len_is_lexicographic() {
        let a = Alphabet::range(2).unwrap();
        let all: Vec<String> = a.words_of_len(2).map(|w| w.to_string()).collect();
        assert_eq!(all, ["aa", "ab", "ba", "bb"]);
        assert_eq!(a.words_of_len(0).count(), 1);
    }

    #[test]
    fn factor_clamps() {
        let w = word("abcd");
        assert_eq!(w.factor(2, 3), word("bc"));
        assert_eq!(w.factor(0, 9), w);
        assert_eq!(w.factor(3, 2), Word::empty());
    }

    #[test]
    fn greedy_subsequence() {
        assert!(is_subsequence(&word("ab"), &word("xaxb".replace('x', "c").as_str())));
        assert!(!is_subsequence(&word("ba"), &word("ab")));
        assert!(is_subsequence(&[], &[]));
    }
}
