//! Exhaustive reference implementations.
//!
//! Everything here works straight from the definitions by enumerating
//! embeddings, edit scripts or candidate words. The routines are
//! exponential and guarded by explicit limits; they exist to be obviously
//! correct, and every efficient algorithm in the crate is tested against
//! them.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{check_budget, Error, Result};
use crate::gap::{gap_satisfied, GapTuple};
use crate::word::{Alphabet, Symbol, Word};

pub const DEFAULT_EMBEDDING_BUDGET: u64 = 10_000_000;

/// Side condition applied to every enumerated embedding.
#[derive(Debug, Clone, Copy)]
pub enum Mode<'a> {
    Classic,
    /// Span `e(k) - e(1) + 1` at most `p`.
    Range(usize),
    Gc(&'a GapTuple),
}

/// Subsequences of a fixed length with their embedding counts.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubseqMultiset(BTreeMap<Word, BigUint>);

impl SubseqMultiset {
    pub fn get(&self, u: &Word) -> Option<&BigUint> {
        self.0.get(u)
    }

    pub fn contains(&self, u: &Word) -> bool {
        self.0.contains_key(u)
    }

    pub fn keys(&self) -> impl Iterator<Item = &Word> {
        self.0.keys()
    }

    pub fn key_set(&self) -> BTreeSet<Word> {
        self.0.keys().cloned().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &BigUint)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> BigUint {
        self.0.values().sum()
    }

    pub fn into_map(self) -> BTreeMap<Word, BigUint> {
        self.0
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Counts, for each length-`k` word, the embeddings into `w` that satisfy
/// the mode's side condition.
pub fn enumerate_subseq(w: &Word, k: usize, mode: Mode<'_>, budget: u64) -> Result<SubseqMultiset> {
    if let Mode::Gc(gc) = mode {
        gc.check_arity(k)?;
        if k == 0 && !gc.is_empty() {
            return Err(Error::ArityMismatch {
                expected: 0,
                actual: gc.len(),
            });
        }
    }
    check_budget("embedding enumeration", binomial(w.len(), k), budget)?;
    let mut out: BTreeMap<Word, BigUint> = BTreeMap::new();
    let n = w.len();
    if k > n {
        return Ok(SubseqMultiset(out));
    }
    // positions are 0-based in `idx`
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if admissible(w, &idx, mode)? {
            let u: Word = idx.iter().map(|&i| w[i]).collect();
            *out.entry(u).or_default() += BigUint::one();
        }
        // next k-combination in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(SubseqMultiset(out));
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn admissible(w: &Word, idx: &[usize], mode: Mode<'_>) -> Result<bool> {
    match mode {
        Mode::Classic => Ok(true),
        Mode::Range(p) => Ok(match (idx.first(), idx.last()) {
            (Some(a), Some(b)) => b - a < p,
            _ => true,
        }),
        Mode::Gc(gc) => {
            for (j, pair) in idx.windows(2).enumerate() {
                let gap: Word = w[pair[0] + 1..pair[1]].into();
                if !gap_satisfied(gc.get(j), &gap)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// Every subsequence of `w` of any length admitted by the mode (for `Gc`
/// only the single length `|gc| + 1` applies).
pub fn all_subsequences(w: &Word, mode: Mode<'_>, budget: u64) -> Result<HashSet<Word>> {
    let mut set = HashSet::new();
    for k in 0..=w.len() {
        set.extend(enumerate_subseq(w, k, mode, budget)?.into_map().into_keys());
    }
    Ok(set)
}

/// `Subseq_≤k(w)`
pub fn subseq_upto(w: &Word, k: usize, budget: u64) -> Result<BTreeSet<Word>> {
    let mut set = BTreeSet::new();
    for len in 0..=k.min(w.len()) {
        set.extend(enumerate_subseq(w, len, Mode::Classic, budget)?.into_map().into_keys());
    }
    Ok(set)
}

/// Hard limits for the exponential oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleLimits {
    pub max_len: usize,
    pub max_sigma: usize,
    pub max_k: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_len: 8,
            max_sigma: 3,
            max_k: 3,
        }
    }
}

impl OracleLimits {
    fn check(&self, what: &'static str, w: &Word, sigma: &Alphabet, k: Option<usize>) -> Result<()> {
        let over = w.len() > self.max_len
            || sigma.len() > self.max_sigma
            || k.is_some_and(|k| k > self.max_k);
        if over {
            return Err(Error::BudgetExceeded {
                what,
                required: w.len().max(sigma.len()).max(k.unwrap_or(0)) as u128,
                budget: self.max_len.min(self.max_sigma).min(self.max_k) as u64,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EditOp {
    /// Reach universality index at least `k` by insertions.
    Insert,
    /// Reach universality index exactly `k` by deletions.
    Delete,
    /// Reach universality index at least `k` by substitutions.
    Substitute,
    /// Reach universality index exactly `k` by substitutions.
    SubstituteExact,
}

/// `Σ^k ⊆ Subseq(u)` by trying every word of `Σ^k`.
fn k_universal_brute(u: &[Symbol], sigma: &Alphabet, k: usize) -> bool {
    sigma
        .words_of_len(k)
        .all(|x| naive_subsequence(&x, u))
}

fn naive_subsequence(x: &[Symbol], u: &[Symbol]) -> bool {
    let mut j = 0;
    for &s in u {
        if j < x.len() && x[j] == s {
            j += 1;
        }
    }
    j == x.len()
}

/// Minimum number of edits of one kind turning `w` into a word with the
/// target universality index, by exhaustive search.
pub fn edit_min_oracle(
    w: &Word,
    sigma: &Alphabet,
    k: usize,
    op: EditOp,
    limits: &OracleLimits,
) -> Result<usize> {
    limits.check("edit-distance oracle", w, sigma, Some(k))?;
    sigma.validate(w)?;
    let n = w.len();
    let exactly = |u: &[Symbol]| k_universal_brute(u, sigma, k) && !k_universal_brute(u, sigma, k + 1);
    match op {
        EditOp::Insert => {
            let mut level: HashSet<Vec<Symbol>> = HashSet::from([w.to_vec()]);
            // appending k copies of the alphabet always works
            for cost in 0..=k * sigma.len() {
                if level.iter().any(|u| k_universal_brute(u, sigma, k)) {
                    return Ok(cost);
                }
                let mut next = HashSet::new();
                for u in &level {
                    for pos in 0..=u.len() {
                        for a in sigma.iter() {
                            let mut v = u.clone();
                            v.insert(pos, a);
                            next.insert(v);
                        }
                    }
                }
                level = next;
            }
            unreachable!("k copies of the alphabet are k-universal")
        }
        EditOp::Delete => {
            if !k_universal_brute(w, sigma, k) {
                return Err(Error::arg("deletions cannot raise the universality index"));
            }
            let mut best = usize::MAX;
            for mask in 0u32..(1 << n) {
                let kept: Vec<Symbol> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| w[i]).collect();
                if exactly(&kept) {
                    best = best.min(n - kept.len());
                }
            }
            Ok(best)
        }
        EditOp::Substitute | EditOp::SubstituteExact => {
            if k * sigma.len() > n {
                return Err(Error::arg("no word of this length is k-universal"));
            }
            let mut best = usize::MAX;
            for candidate in sigma.words_of_len(n) {
                let ok = match op {
                    EditOp::Substitute => k_universal_brute(&candidate, sigma, k),
                    _ => exactly(&candidate),
                };
                if ok {
                    let dist = candidate.iter().zip(w.iter()).filter(|(a, b)| a != b).count();
                    best = best.min(dist);
                }
            }
            if best == usize::MAX {
                return Err(Error::arg("target universality index unreachable by substitutions"));
            }
            Ok(best)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AbsentVariant {
    Sas,
    Mas,
    PSas(usize),
    PMas(usize),
}

/// The exact set of shortest or minimal absent (p-)subsequences of `w`.
///
/// Candidates are every present word extended by one letter: each word of
/// every variant has its longest proper prefix present, so this covers all
/// of them, and it bounds candidate length by `|w| + 1`.
pub fn absent_enum_oracle(
    w: &Word,
    sigma: &Alphabet,
    variant: AbsentVariant,
    limits: &OracleLimits,
) -> Result<BTreeSet<Word>> {
    limits.check("absent-subsequence oracle", w, sigma, None)?;
    sigma.validate(w)?;
    let mode = match variant {
        AbsentVariant::Sas | AbsentVariant::Mas => Mode::Classic,
        AbsentVariant::PSas(p) | AbsentVariant::PMas(p) => Mode::Range(p),
    };
    let present = all_subsequences(w, mode, DEFAULT_EMBEDDING_BUDGET)?;
    let mut absent: Vec<Word> = Vec::new();
    for y in &present {
        for a in sigma.iter() {
            let mut x = y.clone();
            x.0.push(a);
            if !present.contains(&x) {
                absent.push(x);
            }
        }
    }
    absent.sort();
    absent.dedup();
    let out = match variant {
        AbsentVariant::Sas | AbsentVariant::PSas(_) => {
            let min = absent.iter().map(|x| x.len()).min().unwrap_or(0);
            absent.into_iter().filter(|x| x.len() == min).collect()
        }
        AbsentVariant::Mas | AbsentVariant::PMas(_) => absent
            .into_iter()
            .filter(|x| {
                (0..x.len()).all(|i| {
                    let mut y = x.clone();
                    y.0.remove(i);
                    present.contains(&y)
                })
            })
            .collect(),
    };
    Ok(out)
}

/// Shortlex-minimal word with the same `Subseq_≤k` as `w`, by enumerating
/// candidates in shortlex order.
pub fn shortlex_oracle(w: &Word, sigma: &Alphabet, k: usize, limits: &OracleLimits) -> Result<Word> {
    limits.check("shortlex oracle", w, sigma, None)?;
    sigma.validate(w)?;
    let target = subseq_upto(w, k, DEFAULT_EMBEDDING_BUDGET)?;
    for len in 0..=w.len() {
        for cand in sigma.words_of_len(len) {
            if subseq_upto(&cand, k, DEFAULT_EMBEDDING_BUDGET)? == target {
                return Ok(cand);
            }
        }
    }
    unreachable!("w itself is a candidate")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gap::GapConstraint;
    use crate::word::word;

    fn pairs(m: &SubseqMultiset) -> Vec<(String, u64)> {
        m.iter()
            .map(|(w, c)| (w.to_string(), c.try_into().unwrap()))
            .collect()
    }

    fn set(words: &[&str]) -> BTreeSet<Word> {
        words.iter().map(|s| word(s)).collect()
    }

    #[test]
    fn classic_multisets() {
        let abba = enumerate_subseq(&word("abba"), 2, Mode::Classic, 100).unwrap();
        assert_eq!(
            pairs(&abba),
            [("aa".into(), 1), ("ab".into(), 2), ("ba".into(), 2), ("bb".into(), 1)]
        );
        let abab = enumerate_subseq(&word("abab"), 2, Mode::Classic, 100).unwrap();
        assert_eq!(
            pairs(&abab),
            [("aa".into(), 1), ("ab".into(), 3), ("ba".into(), 1), ("bb".into(), 1)]
        );
    }

    #[test]
    fn range_mode_keeps_short_spans() {
        let m = enumerate_subseq(&word("abab"), 2, Mode::Range(2), 100).unwrap();
        assert_eq!(m.key_set(), set(&["ab", "ba"]));
    }

    #[test]
    fn gc_mode_checks_gaps() {
        let gc = GapTuple::new(vec![GapConstraint::empty_gap()]).unwrap();
        let m = enumerate_subseq(&word("acb"), 2, Mode::Gc(&gc), 100).unwrap();
        assert_eq!(m.key_set(), set(&["ac", "cb"]));
        let bad = GapTuple::new(vec![]).unwrap();
        assert!(enumerate_subseq(&word("acb"), 2, Mode::Gc(&bad), 100).is_err());
    }

    #[test]
    fn unary_counts_are_binomials() {
        let m = enumerate_subseq(&word("aaaaa"), 3, Mode::Classic, 100).unwrap();
        assert_eq!(pairs(&m), [("aaa".into(), 10)]);
    }

    #[test]
    fn budget_is_enforced() {
        let w = word(&"a".repeat(30));
        let err = enumerate_subseq(&w, 15, Mode::Classic, 1000).unwrap_err();
        assert!(err.is_resource());
    }

    #[test]
    fn edit_oracle_examples() {
        let ab = Alphabet::range(2).unwrap();
        let lim = OracleLimits::default();
        assert_eq!(edit_min_oracle(&word("ab"), &ab, 2, EditOp::Insert, &lim).unwrap(), 2);
        assert_eq!(edit_min_oracle(&word("a"), &ab, 1, EditOp::Insert, &lim).unwrap(), 1);
        assert_eq!(edit_min_oracle(&word("abab"), &ab, 1, EditOp::Delete, &lim).unwrap(), 1);
        assert_eq!(edit_min_oracle(&word("abab"), &ab, 0, EditOp::Delete, &lim).unwrap(), 2);
        assert_eq!(edit_min_oracle(&word("aa"), &ab, 1, EditOp::Substitute, &lim).unwrap(), 1);
        assert_eq!(edit_min_oracle(&word("abab"), &ab, 0, EditOp::Substitute, &lim).unwrap(), 0);
        assert_eq!(
            edit_min_oracle(&word("abab"), &ab, 0, EditOp::SubstituteExact, &lim).unwrap(),
            2
        );
        let big = word("abababab");
        assert!(edit_min_oracle(&big, &ab, 4, EditOp::Insert, &lim).unwrap_err().is_resource());
    }

    #[test]
    fn absent_oracle_examples() {
        let lim = OracleLimits::default();
        let ab = Alphabet::range(2).unwrap();
        let abc = Alphabet::range(3).unwrap();
        let mas = absent_enum_oracle(&word("ab"), &ab, AbsentVariant::Mas, &lim).unwrap();
        assert_eq!(mas, set(&["aa", "ba", "bb"]));
        let sas = absent_enum_oracle(&word("abcabc"), &abc, AbsentVariant::Sas, &lim).unwrap();
        assert!(sas.contains(&word("aaa")) && sas.contains(&word("cca")));
        assert!(sas.iter().all(|x| x.len() == 3));
        let pmas = absent_enum_oracle(&word("aba"), &ab, AbsentVariant::PMas(2), &lim).unwrap();
        assert!(pmas.contains(&word("aa")));
    }

    #[test]
    fn shortlex_oracle_examples() {
        let lim = OracleLimits::default();
        let ab = Alphabet::range(2).unwrap();
        assert_eq!(shortlex_oracle(&word("aa"), &ab, 1, &lim).unwrap(), word("a"));
        assert_eq!(shortlex_oracle(&word("bab"), &ab, 1, &lim).unwrap(), word("ab"));
        assert_eq!(shortlex_oracle(&word("bab"), &ab, 0, &lim).unwrap(), word(""));
    }
}
