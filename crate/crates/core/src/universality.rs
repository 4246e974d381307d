//! Arch factorization, universality index and edit distances to
//! k-universality.
//!
//! Universality is always measured against an explicit alphabet `Σ`, which
//! may be larger than `alph(w)`.

use serde::{Deserialize, Serialize};

use crate::error::{check_budget, saturating_pow, Error, Result};
use crate::gap::GapTuple;
use crate::matcher::{is_p_subsequence, match_gc};
use crate::word::{Alphabet, Word};

/// Default cap on `σ^k` for the brute-force universality tests.
pub const DEFAULT_CANDIDATE_BUDGET: u64 = 2_000_000;

/// Greedy decomposition `w = ar(1) ⋯ ar(ι) r(w)`.
///
/// Ranges are 1-based and inclusive; an empty rest is `(n + 1, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArchFactorization {
    pub arches: Vec<(usize, usize)>,
    pub rest: (usize, usize),
    pub iota: usize,
}

impl ArchFactorization {
    pub fn arch_words(&self, w: &Word) -> Vec<Word> {
        self.arches.iter().map(|&(i, j)| w.factor(i, j)).collect()
    }

    pub fn rest_word(&self, w: &Word) -> Word {
        w.factor(self.rest.0, self.rest.1)
    }
}

pub fn arch_factorize(w: &Word, sigma: &Alphabet) -> Result<ArchFactorization> {
    let ranks = sigma.ranks(w)?;
    let mut seen = vec![false; sigma.len()];
    let mut distinct = 0;
    let mut start = 0;
    let mut arches = Vec::new();
    for (j, &r) in ranks.iter().enumerate() {
        if !seen[r] {
            seen[r] = true;
            distinct += 1;
            if distinct == sigma.len() {
                arches.push((start + 1, j + 1));
                start = j + 1;
                seen.fill(false);
                distinct = 0;
            }
        }
    }
    Ok(ArchFactorization {
        iota: arches.len(),
        arches,
        rest: (start + 1, w.len()),
    })
}

/// `ι(w)`: the largest `k` with `Subseq_k(w) = Σ^k`.
pub fn universality_index(w: &Word, sigma: &Alphabet) -> Result<usize> {
    Ok(arch_factorize(w, sigma)?.iota)
}

pub fn is_k_universal(w: &Word, sigma: &Alphabet, k: usize) -> Result<bool> {
    Ok(k <= universality_index(w, sigma)?)
}

/// Last occurrences of the distinct letters of a growing prefix, most
/// recent first.
struct LastSeen {
    order: Vec<(usize, usize)>,
}

impl LastSeen {
    fn new() -> Self {
        LastSeen { order: Vec::new() }
    }

    /// Records letter `r` at 0-based position `i`.
    fn push(&mut self, r: usize, i: usize) {
        self.order.retain(|&(letter, _)| letter != r);
        self.order.insert(0, (r, i));
    }

    /// `(t, l_t)`: the segment starting at `l_t` has `t` distinct letters,
    /// and `l_t` is the largest start with that count.
    fn starts(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.order.iter().enumerate().map(|(t, &(_, pos))| (t + 1, pos))
    }
}

const INF: usize = usize::MAX / 4;

/// `σ - |alph(w[..i])|` for every `i`.
fn prefix_missing(ranks: &[usize], sigma: usize) -> Vec<usize> {
    let mut seen = vec![false; sigma];
    let mut missing = sigma;
    let mut out = vec![missing];
    for &r in ranks {
        if !std::mem::replace(&mut seen[r], true) {
            missing -= 1;
        }
        out.push(missing);
    }
    out
}

/// Fewest insertions making `w` k-universal.
///
/// The result splits into `k` parts each containing every letter, so the
/// answer is the cheapest split of `w` into `k` consecutive (possibly
/// empty) parts, each part costing `σ - |alph(part)|`. Costs only drop as a
/// part grows, so for each part end it suffices to try the `σ` starts where
/// the distinct-letter count changes: `O(nkσ)`. For `k ≥ n` the answer is
/// `kσ - n` directly.
pub fn min_insertions(w: &Word, sigma: &Alphabet, k: usize) -> Result<usize> {
    if is_k_universal(w, sigma, k)? {
        return Ok(0);
    }
    let n = w.len();
    let s = sigma.len();
    if k >= n {
        return Ok(k * s - n);
    }
    let ranks = sigma.ranks(w)?;
    if k == 0 {
        return Ok(0);
    }
    // prev[i] = cost for w[..i] in j parts, non-increasing in i
    let mut prev = prefix_missing(&ranks, s);
    for _ in 1..k {
        let mut cur = vec![INF; n + 1];
        let mut last = LastSeen::new();
        for i in 0..=n {
            if i > 0 {
                last.push(ranks[i - 1], i - 1);
            }
            let mut best = prev[i].saturating_add(s);
            for (t, start) in last.starts() {
                best = best.min(prev[start].saturating_add(s - t));
            }
            cur[i] = best;
        }
        prev = cur;
    }
    Ok(prev[n])
}

/// Fewest deletions leaving a word of universality index exactly `k`.
///
/// Since a single deletion lowers `ι` by at most one, this is the longest
/// subsequence `v` with `ι(v) ≤ k`. Such `v` avoids some length-`(k+1)`
/// word `x`, i.e. it factors as `t_0 x_1 t_1 ⋯ x_j t_j` with `j ≤ k` and
/// `x_{i+1} ∉ alph(t_i)`. Each segment of `w` before a kept `x` letter
/// therefore drops every occurrence of one letter except its final one,
/// and the final segment drops every occurrence of one letter.
pub fn min_deletions(w: &Word, sigma: &Alphabet, k: usize) -> Result<usize> {
    let iota = universality_index(w, sigma)?;
    if k > iota {
        return Err(Error::arg(format!(
            "k = {k} exceeds ι(w) = {iota}; deletions cannot raise the index"
        )));
    }
    let n = w.len();
    let s = sigma.len();
    let ranks = sigma.ranks(w)?;
    // prefix[c][i] = |w[..i]|_c
    let mut prefix = vec![vec![0i64; n + 1]; s];
    for (i, &r) in ranks.iter().enumerate() {
        for (c, row) in prefix.iter_mut().enumerate() {
            row[i + 1] = row[i] + i64::from(c == r);
        }
    }
    let inf = i64::MAX / 4;
    let tail = |i: usize| (0..s).map(|c| prefix[c][n] - prefix[c][i]).min().unwrap_or(0);
    let mut layer = vec![inf; n + 1];
    layer[0] = 0;
    let mut best = tail(0);
    for _ in 0..k {
        let mut next = vec![inf; n + 1];
        // running[c] = min over i < i' of layer[i] - prefix[c][i]
        let mut running = vec![inf; s];
        for i in 1..=n {
            for c in 0..s {
                running[c] = running[c].min(layer[i - 1] - prefix[c][i - 1]);
            }
            let last = ranks[i - 1];
            next[i] = (0..s)
                .map(|c| running[c] + prefix[c][i] - i64::from(c == last))
                .min()
                .unwrap_or(inf);
        }
        for (i, &v) in next.iter().enumerate() {
            if v < inf {
                best = best.min(v + tail(i));
            }
        }
        layer = next;
    }
    Ok(best as usize)
}

/// Fewest substitutions making `w` k-universal (index at least `k`).
///
/// The result splits into `k` consecutive segments each containing every
/// letter, the last one absorbing the rest. A segment of length at least
/// `σ` needs exactly `σ - |alph(segment)|` substitutions; shorter ones
/// cannot be fixed. `O(nkσ)` with the same distinct-count trick as
/// [`min_insertions`].
pub fn min_substitutions(w: &Word, sigma: &Alphabet, k: usize) -> Result<usize> {
    let n = w.len();
    let s = sigma.len();
    if k * s > n {
        return Err(Error::arg(format!(
            "no word of length {n} is {k}-universal over {s} letters"
        )));
    }
    let ranks = sigma.ranks(w)?;
    if k == 0 {
        return Ok(0);
    }
    // infinite on a prefix, then non-increasing
    let mut prev = prefix_missing(&ranks, s);
    prev[..s].fill(INF);
    for _ in 1..k {
        let mut cur = vec![INF; n + 1];
        let mut last = LastSeen::new();
        for i in 0..=n {
            if i > 0 {
                last.push(ranks[i - 1], i - 1);
            }
            if i < s {
                continue;
            }
            let limit = i - s;
            let starts: Vec<(usize, usize)> = last.starts().collect();
            let mut best = INF;
            for (idx, &(t, l_t)) in starts.iter().enumerate() {
                // starts in (l_{t+1}, l_t] see exactly t distinct letters
                let floor = starts.get(idx + 1).map(|&(_, l)| l as isize).unwrap_or(-1);
                let start = l_t.min(limit);
                if start as isize > floor {
                    best = best.min(prev[start].saturating_add(s - t));
                }
            }
            cur[i] = best;
        }
        prev = cur;
    }
    Ok(prev[n])
}

/// Fewest substitutions producing a word of universality index exactly `k`.
///
/// The result factors into `k` arches and a rest missing some letter. An
/// arch ending in letter `x` must contain every other letter before its
/// last position and no earlier `x`; the DP tries every segment and final
/// letter, `O(n²σk)`.
pub fn min_substitutions_exact(w: &Word, sigma: &Alphabet, k: usize) -> Result<usize> {
    let n = w.len();
    let s = sigma.len();
    let ranks = sigma.ranks(w)?;
    if s == 1 {
        // every word over one letter has index equal to its length
        return if k == n {
            Ok(0)
        } else {
            Err(Error::arg("over a unary alphabet ι(w) = |w|"))
        };
    }
    if k * s > n {
        return Err(Error::arg(format!(
            "no word of length {n} is {k}-universal over {s} letters"
        )));
    }
    let mut prefix = vec![vec![0usize; n + 1]; s];
    for (i, &r) in ranks.iter().enumerate() {
        for (c, row) in prefix.iter_mut().enumerate() {
            row[i + 1] = row[i] + usize::from(c == r);
        }
    }
    let count = |c: usize, a: usize, b: usize| prefix[c][b] - prefix[c][a];
    let arch_cost = |a: usize, e: usize| -> usize {
        // segment w[a..e], body w[a..e-1]
        let body = e - 1 - a;
        if body + 1 < s {
            return INF;
        }
        let present: Vec<bool> = (0..s).map(|c| count(c, a, e - 1) > 0).collect();
        let distinct = present.iter().filter(|&&p| p).count();
        (0..s)
            .map(|x| {
                let others = distinct - usize::from(present[x]);
                let missing = (s - 1) - others;
                usize::from(ranks[e - 1] != x) + count(x, a, e - 1).max(missing)
            })
            .min()
            .unwrap_or(INF)
    };
    let mut layer = vec![INF; n + 1];
    layer[0] = 0;
    for _ in 0..k {
        let mut next = vec![INF; n + 1];
        for a in 0..n {
            if layer[a] >= INF {
                continue;
            }
            for e in a + s..=n {
                next[e] = next[e].min(layer[a].saturating_add(arch_cost(a, e)));
            }
        }
        layer = next;
    }
    let rest_cost = |a: usize| (0..s).map(|c| count(c, a, n)).min().unwrap_or(0);
    let best = (0..=n)
        .filter(|&a| layer[a] < INF)
        .map(|a| layer[a] + rest_cost(a))
        .min()
        .unwrap_or(INF);
    if best >= INF {
        return Err(Error::arg("target universality index unreachable by substitutions"));
    }
    Ok(best)
}

/// `p-Subseq_k(w) = Σ^k`, by testing every candidate. The problem is
/// NP-hard, hence the budget on `σ^k`.
pub fn range_universal(w: &Word, sigma: &Alphabet, k: usize, p: usize, budget: u64) -> Result<bool> {
    sigma.validate(w)?;
    if p == 0 {
        return Err(Error::arg("window size p must be at least 1"));
    }
    check_budget("bounded-range universality", saturating_pow(sigma.len(), k), budget)?;
    for x in sigma.words_of_len(k) {
        if !is_p_subsequence(&x, w, p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every word of `Σ^k` is a gc-subsequence of `w`.
pub fn gc_universal(w: &Word, sigma: &Alphabet, k: usize, gc: &GapTuple, budget: u64) -> Result<bool> {
    sigma.validate(w)?;
    gc.check_arity(k)?;
    gc.check_alphabet(sigma)?;
    check_budget("gap-constrained universality", saturating_pow(sigma.len(), k), budget)?;
    for x in sigma.words_of_len(k) {
        if !match_gc(&x, w, gc)?.matched {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gap::GapConstraint;
    use crate::word::word;

    fn sig(n: usize) -> Alphabet {
        Alphabet::range(n).unwrap()
    }

    #[test]
    fn arch_examples() {
        let f = arch_factorize(&word("abcba"), &sig(3)).unwrap();
        assert_eq!(f.arches, vec![(1, 3)]);
        assert_eq!(f.rest, (4, 5));
        assert_eq!(f.iota, 1);
        let f = arch_factorize(&word("ab"), &sig(3)).unwrap();
        assert_eq!((f.arches.len(), f.rest, f.iota), (0, (1, 2), 0));
        let f = arch_factorize(&word("abcabc"), &sig(3)).unwrap();
        assert_eq!(f.arches, vec![(1, 3), (4, 6)]);
        assert_eq!(f.rest_word(&word("abcabc")), Word::empty());
    }

    #[test]
    fn universality_depends_on_alphabet() {
        assert!(is_k_universal(&word("abcba"), &sig(3), 1).unwrap());
        assert_eq!(universality_index(&word("abcba"), &sig(4)).unwrap(), 0);
        assert!(is_k_universal(&word(""), &sig(2), 0).unwrap());
    }

    #[test]
    fn insertion_examples() {
        assert_eq!(min_insertions(&word("ab"), &sig(2), 2).unwrap(), 2);
        assert_eq!(min_insertions(&word("abab"), &sig(2), 2).unwrap(), 0);
        assert_eq!(min_insertions(&word("a"), &sig(2), 1).unwrap(), 1);
        assert_eq!(min_insertions(&word("aab"), &sig(2), 2).unwrap(), 1);
        assert_eq!(min_insertions(&word("abab"), &sig(2), 1).unwrap(), 0);
    }

    #[test]
    fn deletion_examples() {
        assert_eq!(min_deletions(&word("abab"), &sig(2), 1).unwrap(), 1);
        assert_eq!(min_deletions(&word("abab"), &sig(2), 2).unwrap(), 0);
        assert_eq!(min_deletions(&word("abab"), &sig(2), 0).unwrap(), 2);
        assert!(min_deletions(&word("abab"), &sig(2), 3).is_err());
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(min_substitutions(&word("aa"), &sig(2), 1).unwrap(), 1);
        assert_eq!(min_substitutions(&word("ab"), &sig(2), 1).unwrap(), 0);
        // the "at least k" target is already met at k = 0
        assert_eq!(min_substitutions(&word("abab"), &sig(2), 0).unwrap(), 0);
        assert_eq!(min_substitutions_exact(&word("abab"), &sig(2), 0).unwrap(), 2);
        assert!(min_substitutions(&word("aba"), &sig(2), 2).is_err());
    }

    #[test]
    fn range_universality_examples() {
        assert!(range_universal(&word("abab"), &sig(2), 1, 1, 100).unwrap());
        assert!(!range_universal(&word("abab"), &sig(2), 2, 2, 100).unwrap());
        assert!(range_universal(&word("b"), &sig(2), 0, 1, 100).unwrap());
        assert!(range_universal(&word("ab"), &sig(2), 20, 2, 100).unwrap_err().is_resource());
    }

    #[test]
    fn gc_universality_examples() {
        let factor = GapTuple::new(vec![GapConstraint::empty_gap()]).unwrap();
        assert!(gc_universal(&word("aabba"), &sig(2), 2, &factor, 100).unwrap());
        assert!(!gc_universal(&word("abba"), &sig(2), 2, &factor, 100).unwrap());
        let w = word("abab");
        assert!(gc_universal(&w, &sig(2), 2, &GapTuple::unconstrained(1), 100).unwrap());
    }
}
