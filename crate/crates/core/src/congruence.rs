//! Simon's congruence: `u ~_k v` iff `Subseq_≤k(u) = Subseq_≤k(v)`.
//!
//! Shortlex normal forms rest on two coordinates per position `i` of `w`:
//! `x_i` is one more than the smallest `x` since the previous occurrence of
//! `w[i]` (inclusive), or 1 if there is none, and `y_i` is the mirror image
//! from the right. Deleting position `i` preserves `~_k` iff
//! `x_i + y_i > k + 1`, and adjacent letters with equal coordinates and
//! `x + y = k + 1` commute within the class.

use serde::{Deserialize, Serialize};

use crate::error::{check_budget, saturating_pow, Result};
use crate::gap::GapTuple;
use crate::matcher::{is_p_subsequence, match_gc};
use crate::next::NextTable;
use crate::word::{Alphabet, Word};

fn local_ranks(ws: &[&Word]) -> (Alphabet, Vec<Vec<usize>>) {
    let alphabet = Alphabet::of_words(ws.iter().copied());
    let ranks = ws
        .iter()
        .map(|w| w.iter().map(|&a| alphabet.rank(a).unwrap()).collect())
        .collect();
    (alphabet, ranks)
}

/// `y` coordinates, computed right to left in `O(nσ)`.
fn y_coords(ranks: &[usize], sigma: usize) -> Vec<usize> {
    let n = ranks.len();
    let mut y = vec![0; n];
    // since[b]: min y from the next occurrence of b down to here
    let mut since: Vec<Option<usize>> = vec![None; sigma];
    for i in (0..n).rev() {
        let a = ranks[i];
        y[i] = since[a].map_or(1, |m| m + 1);
        for m in since.iter_mut().flatten() {
            *m = (*m).min(y[i]);
        }
        since[a] = Some(y[i]);
    }
    y
}

fn x_coords(ranks: &[usize], sigma: usize) -> Vec<usize> {
    let rev: Vec<usize> = ranks.iter().rev().copied().collect();
    let mut x = y_coords(&rev, sigma);
    x.reverse();
    x
}

/// Shortlex-minimal word `~_k`-equivalent to `w`, in `O(nσ)`.
///
/// One pass deletes every position whose coordinates exceed `k + 1`
/// (computing `x` on the kept prefix as it grows); then each maximal run
/// of equal coordinates on the `k + 1` diagonal is sorted.
pub fn shortlex(w: &Word, k: usize) -> Word {
    if k == 0 {
        return Word::empty();
    }
    let (alphabet, ranks) = local_ranks(&[w]);
    let ranks = &ranks[0];
    let s = alphabet.len();
    let y = y_coords(ranks, s);
    let mut kept = Vec::with_capacity(ranks.len());
    let mut since: Vec<Option<usize>> = vec![None; s];
    for (i, &a) in ranks.iter().enumerate() {
        let xi = since[a].map_or(1, |m| m + 1);
        if xi + y[i] > k + 1 {
            continue;
        }
        kept.push(a);
        for m in since.iter_mut().flatten() {
            *m = (*m).min(xi);
        }
        since[a] = Some(xi);
    }
    let x = x_coords(&kept, s);
    let y = y_coords(&kept, s);
    let mut i = 0;
    while i < kept.len() {
        let mut j = i + 1;
        if x[i] + y[i] == k + 1 {
            while j < kept.len() && x[j] == x[i] && y[j] == y[i] {
                j += 1;
            }
            kept[i..j].sort_unstable();
        }
        i = j;
    }
    Word(kept.into_iter().map(|r| alphabet.symbol(r)).collect())
}

pub fn equi(v: &Word, w: &Word, k: usize) -> bool {
    v == w || shortlex(v, k) == shortlex(w, k)
}

/// Largest `k` with `v ~_k w`, by binary search over shortlex
/// comparisons. Equal words give `|w|`.
pub fn max_equi_k(v: &Word, w: &Word) -> usize {
    if v == w {
        return w.len();
    }
    // distinct words differ at k = max length, where each contains itself
    let (mut lo, mut hi) = (0, v.len().max(w.len()));
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if equi(v, w, mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Largest `k` with `v ~_k w` by Simon's recursion over suffix pairs,
/// `O(|v|·|w|·σ)`; `None` when `v = w`.
pub fn congruence_level(v: &Word, w: &Word) -> Option<usize> {
    let (alphabet, ranks) = local_ranks(&[v, w]);
    let s = alphabet.len();
    let (nv, nw) = (v.len(), w.len());
    let tv = NextTable::new(&ranks[0], s);
    let tw = NextTable::new(&ranks[1], s);
    // level[i][j] for suffixes v[i..], w[j..]; usize::MAX is "equal"
    let mut level = vec![vec![0usize; nw + 1]; nv + 1];
    for i in (0..=nv).rev() {
        for j in (0..=nw).rev() {
            let mut best = usize::MAX;
            for a in 0..s {
                match (tv.find(i, a), tw.find(j, a)) {
                    (None, None) => {}
                    (Some(p), Some(q)) => best = best.min(level[p + 1][q + 1].saturating_add(1)),
                    _ => best = 0,
                }
            }
            level[i][j] = best;
        }
    }
    let top = level[0][0];
    (top != usize::MAX).then_some(top)
}

/// A node of the Simon tree: the `depth`-block `[start, end]` (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimonTree {
    pub depth: usize,
    pub start: usize,
    pub end: usize,
    /// Right to left by start position.
    pub children: Vec<SimonTree>,
}

impl SimonTree {
    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(SimonTree::node_count).sum::<usize>()
    }

    /// Blocks at `depth`, right to left; singleton leaves above that depth
    /// count as their own blocks.
    pub fn frontier(&self, depth: usize) -> Vec<(usize, usize)> {
        if self.depth == depth || self.children.is_empty() {
            return vec![(self.start, self.end)];
        }
        self.children.iter().flat_map(|c| c.frontier(depth)).collect()
    }
}

/// `d[l]`: largest `k` with `w[l..] ~_k w[l+1..]` (0-based), which is
/// `y_l - 1`.
fn suffix_levels(w: &Word) -> Vec<usize> {
    let (alphabet, ranks) = local_ranks(&[w]);
    y_coords(&ranks[0], alphabet.len()).into_iter().map(|y| y - 1).collect()
}

/// Positions `l` and `l + 1` share a `k`-block iff `w[l..] ~_k w[l+1..]`;
/// since suffixes are nested, blocks are maximal runs of such links.
pub fn simon_tree(w: &Word) -> SimonTree {
    let d = suffix_levels(w);
    build_node(&d, 0, 1, w.len())
}

fn build_node(d: &[usize], depth: usize, start: usize, end: usize) -> SimonTree {
    let children = if end > start {
        split(d, depth + 1, start, end)
            .into_iter()
            .map(|(i, j)| build_node(d, depth + 1, i, j))
            .collect()
    } else {
        Vec::new()
    };
    SimonTree {
        depth,
        start,
        end,
        children,
    }
}

/// `k`-blocks within `[start, end]`, right to left.
fn split(d: &[usize], k: usize, start: usize, end: usize) -> Vec<(usize, usize)> {
    let mut blocks = Vec::new();
    let mut hi = end;
    for l in (start..end).rev() {
        // link between 1-based positions l and l + 1
        if d[l - 1] < k {
            blocks.push((l + 1, hi));
            hi = l;
        }
    }
    blocks.push((start, hi));
    blocks
}

/// The partition of `[1, |w|]` into `k`-blocks, right to left.
pub fn k_blocks(w: &Word, k: usize) -> Vec<(usize, usize)> {
    if w.is_empty() {
        return Vec::new();
    }
    split(&suffix_levels(w), k, 1, w.len())
}

/// `Subseq(gc, v) ∩ Σ^k = Subseq(gc, w) ∩ Σ^k`, testing all of `Σ^k`.
pub fn equi_gc(v: &Word, w: &Word, sigma: &Alphabet, k: usize, gc: &GapTuple, budget: u64) -> Result<bool> {
    sigma.validate(v)?;
    sigma.validate(w)?;
    gc.check_arity(k)?;
    gc.check_alphabet(sigma)?;
    check_budget("gap-constrained equivalence", saturating_pow(sigma.len(), k), budget)?;
    for x in sigma.words_of_len(k) {
        if match_gc(&x, v, gc)?.matched != match_gc(&x, w, gc)?.matched {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `p-Subseq_k(v) = p-Subseq_k(w)`, testing all of `Σ^k`.
pub fn equi_range(v: &Word, w: &Word, sigma: &Alphabet, k: usize, p: usize, budget: u64) -> Result<bool> {
    sigma.validate(v)?;
    sigma.validate(w)?;
    check_budget("bounded-range equivalence", saturating_pow(sigma.len(), k), budget)?;
    for x in sigma.words_of_len(k) {
        if is_p_subsequence(&x, v, p)? != is_p_subsequence(&x, w, p)? {
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

    #[test]
    fn shortlex_examples() {
        assert_eq!(shortlex(&word("aa"), 1), word("a"));
        assert_eq!(shortlex(&word("bab"), 1), word("ab"));
        assert_eq!(shortlex(&word("abab"), 0), Word::empty());
        assert_eq!(shortlex(&word("ba"), 5), word("ba"));
    }

    #[test]
    fn equivalence_examples() {
        assert!(equi(&word("abba"), &word("abab"), 2));
        assert!(!equi(&word("abba"), &word("abab"), 3));
        assert_eq!(max_equi_k(&word("abba"), &word("abab")), 2);
        assert_eq!(max_equi_k(&word("abab"), &word("abab")), 4);
        assert_eq!(max_equi_k(&word("a"), &word("b")), 0);
        assert_eq!(congruence_level(&word("abba"), &word("abab")), Some(2));
        assert_eq!(congruence_level(&word("ab"), &word("ab")), None);
    }

    #[test]
    fn tree_examples() {
        let t = simon_tree(&word("ab"));
        assert_eq!((t.start, t.end), (1, 2));
        assert_eq!(t.frontier(1), vec![(2, 2), (1, 1)]);
        assert_eq!(k_blocks(&word("ab"), 1), vec![(2, 2), (1, 1)]);
        // "aa" and "a" agree on Subseq_1 only
        assert_eq!(k_blocks(&word("aa"), 1), vec![(1, 2)]);
        assert_eq!(k_blocks(&word("aa"), 2), vec![(2, 2), (1, 1)]);
        let empty = simon_tree(&Word::empty());
        assert_eq!((empty.start, empty.end, empty.children.len()), (1, 0, 0));
    }

    #[test]
    fn constrained_examples() {
        let sigma = Alphabet::range(2).unwrap();
        let (v, w) = (word("abba"), word("abab"));
        let any = GapTuple::unconstrained(1);
        assert!(equi_gc(&v, &w, &sigma, 2, &any, 100).unwrap());
        let factor = GapTuple::new(vec![GapConstraint::empty_gap()]).unwrap();
        assert!(!equi_gc(&v, &w, &sigma, 2, &factor, 100).unwrap());
        assert!(equi_gc(&v, &v, &sigma, 2, &factor, 100).unwrap());
        assert!(equi_range(&v, &v, &sigma, 2, 2, 100).unwrap());
        assert!(!equi_range(&v, &w, &sigma, 2, 2, 100).unwrap());
    }
}
