//! Shortest (SAS) and minimal (MAS) absent subsequences.
//!
//! A word is absent from `w` if it is not a subsequence of it. An SAS has
//! length `ι(w) + 1`; an MAS is absent while each of its one-letter
//! deletions is present.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{check_budget, saturating_pow, Error, Result};
use crate::matcher::is_p_subsequence;
use crate::next::NextTable;
use crate::universality::{arch_factorize, universality_index};
use crate::word::{is_subsequence, Alphabet, Symbol, Word};

/// The SAS built from the arch factorization: last letter of every arch,
/// then the smallest letter missing from the rest.
pub fn sas_one(w: &Word, sigma: &Alphabet) -> Result<Word> {
    let f = arch_factorize(w, sigma)?;
    let mut out: Vec<Symbol> = f.arches.iter().map(|&(_, end)| w[end - 1]).collect();
    let rest = f.rest_word(w);
    let missing = sigma
        .iter()
        .find(|&a| !rest.contains(&a))
        .expect("the rest of an arch factorization misses a letter");
    out.push(missing);
    Ok(Word(out))
}

/// Succinct answer to a range query: the SAS length of `w[i..j]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SasHandle {
    pub i: usize,
    pub j: usize,
    pub length: usize,
}

impl SasHandle {
    pub fn materialize(&self, index: &SasRange) -> Word {
        index.materialize(self)
    }
}

/// Preprocessed word answering `sasRange(i, j)`.
///
/// Queries count the arches of `w[i..j]` with binary lifting over the
/// greedy arch jumps, so they take `O(log n)`.
#[derive(Debug, Clone)]
pub struct SasRange {
    sigma: Alphabet,
    word: Word,
    next: NextTable,
    // up[l][s]: start after 2^l greedy arches from s, n + 1 if they don't fit
    up: Vec<Vec<usize>>,
}

impl SasRange {
    pub fn new(w: &Word, sigma: &Alphabet) -> Result<Self> {
        let ranks = sigma.ranks(w)?;
        let n = w.len();
        let next = NextTable::new(&ranks, sigma.len());
        let mut base: Vec<usize> = (0..=n).map(|s| next.arch_end(s).unwrap_or(n + 1)).collect();
        base.push(n + 1);
        let mut up = vec![base];
        while (1usize << up.len()) <= n {
            let prev = up.last().unwrap();
            let row = (0..=n + 1).map(|s| prev[prev[s]]).collect();
            up.push(row);
        }
        Ok(SasRange {
            sigma: sigma.clone(),
            word: w.clone(),
            next,
            up,
        })
    }

    /// Handle for the 1-based inclusive range `w[i..j]`.
    pub fn query(&self, i: usize, j: usize) -> Result<SasHandle> {
        if i == 0 || i > j || j > self.word.len() {
            return Err(Error::arg(format!(
                "range [{i}, {j}] is not within [1, {}]",
                self.word.len()
            )));
        }
        let mut s = i - 1;
        let mut arches = 0;
        for l in (0..self.up.len()).rev() {
            let t = self.up[l][s];
            if t <= j {
                s = t;
                arches += 1 << l;
            }
        }
        Ok(SasHandle {
            i,
            j,
            length: arches + 1,
        })
    }

    /// Arch-end letters of the range, then its smallest missing letter.
    pub fn materialize(&self, h: &SasHandle) -> Word {
        let mut out = Vec::with_capacity(h.length);
        let mut s = h.i - 1;
        while let Some(e) = self.next.arch_end(s).filter(|&e| e <= h.j) {
            out.push(self.word[e - 1]);
            s = e;
        }
        let missing = (0..self.sigma.len())
            .find(|&a| self.next.find(s, a).is_none_or(|p| p >= h.j))
            .expect("a factor without a full arch misses a letter");
        out.push(self.sigma.symbol(missing));
        Word(out)
    }
}

pub fn is_sas(u: &Word, w: &Word, sigma: &Alphabet) -> Result<bool> {
    sigma.validate(u)?;
    Ok(!is_subsequence(u, w) && u.len() == universality_index(w, sigma)? + 1)
}

/// MAS test in `O(|u| + |w|)`: `u` is absent, and for every `i` the
/// leftmost embedding of `u[..i]` ends before the rightmost embedding of
/// `u[i+1..]` starts.
pub fn is_mas(u: &Word, w: &Word, sigma: &Alphabet) -> Result<bool> {
    sigma.validate(u)?;
    sigma.validate(w)?;
    let m = u.len();
    // pre[i]: end (exclusive) of the leftmost embedding of u[..i]
    let mut pre = vec![None; m + 1];
    pre[0] = Some(0);
    let mut j = 0;
    for i in 0..m {
        while j < w.len() && w[j] != u[i] {
            j += 1;
        }
        if j == w.len() {
            break;
        }
        j += 1;
        pre[i + 1] = Some(j);
    }
    if pre[m].is_some() {
        return Ok(false);
    }
    // suf[i]: start of the rightmost embedding of u[i..]
    let mut suf = vec![None; m + 1];
    suf[m] = Some(w.len());
    let mut j = w.len();
    for i in (0..m).rev() {
        while j > 0 && w[j - 1] != u[i] {
            j -= 1;
        }
        if j == 0 {
            break;
        }
        j -= 1;
        suf[i] = Some(j);
    }
    Ok((0..m).all(|i| matches!((pre[i], suf[i + 1]), (Some(e), Some(s)) if e <= s)))
}

/// A search space explored depth first in increasing letter order, so
/// that the words of each fixed length come out lexicographically.
pub trait LexSearch {
    type State: Copy;
    fn sigma(&self) -> &Alphabet;
    /// State after letter rank `a` when `remaining` letters (including
    /// `a`) are still to be placed; `None` if no valid word continues so.
    fn step(&self, s: Self::State, a: usize, remaining: usize) -> Option<Self::State>;
}

impl<T: LexSearch> LexSearch for &T {
    type State = T::State;
    fn sigma(&self) -> &Alphabet {
        (**self).sigma()
    }
    fn step(&self, s: Self::State, a: usize, remaining: usize) -> Option<Self::State> {
        (**self).step(s, a, remaining)
    }
}

/// Words accepted by a [`LexSearch`], by length in the given order and
/// lexicographically within each length.
pub struct LexWords<S: LexSearch> {
    search: S,
    start: S::State,
    lengths: std::vec::IntoIter<usize>,
    len: usize,
    stack: Vec<(S::State, usize)>,
    prefix: Vec<Symbol>,
}

impl<S: LexSearch> LexWords<S> {
    pub fn new(search: S, start: S::State, lengths: Vec<usize>) -> Self {
        LexWords {
            search,
            start,
            lengths: lengths.into_iter(),
            len: 0,
            stack: Vec::new(),
            prefix: Vec::new(),
        }
    }
}

impl<S: LexSearch> Iterator for LexWords<S> {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        loop {
            if self.stack.is_empty() {
                self.len = self.lengths.next()?;
                self.prefix.clear();
                self.stack.push((self.start, 0));
            }
            while let Some(top) = self.stack.last_mut() {
                let depth = self.prefix.len();
                let remaining = self.len - depth;
                if remaining == 0 {
                    let out = Word(self.prefix.clone());
                    self.stack.pop();
                    self.prefix.pop();
                    return Some(out);
                }
                if top.1 == self.search.sigma().len() {
                    self.stack.pop();
                    self.prefix.pop();
                    continue;
                }
                let (state, a) = (top.0, top.1);
                top.1 += 1;
                if let Some(next) = self.search.step(state, a, remaining) {
                    self.stack.push((next, 0));
                    self.prefix.push(self.search.sigma().symbol(a));
                }
            }
        }
    }
}

/// Preprocessing for SAS enumeration: next occurrences and the
/// universality index of every suffix.
#[derive(Debug, Clone)]
pub struct SasIndex {
    sigma: Alphabet,
    next: NextTable,
    suffix_iota: Vec<usize>,
}

impl SasIndex {
    pub fn new(w: &Word, sigma: &Alphabet) -> Result<Self> {
        let ranks = sigma.ranks(w)?;
        let n = w.len();
        let next = NextTable::new(&ranks, sigma.len());
        let mut suffix_iota = vec![0; n + 1];
        for s in (0..n).rev() {
            suffix_iota[s] = next.arch_end(s).map_or(0, |e| suffix_iota[e] + 1);
        }
        Ok(SasIndex {
            sigma: sigma.clone(),
            next,
            suffix_iota,
        })
    }

    pub fn sas_length(&self) -> usize {
        self.suffix_iota[0] + 1
    }

    /// Every SAS in lexicographic order. Each branch of the search leads
    /// to an output, so the delay is `O(ι(w)·σ)`.
    pub fn enumerate(&self) -> LexWords<&Self> {
        LexWords::new(self, Some(0), vec![self.sas_length()])
    }

    pub fn lex_smallest(&self) -> Word {
        self.enumerate().next().expect("SAS(w) is never empty")
    }
}

impl LexSearch for SasIndex {
    /// Position in `w` from which the remaining letters must be absent;
    /// `None` once a letter found no occurrence.
    type State = Option<usize>;

    fn sigma(&self) -> &Alphabet {
        &self.sigma
    }

    fn step(&self, s: Option<usize>, a: usize, remaining: usize) -> Option<Option<usize>> {
        let Some(s) = s else { return Some(None) };
        match self.next.find(s, a) {
            None => Some(None),
            Some(j) => (remaining >= 2 && self.suffix_iota[j + 1] + 2 <= remaining).then_some(Some(j + 1)),
        }
    }
}

pub fn sas_lex_smallest(w: &Word, sigma: &Alphabet) -> Result<Word> {
    Ok(SasIndex::new(w, sigma)?.lex_smallest())
}

pub fn sas_enumerate(w: &Word, sigma: &Alphabet) -> Result<Vec<Word>> {
    Ok(SasIndex::new(w, sigma)?.enumerate().collect())
}

/// State of the MAS recognizer after reading a prefix `x` of a candidate.
/// `p` ends the leftmost embedding of `x`; `q` is the latest end among the
/// leftmost embeddings of `x` minus one letter (`None` while `x = ε`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Node {
    p: usize,
    q: Option<usize>,
}

const DEAD: usize = usize::MAX;
const ACCEPT: usize = usize::MAX - 1;

/// Minimal absent subsequences as paths of a DAG over [`Node`]s.
///
/// Reading letter `a` moves `p` to just after the next `a`. If there is
/// none the candidate is absent and must end here; it is an MAS iff every
/// one-letter deletion still embeds. Since `p` strictly grows the graph is
/// acyclic, with `O(n²)` nodes; per node we keep the set of lengths of
/// accepted completions as a bitset.
#[derive(Debug, Clone)]
pub struct MasIndex {
    sigma: Alphabet,
    next: NextTable,
    ids: HashMap<Node, usize>,
    trans: Vec<usize>,
    lengths: Vec<Vec<u64>>,
    min_len: Vec<Option<usize>>,
}

impl MasIndex {
    pub fn new(w: &Word, sigma: &Alphabet) -> Result<Self> {
        let ranks = sigma.ranks(w)?;
        let s = sigma.len();
        let next = NextTable::new(&ranks, s);
        let mut index = MasIndex {
            sigma: sigma.clone(),
            next,
            ids: HashMap::new(),
            trans: Vec::new(),
            lengths: Vec::new(),
            min_len: Vec::new(),
        };
        let mut nodes = vec![Node { p: 0, q: None }];
        index.ids.insert(nodes[0], 0);
        let mut cursor = 0;
        while cursor < nodes.len() {
            let node = nodes[cursor];
            for a in 0..s {
                let t = match index.raw_step(node, a) {
                    Some(Some(n2)) => *index.ids.entry(n2).or_insert_with(|| {
                        nodes.push(n2);
                        nodes.len() - 1
                    }),
                    Some(None) => ACCEPT,
                    None => DEAD,
                };
                index.trans.push(t);
            }
            cursor += 1;
        }
        let words = (w.len() + 2).div_ceil(64);
        let mut lengths = vec![vec![0u64; words]; nodes.len()];
        let mut order: Vec<usize> = (0..nodes.len()).collect();
        order.sort_by_key(|&id| std::cmp::Reverse(nodes[id].p));
        for id in order {
            let mut bits = vec![0u64; words];
            for a in 0..s {
                match index.trans[id * s + a] {
                    DEAD => {}
                    ACCEPT => bits[0] |= 2,
                    t => shift_or(&mut bits, &lengths[t]),
                }
            }
            lengths[id] = bits;
        }
        index.min_len = lengths.iter().map(|b| first_bit(b)).collect();
        index.lengths = lengths;
        Ok(index)
    }

    /// `Some(Some(_))` to move, `Some(None)` to accept, `None` if dead.
    fn raw_step(&self, node: Node, a: usize) -> Option<Option<Node>> {
        let q = match node.q {
            None => Some(node.p),
            Some(q) => self.next.find(q, a).map(|j| (j + 1).max(node.p)),
        }?;
        match self.next.find(node.p, a) {
            None => Some(None),
            Some(j) => Some(Some(Node { p: j + 1, q: Some(q) })),
        }
    }

    fn has_len(&self, id: usize, len: usize) -> bool {
        self.lengths[id].get(len / 64).is_some_and(|b| b >> (len % 64) & 1 == 1)
    }

    fn max_len(&self, id: usize) -> Option<usize> {
        let b = &self.lengths[id];
        (0..b.len()).rev().find(|&i| b[i] != 0).map(|i| i * 64 + 63 - b[i].leading_zeros() as usize)
    }

    /// All MAS in length-lexicographic order.
    pub fn enumerate(&self) -> LexWords<&Self> {
        let max = self.max_len(0).unwrap_or(0);
        let lengths = (1..=max).filter(|&l| self.has_len(0, l)).collect();
        LexWords::new(self, 0, lengths)
    }

    pub fn exists_length(&self, len: usize) -> bool {
        self.has_len(0, len)
    }

    /// A longest MAS, lexicographically smallest among those.
    pub fn longest(&self) -> Word {
        let max = self.max_len(0).expect("MAS(w) is never empty");
        LexWords::new(self, 0, vec![max]).next().expect("length is realized")
    }

    /// The lexicographically smallest MAS over all lengths.
    pub fn lex_smallest(&self) -> Word {
        let s = self.sigma.len();
        let mut out = Vec::new();
        let mut id = 0;
        loop {
            for a in 0..s {
                match self.trans[id * s + a] {
                    DEAD => continue,
                    ACCEPT => {
                        out.push(self.sigma.symbol(a));
                        return Word(out);
                    }
                    t if self.min_len[t].is_some() => {
                        out.push(self.sigma.symbol(a));
                        id = t;
                        break;
                    }
                    _ => continue,
                }
            }
        }
    }

    /// Shortest MAS with prefix `u` (lexicographically smallest among
    /// those), or `None` if `u` extends to no MAS. Errors if `u` is not a
    /// subsequence of `w`.
    pub fn extend(&self, u: &Word) -> Result<Option<Word>> {
        let ranks = self.sigma.ranks(u)?;
        let mut i = 0;
        for &a in &ranks {
            i = 1 + self
                .next
                .find(i, a)
                .ok_or_else(|| Error::arg("mas_ext needs a subsequence of w as prefix"))?;
        }
        let s = self.sigma.len();
        let mut id = 0;
        for &a in &ranks {
            match self.trans[id * s + a] {
                DEAD => return Ok(None),
                ACCEPT => unreachable!("a present prefix never completes an absent word"),
                t => id = t,
            }
        }
        let Some(len) = self.min_len[id] else { return Ok(None) };
        let tail = LexWords::new(self, id, vec![len]).next().expect("length is realized");
        Ok(Some(u.concat(&tail)))
    }
}

impl LexSearch for MasIndex {
    /// Node id, or `ACCEPT` after the final letter.
    type State = usize;

    fn sigma(&self) -> &Alphabet {
        &self.sigma
    }

    fn step(&self, id: usize, a: usize, remaining: usize) -> Option<usize> {
        if id == ACCEPT {
            return None;
        }
        match self.trans[id * self.sigma.len() + a] {
            DEAD => None,
            ACCEPT => (remaining == 1).then_some(ACCEPT),
            t => (remaining >= 2 && self.has_len(t, remaining - 1)).then_some(t),
        }
    }
}

/// `dst |= src << 1`
fn shift_or(dst: &mut [u64], src: &[u64]) {
    let mut carry = 0;
    for (d, &x) in dst.iter_mut().zip(src) {
        *d |= (x << 1) | carry;
        carry = x >> 63;
    }
}

fn first_bit(bits: &[u64]) -> Option<usize> {
    bits.iter()
        .position(|&b| b != 0)
        .map(|i| i * 64 + bits[i].trailing_zeros() as usize)
}

pub fn mas_enumerate(w: &Word, sigma: &Alphabet) -> Result<Vec<Word>> {
    Ok(MasIndex::new(w, sigma)?.enumerate().collect())
}

pub fn mas_longest(w: &Word, sigma: &Alphabet) -> Result<Word> {
    Ok(MasIndex::new(w, sigma)?.longest())
}

pub fn mas_exists_length(w: &Word, sigma: &Alphabet, len: usize) -> Result<bool> {
    Ok(MasIndex::new(w, sigma)?.exists_length(len))
}

/// Errors if `u` is not a subsequence of `w`.
pub fn mas_ext(w: &Word, sigma: &Alphabet, u: &Word) -> Result<Option<Word>> {
    MasIndex::new(w, sigma)?.extend(u)
}

/// `v` is not a p-subsequence of `w` but each one-letter deletion is,
/// by `|v| + 1` window scans.
pub fn is_p_mas(v: &Word, w: &Word, p: usize) -> Result<bool> {
    if is_p_subsequence(v, w, p)? {
        return Ok(false);
    }
    for i in 0..v.len() {
        let mut d = v.clone();
        d.0.remove(i);
        if !is_p_subsequence(&d, w, p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `v` is p-absent and every word of length `|v| - 1` is a p-subsequence
/// (a shorter p-absent word would extend to one of that length).
pub fn is_p_sas(v: &Word, w: &Word, sigma: &Alphabet, p: usize, budget: u64) -> Result<bool> {
    sigma.validate(v)?;
    sigma.validate(w)?;
    if v.is_empty() || is_p_subsequence(v, w, p)? {
        return Ok(false);
    }
    check_budget("p-SAS test", saturating_pow(sigma.len(), v.len() - 1), budget)?;
    for x in sigma.words_of_len(v.len() - 1) {
        if !is_p_subsequence(&x, w, p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::word;

    fn sig(n: usize) -> Alphabet {
        Alphabet::range(n).unwrap()
    }

    fn strs(ws: impl IntoIterator<Item = Word>) -> Vec<String> {
        ws.into_iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn sas_one_examples() {
        assert_eq!(sas_one(&word("abcabc"), &sig(3)).unwrap(), word("cca"));
        assert_eq!(sas_one(&word("ab"), &sig(2)).unwrap(), word("ba"));
        assert_eq!(sas_one(&word(""), &sig(2)).unwrap(), word("a"));
    }

    #[test]
    fn range_queries() {
        let w = word("abcabc");
        let r = SasRange::new(&w, &sig(3)).unwrap();
        assert_eq!(r.query(1, 6).unwrap().length, 3);
        let h = r.query(1, 3).unwrap();
        assert_eq!(h.length, 2);
        assert_eq!(h.materialize(&r), word("ca"));
        assert_eq!(r.query(2, 2).unwrap().length, 1);
        assert!(r.query(3, 2).is_err());
        assert!(r.query(1, 7).is_err());
    }

    #[test]
    fn recognizers() {
        let w = word("abcabc");
        assert!(is_sas(&word("aaa"), &w, &sig(3)).unwrap());
        assert!(is_mas(&word("aaa"), &w, &sig(3)).unwrap());
        assert!(!is_sas(&word("ca"), &w, &sig(3)).unwrap());
        assert!(!is_mas(&word("ca"), &w, &sig(3)).unwrap());
        assert!(!is_mas(&word("abb"), &word("ab"), &sig(2)).unwrap());
        assert!(is_mas(&word("ba"), &word("ab"), &sig(2)).unwrap());
        assert!(!is_mas(&word(""), &word("ab"), &sig(2)).unwrap());
    }

    #[test]
    fn sas_enumeration() {
        assert_eq!(strs(sas_enumerate(&word("ab"), &sig(2)).unwrap()), ["aa", "ba", "bb"]);
        assert_eq!(sas_lex_smallest(&word("abcabc"), &sig(3)).unwrap(), word("aaa"));
        assert_eq!(sas_lex_smallest(&word(""), &sig(3)).unwrap(), word("a"));
        let all = sas_enumerate(&word("abcabc"), &sig(3)).unwrap();
        assert!(all.contains(&word("cca")));
        assert!(all.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn mas_queries() {
        let ab = MasIndex::new(&word("ab"), &sig(2)).unwrap();
        assert_eq!(strs(ab.enumerate()), ["aa", "ba", "bb"]);
        assert_eq!(ab.longest().len(), 2);
        assert!(!ab.exists_length(3));
        assert_eq!(ab.extend(&word("b")).unwrap(), Some(word("ba")));
        assert_eq!(ab.extend(&word("ab")).unwrap(), None);
        assert!(mas_ext(&word("ab"), &sig(2), &word("ba")).is_err());
        let abc = MasIndex::new(&word("abcabc"), &sig(3)).unwrap();
        assert_eq!(abc.lex_smallest(), word("aaa"));
        assert_eq!(strs(mas_enumerate(&word(""), &sig(2)).unwrap()), ["a", "b"]);
    }

    #[test]
    fn bounded_range_variants() {
        assert!(is_p_mas(&word("aa"), &word("aba"), 2).unwrap());
        assert!(!is_p_mas(&word("aa"), &word("aab"), 2).unwrap());
        assert!(!is_p_mas(&word("ab"), &word("aab"), 2).unwrap());
        let w = word("aba");
        assert!(is_p_sas(&word("aa"), &w, &sig(2), 2, 100).unwrap());
        assert!(is_p_sas(&word("bb"), &w, &sig(2), 2, 100).unwrap());
        assert!(!is_p_sas(&word("aab"), &w, &sig(2), 2, 100).unwrap());
    }
}
