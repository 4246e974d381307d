//! Automata for containment and multiplicity questions: the subsequence
//! automaton `A_w`, its co-automaton `B_v`, embedding counts, counting
//! NFAs and path equivalence.

use std::collections::VecDeque;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::gap::{GapConstraint, GapTuple};
use crate::next::NextTable;
use crate::word::{Alphabet, Symbol, Word};

/// `A_w`: states `0..=n+1`, start 0, error state `n + 1`; from `i` on `a`
/// to the smallest `j > i` with `w[j] = a`. Accepts the non-empty
/// subsequences of `w` with finals `{1..n}`.
pub fn build_subseq_dfa(w: &Word, sigma: &Alphabet) -> Result<Dfa> {
    let n = w.len();
    subseq_skeleton(w, sigma, &(1..=n).collect::<Vec<_>>())
}

/// `B_v`: `A_v` with the error state as the only final state, accepting
/// the words that are not subsequences of `v`.
pub fn build_non_subseq_dfa(v: &Word, sigma: &Alphabet) -> Result<Dfa> {
    subseq_skeleton(v, sigma, &[v.len() + 1])
}

fn subseq_skeleton(w: &Word, sigma: &Alphabet, finals: &[usize]) -> Result<Dfa> {
    let ranks = sigma.ranks(w)?;
    let n = w.len();
    let next = NextTable::new(&ranks, sigma.len());
    let mut transitions = Vec::with_capacity((n + 2) * sigma.len());
    for i in 0..=n + 1 {
        for (r, a) in sigma.iter().enumerate() {
            let to = if i > n { n + 1 } else { next.find(i, r).map_or(n + 1, |j| j + 1) };
            transitions.push((i, a, to));
        }
    }
    Dfa::new(sigma.clone(), n + 2, 0, finals, &transitions)
}

/// `Subseq_k(w) ⊆ Subseq_k(v)`.
pub fn contains_k(w: &Word, v: &Word, sigma: &Alphabet, k: usize) -> Result<bool> {
    Ok(shortest_distinguisher(w, v, sigma, k)?.is_none())
}

/// Shortest word (lexicographically smallest among those) of length at
/// most `k` that is a subsequence of `w` but not of `v`, found by
/// breadth-first search on `A_w × B_v`. `None` when containment holds.
///
/// When `|w| ≥ k`, any such word extends inside `w` to length `k`, so
/// the search answers containment of `Subseq_k`; when `|w| < k`,
/// `Subseq_k(w)` is empty and nothing distinguishes.
pub fn shortest_distinguisher(w: &Word, v: &Word, sigma: &Alphabet, k: usize) -> Result<Option<Word>> {
    let a = build_subseq_dfa(w, sigma)?;
    let b = build_non_subseq_dfa(v, sigma)?;
    if w.len() < k {
        return Ok(None);
    }
    let (n, m) = (w.len(), v.len());
    let width = m + 2;
    let id = |i: usize, j: usize| i * width + j;
    // parent[(i, j)] = (previous state, letter rank)
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; (n + 2) * width];
    let mut depth = vec![usize::MAX; (n + 2) * width];
    depth[0] = 0;
    let mut queue = VecDeque::from([(0usize, 0usize)]);
    while let Some((i, j)) = queue.pop_front() {
        let d = depth[id(i, j)];
        if d == k {
            continue;
        }
        for r in 0..sigma.len() {
            let (i2, j2) = (a.step_rank(i, r), b.step_rank(j, r));
            if i2 == n + 1 || depth[id(i2, j2)] != usize::MAX {
                continue;
            }
            depth[id(i2, j2)] = d + 1;
            parent[id(i2, j2)] = Some((id(i, j), r));
            if j2 == m + 1 {
                let mut out = Vec::new();
                let mut cur = id(i2, j2);
                while let Some((prev, r)) = parent[cur] {
                    out.push(sigma.symbol(r));
                    cur = prev;
                }
                out.reverse();
                return Ok(Some(Word(out)));
            }
            queue.push_back((i2, j2));
        }
    }
    Ok(None)
}

/// `|w|_{p,gc}`: embeddings of `p` into `w` whose gaps satisfy `gc`.
///
/// Left to right over the pattern, `count[j]` holds the embeddings of the
/// current prefix ending at position `j`. A length gap sums a window of the
/// previous row (prefix sums); a regular gap carries the previous row
/// through the DFA, one bucket per state; a combined gap scans every
/// source position.
pub fn count_embeddings(p: &Word, w: &Word, gc: &GapTuple) -> Result<BigUint> {
    gc.check_arity(p.len())?;
    if p.is_empty() {
        return Ok(BigUint::one());
    }
    let n = w.len();
    let mut count: Vec<BigUint> = w.iter().map(|&a| BigUint::from(u8::from(a == p[0]))).collect();
    for (i, c) in gc.constraints().iter().enumerate() {
        let target = p[i + 1];
        let mut next = vec![BigUint::zero(); n];
        match c {
            GapConstraint::Length(b) => {
                let mut prefix = vec![BigUint::zero(); n + 1];
                for j in 0..n {
                    prefix[j + 1] = &prefix[j] + &count[j];
                }
                for (t, slot) in next.iter_mut().enumerate() {
                    // sources j with t - j - 1 in [lower, upper]
                    if w[t] != target || t < b.lower + 1 {
                        continue;
                    }
                    let hi = t - 1 - b.lower;
                    let lo = b.upper.map_or(0, |u| (t - 1).saturating_sub(u));
                    if lo <= hi {
                        *slot = &prefix[hi + 1] - &prefix[lo];
                    }
                }
            }
            GapConstraint::Regular(d) => {
                let ranks = d.alphabet().ranks(w)?;
                let mut acc = vec![BigUint::zero(); d.state_count()];
                for t in 0..n {
                    if w[t] == target {
                        next[t] = (0..d.state_count())
                            .filter(|&q| d.is_accepting(q))
                            .map(|q| &acc[q])
                            .sum();
                    }
                    let mut moved = vec![BigUint::zero(); d.state_count()];
                    for (q, v) in acc.into_iter().enumerate() {
                        if !v.is_zero() {
                            moved[d.step_rank(q, ranks[t])] += v;
                        }
                    }
                    moved[d.start()] += &count[t];
                    acc = moved;
                }
            }
            GapConstraint::RegLen(b, d) => {
                let ranks = d.alphabet().ranks(w)?;
                for j in 0..n {
                    if count[j].is_zero() {
                        continue;
                    }
                    let mut q = d.start();
                    for t in j + 1..n {
                        let len = t - j - 1;
                        if b.upper.is_some_and(|u| len > u) {
                            break;
                        }
                        if w[t] == target && len >= b.lower && d.is_accepting(q) {
                            next[t] += &count[j];
                        }
                        q = d.step_rank(q, ranks[t]);
                    }
                }
            }
        }
        count = next;
    }
    Ok(count.into_iter().sum())
}

/// An NFA whose accepting-path counts carry multiplicities. Transitions
/// form a multiset: repeated triples are distinct edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountingNfa {
    pub alphabet: Alphabet,
    pub states: usize,
    pub initial: Vec<usize>,
    pub finals: Vec<usize>,
    pub transitions: Vec<(usize, Symbol, usize)>,
}

impl CountingNfa {
    pub fn new(
        alphabet: Alphabet,
        states: usize,
        initial: Vec<usize>,
        finals: Vec<usize>,
        transitions: Vec<(usize, Symbol, usize)>,
    ) -> Result<Self> {
        let bad_state = initial
            .iter()
            .chain(&finals)
            .chain(transitions.iter().flat_map(|(s, _, t)| [s, t]))
            .find(|&&q| q >= states);
        if let Some(q) = bad_state {
            return Err(Error::arg(format!("state {q} out of range for {states} states")));
        }
        if let Some(&(_, a, _)) = transitions.iter().find(|(_, a, _)| !alphabet.contains(*a)) {
            return Err(Error::UnknownSymbol { symbol: a });
        }
        Ok(CountingNfa {
            alphabet,
            states,
            initial,
            finals,
            transitions,
        })
    }

    /// Number of accepting paths labelled `x`.
    pub fn path_count(&self, x: &Word) -> Result<BigUint> {
        self.alphabet.validate(x)?;
        let mut v = vec![BigUint::zero(); self.states];
        for &q in &self.initial {
            v[q] += 1u32;
        }
        for &a in x.iter() {
            let mut next = vec![BigUint::zero(); self.states];
            for &(s, b, t) in &self.transitions {
                if b == a && !v[s].is_zero() {
                    next[t] += &v[s];
                }
            }
            v = next;
        }
        Ok(self.finals.iter().map(|&q| &v[q]).sum())
    }
}

/// `A_{w,gc}` for patterns of length `k`: a start state plus a state
/// `(i, j)` for "pattern letter `i` placed at position `j`"; `(i, j)` moves
/// to `(i + 1, j')` on `w[j']` when `w[j+1..j'-1] ∈ C_i`. Accepting paths
/// for `p` are exactly the embeddings of `p` satisfying `gc`.
pub fn build_counting_nfa(w: &Word, sigma: &Alphabet, gc: &GapTuple, k: usize) -> Result<CountingNfa> {
    sigma.validate(w)?;
    gc.check_arity(k)?;
    gc.check_alphabet(sigma)?;
    let n = w.len();
    let state = |i: usize, j: usize| 1 + (i - 1) * n + j;
    let mut transitions: Vec<(usize, Symbol, usize)> = Vec::new();
    if k > 0 {
        transitions.extend((0..n).map(|j| (0, w[j], state(1, j))));
    }
    for (idx, c) in gc.constraints().iter().enumerate() {
        let i = idx + 1;
        for j in 0..n {
            for t in gap_targets(c, w, j)? {
                transitions.push((state(i, j), w[t], state(i + 1, t)));
            }
        }
    }
    let finals = if k == 0 {
        vec![0]
    } else {
        (0..n).map(|j| state(k, j)).collect()
    };
    CountingNfa::new(sigma.clone(), 1 + k * n, vec![0], finals, transitions)
}

/// Positions `t > j` such that `w[j+1..t-1]` satisfies `c`.
fn gap_targets(c: &GapConstraint, w: &Word, j: usize) -> Result<Vec<usize>> {
    let b = c.bound();
    let dfa = match c.dfa() {
        Some(d) => Some((d, d.alphabet().ranks(w)?)),
        None => None,
    };
    let mut out = Vec::new();
    let mut q = dfa.as_ref().map(|(d, _)| d.start());
    for t in j + 1..w.len() {
        let len = t - j - 1;
        if b.upper.is_some_and(|u| len > u) {
            break;
        }
        let accepted = match (&dfa, q) {
            (Some((d, _)), Some(q)) => d.is_accepting(q),
            _ => true,
        };
        if len >= b.lower && accepted {
            out.push(t);
        }
        if let (Some((d, ranks)), Some(state)) = (&dfa, q) {
            q = Some(d.step_rank(state, ranks[t]));
        }
    }
    Ok(out)
}

/// Row-echelon basis over the rationals, each row with a unit pivot.
struct Basis {
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl Basis {
    /// Adds `v` if it is independent of the current rows.
    fn insert(&mut self, v: &[BigInt]) -> bool {
        let mut v: Vec<BigRational> = v.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let f = v[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pivot].recip();
        for x in &mut v {
            *x *= &inv;
        }
        self.rows.push((pivot, v));
        true
    }
}

/// Whether every word has equally many accepting paths in both NFAs.
///
/// The two automata are stacked into one of dimension `N₁ + N₂` with
/// initial vector `(α₁, α₂)` and final vector `(f₁, -f₂)`; they are
/// equivalent iff every reachable vector `α·M(x)` is orthogonal to the
/// final vector. Breadth-first exploration keeps only vectors independent
/// of those seen so far, so at most `N₁ + N₂` are expanded; independence
/// is decided exactly over the rationals.
pub fn path_equivalent(n1: &CountingNfa, n2: &CountingNfa) -> Result<bool> {
    if n1.alphabet != n2.alphabet {
        return Err(Error::arg("path equivalence needs both automata over the same alphabet"));
    }
    let off = n1.states;
    let dim = n1.states + n2.states;
    let sigma = &n1.alphabet;
    let mut by_letter: Vec<Vec<(usize, usize)>> = vec![Vec::new(); sigma.len()];
    for &(s, a, t) in &n1.transitions {
        by_letter[sigma.rank(a).unwrap()].push((s, t));
    }
    for &(s, a, t) in &n2.transitions {
        by_letter[sigma.rank(a).unwrap()].push((s + off, t + off));
    }
    let mut eta = vec![BigInt::zero(); dim];
    for &q in &n1.finals {
        eta[q] += 1;
    }
    for &q in &n2.finals {
        eta[q + off] -= 1;
    }
    let mut start = vec![BigInt::zero(); dim];
    for &q in &n1.initial {
        start[q] += 1;
    }
    for &q in &n2.initial {
        start[q + off] += 1;
    }
    let mut basis = Basis { rows: Vec::new() };
    let mut queue = VecDeque::new();
    if basis.insert(&start) {
        queue.push_back(start);
    }
    while let Some(v) = queue.pop_front() {
        let dot: BigInt = v.iter().zip(&eta).map(|(a, b)| a * b).sum();
        if !dot.is_zero() {
            return Ok(false);
        }
        for edges in &by_letter {
            let mut u = vec![BigInt::zero(); dim];
            for &(s, t) in edges {
                if !v[s].is_zero() {
                    u[t] += &v[s];
                }
            }
            if basis.insert(&u) {
                queue.push_back(u);
            }
        }
    }
    Ok(true)
}

/// `Ψ_gc(w) = Ψ_gc(v)`: equal embedding counts for every pattern of
/// length `|gc| + 1`.
pub fn equi_multiplicity(w: &Word, v: &Word, sigma: &Alphabet, gc: &GapTuple) -> Result<bool> {
    let k = gc.len() + 1;
    path_equivalent(
        &build_counting_nfa(w, sigma, gc, k)?,
        &build_counting_nfa(v, sigma, gc, k)?,
    )
}
