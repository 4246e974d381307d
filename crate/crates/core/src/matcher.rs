//! Subsequence matching: classical, bounded-range and gap-constrained.

use serde::{Deserialize, Serialize};

use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::gap::{GapConstraint, GapTuple, LengthBound};
use crate::word::{Embedding, Symbol, Word};

/// Outcome of a matching query with the witnessing embedding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchWitness {
    pub matched: bool,
    pub embedding: Option<Embedding>,
}

impl MatchWitness {
    fn found(positions: Vec<usize>) -> Self {
        MatchWitness {
            matched: true,
            embedding: Some(Embedding::from_sorted(positions)),
        }
    }

    fn none() -> Self {
        MatchWitness {
            matched: false,
            embedding: None,
        }
    }
}

/// Leftmost greedy embedding of `u` into `w`, in a single pass over `w`.
pub fn match_classic(u: &Word, w: &Word) -> MatchWitness {
    let mut positions = Vec::with_capacity(u.len());
    let mut it = w.iter().enumerate();
    for &a in u.iter() {
        match it.find(|&(_, &b)| b == a) {
            Some((j, _)) => positions.push(j + 1),
            None => return MatchWitness::none(),
        }
    }
    MatchWitness::found(positions)
}

/// Per-position answers of the sliding-window scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RangeReport {
    /// Entry `t - 1` is true iff the pattern is a subsequence of the
    /// window `w[t-p+1..t]`.
    pub per_position: Vec<bool>,
    pub pattern_empty: bool,
}

impl RangeReport {
    /// `u ≤_p w`. The empty pattern is a p-subsequence of every word.
    pub fn matched(&self) -> bool {
        self.pattern_empty || self.per_position.iter().any(|&b| b)
    }

    /// 1-based window ends that contain the pattern.
    pub fn hits(&self) -> Vec<usize> {
        self.per_position
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i + 1))
            .collect()
    }
}

/// Streaming scanner for one pattern and a fixed window size.
///
/// For every prefix `u[1..i]` it keeps the start of the shortest suffix of
/// the text read so far that still contains that prefix; each new symbol
/// updates the `m` entries right to left.
#[derive(Debug, Clone)]
pub struct WindowMatcher<'a> {
    pattern: &'a [Symbol],
    window: usize,
    starts: Vec<Option<usize>>,
    read: usize,
}

impl<'a> WindowMatcher<'a> {
    pub fn new(pattern: &'a [Symbol], window: usize) -> Result<Self> {
        if window == 0 {
            return Err(Error::arg("window size p must be at least 1"));
        }
        Ok(WindowMatcher {
            pattern,
            window,
            starts: vec![None; pattern.len()],
            read: 0,
        })
    }

    /// Feeds one symbol; returns whether the current window contains the pattern.
    pub fn push(&mut self, a: Symbol) -> bool {
        let t = self.read;
        self.read += 1;
        for i in (0..self.pattern.len()).rev() {
            if self.pattern[i] == a {
                self.starts[i] = if i == 0 { Some(t) } else { self.starts[i - 1] };
            }
        }
        match self.starts.last() {
            None => true,
            Some(Some(s)) => t - s < self.window,
            Some(None) => false,
        }
    }
}

/// Bounded-range matching in `O(|u|·|w|)`.
pub fn match_range(u: &Word, w: &Word, p: usize) -> Result<RangeReport> {
    let mut scanner = WindowMatcher::new(u, p)?;
    Ok(RangeReport {
        per_position: w.iter().map(|&a| scanner.push(a)).collect(),
        pattern_empty: u.is_empty(),
    })
}

/// `u ≤_p w`
pub fn is_p_subsequence(u: &Word, w: &Word, p: usize) -> Result<bool> {
    if u.is_empty() {
        return Ok(true);
    }
    let mut scanner = WindowMatcher::new(u, p)?;
    Ok(w.iter().any(|&a| scanner.push(a)))
}

/// One gap constraint prepared against a concrete text.
struct PreparedGap<'g> {
    bound: LengthBound,
    dfa: Option<(&'g Dfa, Vec<usize>)>,
}

impl<'g> PreparedGap<'g> {
    fn new(c: &'g GapConstraint, w: &Word) -> Result<Self> {
        let dfa = match c.dfa() {
            Some(d) => Some((d, d.alphabet().ranks(w)?)),
            None => None,
        };
        Ok(PreparedGap {
            bound: c.bound(),
            dfa,
        })
    }

    /// `ok[j]`: some `j' > j` with `next[j']` has an admissible gap `w[j+1..j'-1]`
    /// (0-based positions).
    fn reach_back(&self, next: &[bool]) -> Vec<bool> {
        let n = next.len();
        match &self.dfa {
            None => {
                // nearest feasible position at or after x
                let mut nearest = vec![n; n + 1];
                for x in (0..n).rev() {
                    nearest[x] = if next[x] { x } else { nearest[x + 1] };
                }
                (0..n)
                    .map(|j| {
                        let lo = j + 1 + self.bound.lower;
                        lo < n && nearest[lo] < n && self.bound.contains(nearest[lo] - j - 1)
                    })
                    .collect()
            }
            Some((dfa, ranks)) if self.bound == LengthBound::UNBOUNDED => {
                // reach[x][q]: reading from x in state q hits an accepting
                // state exactly at some feasible position
                let states = dfa.state_count();
                let mut reach = vec![false; (n + 1) * states];
                for x in (0..n).rev() {
                    for q in 0..states {
                        reach[x * states + q] = (dfa.is_accepting(q) && next[x])
                            || reach[(x + 1) * states + dfa.step_rank(q, ranks[x])];
                    }
                }
                (0..n).map(|j| reach[(j + 1) * states + dfa.start()]).collect()
            }
            Some(_) => (0..n).map(|j| self.first_after(j, next).is_some()).collect(),
        }
    }

    /// Smallest `j' > j` with `next[j']` and an admissible gap.
    fn first_after(&self, j: usize, next: &[bool]) -> Option<usize> {
        let n = next.len();
        let last = (j + 1 + self.bound.upper_or(n)).min(n.saturating_sub(1));
        let mut state = self.dfa.as_ref().map(|(d, _)| d.start());
        for x in j + 1..=last {
            let len = x - j - 1;
            let lang_ok = match (&self.dfa, state) {
                (Some((d, _)), Some(q)) => d.is_accepting(q),
                _ => true,
            };
            if next[x] && lang_ok && self.bound.contains(len) {
                return Some(x);
            }
            if let (Some((d, ranks)), Some(q)) = (&self.dfa, state) {
                state = Some(d.step_rank(q, ranks[x]));
            }
        }
        None
    }
}

/// Gap-constrained matching.
///
/// A backward pass marks, for every pattern index `i` and text position
/// `j`, whether `u[i..]` embeds with `u[i]` at `j`; length gaps use a
/// nearest-feasible array, regular gaps a `(position × state)` table.
/// The witness is then the lexicographically smallest valid embedding,
/// built greedily forward over the feasibility marks.
pub fn match_gc(u: &Word, w: &Word, gc: &GapTuple) -> Result<MatchWitness> {
    gc.check_arity(u.len())?;
    if u.is_empty() {
        return Ok(MatchWitness::found(Vec::new()));
    }
    let gaps: Vec<PreparedGap> = gc
        .constraints()
        .iter()
        .map(|c| PreparedGap::new(c, w))
        .collect::<Result<_>>()?;
    let m = u.len();
    let mut feasible: Vec<Vec<bool>> = vec![Vec::new(); m];
    feasible[m - 1] = w.iter().map(|&b| b == u[m - 1]).collect();
    for i in (0..m - 1).rev() {
        let ok = gaps[i].reach_back(&feasible[i + 1]);
        feasible[i] = w.iter().zip(ok).map(|(&b, ok)| ok && b == u[i]).collect();
    }
    let Some(first) = feasible[0].iter().position(|&b| b) else {
        return Ok(MatchWitness::none());
    };
    let mut positions = vec![first];
    for i in 0..m - 1 {
        let prev = positions[i];
        let next = gaps[i]
            .first_after(prev, &feasible[i + 1])
            .expect("feasibility marks guarantee a continuation");
        positions.push(next);
    }
    Ok(MatchWitness::found(positions.into_iter().map(|p| p + 1).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{word, Alphabet};

    #[test]
    fn classic_examples() {
        let m = match_classic(&word(""), &word("abba"));
        assert!(m.matched);
        assert!(m.embedding.unwrap().is_empty());
        let m = match_classic(&word("abba"), &word("abba"));
        assert_eq!(m.embedding.unwrap().positions(), &[1, 2, 3, 4]);
        let m = match_classic(&word("ba"), &word("ab"));
        assert!(!m.matched && m.embedding.is_none());
    }

    #[test]
    fn range_examples() {
        let u = word("ab");
        let w = word("axxb".replace('x', "c").as_str());
        assert!(match_range(&u, &w, 4).unwrap().matched());
        assert_eq!(match_range(&u, &w, 4).unwrap().hits(), vec![4]);
        assert!(!match_range(&u, &w, 3).unwrap().matched());
        assert!(match_range(&u, &word("ab"), 2).unwrap().matched());
        assert!(match_range(&u, &w, 0).is_err());
    }

    #[test]
    fn range_shorter_window_than_pattern_is_all_false() {
        let r = match_range(&word("aaa"), &word("aaaaa"), 2).unwrap();
        assert_eq!(r.per_position, vec![false; 5]);
    }

    #[test]
    fn empty_pattern_matches_every_window() {
        let r = match_range(&word(""), &word("ab"), 1).unwrap();
        assert_eq!(r.per_position, vec![true, true]);
        assert!(match_range(&word(""), &word(""), 1).unwrap().matched());
    }

    #[test]
    fn gc_length_examples() {
        let (u, w) = (word("ab"), word("acb"));
        let tight = GapTuple::new(vec![GapConstraint::empty_gap()]).unwrap();
        assert!(!match_gc(&u, &w, &tight).unwrap().matched);
        let loose = GapTuple::new(vec![GapConstraint::length(0, Some(1)).unwrap()]).unwrap();
        let m = match_gc(&u, &w, &loose).unwrap();
        assert_eq!(m.embedding.unwrap().positions(), &[1, 3]);
    }

    #[test]
    fn gc_regular_examples() {
        let sigma = Alphabet::range(4).unwrap();
        let (u, w) = (word("ab"), word("acb"));
        let c_star = GapTuple::new(vec![GapConstraint::Regular(Dfa::star(sigma.clone(), &[2]).unwrap())]).unwrap();
        assert!(match_gc(&u, &w, &c_star).unwrap().matched);
        let d_star = GapTuple::new(vec![GapConstraint::Regular(Dfa::star(sigma, &[3]).unwrap())]).unwrap();
        assert!(!match_gc(&u, &w, &d_star).unwrap().matched);
    }

    #[test]
    fn gc_reglen_uses_both_parts() {
        let sigma = Alphabet::range(3).unwrap();
        let dfa = Dfa::star(sigma, &[2]).unwrap();
        let gc = |lo, hi| {
            GapTuple::new(vec![GapConstraint::RegLen(LengthBound::new(lo, hi).unwrap(), dfa.clone())]).unwrap()
        };
        let w = word("acccb");
        assert!(match_gc(&word("ab"), &w, &gc(0, Some(3))).unwrap().matched);
        assert!(!match_gc(&word("ab"), &w, &gc(0, Some(2))).unwrap().matched);
        assert!(!match_gc(&word("ab"), &w, &gc(4, None)).unwrap().matched);
    }

    #[test]
    fn gc_witness_is_lexicographically_smallest() {
        // with gap exactly 1 the leftmost a that works is at 2
        let gc = GapTuple::new(vec![GapConstraint::length(1, Some(1)).unwrap()]).unwrap();
        let m = match_gc(&word("ab"), &word("aacb"), &gc).unwrap();
        assert_eq!(m.embedding.unwrap().positions(), &[2, 4]);
    }

    #[test]
    fn gc_unconstrained_equals_classic() {
        let (u, w) = (word("aba"), word("babab"));
        let m = match_gc(&u, &w, &GapTuple::unconstrained(2)).unwrap();
        assert_eq!(m, match_classic(&u, &w));
    }

    #[test]
    fn gc_arity_mismatch() {
        let err = match_gc(&word("abc"), &word("abc"), &GapTuple::unconstrained(1)).unwrap_err();
        assert_eq!(err, Error::ArityMismatch { expected: 2, actual: 1 });
    }

    #[test]
    fn gc_foreign_symbol() {
        let dfa = Dfa::star(Alphabet::range(2).unwrap(), &[0]).unwrap();
        let gc = GapTuple::new(vec![GapConstraint::Regular(dfa)]).unwrap();
        assert!(match_gc(&word("ab"), &word("acb"), &gc).is_err());
    }
}
