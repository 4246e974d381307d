//! Next-occurrence table shared by the absent-subsequence, congruence and
//! automata modules.

/// `next(i, a)`: smallest 0-based `j ≥ i` with `w[j] = a`, or `n` if none.
#[derive(Debug, Clone)]
pub(crate) struct NextTable {
    sigma: usize,
    n: usize,
    table: Vec<usize>,
}

impl NextTable {
    /// `ranks` are alphabet ranks of the word's symbols.
    pub(crate) fn new(ranks: &[usize], sigma: usize) -> Self {
        let n = ranks.len();
        let mut table = vec![n; (n + 1) * sigma];
        for i in (0..n).rev() {
            let (head, tail) = table.split_at_mut((i + 1) * sigma);
            head[i * sigma..].copy_from_slice(&tail[..sigma]);
            head[i * sigma + ranks[i]] = i;
        }
        NextTable { sigma, n, table }
    }

    /// Defined for `i ≤ n`.
    pub(crate) fn next(&self, i: usize, a: usize) -> usize {
        self.table[i * self.sigma + a]
    }

    /// `next(i, a)` as an option, accepting any `i`.
    pub(crate) fn find(&self, i: usize, a: usize) -> Option<usize> {
        if i >= self.n {
            return None;
        }
        let j = self.next(i, a);
        (j < self.n).then_some(j)
    }

    /// Smallest end `e` (exclusive) such that `w[i..e]` contains every
    /// letter, if any.
    pub(crate) fn arch_end(&self, i: usize) -> Option<usize> {
        let mut e = i;
        for a in 0..self.sigma {
            e = e.max(self.find(i, a)? + 1);
        }
        Some(e)
    }
}
