mod common;

use std::collections::{BTreeSet, HashMap};

use common::{sig, words_upto};
use subseq_core::congruence::*;
use subseq_core::oracle::{enumerate_subseq, shortlex_oracle, subseq_upto, Mode, OracleLimits};
use subseq_core::Word;

fn subseq_k(w: &Word, k: usize) -> BTreeSet<Word> {
    enumerate_subseq(w, k, Mode::Classic, u64::MAX).unwrap().key_set()
}

#[test]
fn shortlex_matches_oracle() {
    let limits = OracleLimits::default();
    for s in 1..=3 {
        let sigma = sig(s);
        for w in words_upto(&sigma, if s == 3 { 6 } else { 8 }) {
            for k in 0..=4 {
                let r = shortlex(&w, k);
                assert_eq!(r, shortlex_oracle(&w, &sigma, k, &limits).unwrap(), "{w} k={k}");
                assert_eq!(shortlex(&r, k), r);
                assert!(r.len() <= w.len());
            }
        }
    }
}

#[test]
fn equi_matches_set_equality() {
    for s in 2..=3 {
        let sigma = sig(s);
        let ws = words_upto(&sigma, if s == 3 { 4 } else { 6 });
        for k in 0..=4 {
            // classes by oracle set; equi must agree on every pair
            let sets: Vec<BTreeSet<Word>> = ws.iter().map(|w| subseq_upto(w, k, u64::MAX).unwrap()).collect();
            let forms: Vec<Word> = ws.iter().map(|w| shortlex(w, k)).collect();
            let mut by_set: HashMap<&BTreeSet<Word>, &Word> = HashMap::new();
            for (set, form) in sets.iter().zip(&forms) {
                assert_eq!(*by_set.entry(set).or_insert(form), form);
            }
            let mut by_form: HashMap<&Word, &BTreeSet<Word>> = HashMap::new();
            for (set, form) in sets.iter().zip(&forms) {
                assert_eq!(*by_form.entry(form).or_insert(set), set);
            }
        }
        for v in ws.iter().take(60) {
            for w in &ws {
                let level = max_equi_k(v, w);
                match congruence_level(v, w) {
                    None => assert_eq!(v, w),
                    Some(l) => assert_eq!(level, l, "{v} {w}"),
                }
                assert!(equi(v, w, level));
                if v != w {
                    assert!(!equi(v, w, level + 1));
                }
            }
        }
    }
}

#[test]
fn simon_tree_blocks_match_definition() {
    for s in 1..=3 {
        let sigma = sig(s);
        for w in words_upto(&sigma, if s == 3 { 6 } else { 8 }) {
            let n = w.len();
            let tree = simon_tree(&w);
            assert_eq!((tree.start, tree.end), (1, n));
            let mut stack = vec![&tree];
            while let Some(node) = stack.pop() {
                let k = node.depth;
                let sets: Vec<BTreeSet<Word>> = (node.start..=node.end)
                    .map(|l| subseq_k(&w.factor(l, n), k))
                    .collect();
                assert!(sets.windows(2).all(|p| p[0] == p[1]), "{w} depth {k}");
                if node.start < node.end {
                    assert!(!node.children.is_empty());
                    // children tile the node right to left
                    let mut hi = node.end;
                    for c in &node.children {
                        assert_eq!(c.end, hi);
                        assert_eq!(c.depth, k + 1);
                        hi = c.start - 1;
                    }
                    assert_eq!(hi + 1, node.start);
                    // adjacent siblings differ
                    for pair in node.children.windows(2) {
                        let (right, left) = (pair[0].start, pair[1].end);
                        assert_ne!(
                            subseq_k(&w.factor(right, n), k + 1),
                            subseq_k(&w.factor(left, n), k + 1),
                            "{w} depth {}",
                            k + 1
                        );
                    }
                }
                stack.extend(&node.children);
            }
            for k in 0..=n + 1 {
                let blocks = k_blocks(&w, k);
                for &(i, j) in &blocks {
                    let base = subseq_k(&w.factor(i, n), k);
                    assert!((i..=j).all(|l| subseq_k(&w.factor(l, n), k) == base));
                }
            }
        }
    }
}
