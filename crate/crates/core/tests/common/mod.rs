#![allow(dead_code)]

use subseq_core::{Alphabet, Word};

pub fn sig(n: usize) -> Alphabet {
    Alphabet::range(n).unwrap()
}

/// Every word over `sigma` of length at most `max`, shortest first.
pub fn words_upto(sigma: &Alphabet, max: usize) -> Vec<Word> {
    (0..=max).flat_map(|l| sigma.words_of_len(l).collect::<Vec<_>>()).collect()
}
