mod common;

use std::collections::BTreeMap;

use common::{sig, words_upto};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subseq_core::automata::*;
use subseq_core::oracle::{all_subsequences, enumerate_subseq, Mode};
use subseq_core::{Alphabet, Dfa, GapConstraint, GapTuple, LengthBound, Word};

fn random_gap(rng: &mut ChaCha8Rng, sigma: &Alphabet) -> GapConstraint {
    let lower = rng.gen_range(0..3);
    let upper = if rng.gen_bool(0.3) { None } else { Some(lower + rng.gen_range(0..4)) };
    let bound = LengthBound::new(lower, upper).unwrap();
    let allowed: Vec<u32> = sigma.iter().filter(|_| rng.gen_bool(0.6)).collect();
    let dfa = Dfa::star(sigma.clone(), &allowed).unwrap();
    match rng.gen_range(0..3) {
        0 => GapConstraint::Length(bound),
        1 => GapConstraint::Regular(dfa),
        _ => GapConstraint::RegLen(bound, dfa),
    }
}

fn random_tuple(rng: &mut ChaCha8Rng, sigma: &Alphabet, len: usize) -> GapTuple {
    GapTuple::new((0..len).map(|_| random_gap(rng, sigma)).collect()).unwrap()
}

fn count_map(w: &Word, k: usize, gc: &GapTuple) -> BTreeMap<Word, BigUint> {
    enumerate_subseq(w, k, Mode::Gc(gc), u64::MAX).unwrap().into_map()
}

#[test]
fn subsequence_automaton_language() {
    for s in 1..=3 {
        let sigma = sig(s);
        for w in words_upto(&sigma, if s == 3 { 5 } else { 7 }) {
            let a = build_subseq_dfa(&w, &sigma).unwrap();
            let b = build_non_subseq_dfa(&w, &sigma).unwrap();
            assert_eq!(a.state_count(), w.len() + 2);
            let present = all_subsequences(&w, Mode::Classic, u64::MAX).unwrap();
            for x in words_upto(&sigma, w.len() + 1) {
                let inside = present.contains(&x);
                assert_eq!(a.accepts(&x).unwrap(), inside && !x.is_empty());
                assert_eq!(b.accepts(&x).unwrap(), !inside);
            }
        }
    }
}

#[test]
fn containment_matches_oracle() {
    for s in 2..=3 {
        let sigma = sig(s);
        let ws = words_upto(&sigma, if s == 3 { 4 } else { 5 });
        for w in &ws {
            for v in &ws {
                for k in 0..=4 {
                    let sw = enumerate_subseq(w, k, Mode::Classic, u64::MAX).unwrap().key_set();
                    let sv = enumerate_subseq(v, k, Mode::Classic, u64::MAX).unwrap().key_set();
                    assert_eq!(contains_k(w, v, &sigma, k).unwrap(), sw.is_subset(&sv));
                    let d = shortest_distinguisher(w, v, &sigma, k).unwrap();
                    if sw.is_subset(&sv) {
                        assert_eq!(d, None);
                        continue;
                    }
                    // shortest, then smallest, non-empty subsequence of w absent from v
                    let pw = all_subsequences(w, Mode::Classic, u64::MAX).unwrap();
                    let pv = all_subsequences(v, Mode::Classic, u64::MAX).unwrap();
                    let expect = pw
                        .iter()
                        .filter(|x| !x.is_empty() && x.len() <= k && !pv.contains(*x))
                        .min_by(|a, b| a.shortlex_cmp(b))
                        .cloned();
                    assert_eq!(d, expect, "{w} {v} {k}");
                }
            }
        }
    }
}

#[test]
fn counts_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for s in 2..=3 {
        let sigma = sig(s);
        for w in words_upto(&sigma, if s == 3 { 5 } else { 7 }) {
            for k in 0..=3usize {
                let gcs = [GapTuple::unconstrained(k.saturating_sub(1)), random_tuple(&mut rng, &sigma, k.saturating_sub(1))];
                for gc in &gcs {
                    let expect = count_map(&w, k, gc);
                    let nfa = build_counting_nfa(&w, &sigma, gc, k).unwrap();
                    let mut total = BigUint::from(0u32);
                    for p in sigma.words_of_len(k) {
                        let c = count_embeddings(&p, &w, gc).unwrap();
                        assert_eq!(&c, expect.get(&p).unwrap_or(&BigUint::from(0u32)), "{p} {w}");
                        assert_eq!(nfa.path_count(&p).unwrap(), c);
                        total += c;
                    }
                    if gc.constraints().iter().all(GapConstraint::is_unconstrained) {
                        assert_eq!(total, binomial(w.len(), k));
                    }
                }
            }
        }
    }
}

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn multiplicity_equivalence_matches_count_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let sigma = sig(2);
    let ws = words_upto(&sigma, 6);
    for k in 1..=4 {
        let gc = GapTuple::unconstrained(k - 1);
        let maps: Vec<_> = ws.iter().map(|w| count_map(w, k, &gc)).collect();
        for _ in 0..300 {
            let (i, j) = (rng.gen_range(0..ws.len()), rng.gen_range(0..ws.len()));
            // bias towards equal lengths, where equivalence can hold
            let j = if rng.gen_bool(0.5) {
                ws.iter().position(|w| w.len() == ws[i].len()).unwrap() + rng.gen_range(0..1 << ws[i].len())
            } else {
                j
            };
            let expect = maps[i] == maps[j];
            assert_eq!(equi_multiplicity(&ws[i], &ws[j], &sigma, &gc).unwrap(), expect);
        }
    }
    let s3 = sig(3);
    for _ in 0..200 {
        let k = rng.gen_range(1..=3);
        let gc = random_tuple(&mut rng, &s3, k - 1);
        let len = rng.gen_range(0..6);
        let w: Word = (0..len).map(|_| rng.gen_range(0..3)).collect();
        let mut v = w.clone();
        if len > 1 {
            let a = rng.gen_range(0..len);
            let b = rng.gen_range(0..len);
            v.0.swap(a, b);
        }
        let expect = count_map(&w, k, &gc) == count_map(&v, k, &gc);
        assert_eq!(equi_multiplicity(&w, &v, &s3, &gc).unwrap(), expect, "{w} {v} {gc:?}");
    }
}

#[test]
fn path_equivalence_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let sigma = sig(2);
    for _ in 0..300 {
        let make = |rng: &mut ChaCha8Rng| {
            let states = rng.gen_range(1..6);
            let edges = rng.gen_range(0..10);
            let transitions = (0..edges)
                .map(|_| (rng.gen_range(0..states), rng.gen_range(0..2), rng.gen_range(0..states)))
                .collect();
            let finals = (0..states).filter(|_| rng.gen_bool(0.4)).collect();
            CountingNfa::new(sigma.clone(), states, vec![0], finals, transitions).unwrap()
        };
        let n1 = make(&mut rng);
        let n2 = if rng.gen_bool(0.3) { n1.clone() } else { make(&mut rng) };
        // counts are determined by words up to length N1 + N2
        let limit = n1.states + n2.states;
        let expect = words_upto(&sigma, limit)
            .iter()
            .all(|x| n1.path_count(x).unwrap() == n2.path_count(x).unwrap());
        assert_eq!(path_equivalent(&n1, &n2).unwrap(), expect);
    }
}
