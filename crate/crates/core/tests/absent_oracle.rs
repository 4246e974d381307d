mod common;

use std::collections::BTreeSet;

use common::{sig, words_upto};
use subseq_core::absent::*;
use subseq_core::oracle::{absent_enum_oracle, AbsentVariant, OracleLimits};
use subseq_core::universality::universality_index;
use subseq_core::Word;

#[test]
fn sets_match_oracle() {
    let limits = OracleLimits::default();
    for s in 1..=3 {
        let sigma = sig(s);
        for w in words_upto(&sigma, if s == 3 { 5 } else { 7 }) {
            let sas = absent_enum_oracle(&w, &sigma, AbsentVariant::Sas, &limits).unwrap();
            let mas = absent_enum_oracle(&w, &sigma, AbsentVariant::Mas, &limits).unwrap();
            let got_sas = sas_enumerate(&w, &sigma).unwrap();
            assert_eq!(got_sas.iter().cloned().collect::<BTreeSet<_>>(), sas, "{w}");
            assert!(got_sas.windows(2).all(|p| p[0] < p[1]));
            let index = MasIndex::new(&w, &sigma).unwrap();
            let got_mas: Vec<Word> = index.enumerate().collect();
            assert_eq!(got_mas.iter().cloned().collect::<BTreeSet<_>>(), mas, "{w}");
            assert!(got_mas.windows(2).all(|p| p[0].shortlex_cmp(&p[1]).is_lt()));
            assert!(sas.is_subset(&mas));
            assert!(sas.contains(&sas_one(&w, &sigma).unwrap()));
            assert_eq!(sas_lex_smallest(&w, &sigma).unwrap(), *sas.first().unwrap());
            assert_eq!(index.lex_smallest(), *mas.first().unwrap());
            let max = mas.iter().map(|x| x.len()).max().unwrap();
            let longest = index.longest();
            assert_eq!(longest, mas.iter().filter(|x| x.len() == max).min().unwrap().clone());
            for l in 0..=w.len() + 2 {
                assert_eq!(index.exists_length(l), mas.iter().any(|x| x.len() == l));
            }
            // recognizers over all short candidates
            for u in words_upto(&sigma, w.len() + 1) {
                assert_eq!(is_sas(&u, &w, &sigma).unwrap(), sas.contains(&u));
                assert_eq!(is_mas(&u, &w, &sigma).unwrap(), mas.contains(&u), "{u} in {w}");
            }
        }
    }
}

#[test]
fn extension_queries_match_oracle() {
    let limits = OracleLimits::default();
    for s in 1..=3 {
        let sigma = sig(s);
        for w in words_upto(&sigma, if s == 3 { 4 } else { 6 }) {
            let mas = absent_enum_oracle(&w, &sigma, AbsentVariant::Mas, &limits).unwrap();
            let index = MasIndex::new(&w, &sigma).unwrap();
            for u in words_upto(&sigma, w.len()) {
                let got = index.extend(&u);
                if !subseq_core::word::is_subsequence(&u, &w) {
                    assert!(mas_ext(&w, &sigma, &u).is_err());
                    continue;
                }
                let expect = mas
                    .iter()
                    .filter(|x| x.starts_with(&u))
                    .min_by(|a, b| a.shortlex_cmp(b))
                    .cloned();
                assert_eq!(got.unwrap(), expect, "{u} in {w}");
            }
        }
    }
}

#[test]
fn range_handles() {
    for s in 1..=3 {
        let sigma = sig(s);
        for w in words_upto(&sigma, if s == 3 { 5 } else { 7 }) {
            let r = SasRange::new(&w, &sigma).unwrap();
            for i in 1..=w.len() {
                for j in i..=w.len() {
                    let f = w.factor(i, j);
                    let h = r.query(i, j).unwrap();
                    assert_eq!(h.length, universality_index(&f, &sigma).unwrap() + 1);
                    let x = h.materialize(&r);
                    assert_eq!(x.len(), h.length);
                    assert!(is_sas(&x, &f, &sigma).unwrap(), "{x} for {f}");
                }
            }
        }
    }
}

#[test]
fn bounded_range_variants_match_oracle() {
    let limits = OracleLimits::default();
    for s in 2..=3 {
        let sigma = sig(s);
        for w in words_upto(&sigma, if s == 3 { 4 } else { 6 }) {
            for p in 1..=w.len().max(1) {
                let psas = absent_enum_oracle(&w, &sigma, AbsentVariant::PSas(p), &limits).unwrap();
                let pmas = absent_enum_oracle(&w, &sigma, AbsentVariant::PMas(p), &limits).unwrap();
                for u in words_upto(&sigma, w.len().min(p) + 1) {
                    assert_eq!(is_p_mas(&u, &w, p).unwrap(), pmas.contains(&u), "{u} {w} {p}");
                    assert_eq!(is_p_sas(&u, &w, &sigma, p, 1 << 20).unwrap(), psas.contains(&u));
                }
            }
        }
    }
}
