//! Browser bindings for a few `subseq-core` operations.
//!
//! Words are strings of characters; the alphabet is the sorted set of
//! characters in the inputs plus any extra letters given by the caller.
//! Every function returns a JSON string, or throws a string on bad input.

use serde_json::{json, Value};
use subseq_core::congruence::{k_blocks, shortlex, simon_tree};
use subseq_core::matcher::match_range;
use subseq_core::universality::arch_factorize;
use subseq_core::{Alphabet, Word};
use wasm_bindgen::prelude::*;

struct Letters(Vec<char>);

impl Letters {
    fn new(extra: &str, inputs: &[&str]) -> Result<Self, String> {
        let mut cs: Vec<char> = extra.chars().chain(inputs.iter().flat_map(|s| s.chars())).collect();
        cs.retain(|c| !c.is_whitespace());
        cs.sort_unstable();
        cs.dedup();
        if cs.is_empty() {
            return Err("the alphabet is empty: type a word or some letters".into());
        }
        Ok(Letters(cs))
    }

    fn alphabet(&self) -> Alphabet {
        Alphabet::new((0..self.0.len() as u32).collect()).expect("non-empty")
    }

    fn word(&self, s: &str) -> Word {
        let index = |c| self.0.binary_search(&c).expect("alphabet covers the inputs") as u32;
        Word::new(s.chars().filter(|c| !c.is_whitespace()).map(index).collect())
    }

    fn show(&self, w: &Word) -> String {
        w.iter().map(|&a| self.0[a as usize]).collect()
    }
}

pub fn arch_json(w: &str, extra: &str) -> Result<Value, String> {
    let letters = Letters::new(extra, &[w])?;
    let w = letters.word(w);
    let f = arch_factorize(&w, &letters.alphabet()).map_err(|e| e.to_string())?;
    let arches: Vec<Value> = f
        .arches
        .iter()
        .zip(f.arch_words(&w))
        .map(|(&(i, j), x)| json!({"start": i, "end": j, "word": letters.show(&x)}))
        .collect();
    Ok(json!({
        "alphabet": letters.0.iter().collect::<String>(),
        "iota": f.iota,
        "arches": arches,
        "rest": {"start": f.rest.0, "end": f.rest.1, "word": letters.show(&f.rest_word(&w))},
    }))
}

pub fn match_range_json(u: &str, w: &str, p: usize, extra: &str) -> Result<Value, String> {
    let letters = Letters::new(extra, &[u, w])?;
    let (u, w) = (letters.word(u), letters.word(w));
    let report = match_range(&u, &w, p).map_err(|e| e.to_string())?;
    let windows: Vec<Value> = report
        .per_position
        .iter()
        .enumerate()
        .map(|(t, &hit)| {
            let (start, end) = ((t + 2).saturating_sub(p).max(1), t + 1);
            json!({"start": start, "end": end, "window": letters.show(&w.factor(start, end)), "hit": hit})
        })
        .collect();
    Ok(json!({"matched": report.matched(), "windows": windows}))
}

pub fn simon_json(w: &str, k: usize, extra: &str) -> Result<Value, String> {
    let letters = Letters::new(extra, &[w])?;
    let w = letters.word(w);
    let blocks: Vec<Value> = k_blocks(&w, k)
        .into_iter()
        .map(|(i, j)| json!({"start": i, "end": j, "word": letters.show(&w.factor(i, j))}))
        .collect();
    Ok(json!({
        "shortlex": letters.show(&shortlex(&w, k)),
        "blocks": blocks,
        "tree": serde_json::to_value(simon_tree(&w)).map_err(|e| e.to_string())?,
    }))
}

fn finish(v: Result<Value, String>) -> Result<String, JsValue> {
    v.map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn arch(w: &str, extra: &str) -> Result<String, JsValue> {
    finish(arch_json(w, extra))
}

#[wasm_bindgen(js_name = matchRange)]
pub fn match_range_report(u: &str, w: &str, p: usize, extra: &str) -> Result<String, JsValue> {
    finish(match_range_json(u, w, p, extra))
}

#[wasm_bindgen]
pub fn simon(w: &str, k: usize, extra: &str) -> Result<String, JsValue> {
    finish(simon_json(w, k, extra))
}
