//! JSON gap-constraint files and DFA dumps.
//!
//! ```json
//! [{"type": "length", "min": 0, "max": null},
//!  {"type": "dfa", "states": 1, "start": 0, "accept": [0], "delta": {"0": {"c": 0}}},
//!  {"type": "reglen", "len": {"min": 1, "max": 2}, "dfa": {...}}]
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use subseq_core::{Dfa, Error, GapConstraint, GapTuple, LengthBound, Result};

use crate::codec::Codec;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum GapSpec {
    Length(LenSpec),
    Dfa(DfaSpec),
    Reglen { len: LenSpec, dfa: DfaSpec },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LenSpec {
    pub min: usize,
    #[serde(default)]
    pub max: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DfaSpec {
    pub states: usize,
    pub start: usize,
    pub accept: Vec<usize>,
    pub delta: BTreeMap<String, BTreeMap<String, usize>>,
}

/// A gap file holds one spec or a list of them, first gap first.
pub fn parse_specs(text: &str) -> Result<Vec<GapSpec>> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum File {
        Many(Vec<GapSpec>),
        One(GapSpec),
    }
    match serde_json::from_str(text) {
        Ok(File::Many(v)) => Ok(v),
        Ok(File::One(s)) => Ok(vec![s]),
        Err(e) => Err(Error::InvalidConstraint(format!("gap file: {e}"))),
    }
}

/// Symbol tokens mentioned by DFA transitions, for alphabet inference.
pub fn symbol_tokens(specs: &[GapSpec]) -> Vec<&str> {
    specs
        .iter()
        .filter_map(|s| match s {
            GapSpec::Length(_) => None,
            GapSpec::Dfa(d) | GapSpec::Reglen { dfa: d, .. } => Some(d),
        })
        .flat_map(|d| d.delta.values().flat_map(|row| row.keys().map(String::as_str)))
        .collect()
}

impl LenSpec {
    fn bound(&self) -> Result<LengthBound> {
        LengthBound::new(self.min, self.max)
    }

    fn of(b: &LengthBound) -> Self {
        LenSpec {
            min: b.lower,
            max: b.upper,
        }
    }
}

impl DfaSpec {
    pub fn to_dfa(&self, codec: &Codec) -> Result<Dfa> {
        let mut transitions = Vec::new();
        for (state, row) in &self.delta {
            let from: usize = state
                .parse()
                .map_err(|_| Error::InvalidDfa(format!("state '{state}' is not a number")))?;
            for (symbol, &to) in row {
                transitions.push((from, codec.parse_symbol(symbol)?, to));
            }
        }
        Dfa::new(codec.alphabet().clone(), self.states, self.start, &self.accept, &transitions)
    }

    pub fn of(dfa: &Dfa, codec: &Codec) -> Self {
        let mut delta: BTreeMap<String, BTreeMap<String, usize>> = BTreeMap::new();
        for (from, symbol, to) in dfa.transitions() {
            delta
                .entry(from.to_string())
                .or_default()
                .insert(codec.symbol_name(symbol), to);
        }
        DfaSpec {
            states: dfa.state_count(),
            start: dfa.start(),
            accept: dfa.accepting_states(),
            delta,
        }
    }
}

impl GapSpec {
    pub fn to_constraint(&self, codec: &Codec) -> Result<GapConstraint> {
        Ok(match self {
            GapSpec::Length(l) => GapConstraint::Length(l.bound()?),
            GapSpec::Dfa(d) => GapConstraint::Regular(d.to_dfa(codec)?),
            GapSpec::Reglen { len, dfa } => GapConstraint::RegLen(len.bound()?, dfa.to_dfa(codec)?),
        })
    }

    pub fn of(c: &GapConstraint, codec: &Codec) -> Self {
        match c {
            GapConstraint::Length(b) => GapSpec::Length(LenSpec::of(b)),
            GapConstraint::Regular(d) => GapSpec::Dfa(DfaSpec::of(d, codec)),
            GapConstraint::RegLen(b, d) => GapSpec::Reglen {
                len: LenSpec::of(b),
                dfa: DfaSpec::of(d, codec),
            },
        }
    }
}

/// Decodes a gap file, padding with unconstrained gaps up to `arity`.
pub fn to_tuple(specs: &[GapSpec], codec: &Codec, arity: usize) -> Result<GapTuple> {
    let constraints = specs.iter().map(|s| s.to_constraint(codec)).collect::<Result<Vec<_>>>()?;
    GapTuple::new(constraints)?.padded(arity)
}

pub fn of_tuple(gc: &GapTuple, codec: &Codec) -> Vec<GapSpec> {
    gc.constraints().iter().map(|c| GapSpec::of(c, codec)).collect()
}
