//! Gap constraints: per-gap languages restricting the factor between two
//! consecutive embedded positions.

use serde::{Deserialize, Serialize};

use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::word::{Alphabet, Word};

/// Length window `lower ..= upper`; `upper == None` is unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LengthBound {
    pub lower: usize,
    pub upper: Option<usize>,
}

impl LengthBound {
    pub const UNBOUNDED: LengthBound = LengthBound {
        lower: 0,
        upper: None,
    };

    pub fn new(lower: usize, upper: Option<usize>) -> Result<Self> {
        if let Some(u) = upper {
            if lower > u {
                return Err(Error::InvalidConstraint(format!(
                    "lower bound {lower} exceeds upper bound {u}"
                )));
            }
        }
        Ok(LengthBound { lower, upper })
    }

    #[inline]
    pub fn contains(&self, len: usize) -> bool {
        len >= self.lower && self.upper.is_none_or(|u| len <= u)
    }

    /// Largest admissible length, capped at `cap`.
    #[inline]
    pub fn upper_or(&self, cap: usize) -> usize {
        self.upper.map_or(cap, |u| u.min(cap))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum GapConstraint {
    Length(LengthBound),
    Regular(Dfa),
    RegLen(LengthBound, Dfa),
}

impl GapConstraint {
    /// `Σ*`
    pub fn unconstrained() -> Self {
        GapConstraint::Length(LengthBound::UNBOUNDED)
    }

    /// `{ε}`
    pub fn empty_gap() -> Self {
        GapConstraint::Length(LengthBound {
            lower: 0,
            upper: Some(0),
        })
    }

    pub fn length(lower: usize, upper: Option<usize>) -> Result<Self> {
        Ok(GapConstraint::Length(LengthBound::new(lower, upper)?))
    }

    pub fn bound(&self) -> LengthBound {
        match self {
            GapConstraint::Length(b) | GapConstraint::RegLen(b, _) => *b,
            GapConstraint::Regular(_) => LengthBound::UNBOUNDED,
        }
    }

    pub fn dfa(&self) -> Option<&Dfa> {
        match self {
            GapConstraint::Length(_) => None,
            GapConstraint::Regular(d) | GapConstraint::RegLen(_, d) => Some(d),
        }
    }

    pub fn is_empty_gap(&self) -> bool {
        matches!(self, GapConstraint::Length(LengthBound { lower: 0, upper: Some(0) }))
    }

    pub fn is_unconstrained(&self) -> bool {
        matches!(self, GapConstraint::Length(LengthBound { lower: 0, upper: None }))
    }

    fn validate(&self) -> Result<()> {
        let b = self.bound();
        LengthBound::new(b.lower, b.upper).map(|_| ())
    }
}

/// Membership of `s` in the constraint's language.
pub fn gap_satisfied(g: &GapConstraint, s: &Word) -> Result<bool> {
    if !g.bound().contains(s.len()) {
        // still reject foreign symbols so the error does not depend on length
        if let Some(d) = g.dfa() {
            d.alphabet().validate(s)?;
        }
        return Ok(false);
    }
    match g.dfa() {
        Some(d) => d.accepts(s),
        None => Ok(true),
    }
}

/// A tuple of gap constraints `(C_1, ..., C_ℓ)` for patterns of length `ℓ + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GapTuple(Vec<GapConstraint>);

impl GapTuple {
    pub fn new(constraints: Vec<GapConstraint>) -> Result<Self> {
        for c in &constraints {
            c.validate()?;
        }
        Ok(GapTuple(constraints))
    }

    /// `ℓ` copies of `Σ*`.
    pub fn unconstrained(len: usize) -> Self {
        GapTuple(vec![GapConstraint::unconstrained(); len])
    }

    pub fn constraints(&self) -> &[GapConstraint] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> &GapConstraint {
        &self.0[i]
    }

    /// Pads with `Σ*` up to `len` constraints; longer tuples are an error.
    pub fn padded(mut self, len: usize) -> Result<Self> {
        if self.0.len() > len {
            return Err(Error::ArityMismatch {
                expected: len,
                actual: self.0.len(),
            });
        }
        self.0.resize(len, GapConstraint::unconstrained());
        Ok(self)
    }

    /// Checks the tuple fits a pattern of length `pattern_len`.
    pub fn check_arity(&self, pattern_len: usize) -> Result<()> {
        let expected = pattern_len.saturating_sub(1);
        if self.0.len() != expected {
            return Err(Error::ArityMismatch {
                expected,
                actual: self.0.len(),
            });
        }
        Ok(())
    }

    /// Checks every regular part is defined over `alphabet`.
    pub fn check_alphabet(&self, alphabet: &Alphabet) -> Result<()> {
        for d in self.0.iter().filter_map(GapConstraint::dfa) {
            if let Some(s) = alphabet.iter().find(|&s| !d.alphabet().contains(s)) {
                return Err(Error::UnknownSymbol { symbol: s });
            }
        }
        Ok(())
    }

    /// `nz(gc)`: number of gaps other than `{ε}`.
    pub fn nz(&self) -> usize {
        self.0.iter().filter(|c| !c.is_empty_gap()).count()
    }

    /// `states(gc)`: total number of DFA states.
    pub fn states(&self) -> usize {
        self.0.iter().filter_map(|c| c.dfa()).map(Dfa::state_count).sum()
    }

    /// `size(gc)`: transition-table entries plus two numbers per length bound.
    pub fn size(&self) -> usize {
        self.0
            .iter()
            .map(|c| match c {
                GapConstraint::Length(_) => 2,
                GapConstraint::Regular(d) => d.transition_count(),
                GapConstraint::RegLen(_, d) => 2 + d.transition_count(),
            })
            .sum()
    }
}

impl From<Vec<GapConstraint>> for GapTuple {
    fn from(v: Vec<GapConstraint>) -> Self {
        GapTuple(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{word, Alphabet};

    #[test]
    fn length_constraints() {
        assert!(!gap_satisfied(&GapConstraint::empty_gap(), &word("c")).unwrap());
        assert!(gap_satisfied(&GapConstraint::empty_gap(), &word("")).unwrap());
        for s in ["", "a", "abcabc"] {
            assert!(gap_satisfied(&GapConstraint::unconstrained(), &word(s)).unwrap());
        }
        assert!(GapConstraint::length(3, Some(2)).is_err());
    }

    #[test]
    fn regular_constraints() {
        let sigma = Alphabet::range(4).unwrap();
        let c_star = GapConstraint::Regular(Dfa::star(sigma.clone(), &[2]).unwrap());
        assert!(gap_satisfied(&c_star, &word("c")).unwrap());
        assert!(!gap_satisfied(&c_star, &word("d")).unwrap());
        let bounded = GapConstraint::RegLen(
            LengthBound::new(1, Some(2)).unwrap(),
            Dfa::star(sigma, &[2]).unwrap(),
        );
        assert!(!gap_satisfied(&bounded, &word("")).unwrap());
        assert!(gap_satisfied(&bounded, &word("cc")).unwrap());
        assert!(!gap_satisfied(&bounded, &word("ccc")).unwrap());
    }

    #[test]
    fn foreign_symbol_is_rejected() {
        let c = GapConstraint::Regular(Dfa::star(Alphabet::range(2).unwrap(), &[0]).unwrap());
        assert!(gap_satisfied(&c, &word("c")).is_err());
    }

    #[test]
    fn tuple_metrics() {
        let sigma = Alphabet::range(2).unwrap();
        let gc = GapTuple::new(vec![
            GapConstraint::empty_gap(),
            GapConstraint::unconstrained(),
            GapConstraint::Regular(Dfa::star(sigma.clone(), &[0]).unwrap()),
            GapConstraint::RegLen(LengthBound::UNBOUNDED, Dfa::star(sigma, &[1]).unwrap()),
        ])
        .unwrap();
        assert_eq!(gc.nz(), 3);
        assert_eq!(gc.states(), 4);
        assert_eq!(gc.size(), 2 + 2 + 4 + 6);
        assert_eq!(gc.clone().nz(), gc.nz());
    }

    #[test]
    fn padding_and_arity() {
        let gc = GapTuple::new(vec![GapConstraint::empty_gap()]).unwrap();
        let padded = gc.clone().padded(3).unwrap();
        assert_eq!(padded.len(), 3);
        assert!(padded.get(2).is_unconstrained());
        assert!(gc.check_arity(2).is_ok());
        assert!(gc.check_arity(3).is_err());
        assert!(padded.padded(1).is_err());
    }
}
