//! Matching and analysis algorithms for subsequences of words: classical,
//! bounded-range and gap-constrained matching, universality and edit
//! distances, absent subsequences, Simon's congruence, and automata for
//! containment and embedding-count equivalence.
//!
//! Symbols are `u32` values whose numeric order is the alphabet order;
//! positions in embeddings and ranges are 1-based. Every algorithm has an
//! exhaustive counterpart in [`oracle`].

pub mod absent;
pub mod automata;
pub mod congruence;
pub mod dfa;
pub mod error;
pub mod gap;
pub mod matcher;
mod next;
pub mod oracle;
pub mod universality;
pub mod word;

pub use automata::CountingNfa;
pub use congruence::SimonTree;
pub use dfa::Dfa;
pub use error::{Error, Result};
pub use gap::{gap_satisfied, GapConstraint, GapTuple, LengthBound};
pub use matcher::{MatchWitness, RangeReport};
pub use universality::ArchFactorization;
pub use word::{subseq_of_embedding, Alphabet, Embedding, Symbol, Word};
