//! Text encoding of words: one character per symbol, or whitespace
//! separated integers with `--symbols`.

use std::collections::BTreeSet;

use subseq_core::{Alphabet, Error, Result, Symbol, Word};

#[derive(Debug, Clone)]
pub struct Codec {
    alphabet: Alphabet,
    /// Character of each symbol in character mode; symbols are then ranks
    /// into this list.
    chars: Option<Vec<char>>,
}

impl Codec {
    /// Builds the codec from an explicit alphabet or, failing that, from
    /// the letters of `inputs` (words and gap-file symbols alike).
    pub fn new(integer: bool, alphabet: Option<&str>, inputs: &[&str]) -> Result<Self> {
        if integer {
            let symbols: Vec<Symbol> = match alphabet {
                Some(a) => parse_ints(a)?,
                None => {
                    let mut all = BTreeSet::new();
                    for s in inputs {
                        all.extend(parse_ints(s)?);
                    }
                    all.into_iter().collect()
                }
            };
            let alphabet = Alphabet::new(symbols).map_err(|_| no_alphabet())?;
            return Ok(Codec { alphabet, chars: None });
        }
        let chars: Vec<char> = match alphabet {
            Some(a) => {
                let chars: Vec<char> = a.chars().collect();
                let distinct: BTreeSet<char> = chars.iter().copied().collect();
                if distinct.len() != chars.len() {
                    return Err(Error::InvalidAlphabet(format!("'{a}' repeats a letter")));
                }
                chars
            }
            None => inputs
                .iter()
                .flat_map(|s| s.chars())
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect(),
        };
        let alphabet = Alphabet::range(chars.len()).map_err(|_| no_alphabet())?;
        Ok(Codec {
            alphabet,
            chars: Some(chars),
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn parse_symbol(&self, token: &str) -> Result<Symbol> {
        let symbol = match &self.chars {
            Some(chars) => {
                let mut it = token.chars();
                let (Some(c), None) = (it.next(), it.next()) else {
                    return Err(Error::InvalidArgument(format!("'{token}' is not a single letter")));
                };
                chars
                    .iter()
                    .position(|&x| x == c)
                    .ok_or_else(|| Error::InvalidArgument(format!("letter '{c}' is not in the alphabet")))?
                    as Symbol
            }
            None => token
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("'{token}' is not a symbol number")))?,
        };
        if !self.alphabet.contains(symbol) {
            return Err(Error::InvalidArgument(format!("symbol '{token}' is not in the alphabet")));
        }
        Ok(symbol)
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        match &self.chars {
            Some(_) => text
                .chars()
                .map(|c| self.parse_symbol(c.encode_utf8(&mut [0; 4])))
                .collect::<Result<Vec<_>>>()
                .map(Word),
            None => text
                .split_whitespace()
                .map(|t| self.parse_symbol(t))
                .collect::<Result<Vec<_>>>()
                .map(Word),
        }
    }

    pub fn symbol_name(&self, s: Symbol) -> String {
        match &self.chars {
            Some(chars) => chars[s as usize].to_string(),
            None => s.to_string(),
        }
    }

    /// Inverse of [`Codec::parse_word`]; the empty word is `""`.
    pub fn show(&self, w: &Word) -> String {
        let sep = if self.chars.is_some() { "" } else { " " };
        w.iter().map(|&s| self.symbol_name(s)).collect::<Vec<_>>().join(sep)
    }

    /// For plain-text output, where an empty line would be ambiguous.
    pub fn show_text(&self, w: &Word) -> String {
        if w.is_empty() {
            "ε".into()
        } else {
            self.show(w)
        }
    }
}

fn parse_ints(s: &str) -> Result<Vec<Symbol>> {
    s.split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| Error::InvalidArgument(format!("'{t}' is not a symbol number")))
        })
        .collect()
}

fn no_alphabet() -> Error {
    Error::InvalidAlphabet("no letters to infer the alphabet from; pass --alphabet".into())
}
