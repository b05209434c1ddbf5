//! Finite words over a small integer alphabet.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A letter of the alphabet `{0, 1, …, m-1}`.
pub type Symbol = u16;

/// A finite word. Indices start at 0.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// `letter` repeated `n` times.
    pub fn repeat(letter: Symbol, n: usize) -> Self {
        Word(vec![letter; n])
    }

    pub fn as_slice(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Symbol> {
        self.0
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    pub fn concat(&self, other: &[Symbol]) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(other);
        Word(v)
    }

    /// Largest symbol plus one, or 0 for the empty word.
    pub fn alphabet_bound(&self) -> usize {
        self.0.iter().map(|&s| s as usize + 1).max().unwrap_or(0)
    }

    /// Number of (possibly overlapping) occurrences of `self` inside `host`,
    /// read left to right. The empty word occurs zero times.
    pub fn occurrences_in(&self, host: &[Symbol]) -> usize {
        count_occurrences(&self.0, host)
    }
}

pub fn count_occurrences(pattern: &[Symbol], host: &[Symbol]) -> usize {
    if pattern.is_empty() || pattern.len() > host.len() {
        return 0;
    }
    host.windows(pattern.len()).filter(|w| *w == pattern).count()
}

impl Deref for Word {
    type Target = [Symbol];
    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl std::borrow::Borrow<[Symbol]> for Word {
    fn borrow(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl From<&[Symbol]> for Word {
    fn from(v: &[Symbol]) -> Self {
        Word(v.to_vec())
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Words print as base-36 digits (`0110`, `0a3`) when every symbol fits,
/// otherwise as a dotted list (`12.40.7`). `ε` is the empty word.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        if self.0.iter().all(|&s| s < 36) {
            for &s in &self.0 {
                let c = std::char::from_digit(s as u32, 36).expect("digit");
                write!(f, "{c}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
            f.write_str(&parts.join("."))
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "ε" {
            return Ok(Word::empty());
        }
        if s.contains('.') || s.contains(',') {
            return s
                .split(['.', ','])
                .map(|p| {
                    p.trim()
                        .parse::<Symbol>()
                        .map_err(|_| Error::InvalidWord(s.to_string()))
                })
                .collect::<Result<Vec<_>>>()
                .map(Word);
        }
        s.chars()
            .map(|c| {
                c.to_digit(36)
                    .map(|d| d as Symbol)
                    .ok_or_else(|| Error::InvalidWord(s.to_string()))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        if w.is_empty() {
            String::new()
        } else {
            w.to_string()
        }
    }
}

impl TryFrom<String> for Word {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Parse a word literal, panicking on malformed input. Meant for constants
/// in tests and examples.
pub fn w(s: &str) -> Word {
    s.parse().expect("valid word literal")
}

/// Shortlex order: shorter words first, then lexicographic.
pub fn shortlex(a: &Word, b: &Word) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        let x = w("0110");
        assert_eq!(x.as_slice(), &[0, 1, 1, 0]);
        assert_eq!(x.to_string(), "0110");
        assert_eq!(w("").to_string(), "ε");
        let big: Word = "40.2.100".parse().unwrap();
        assert_eq!(big.as_slice(), &[40, 2, 100]);
        assert_eq!(big.to_string(), "40.2.100");
        assert!("01x!".parse::<Word>().is_err());
    }

    #[test]
    fn overlapping_occurrence_count() {
        assert_eq!(w("01").occurrences_in(&w("101001101")), 3);
        assert_eq!(w("1").occurrences_in(&w("11")), 2);
        assert_eq!(w("11").occurrences_in(&w("111")), 2);
        assert_eq!(w("").occurrences_in(&w("111")), 0);
        // N_{1^k}(1^{k+j}) = j + 1
        for k in 1..6 {
            for j in 0..6 {
                let small = Word::repeat(1, k);
                let big = Word::repeat(1, k + j);
                assert_eq!(small.occurrences_in(&big), j + 1);
            }
        }
    }

    #[test]
    fn shortlex_orders_by_length_first() {
        let mut v = vec![w("2"), w("11"), w("1"), w("111")];
        v.sort_by(shortlex);
        assert_eq!(v, vec![w("1"), w("2"), w("11"), w("111")]);
    }
}
