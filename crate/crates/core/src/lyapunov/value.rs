use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::word::Word;

/// A value in `[−∞, +∞)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ExtendedReal {
    NegInfinity,
    Finite(f64),
}

impl ExtendedReal {
    pub fn finite(self) -> Option<f64> {
        match self {
            ExtendedReal::Finite(x) => Some(x),
            ExtendedReal::NegInfinity => None,
        }
    }

    pub fn is_neg_infinity(self) -> bool {
        matches!(self, ExtendedReal::NegInfinity)
    }

    /// As an `f64`, with `−∞` mapped to `f64::NEG_INFINITY`. For printing
    /// and plotting only.
    pub fn to_f64(self) -> f64 {
        self.finite().unwrap_or(f64::NEG_INFINITY)
    }

    pub fn add(self, other: ExtendedReal) -> ExtendedReal {
        match (self, other) {
            (ExtendedReal::Finite(a), ExtendedReal::Finite(b)) => ExtendedReal::Finite(a + b),
            _ => ExtendedReal::NegInfinity,
        }
    }

    /// `|a − b|`, infinite unless both are finite or both are `−∞`.
    pub fn distance(self, other: ExtendedReal) -> f64 {
        match (self, other) {
            (ExtendedReal::Finite(a), ExtendedReal::Finite(b)) => (a - b).abs(),
            (ExtendedReal::NegInfinity, ExtendedReal::NegInfinity) => 0.0,
            _ => f64::INFINITY,
        }
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedReal::NegInfinity => f.write_str("-inf"),
            ExtendedReal::Finite(x) => write!(f, "{x:.17e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum DegenerateReason {
    /// `v′u = 0`.
    LambdaZero,
    /// `v′A_w u = 0` for a return word with `F_w > 0`.
    AnnihilatingWord(Word),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Warning {
    /// `ρ₀` vanishes (or is vanishing along the prefix): the closed form
    /// need not equal the exponent.
    Rho0Zero,
    /// The table or series does not account for all mass: `Σ(|w|+1)F_w`
    /// falls short of `1` by more than the stated amount.
    MissingMass(String),
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::Rho0Zero => f.write_str("rho0=0; hypotheses not met"),
            Warning::MissingMass(s) => write!(f, "frequency table misses mass: {s}"),
        }
    }
}

/// A closed-form exponent with its terms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LyapunovValue {
    pub value: ExtendedReal,
    /// `ρ₀ log|v′u|`.
    pub rho0_term: ExtendedReal,
    /// `F_w log(|v′A_w u|/|v′u|)` per return word. Series evaluations keep
    /// only the larger terms here.
    pub per_word_terms: BTreeMap<Word, f64>,
    pub degenerate: Option<DegenerateReason>,
    pub warnings: Vec<Warning>,
    /// Mass of the words left out of a truncated series.
    pub truncated_mass: f64,
    /// Bound on the contribution of the left-out words from above.
    pub remainder_bound: f64,
}

impl LyapunovValue {
    pub(crate) fn degenerate(reason: DegenerateReason, rho0_term: ExtendedReal) -> Self {
        LyapunovValue {
            value: ExtendedReal::NegInfinity,
            rho0_term,
            per_word_terms: BTreeMap::new(),
            degenerate: Some(reason),
            warnings: Vec::new(),
            truncated_mass: 0.0,
            remainder_bound: 0.0,
        }
    }

    /// `rho0_term + Σ per_word_terms`; equals `value` for untruncated
    /// finite evaluations.
    pub fn breakdown_sum(&self) -> ExtendedReal {
        let s: f64 = self.per_word_terms.values().sum();
        self.rho0_term.add(ExtendedReal::Finite(s))
    }
}
