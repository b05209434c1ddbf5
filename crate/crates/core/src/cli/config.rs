//! The JSON run configuration.
//!
//! ```json
//! {
//!   "sequence": { "substitution": "fibonacci" },
//!   "family": { "u": [1, 1], "v": [1, 0.5], "others": [[[2, 1], [1, 1]]] },
//!   "directLength": 1000000
//! }
//! ```
//!
//! Unknown fields are rejected. Matrix entries are reals or `[re, im]`
//! pairs, row-major.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lyapunov::{MatrixFamily, NormKind, RankOneMatrix, CMatrix, CVector, C64, RANK_ONE_TOLERANCE};
use crate::mirsky::BFreeSet;
use crate::multifractal::{BetaGrid, PotentialSpec, WeightSequence};
use crate::returnwords::FrequencyMethod;
use crate::sequences::SequenceSource;
use crate::substitution::Substitution;
use crate::word::Word;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct RunConfig {
    pub sequence: Option<SequenceSpec>,
    /// Frequency methods for `freq`.
    pub methods: Option<Vec<FrequencyMethod>>,
    /// Frequency method for `lyap`; chosen from the sequence when absent.
    pub frequency_method: Option<FrequencyMethod>,
    /// Prefix length for empirical tables and for `sequence`.
    pub prefix_length: Option<usize>,
    pub max_return_length: Option<usize>,
    /// Target precision of Euler products.
    pub precision: Option<f64>,
    pub family: Option<FamilySpec>,
    /// Length of the direct product estimate in `lyap`; skipped when absent.
    pub direct_length: Option<usize>,
    pub norm: Option<NormKind>,
    pub potential: Option<PotentialConfig>,
    pub weights: Option<WeightsSpec>,
    pub grid: Option<BetaGrid>,
    pub output: Option<OutputSpec>,
    /// Criterion ids for `validate`; all when absent.
    pub criteria: Option<Vec<u32>>,
    /// Replacement expected values for `validate`, by check name.
    pub overrides: Option<BTreeMap<String, f64>>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            Error::Config(format!("line {} column {}: {}", e.line(), e.column(), e))
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        RunConfig::from_json(&text)
    }

    pub fn require_sequence(&self) -> Result<SequenceSource> {
        self.sequence
            .as_ref()
            .ok_or_else(|| Error::Config("field `sequence` is required".into()))?
            .to_source()
    }

    pub fn require_family(&self) -> Result<MatrixFamily> {
        self.family
            .as_ref()
            .ok_or_else(|| Error::Config("field `family` is required".into()))?
            .to_family()
    }
}

/// A substitution by name or by its images.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubstitutionSpec {
    Named(String),
    Images {
        images: Vec<Word>,
        #[serde(default)]
        seed: u16,
    },
}

impl SubstitutionSpec {
    pub fn to_substitution(&self) -> Result<Substitution> {
        match self {
            SubstitutionSpec::Named(name) => Substitution::builtin(name)
                .ok_or_else(|| Error::Config(format!("unknown substitution `{name}`"))),
            SubstitutionSpec::Images { images, seed } => Substitution::new(images.clone(), *seed),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BFreeSpec {
    /// `"squarefree"`.
    Named(String),
    Generators(Vec<u64>),
}

impl BFreeSpec {
    pub fn to_set(&self) -> Result<BFreeSet> {
        match self {
            BFreeSpec::Named(n) if n == "squarefree" => Ok(BFreeSet::squarefree()),
            BFreeSpec::Named(n) => Err(Error::Config(format!("unknown B-free set `{n}`"))),
            BFreeSpec::Generators(g) => BFreeSet::explicit(g.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Seeded<T> {
    #[serde(alias = "probs", alias = "transition")]
    pub params: T,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum SequenceSpec {
    Substitution(SubstitutionSpec),
    Bfree(BFreeSpec),
    Bernoulli(Seeded<Vec<f64>>),
    Markov(Seeded<Vec<Vec<f64>>>),
    Explicit(Word),
    /// `0 1 0 11 0 111 0 …`.
    GrowingBlocks,
}

impl SequenceSpec {
    pub fn to_source(&self) -> Result<SequenceSource> {
        Ok(match self {
            SequenceSpec::Substitution(s) => SequenceSource::Substitution(s.to_substitution()?),
            SequenceSpec::Bfree(b) => SequenceSource::BFree(b.to_set()?),
            SequenceSpec::Bernoulli(s) => SequenceSource::Bernoulli { probs: s.params.clone(), seed: s.seed },
            SequenceSpec::Markov(s) => SequenceSource::Markov { transition: s.params.clone(), seed: s.seed },
            SequenceSpec::Explicit(w) => SequenceSource::Explicit(w.clone()),
            SequenceSpec::GrowingBlocks => SequenceSource::GrowingBlocks,
        })
    }

    /// Replace the seed of a stochastic sequence.
    pub fn set_seed(&mut self, seed: u64) -> bool {
        match self {
            SequenceSpec::Bernoulli(s) => s.seed = seed,
            SequenceSpec::Markov(s) => s.seed = seed,
            _ => return false,
        }
        true
    }
}

/// A real number or an `[re, im]` pair.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Real(f64),
    Complex([f64; 2]),
}

impl Entry {
    fn to_c64(self) -> C64 {
        match self {
            Entry::Real(x) => C64::new(x, 0.0),
            Entry::Complex([re, im]) => C64::new(re, im),
        }
    }
}

fn to_vector(xs: &[Entry]) -> CVector {
    CVector::from_iterator(xs.len(), xs.iter().map(|x| x.to_c64()))
}

fn to_matrix(rows: &[Vec<Entry>], name: &str) -> Result<CMatrix> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(Error::Config(format!("{name} must be a nonempty rectangular array")));
    }
    Ok(CMatrix::from_fn(n, rows[0].len(), |i, j| rows[i][j].to_c64()))
}

/// `A₀` as `u`, `v` or as a dense `a0`, plus the other matrices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct FamilySpec {
    pub u: Option<Vec<Entry>>,
    pub v: Option<Vec<Entry>>,
    pub a0: Option<Vec<Vec<Entry>>>,
    pub others: Vec<Vec<Vec<Entry>>>,
}

impl FamilySpec {
    pub fn to_family(&self) -> Result<MatrixFamily> {
        let a0 = match (&self.u, &self.v, &self.a0) {
            (Some(u), Some(v), None) => RankOneMatrix::new(to_vector(u), to_vector(v))?,
            (None, None, Some(a)) => RankOneMatrix::from_dense(&to_matrix(a, "a0")?, RANK_ONE_TOLERANCE)?,
            _ => return Err(Error::Config("family needs either `u` and `v`, or `a0`".into())),
        };
        let others = self
            .others
            .iter()
            .enumerate()
            .map(|(j, m)| to_matrix(m, &format!("others[{j}]")))
            .collect::<Result<Vec<_>>>()?;
        MatrixFamily::new(a0, others)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PotentialConfig {
    /// `"product"`: `f(x₀, x₁) = x₀x₁` on two letters.
    Named(String),
    Table(Vec<Vec<f64>>),
}

impl PotentialConfig {
    pub fn to_potential(&self) -> Result<PotentialSpec> {
        match self {
            PotentialConfig::Named(n) if n == "product" => Ok(PotentialSpec::product(2)),
            PotentialConfig::Named(n) => Err(Error::Config(format!("unknown potential `{n}`"))),
            PotentialConfig::Table(t) => PotentialSpec::new(t.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum WeightsSpec {
    Substitution(SubstitutionSpec),
    MoebiusSquared,
    Explicit(Word),
}

impl WeightsSpec {
    pub fn to_weights(&self) -> Result<WeightSequence> {
        Ok(match self {
            WeightsSpec::Substitution(s) => WeightSequence::Substitution { substitution: s.to_substitution()? },
            WeightsSpec::MoebiusSquared => WeightSequence::MoebiusSquared,
            WeightsSpec::Explicit(w) => WeightSequence::Explicit { word: w.clone() },
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct OutputSpec {
    pub pressure_csv: Option<PathBuf>,
    pub spectrum_csv: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}
