//! Return words to the symbol 0 and their empirical statistics.
//!
//! A prefix `ω₀ … ω_{n-1}` is cut as
//! `head · 0^{t₀} · w₁ 0^{t₁} ⋯ w_r 0^{t_r} · residual`,
//! where the `w_j` are the maximal 0-free blocks that sit between two zeros.
//! The last block never closes: whatever follows the last completed return
//! word (its zero run included) is the residual.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{count_occurrences, Symbol, Word};

/// Longest return word kept in empirical tables unless overridden.
pub const DEFAULT_MAX_RETURN_LEN: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum FrequencyMethod {
    Empirical,
    Michel,
    Durand,
    InclusionExclusion,
    Mirsky,
}

impl FrequencyMethod {
    pub fn name(self) -> &'static str {
        match self {
            FrequencyMethod::Empirical => "empirical",
            FrequencyMethod::Michel => "michel",
            FrequencyMethod::Durand => "durand",
            FrequencyMethod::InclusionExclusion => "inclusionExclusion",
            FrequencyMethod::Mirsky => "mirsky",
        }
    }
}

/// `ρ₀` and the exact frequencies `F_w = ρ_{0w0}` of the return words.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrequencyTable {
    pub rho0: f64,
    pub exact: BTreeMap<Word, f64>,
    pub method: FrequencyMethod,
}

impl FrequencyTable {
    /// `Σ_w |w| F_w`, which never exceeds `1 − ρ₀`.
    pub fn weighted_length_sum(&self) -> f64 {
        self.exact.iter().map(|(w, f)| w.len() as f64 * f).sum()
    }

    /// Slack in `Σ_w |w| F_w ≤ 1 − ρ₀`; negative values are violations.
    pub fn lemma_slack(&self) -> f64 {
        1.0 - self.rho0 - self.weighted_length_sum()
    }

    pub fn get(&self, w: &Word) -> f64 {
        self.exact.get(w).copied().unwrap_or(0.0)
    }

    /// Largest `|F_w − G_w|` over the union of both tables, and `|ρ₀ − ρ₀'|`.
    pub fn max_discrepancy(&self, other: &FrequencyTable) -> f64 {
        let mut d = (self.rho0 - other.rho0).abs();
        for w in self.exact.keys().chain(other.exact.keys()) {
            d = d.max((self.get(w) - other.get(w)).abs());
        }
        d
    }
}

/// The pieces of a prefix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReturnWordDecomposition {
    /// `w₀`: the 0-free part before the first 0.
    pub head: Word,
    /// `t₀ ≥ 1`.
    pub head_zeros: usize,
    /// `(w_j, t_j)`, `j ≥ 1`, each `w_j` nonempty and 0-free, each `t_j ≥ 1`.
    pub blocks: Vec<(Word, usize)>,
    /// `w*` (0-free, possibly empty) and `t* ≥ 0` at the end.
    pub residual: Word,
    pub residual_zeros: usize,
    pub total_length: usize,
}

impl ReturnWordDecomposition {
    /// Concatenate the pieces back into the prefix.
    pub fn reassemble(&self) -> Word {
        let mut out = Vec::with_capacity(self.total_length);
        out.extend_from_slice(&self.head);
        out.extend(std::iter::repeat_n(0, self.head_zeros));
        for (w, t) in &self.blocks {
            out.extend_from_slice(w);
            out.extend(std::iter::repeat_n(0, *t));
        }
        out.extend_from_slice(&self.residual);
        out.extend(std::iter::repeat_n(0, self.residual_zeros));
        Word::new(out)
    }

    pub fn stats(&self) -> ReturnWordStats {
        let mut counts = BTreeMap::new();
        let mut gaps = vec![self.head_zeros];
        for (w, t) in &self.blocks {
            *counts.entry(w.clone()).or_insert(0) += 1;
            gaps.push(*t);
        }
        if self.residual_zeros > 0 {
            gaps.push(self.residual_zeros);
        }
        ReturnWordStats {
            return_word_counts: counts,
            zero_count: gaps.iter().sum(),
            gap_lengths: gaps,
            head_length: self.head.len(),
            residual_length: self.residual.len(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReturnWordStats {
    pub return_word_counts: BTreeMap<Word, usize>,
    /// `N_n(0)`.
    pub zero_count: usize,
    /// The zero runs `t₀, t₁, …`, including a nonempty final run.
    pub gap_lengths: Vec<usize>,
    pub head_length: usize,
    pub residual_length: usize,
}

impl ReturnWordStats {
    /// `|w₀| + Σ|w_j| + |w*| + Σ t_j + t*`, which equals the prefix length.
    pub fn accounted_length(&self) -> usize {
        self.return_word_counts.iter().map(|(w, c)| w.len() * c).sum::<usize>()
            + self.zero_count
            + self.head_length
            + self.residual_length
    }
}

/// Cut a prefix into return words. Fails when the prefix has no 0.
pub fn decompose(prefix: &[Symbol]) -> Result<ReturnWordDecomposition> {
    let first_zero = prefix.iter().position(|&s| s == 0).ok_or(Error::NoZeroSymbol)?;
    let n = prefix.len();
    let run_end = |from: usize| prefix[from..].iter().position(|&s| s != 0).map_or(n, |k| from + k);
    let block_end = |from: usize| prefix[from..].iter().position(|&s| s == 0).map_or(n, |k| from + k);

    let head = Word::from(&prefix[..first_zero]);
    let mut i = run_end(first_zero);
    let head_zeros = i - first_zero;
    let mut blocks = Vec::new();
    let mut residual = Word::empty();
    let mut residual_zeros = 0;
    while i < n {
        let j = block_end(i);
        if j == n {
            residual = Word::from(&prefix[i..]);
            break;
        }
        let k = run_end(j);
        if k == n {
            // The trailing zero run stays open.
            residual = Word::from(&prefix[i..j]);
            residual_zeros = k - j;
            break;
        }
        blocks.push((Word::from(&prefix[i..j]), k - j));
        i = k;
    }
    // A prefix ending inside the first zero run has no blocks; its run is
    // still the head run.
    Ok(ReturnWordDecomposition { head, head_zeros, blocks, residual, residual_zeros, total_length: n })
}

/// `N_n(pattern)/n`, counting overlapping occurrences fully inside the prefix.
pub fn empirical_frequency(prefix: &[Symbol], pattern: &[Symbol]) -> f64 {
    if prefix.is_empty() {
        return 0.0;
    }
    count_occurrences(pattern, prefix) as f64 / prefix.len() as f64
}

/// `F_w = N_n(0w0)/n` for each return word with `|w| ≤ max_len`, and
/// `ρ₀ = N_n(0)/n`.
///
/// Occurrences of `0w0` are read off the maximal 0-free blocks between
/// zeros, which is the same as a sliding-window count.
pub fn empirical_exact_frequencies(prefix: &[Symbol], max_len: usize) -> FrequencyTable {
    let n = prefix.len();
    let mut counts: BTreeMap<Word, usize> = BTreeMap::new();
    let mut zeros = 0usize;
    let mut last_zero: Option<usize> = None;
    for (i, &s) in prefix.iter().enumerate() {
        if s != 0 {
            continue;
        }
        zeros += 1;
        if let Some(z) = last_zero {
            let len = i - z - 1;
            if len > 0 && len <= max_len {
                *counts.entry(Word::from(&prefix[z + 1..i])).or_insert(0) += 1;
            }
        }
        last_zero = Some(i);
    }
    let denom = n.max(1) as f64;
    FrequencyTable {
        rho0: zeros as f64 / denom,
        exact: counts.into_iter().map(|(w, c)| (w, c as f64 / denom)).collect(),
        method: FrequencyMethod::Empirical,
    }
}

/// Whether a prefix looks like it has `ρ₀ = 0`: no zero at all, or a zero
/// density on the full prefix below 0.8 of the density on its first half.
/// The second case catches zeros that thin out like `1/√n`.
pub fn rho0_vanishes(prefix: &[Symbol]) -> bool {
    let n = prefix.len();
    let full = empirical_frequency(prefix, &[0]);
    if full == 0.0 {
        return true;
    }
    let half = empirical_frequency(&prefix[..n / 2], &[0]);
    n >= 2 && full < 0.8 * half
}
