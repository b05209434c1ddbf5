use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::returnwords::{FrequencyMethod, FrequencyTable};
use crate::sequences::{check_probability_vector, stationary_distribution, STOCHASTIC_TOL};
use crate::word::{Symbol, Word};

use super::closed::ScaledRow;
use super::family::MatrixFamily;
use super::value::{DegenerateReason, ExtendedReal, LyapunovValue, Warning};

/// Truncation of the return-word series.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesOptions {
    /// Words whose prefix mass falls below `mass_tolerance · ρ₀` are dropped.
    pub mass_tolerance: f64,
    /// Hard cap on visited words.
    pub node_budget: usize,
    /// Terms with `F_w` at least this large are kept in the breakdown.
    pub breakdown_threshold: f64,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        SeriesOptions { mass_tolerance: 1e-12, node_budget: 4_000_000, breakdown_threshold: 1e-9 }
    }
}

fn check_transition(family: &MatrixFamily, p: &[Vec<f64>]) -> Result<()> {
    if p.len() != family.count() {
        return Err(Error::DimensionMismatch(format!(
            "{} states for a family of {} matrices",
            p.len(),
            family.count()
        )));
    }
    Ok(())
}

/// Exponent for an i.i.d. sequence with `ℙ(ω_k = j) = p_j`:
/// `p₀ log|v′u| + Σ_w p₀² p_w log(|v′A_w u|/|v′u|)`.
pub fn bernoulli_lyapunov(family: &MatrixFamily, p: &[f64], opts: SeriesOptions) -> Result<LyapunovValue> {
    check_probability_vector(p)?;
    if p[0] <= 0.0 {
        return Err(Error::ZeroMassOnSymbolZero);
    }
    let rows = vec![p.to_vec(); p.len()];
    markov_lyapunov(family, &rows, opts)
}

/// Exponent for a stationary Markov sequence with transition matrix `P`:
/// `F_w = π₀ P(0,w₁) P(w₁,w₂) ⋯ P(w_ℓ,0)` and `ρ₀ = π₀`.
pub fn markov_lyapunov(family: &MatrixFamily, transition: &[Vec<f64>], opts: SeriesOptions) -> Result<LyapunovValue> {
    check_transition(family, transition)?;
    let pi = stationary_distribution(transition)?;
    let pi0 = pi[0];
    if pi0 <= STOCHASTIC_TOL {
        return Err(Error::ZeroMassOnSymbolZero);
    }
    let lambda = family.a0().lambda().norm();
    if lambda == 0.0 {
        return Ok(LyapunovValue::degenerate(DegenerateReason::LambdaZero, ExtendedReal::NegInfinity));
    }
    let log_lambda = lambda.ln();
    let u = &family.a0().u;
    let m = family.count();

    // Lemma-2.2 style constants for the remainder bound.
    let log_uv = (u.norm() * family.a0().v.norm()).ln().abs();
    let log_delta = family.max_other_norm().max(f64::MIN_POSITIVE).ln().abs();

    struct Node {
        row: ScaledRow,
        word: Vec<Symbol>,
        mass: f64,
    }
    let mut stack = vec![Node { row: ScaledRow::start(&family.a0().v), word: Vec::new(), mass: pi0 }];
    let cutoff = opts.mass_tolerance * pi0;
    let mut visited = 0usize;
    let mut sum = 0.0;
    let mut truncated = 0.0;
    let mut remainder = 0.0;
    let mut per_word = BTreeMap::new();
    while let Some(node) = stack.pop() {
        visited += 1;
        let last = node.word.last().map_or(0, |&a| a as usize);
        if !node.word.is_empty() {
            let f = node.mass * transition[last][0];
            if f > 0.0 {
                match node.row.log_contract(u, node.word.len()) {
                    None => {
                        let mut v = LyapunovValue::degenerate(
                            DegenerateReason::AnnihilatingWord(Word::new(node.word)),
                            ExtendedReal::Finite(pi0 * log_lambda),
                        );
                        v.truncated_mass = truncated;
                        return Ok(v);
                    }
                    Some(lc) => {
                        let term = f * (lc - log_lambda);
                        sum += term;
                        if f >= opts.breakdown_threshold {
                            per_word.insert(Word::new(node.word.clone()), term);
                        }
                    }
                }
            }
        }
        for b in (1..m).rev() {
            let q = transition[last][b];
            if q == 0.0 {
                continue;
            }
            let mass = node.mass * q;
            if mass < cutoff || visited + stack.len() >= opts.node_budget {
                truncated += mass;
                remainder += mass * (log_lambda.abs() + log_uv + (node.word.len() + 2) as f64 * log_delta);
                continue;
            }
            let mut word = node.word.clone();
            word.push(b as Symbol);
            stack.push(Node { row: node.row.step(family, b as Symbol), word, mass });
        }
    }
    let mut warnings = Vec::new();
    if truncated > opts.mass_tolerance * pi0 * 10.0 {
        warnings.push(Warning::MissingMass(format!("series truncated with mass {truncated:e} left")));
    }
    Ok(LyapunovValue {
        value: ExtendedReal::Finite(pi0 * log_lambda + sum),
        rho0_term: ExtendedReal::Finite(pi0 * log_lambda),
        per_word_terms: per_word,
        degenerate: None,
        warnings,
        truncated_mass: truncated,
        remainder_bound: remainder,
    })
}

/// The exact-frequency table of a stationary Markov chain, for return
/// words up to `max_len` whose prefix mass is at least `min_mass`.
pub fn markov_frequency_table(transition: &[Vec<f64>], max_len: usize, min_mass: f64) -> Result<FrequencyTable> {
    let pi = stationary_distribution(transition)?;
    let m = transition.len();
    let mut exact = BTreeMap::new();
    let mut frontier: Vec<(Vec<Symbol>, f64)> = (1..m).map(|b| (vec![b as Symbol], pi[0] * transition[0][b])).collect();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (w, mass) in frontier {
            if mass == 0.0 || mass < min_mass {
                continue;
            }
            let last = *w.last().unwrap() as usize;
            exact.insert(Word::new(w.clone()), mass * transition[last][0]);
            for b in 1..m {
                let mut x = w.clone();
                x.push(b as Symbol);
                next.push((x, mass * transition[last][b]));
            }
        }
        frontier = next;
    }
    Ok(FrequencyTable { rho0: pi[0], exact, method: FrequencyMethod::Empirical })
}
