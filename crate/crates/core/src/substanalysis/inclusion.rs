use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::returnwords::{FrequencyMethod, FrequencyTable};
use crate::substitution::Substitution;
use crate::word::{count_occurrences, Word};

use super::derivative::derivative_substitution;
use super::induced::frequencies_via_michel;

/// `(i, j, N_{w_i}(w_j))` for every proper containment `w_i ≺ w_j`.
fn containments(words: &[Word]) -> Vec<(usize, usize, f64)> {
    let mut out = Vec::new();
    for (i, a) in words.iter().enumerate() {
        for (j, b) in words.iter().enumerate() {
            if i != j && a.len() < b.len() {
                let n = count_occurrences(a, b);
                if n > 0 {
                    out.push((i, j, n as f64));
                }
            }
        }
    }
    out
}

/// `F_w = Σ_j (−1)^j S^{(j)}_w` with `S^{(0)} = ν` and
/// `S^{(j)}_w = Σ_{w′ ≻ w} N_w(w′) S^{(j−1)}_{w′}`.
///
/// Chains strictly increase in length, so the sum stops after at most
/// `max|w| − min|w| + 1` terms.
pub fn inclusion_exclusion_frequencies(
    cyl_freq: &BTreeMap<Word, f64>,
    return_words: &[Word],
) -> Result<BTreeMap<Word, f64>> {
    let nu: Vec<f64> = return_words
        .iter()
        .map(|w| cyl_freq.get(w).copied().ok_or_else(|| Error::MissingFrequency(w.to_string())))
        .collect::<Result<_>>()?;
    let edges = containments(return_words);
    let mut total = nu.clone();
    let mut s = nu;
    let mut sign = 1.0;
    while s.iter().any(|&x| x != 0.0) {
        let mut next = vec![0.0; s.len()];
        for &(i, j, n) in &edges {
            next[i] += n * s[j];
        }
        sign = -sign;
        for (t, x) in total.iter_mut().zip(&next) {
            *t += sign * x;
        }
        s = next;
    }
    Ok(return_words.iter().cloned().zip(total).collect())
}

/// The same frequencies from `ν([w]) = F_w + Σ_{w′ ≻ w} N_w(w′) F_{w′}`,
/// solved from the longest word down.
pub fn subtract_superwords(cyl_freq: &BTreeMap<Word, f64>, return_words: &[Word]) -> Result<BTreeMap<Word, f64>> {
    let mut order: Vec<usize> = (0..return_words.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(return_words[i].len()));
    let edges = containments(return_words);
    let mut f = vec![0.0; return_words.len()];
    for i in order {
        let w = &return_words[i];
        let nu = cyl_freq.get(w).copied().ok_or_else(|| Error::MissingFrequency(w.to_string()))?;
        let above: f64 = edges.iter().filter(|e| e.0 == i).map(|&(_, j, n)| n * f[j]).sum();
        f[i] = nu - above;
    }
    Ok(return_words.iter().cloned().zip(f).collect())
}

/// Exact frequencies from cylinder frequencies. `ρ₀` is read from the
/// entry for the word `0`.
pub fn exact_frequencies_via_inclusion_exclusion(
    cyl_freq: &BTreeMap<Word, f64>,
    return_words: &[Word],
) -> Result<FrequencyTable> {
    let zero = Word::new(vec![0]);
    let rho0 = cyl_freq.get(&zero).copied().ok_or_else(|| Error::MissingFrequency(zero.to_string()))?;
    let exact = inclusion_exclusion_frequencies(cyl_freq, return_words)?;
    Ok(FrequencyTable { rho0, exact, method: FrequencyMethod::InclusionExclusion })
}

/// Return words from the derivative substitution, cylinder frequencies from
/// Michel's induced substitutions of each needed length, then
/// inclusion–exclusion.
pub fn exact_frequencies_via_michel(sub: &Substitution) -> Result<FrequencyTable> {
    let d = derivative_substitution(sub)?;
    let return_words: Vec<Word> =
        d.return_words.iter().filter(|r| r.len() > 1).map(|r| Word::from(&r[1..])).collect();
    let mut cyl = frequencies_via_michel(sub, 1)?;
    let mut lengths: Vec<usize> = return_words.iter().map(|w| w.len()).filter(|&l| l > 1).collect();
    lengths.sort_unstable();
    lengths.dedup();
    for t in lengths {
        cyl.extend(frequencies_via_michel(sub, t)?);
    }
    for w in &return_words {
        cyl.entry(w.clone()).or_insert(0.0);
    }
    let mut table = exact_frequencies_via_inclusion_exclusion(&cyl, &return_words)?;
    table.method = FrequencyMethod::Michel;
    Ok(table)
}
