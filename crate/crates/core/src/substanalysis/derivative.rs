use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::returnwords::{FrequencyMethod, FrequencyTable};
use crate::substitution::Substitution;
use crate::word::{Symbol, Word};

use super::composition::{composition_matrix, is_primitive, perron, CompositionMatrix};

const MAX_SCAN: usize = 1 << 24;

/// Durand's normalized derivative substitution on the return words to `[0]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivativeSubstitution {
    /// `φ(i)`: the words `0x` (one leading 0, `x` 0-free) in order of first
    /// appearance in the fixed point.
    pub return_words: Vec<Word>,
    /// `η` on `{0, …, R−1}`.
    pub eta: Substitution,
}

impl DerivativeSubstitution {
    pub fn composition_matrix(&self) -> CompositionMatrix {
        composition_matrix(&self.eta)
    }

    /// `φ(w)`: concatenate the return words named by `w`.
    pub fn expand(&self, w: &[Symbol]) -> Word {
        w.iter().flat_map(|&i| self.return_words[i as usize].iter().copied()).collect()
    }

    /// `φ ∘ η = ζ ∘ φ` on every letter.
    pub fn conjugacy_holds(&self, sub: &Substitution) -> bool {
        (0..self.return_words.len()).all(|i| {
            self.expand(self.eta.image(i as Symbol)) == sub.apply(&self.return_words[i])
        })
    }
}

/// Split a word that starts with 0 at each 0.
fn split_at_zeros(w: &[Symbol]) -> Vec<&[Symbol]> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..w.len() {
        if w[i] == 0 {
            out.push(&w[start..i]);
            start = i;
        }
    }
    if !w.is_empty() {
        out.push(&w[start..]);
    }
    out
}

/// Derive `η` from `ζ`. The fixed point must start with 0.
pub fn derivative_substitution(sub: &Substitution) -> Result<DerivativeSubstitution> {
    if !is_primitive(&composition_matrix(sub)) {
        return Err(Error::NotPrimitive);
    }
    let sub = if sub.seed() == 0 { sub.clone() } else { sub.clone().with_seed(0)? };
    if sub.image(0)[0] != 0 {
        return Err(Error::DecompositionFailure("ζ(0) does not start with 0".into()));
    }
    let mut len = 1024usize;
    loop {
        let x = sub.fixed_point(len)?;
        // Complete return words: those followed by a 0 inside the prefix.
        let zeros: Vec<usize> = x.iter().enumerate().filter(|(_, &s)| s == 0).map(|(i, _)| i).collect();
        let mut return_words: Vec<Word> = Vec::new();
        let mut index: HashMap<Word, usize> = HashMap::new();
        for pair in zeros.windows(2) {
            let r = Word::from(&x[pair[0]..pair[1]]);
            if !index.contains_key(&r) {
                index.insert(r.clone(), return_words.len());
                return_words.push(r);
            }
        }
        let mut images = Vec::with_capacity(return_words.len());
        let mut closed = !return_words.is_empty();
        for r in &return_words {
            let img = sub.apply(r);
            let mut letters = Vec::new();
            for piece in split_at_zeros(&img) {
                match index.get(piece) {
                    Some(&i) => letters.push(i as Symbol),
                    None => {
                        closed = false;
                        break;
                    }
                }
            }
            if !closed {
                break;
            }
            images.push(Word::new(letters));
        }
        if closed {
            let eta = Substitution::new(images, 0)?;
            return Ok(DerivativeSubstitution { return_words, eta });
        }
        if len >= MAX_SCAN {
            return Err(Error::DecompositionFailure(format!(
                "return words not closed under ζ after scanning {len} symbols"
            )));
        }
        len *= 2;
    }
}

/// `F_w = λ([0w]) · μ([0])`, with `λ` the Perron vector of `M_η` and `μ`
/// that of `M_ζ`. The return word `0` alone only feeds `ρ₀ = μ([0])`.
pub fn exact_frequencies_via_durand(sub: &Substitution) -> Result<FrequencyTable> {
    let d = derivative_substitution(sub)?;
    let lambda = perron(&d.composition_matrix())?.probability_vector;
    let mu0 = perron(&composition_matrix(sub))?.probability_vector[0];
    let mut exact = BTreeMap::new();
    for (r, l) in d.return_words.iter().zip(lambda) {
        if r.len() > 1 {
            exact.insert(Word::from(&r[1..]), l * mu0);
        }
    }
    Ok(FrequencyTable { rho0: mu0, exact, method: FrequencyMethod::Durand })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    fn m(rows: &[&[u64]]) -> CompositionMatrix {
        CompositionMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect())
    }

    #[test]
    fn thue_morse_derivative() {
        let sub = Substitution::thue_morse();
        let d = derivative_substitution(&sub).unwrap();
        assert_eq!(d.return_words, vec![w("011"), w("01"), w("0")]);
        assert_eq!(d.eta.image(0), &w("012"));
        // ζ(01) = 0110 = (011)(0), so η(1) = 02
        assert_eq!(d.eta.image(1), &w("02"));
        assert_eq!(d.eta.image(2), &w("1"));
        assert_eq!(d.composition_matrix(), m(&[&[1, 1, 0], &[1, 0, 1], &[1, 1, 0]]));
        assert!(d.conjugacy_holds(&sub));
        let p = perron(&d.composition_matrix()).unwrap();
        assert!((p.eigenvalue - 2.0).abs() < 1e-12);
    }

    #[test]
    fn tribonacci_derivative_is_itself() {
        let sub = Substitution::tribonacci();
        let d = derivative_substitution(&sub).unwrap();
        assert_eq!(d.return_words, vec![w("01"), w("02"), w("0")]);
        assert_eq!(d.eta, sub);
    }

    #[test]
    fn second_example_derivative() {
        let sub = Substitution::from_strs(&["01", "100110"]).unwrap();
        let d = derivative_substitution(&sub).unwrap();
        assert_eq!(d.return_words, vec![w("011"), w("0"), w("01")]);
        assert_eq!(d.composition_matrix(), m(&[&[3, 0, 2], &[3, 0, 2], &[1, 1, 0]]));
        assert!(d.conjugacy_holds(&sub));
    }

    #[test]
    fn durand_frequencies() {
        let t = exact_frequencies_via_durand(&Substitution::thue_morse()).unwrap();
        assert!((t.exact[&w("1")] - 1.0 / 6.0).abs() < 1e-12);
        assert!((t.exact[&w("11")] - 1.0 / 6.0).abs() < 1e-12);
        assert!((t.rho0 - 0.5).abs() < 1e-12);

        let t = exact_frequencies_via_durand(&Substitution::tribonacci()).unwrap();
        let r = 1.839286755214161_f64;
        assert!((t.exact[&w("1")] - 1.0 / (r * r)).abs() < 1e-12);
        assert!((t.exact[&w("2")] - 1.0 / (r * r * r)).abs() < 1e-12);

        let t = exact_frequencies_via_durand(&Substitution::from_strs(&["01", "100110"]).unwrap()).unwrap();
        assert!((t.exact[&w("11")] - 0.2).abs() < 1e-12);
        assert!((t.exact[&w("1")] - 0.1).abs() < 1e-12);
    }

    #[test]
    fn needs_zero_first() {
        let sub = Substitution::from_strs(&["10", "0"]).unwrap();
        assert!(matches!(derivative_substitution(&sub), Err(Error::DecompositionFailure(_))));
    }
}
