use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::substitution::Substitution;
use crate::word::{Symbol, Word};

use super::composition::{composition_matrix, is_primitive, perron, CompositionMatrix, PerronData};

/// The induced substitution `ζ_t` on admissible words of length `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedSubstitution {
    pub base: Substitution,
    pub order: usize,
    /// `𝒜_t` in order of first appearance.
    pub alphabet: Vec<Word>,
    /// `ζ_t(alphabet[i])` as indices into `alphabet`.
    pub images: Vec<Vec<usize>>,
}

impl InducedSubstitution {
    pub fn image_words(&self, i: usize) -> Vec<&Word> {
        self.images[i].iter().map(|&j| &self.alphabet[j]).collect()
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.alphabet.iter().position(|a| a == w)
    }

    /// `ζ_t` as a plain substitution on `{0, …, |𝒜_t|−1}`.
    pub fn as_substitution(&self) -> Substitution {
        let images = self.images.iter().map(|img| img.iter().map(|&j| j as Symbol).collect()).collect();
        Substitution::new(images, 0).expect("induced images stay in the alphabet")
    }

    pub fn composition_matrix(&self) -> CompositionMatrix {
        composition_matrix(&self.as_substitution())
    }
}

/// A word of the language long enough to contain every admissible
/// `t`-word: `ζ^k(seed)` with `|ζ^k(seed)| ≥ max(10⁴, 10·s^t)`.
fn language_sample(sub: &Substitution, t: usize) -> Word {
    let s = sub.alphabet_size() as f64;
    let want = (10.0 * s.powi(t as i32)).clamp(1e4, 1e7) as usize;
    let mut cur = Word::new(vec![sub.seed()]);
    for _ in 0..64 {
        if cur.len() >= want {
            break;
        }
        cur = sub.apply(&cur);
    }
    cur
}

pub fn induced_substitution(sub: &Substitution, t: usize) -> Result<InducedSubstitution> {
    if !is_primitive(&composition_matrix(sub)) {
        return Err(Error::NotPrimitive);
    }
    assert!(t >= 1, "order must be at least 1");
    if t == 1 {
        let alphabet: Vec<Word> = (0..sub.alphabet_size()).map(|a| Word::new(vec![a as Symbol])).collect();
        let images = sub.images().iter().map(|img| img.iter().map(|&a| a as usize).collect()).collect();
        return Ok(InducedSubstitution { base: sub.clone(), order: 1, alphabet, images });
    }
    let sample = language_sample(sub, t);
    let mut alphabet: Vec<Word> = Vec::new();
    let mut index: HashMap<Word, usize> = HashMap::new();
    let mut intern = |w: &[Symbol], alphabet: &mut Vec<Word>| -> usize {
        if let Some(&i) = index.get(w) {
            return i;
        }
        let i = alphabet.len();
        alphabet.push(Word::from(w));
        index.insert(Word::from(w), i);
        i
    };
    for win in sample.windows(t) {
        intern(win, &mut alphabet);
    }
    // Close the set under ζ_t.
    let mut images: Vec<Vec<usize>> = Vec::new();
    let mut k = 0;
    while k < alphabet.len() {
        let w = alphabet[k].clone();
        let img = sub.apply(&w);
        let count = sub.image(w[0]).len();
        let row = (0..count).map(|i| intern(&img[i..i + t], &mut alphabet)).collect();
        images.push(row);
        k += 1;
    }
    Ok(InducedSubstitution { base: sub.clone(), order: t, alphabet, images })
}

/// `ν([w])` for every admissible word of length `t`, from the Perron vector
/// of `M_{ζ_t}`.
pub fn frequencies_via_michel(sub: &Substitution, t: usize) -> Result<BTreeMap<Word, f64>> {
    let induced = induced_substitution(sub, t)?;
    let PerronData { probability_vector, .. } = perron(&induced.composition_matrix())?;
    Ok(induced.alphabet.into_iter().zip(probability_vector).collect())
}
