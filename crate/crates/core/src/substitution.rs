//! Substitutions (letter-to-word morphisms) and their fixed points.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Symbol, Word};

/// A map `letter -> nonempty word` on the alphabet `{0, …, s-1}`, with the
/// letter whose fixed point is generated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Substitution {
    images: Vec<Word>,
    seed: Symbol,
}

impl Substitution {
    /// Checks that every image is nonempty and stays inside the alphabet.
    /// Prolongability and growth are checked when a fixed point is requested.
    pub fn new(images: Vec<Word>, seed: Symbol) -> Result<Self> {
        let s = images.len();
        if s == 0 {
            return Err(Error::InvalidSubstitution("empty alphabet".into()));
        }
        if s > Symbol::MAX as usize {
            return Err(Error::InvalidSubstitution(format!("alphabet of size {s} too large")));
        }
        for (a, img) in images.iter().enumerate() {
            if img.is_empty() {
                return Err(Error::InvalidSubstitution(format!("image of {a} is empty")));
            }
            if let Some(&bad) = img.iter().find(|&&x| x as usize >= s) {
                return Err(Error::InvalidSubstitution(format!(
                    "image of {a} uses letter {bad} outside alphabet of size {s}"
                )));
            }
        }
        if seed as usize >= s {
            return Err(Error::InvalidSubstitution(format!("seed {seed} outside alphabet")));
        }
        Ok(Substitution { images, seed })
    }

    /// Convenience constructor from word literals, seeded at 0.
    pub fn from_strs(images: &[&str]) -> Result<Self> {
        let images = images
            .iter()
            .map(|s| s.parse::<Word>())
            .collect::<Result<Vec<_>>>()?;
        Substitution::new(images, 0)
    }

    /// 0 → 01, 1 → 0.
    pub fn fibonacci() -> Self {
        Substitution::from_strs(&["01", "0"]).expect("valid")
    }

    /// 0 → 01, 1 → 10.
    pub fn thue_morse() -> Self {
        Substitution::from_strs(&["01", "10"]).expect("valid")
    }

    /// 0 → 01, 1 → 02, 2 → 0.
    pub fn tribonacci() -> Self {
        Substitution::m_bonacci(3)
    }

    /// 0 → 01, 1 → 02, …, m-2 → 0(m-1), m-1 → 0.
    pub fn m_bonacci(m: usize) -> Self {
        assert!(m >= 2, "m-bonacci needs m >= 2");
        let mut images: Vec<Word> = (1..m).map(|j| Word::new(vec![0, j as Symbol])).collect();
        images.push(Word::new(vec![0]));
        Substitution::new(images, 0).expect("valid")
    }

    /// Look up a built-in substitution by name.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "fibonacci" => Some(Substitution::fibonacci()),
            "thue-morse" | "thue_morse" | "thueMorse" => Some(Substitution::thue_morse()),
            "tribonacci" => Some(Substitution::tribonacci()),
            _ => name
                .strip_suffix("-bonacci")
                .and_then(|m| m.parse::<usize>().ok())
                .filter(|&m| m >= 2)
                .map(Substitution::m_bonacci),
        }
    }

    pub fn alphabet_size(&self) -> usize {
        self.images.len()
    }

    pub fn seed(&self) -> Symbol {
        self.seed
    }

    pub fn with_seed(mut self, seed: Symbol) -> Result<Self> {
        if seed as usize >= self.images.len() {
            return Err(Error::InvalidSubstitution(format!("seed {seed} outside alphabet")));
        }
        self.seed = seed;
        Ok(self)
    }

    pub fn image(&self, a: Symbol) -> &Word {
        &self.images[a as usize]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// Apply the morphism to a word.
    pub fn apply(&self, word: &[Symbol]) -> Word {
        let len = word.iter().map(|&a| self.images[a as usize].len()).sum();
        let mut out = Vec::with_capacity(len);
        for &a in word {
            out.extend_from_slice(&self.images[a as usize]);
        }
        Word::new(out)
    }

    /// Apply the morphism `k` times.
    pub fn iterate(&self, word: &[Symbol], k: usize) -> Word {
        let mut cur = Word::from(word);
        for _ in 0..k {
            cur = self.apply(&cur);
        }
        cur
    }

    /// Letters whose iterated images stay bounded in length.
    ///
    /// `|ζⁿ(β)|` is bounded exactly when every letter reachable from `β` that
    /// lies on a cycle of the letter graph has an image of length one.
    pub fn non_growing_letters(&self) -> Vec<Symbol> {
        let s = self.images.len();
        let succ: Vec<Vec<usize>> = self
            .images
            .iter()
            .map(|img| {
                let mut v: Vec<usize> = img.iter().map(|&x| x as usize).collect();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();
        let reach_from = |start: usize, include_start: bool| -> Vec<bool> {
            let mut seen = vec![false; s];
            let mut queue = VecDeque::new();
            if include_start {
                seen[start] = true;
                queue.push_back(start);
            } else {
                for &n in &succ[start] {
                    if !seen[n] {
                        seen[n] = true;
                        queue.push_back(n);
                    }
                }
            }
            while let Some(x) = queue.pop_front() {
                for &n in &succ[x] {
                    if !seen[n] {
                        seen[n] = true;
                        queue.push_back(n);
                    }
                }
            }
            seen
        };
        let on_cycle: Vec<bool> = (0..s).map(|a| reach_from(a, false)[a]).collect();
        (0..s)
            .filter(|&b| {
                let reach = reach_from(b, true);
                !(0..s).any(|a| reach[a] && on_cycle[a] && self.images[a].len() >= 2)
            })
            .map(|b| b as Symbol)
            .collect()
    }

    /// Checks conditions (i) growth and (ii) prolongability at the seed.
    pub fn check_fixed_point_conditions(&self) -> Result<()> {
        if self.images[self.seed as usize][0] != self.seed {
            return Err(Error::NotProlongable { seed: self.seed });
        }
        if let Some(&letter) = self.non_growing_letters().first() {
            return Err(Error::NotGrowing { letter });
        }
        Ok(())
    }

    /// The length-`n` prefix of the fixed point `ζ^∞(seed)`.
    pub fn fixed_point(&self, n: usize) -> Result<Word> {
        self.check_fixed_point_conditions()?;
        let mut cur = vec![self.seed];
        extend_fixed_point(self, &mut cur, n);
        cur.truncate(n);
        Ok(Word::new(cur))
    }
}

/// Grow a fixed-point prefix in place until it has at least `n` symbols.
///
/// Since `ζ(prefix)` begins with `prefix`, only the images of the letters
/// not yet expanded need to be appended.
pub(crate) fn extend_fixed_point(sub: &Substitution, buf: &mut Vec<Symbol>, n: usize) {
    if buf.is_empty() {
        buf.push(sub.seed);
    }
    // `expanded` letters of buf have had their images written into buf.
    let mut expanded = 0usize;
    let mut produced = 0usize;
    // Recompute how many source letters produce the current buffer.
    while produced < buf.len() && expanded < buf.len() {
        let l = sub.images[buf[expanded] as usize].len();
        if produced + l > buf.len() {
            break;
        }
        produced += l;
        expanded += 1;
    }
    while buf.len() < n {
        let a = buf[expanded];
        let img = &sub.images[a as usize];
        let start = buf.len() - produced;
        // Part of this image may already be present.
        if start < img.len() {
            buf.extend_from_slice(&img[start..]);
        }
        produced += img.len();
        expanded += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    #[test]
    fn fibonacci_prefix() {
        let x = Substitution::fibonacci().fixed_point(8).unwrap();
        assert_eq!(x, w("01001010"));
    }

    #[test]
    fn thue_morse_prefix() {
        let x = Substitution::thue_morse().fixed_point(16).unwrap();
        assert_eq!(x, w("0110100110010110"));
    }

    #[test]
    fn length_one_prefix_is_seed() {
        for sub in [Substitution::fibonacci(), Substitution::tribonacci()] {
            assert_eq!(sub.fixed_point(1).unwrap(), w("0"));
        }
        let sub = Substitution::from_strs(&["10", "10"]).unwrap().with_seed(1).unwrap();
        assert_eq!(sub.fixed_point(1).unwrap(), w("1"));
    }

    #[test]
    fn fixed_point_is_self_similar() {
        for sub in [
            Substitution::fibonacci(),
            Substitution::thue_morse(),
            Substitution::tribonacci(),
            Substitution::from_strs(&["01", "100110"]).unwrap(),
        ] {
            let x = sub.fixed_point(500).unwrap();
            let y = sub.apply(&x);
            assert_eq!(&y[..500], &x[..]);
        }
    }

    #[test]
    fn incremental_extension_matches_fresh_generation() {
        let sub = Substitution::tribonacci();
        let mut buf = Vec::new();
        for n in [1, 2, 7, 50, 51, 400] {
            extend_fixed_point(&sub, &mut buf, n);
            let fresh = sub.iterate(&[0], 20);
            assert_eq!(&buf[..n], &fresh[..n]);
        }
    }

    #[test]
    fn not_prolongable() {
        let sub = Substitution::from_strs(&["10", "01"]).unwrap();
        assert_eq!(sub.fixed_point(4), Err(Error::NotProlongable { seed: 0 }));
    }

    #[test]
    fn not_growing() {
        // 1 -> 1 never grows.
        let sub = Substitution::from_strs(&["01", "1"]).unwrap();
        assert!(sub.non_growing_letters().contains(&1));
        assert_eq!(sub.fixed_point(4), Err(Error::NotGrowing { letter: 1 }));
        // 0 -> 01, 1 -> 2, 2 -> 1 : 1 and 2 cycle with length-one images.
        let sub = Substitution::from_strs(&["01", "2", "1"]).unwrap();
        assert_eq!(sub.non_growing_letters(), vec![1, 2]);
        // 0 -> 0 1, 1 -> 1 2, 2 -> 2 grows linearly from 0 and 1.
        let sub = Substitution::from_strs(&["01", "12", "2"]).unwrap();
        assert_eq!(sub.non_growing_letters(), vec![2]);
        assert!(Substitution::thue_morse().non_growing_letters().is_empty());
    }

    #[test]
    fn rejects_bad_images() {
        assert!(Substitution::from_strs(&["01", ""]).is_err());
        assert!(Substitution::from_strs(&["02", "1"]).is_err());
    }

    #[test]
    fn builtins() {
        assert_eq!(Substitution::builtin("tribonacci"), Some(Substitution::tribonacci()));
        assert_eq!(Substitution::builtin("4-bonacci").unwrap().alphabet_size(), 4);
        assert!(Substitution::builtin("nope").is_none());
    }
}
