//! Symbol sequences that select matrices: substitution fixed points,
//! 𝓑-free characteristic sequences, Bernoulli and Markov samples, explicit
//! words and the growing-blocks sequence `0 1 0 11 0 111 0 …`.
//!
//! All sequences are indexed from 0. The 𝓑-free generator maps the integer
//! `k ≥ 1` to position `k - 1`.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mirsky::BFreeSet;
use crate::substitution::{extend_fixed_point, Substitution};
use crate::word::{Symbol, Word};

/// Tolerance on probability vectors and stochastic rows.
pub const STOCHASTIC_TOL: f64 = 1e-12;

/// Where the symbols of a sequence come from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum SequenceSource {
    Substitution(Substitution),
    BFree(BFreeSet),
    Bernoulli { probs: Vec<f64>, seed: u64 },
    Markov { transition: Vec<Vec<f64>>, seed: u64 },
    Explicit(Word),
    /// `0 1 0 1² 0 1³ 0 …`: a sequence in which 0 has frequency zero.
    GrowingBlocks,
}

impl SequenceSource {
    /// Number of letters the source can emit.
    pub fn alphabet_size(&self) -> usize {
        match self {
            SequenceSource::Substitution(s) => s.alphabet_size(),
            SequenceSource::BFree(_) | SequenceSource::GrowingBlocks => 2,
            SequenceSource::Bernoulli { probs, .. } => probs.len(),
            SequenceSource::Markov { transition, .. } => transition.len(),
            SequenceSource::Explicit(w) => w.alphabet_bound().max(1),
        }
    }
}

enum SamplerState {
    None,
    Bernoulli { rng: ChaCha8Rng, cumulative: Vec<f64> },
    Markov { rng: ChaCha8Rng, cumulative: Vec<Vec<f64>>, current: usize, started: bool, initial: Vec<f64> },
}

/// A lazily extended prefix of a sequence. Deterministic for a fixed source:
/// the prefix of length `n` is always a prefix of the prefix of length `n + 1`.
pub struct SequenceStream {
    source: SequenceSource,
    buffer: Vec<Symbol>,
    state: SamplerState,
}

impl SequenceStream {
    pub fn new(source: SequenceSource) -> Result<Self> {
        let state = match &source {
            SequenceSource::Substitution(sub) => {
                sub.check_fixed_point_conditions()?;
                SamplerState::None
            }
            SequenceSource::Bernoulli { probs, seed } => {
                check_probability_vector(probs)?;
                if probs[0] <= 0.0 {
                    return Err(Error::ZeroMassOnSymbolZero);
                }
                SamplerState::Bernoulli {
                    rng: ChaCha8Rng::seed_from_u64(*seed),
                    cumulative: cumulative(probs),
                }
            }
            SequenceSource::Markov { transition, seed } => {
                let pi = stationary_distribution(transition)?;
                if pi[0] <= STOCHASTIC_TOL {
                    return Err(Error::ZeroMassOnSymbolZero);
                }
                SamplerState::Markov {
                    rng: ChaCha8Rng::seed_from_u64(*seed),
                    cumulative: transition.iter().map(|r| cumulative(r)).collect(),
                    current: 0,
                    started: false,
                    initial: cumulative(&pi),
                }
            }
            _ => SamplerState::None,
        };
        Ok(SequenceStream { source, buffer: Vec::new(), state })
    }

    pub fn source(&self) -> &SequenceSource {
        &self.source
    }

    pub fn alphabet_size(&self) -> usize {
        self.source.alphabet_size()
    }

    /// The first `n` symbols.
    pub fn prefix(&mut self, n: usize) -> Result<&[Symbol]> {
        if self.buffer.len() < n {
            self.extend_to(n)?;
        }
        Ok(&self.buffer[..n])
    }

    /// Everything generated so far.
    pub fn generated(&self) -> &[Symbol] {
        &self.buffer
    }

    fn extend_to(&mut self, n: usize) -> Result<()> {
        match (&self.source, &mut self.state) {
            (SequenceSource::Substitution(sub), _) => {
                extend_fixed_point(sub, &mut self.buffer, n);
            }
            (SequenceSource::BFree(set), _) => {
                let target = n.max(2 * self.buffer.len());
                self.buffer = bfree_characteristic(set, target).into_inner();
            }
            (SequenceSource::Explicit(word), _) => {
                if word.len() < n {
                    return Err(Error::SequenceExhausted { available: word.len(), requested: n });
                }
                self.buffer = word[..n].to_vec();
            }
            (SequenceSource::GrowingBlocks, _) => {
                // Blocks 0 1^k for k = 1, 2, …; regenerate from scratch.
                let target = n.max(2 * self.buffer.len());
                let mut out = Vec::with_capacity(target);
                let mut k = 1usize;
                while out.len() < target {
                    out.push(0);
                    out.extend(std::iter::repeat_n(1, k));
                    k += 1;
                }
                out.truncate(target);
                self.buffer = out;
            }
            (SequenceSource::Bernoulli { .. }, SamplerState::Bernoulli { rng, cumulative }) => {
                while self.buffer.len() < n {
                    self.buffer.push(draw(rng, cumulative));
                }
            }
            (
                SequenceSource::Markov { .. },
                SamplerState::Markov { rng, cumulative, current, started, initial },
            ) => {
                while self.buffer.len() < n {
                    let next = if *started {
                        draw(rng, &cumulative[*current])
                    } else {
                        *started = true;
                        draw(rng, initial)
                    };
                    *current = next as usize;
                    self.buffer.push(next);
                }
            }
            _ => unreachable!("sampler state matches source"),
        }
        Ok(())
    }
}

fn cumulative(p: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    let mut out: Vec<f64> = p
        .iter()
        .map(|&x| {
            acc += x;
            acc
        })
        .collect();
    if let Some(last) = out.last_mut() {
        *last = f64::INFINITY;
    }
    out
}

fn draw(rng: &mut ChaCha8Rng, cumulative: &[f64]) -> Symbol {
    let u: f64 = rng.random();
    // First index whose cumulative mass exceeds u; zero-probability letters
    // have equal cumulative values and are skipped.
    cumulative.iter().position(|&c| u < c).expect("last entry is +inf") as Symbol
}

pub fn check_probability_vector(p: &[f64]) -> Result<()> {
    if p.is_empty() {
        return Err(Error::NotStochastic("empty probability vector".into()));
    }
    if p.iter().any(|&x| !(0.0..=1.0).contains(&x)) {
        return Err(Error::NotStochastic(format!("entries outside [0,1]: {p:?}")));
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > STOCHASTIC_TOL {
        return Err(Error::NotStochastic(format!("sum is {sum}")));
    }
    Ok(())
}

/// The stationary row vector `π` with `πP = π`, `Σπ = 1`.
pub fn stationary_distribution(transition: &[Vec<f64>]) -> Result<Vec<f64>> {
    let m = transition.len();
    if m == 0 {
        return Err(Error::NotStochastic("empty transition matrix".into()));
    }
    for row in transition {
        if row.len() != m {
            return Err(Error::NotStochastic("transition matrix is not square".into()));
        }
        check_probability_vector(row)?;
    }
    // Solve (Pᵀ - I) π = 0 with the last equation replaced by Σπ = 1.
    let mut a = DMatrix::<f64>::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            a[(i, j)] = transition[j][i] - if i == j { 1.0 } else { 0.0 };
        }
    }
    for j in 0..m {
        a[(m - 1, j)] = 1.0;
    }
    let mut b = DVector::<f64>::zeros(m);
    b[m - 1] = 1.0;
    let pi = a
        .lu()
        .solve(&b)
        .ok_or_else(|| Error::NotStochastic("stationary vector is not unique".into()))?;
    Ok(pi.iter().map(|&x| x.max(0.0)).collect())
}

/// Length-`n` prefix of the fixed point of `sub`.
pub fn substitution_fixed_point(sub: &Substitution, n: usize) -> Result<Word> {
    sub.fixed_point(n)
}

/// `η_1 … η_n` with `η_k = 0` iff some generator divides `k`.
pub fn bfree_characteristic(set: &BFreeSet, n: usize) -> Word {
    let mut out = vec![1 as Symbol; n];
    for b in set.generators_up_to(n as u64) {
        let b = b as usize;
        let mut k = b;
        while k <= n {
            out[k - 1] = 0;
            k += b;
        }
    }
    Word::new(out)
}

/// A reproducible sample of length `n` from a Bernoulli or Markov source.
/// Any `seed` stored in `source` is replaced by `seed`.
pub fn sample_ergodic(source: &SequenceSource, n: usize, seed: u64) -> Result<Word> {
    let source = match source {
        SequenceSource::Bernoulli { probs, .. } => SequenceSource::Bernoulli { probs: probs.clone(), seed },
        SequenceSource::Markov { transition, .. } => {
            SequenceSource::Markov { transition: transition.clone(), seed }
        }
        other => {
            return Err(Error::Config(format!(
                "sample_ergodic needs a bernoulli or markov source, got {other:?}"
            )))
        }
    };
    let mut stream = SequenceStream::new(source)?;
    Ok(Word::from(stream.prefix(n)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    #[test]
    fn squarefree_first_terms() {
        let x = bfree_characteristic(&BFreeSet::squarefree(), 10);
        assert_eq!(x, w("1110111001"));
    }

    #[test]
    fn squarefree_zero_run_at_242() {
        let x = bfree_characteristic(&BFreeSet::squarefree(), 300);
        assert_eq!(&x[241..245], &[0, 0, 0, 0]);
        // 0⁴ occurs only once in the first 300 terms.
        let count = x.windows(4).filter(|w| w.iter().all(|&s| s == 0)).count();
        assert_eq!(count, 1);
    }

    #[test]
    fn even_numbers_killed() {
        let set = BFreeSet::explicit(vec![2]).unwrap();
        assert_eq!(bfree_characteristic(&set, 6), w("101010"));
    }

    #[test]
    fn degenerate_bernoulli_is_all_zero() {
        let src = SequenceSource::Bernoulli { probs: vec![1.0, 0.0, 0.0], seed: 0 };
        let x = sample_ergodic(&src, 1000, 42).unwrap();
        assert!(x.iter().all(|&s| s == 0));
    }

    #[test]
    fn fair_bernoulli_frequency() {
        let src = SequenceSource::Bernoulli { probs: vec![0.5, 0.5], seed: 0 };
        let x = sample_ergodic(&src, 100_000, 7).unwrap();
        let zeros = x.iter().filter(|&&s| s == 0).count() as f64 / 1e5;
        assert!((zeros - 0.5).abs() < 0.01, "{zeros}");
    }

    #[test]
    fn seeded_samples_are_reproducible() {
        let src = SequenceSource::Markov { transition: vec![vec![0.3, 0.7], vec![0.6, 0.4]], seed: 0 };
        let a = sample_ergodic(&src, 5000, 11).unwrap();
        let b = sample_ergodic(&src, 5000, 11).unwrap();
        let c = sample_ergodic(&src, 5000, 12).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn two_state_stationary_vector() {
        let (p0, p1) = (0.3, 0.8);
        let pi = stationary_distribution(&[vec![p0, 1.0 - p0], vec![1.0 - p1, p1]]).unwrap();
        let expect0 = (1.0 - p1) / (2.0 - p0 - p1);
        assert!((pi[0] - expect0).abs() < 1e-14);
        assert!((pi[1] - (1.0 - p0) / (2.0 - p0 - p1)).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_stochastic() {
        let src = SequenceSource::Bernoulli { probs: vec![0.5, 0.6], seed: 0 };
        assert!(matches!(SequenceStream::new(src), Err(Error::NotStochastic(_))));
        let src = SequenceSource::Markov { transition: vec![vec![0.5, 0.5], vec![0.5, 0.4]], seed: 0 };
        assert!(matches!(SequenceStream::new(src), Err(Error::NotStochastic(_))));
        let src = SequenceSource::Bernoulli { probs: vec![0.0, 1.0], seed: 0 };
        assert!(matches!(SequenceStream::new(src), Err(Error::ZeroMassOnSymbolZero)));
        // 0 is transient: never returns.
        let src = SequenceSource::Markov { transition: vec![vec![0.0, 1.0], vec![0.0, 1.0]], seed: 0 };
        assert!(matches!(SequenceStream::new(src), Err(Error::ZeroMassOnSymbolZero)));
    }

    #[test]
    fn growing_blocks_prefix() {
        let mut s = SequenceStream::new(SequenceSource::GrowingBlocks).unwrap();
        assert_eq!(s.prefix(10).unwrap(), &w("0101101110")[..]);
    }

    #[test]
    fn explicit_source_is_finite() {
        let mut s = SequenceStream::new(SequenceSource::Explicit(w("0010"))).unwrap();
        assert_eq!(s.prefix(3).unwrap(), &[0, 0, 1]);
        assert!(matches!(s.prefix(5), Err(Error::SequenceExhausted { .. })));
    }

    #[test]
    fn prefixes_are_monotone_for_every_source() {
        let sources = vec![
            SequenceSource::Substitution(Substitution::tribonacci()),
            SequenceSource::BFree(BFreeSet::squarefree()),
            SequenceSource::Bernoulli { probs: vec![0.2, 0.5, 0.3], seed: 3 },
            SequenceSource::Markov { transition: vec![vec![0.1, 0.9], vec![0.5, 0.5]], seed: 3 },
            SequenceSource::GrowingBlocks,
        ];
        for src in sources {
            let mut stream = SequenceStream::new(src.clone()).unwrap();
            let mut prev: Vec<Symbol> = Vec::new();
            for n in [1usize, 2, 3, 10, 11, 100, 257, 1000] {
                let p = stream.prefix(n).unwrap().to_vec();
                assert_eq!(&p[..prev.len()], &prev[..], "{src:?} at {n}");
                prev = p;
            }
            // A fresh stream gives the same bits.
            let mut fresh = SequenceStream::new(src).unwrap();
            assert_eq!(fresh.prefix(1000).unwrap(), &prev[..]);
        }
    }
}
