//! Prefixes of every kind of sequence source.

use lyaprank::mirsky::BFreeSet;
use lyaprank::sequences::{SequenceSource, SequenceStream};
use lyaprank::substitution::Substitution;

fn main() -> lyaprank::Result<()> {
    let sources = [
        ("fibonacci", SequenceSource::Substitution(Substitution::fibonacci())),
        ("thue-morse", SequenceSource::Substitution(Substitution::thue_morse())),
        ("tribonacci", SequenceSource::Substitution(Substitution::tribonacci())),
        ("squarefree", SequenceSource::BFree(BFreeSet::squarefree())),
        ("bernoulli", SequenceSource::Bernoulli { probs: vec![0.3, 0.7], seed: 1 }),
        ("markov", SequenceSource::Markov { transition: vec![vec![0.1, 0.9], vec![0.5, 0.5]], seed: 1 }),
        ("growing", SequenceSource::GrowingBlocks),
    ];
    for (name, src) in sources {
        let mut s = SequenceStream::new(src)?;
        let p: lyaprank::Word = s.prefix(48)?.iter().copied().collect();
        println!("{name:>11}  {p}");
    }
    Ok(())
}
