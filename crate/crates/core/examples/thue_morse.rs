//! Thue–Morse: exact return-word frequencies by the derivative substitution
//! and by induced substitutions plus inclusion–exclusion.

use lyaprank::substanalysis::{derivative_substitution, exact_frequencies_via_durand, exact_frequencies_via_michel};
use lyaprank::substitution::Substitution;

fn main() -> lyaprank::Result<()> {
    let tm = Substitution::thue_morse();
    let d = derivative_substitution(&tm)?;
    println!("return words to [0]:");
    for (i, r) in d.return_words.iter().enumerate() {
        println!("  {i}: {r}   eta({i}) = {}", d.eta.image(i as u16));
    }
    println!("M_eta = {:?}", d.composition_matrix().entries);

    let a = exact_frequencies_via_durand(&tm)?;
    let b = exact_frequencies_via_michel(&tm)?;
    println!("{:>6} {:>20} {:>20}", "w", "durand", "michel");
    for (word, f) in &a.exact {
        println!("{:>6} {:>20.17} {:>20.17}", word.to_string(), f, b.get(word));
    }
    println!("max discrepancy {:e}", a.max_discrepancy(&b));
    Ok(())
}
