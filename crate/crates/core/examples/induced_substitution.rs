//! Michel's induced substitution on 2-words and 3-words of the Fibonacci
//! sequence, and the frequencies of those words.

use lyaprank::returnwords::empirical_frequency;
use lyaprank::substanalysis::{frequencies_via_michel, induced_substitution};
use lyaprank::substitution::Substitution;

fn main() -> lyaprank::Result<()> {
    let fib = Substitution::fibonacci();
    let x = fib.fixed_point(200_000)?;
    for t in [2, 3] {
        let z = induced_substitution(&fib, t)?;
        println!("order {t}:");
        for (i, a) in z.alphabet.iter().enumerate() {
            let img: Vec<String> = z.image_words(i).iter().map(|w| w.to_string()).collect();
            println!("  {a} -> {}", img.join(" "));
        }
        for (word, f) in frequencies_via_michel(&fib, t)? {
            println!("  nu[{word}] = {f:.12}   empirical {:.6}", empirical_frequency(&x, &word));
        }
    }
    Ok(())
}
