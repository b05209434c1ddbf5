//! Exact frequencies from cylinder frequencies, computed with the
//! alternating chain sum and with back-substitution.

use std::collections::BTreeMap;

use lyaprank::substanalysis::{inclusion_exclusion_frequencies, subtract_superwords};
use lyaprank::word::{w, Word};

fn main() -> lyaprank::Result<()> {
    // runs of 1s of length 1, 2, 3 each with frequency 0.1, so
    // ν([1]) = 0.1 + 2·0.1 + 3·0.1, ν([11]) = 0.1 + 2·0.1, ν([111]) = 0.1
    let words = [w("1"), w("11"), w("111")];
    let cyl: BTreeMap<Word, f64> = [(w("1"), 0.6), (w("11"), 0.3), (w("111"), 0.1)].into_iter().collect();
    let a = inclusion_exclusion_frequencies(&cyl, &words)?;
    let b = subtract_superwords(&cyl, &words)?;
    for word in &words {
        println!("F_{word:<4} alternating {:.6}  back-substitution {:.6}", a[word], b[word]);
    }
    Ok(())
}
