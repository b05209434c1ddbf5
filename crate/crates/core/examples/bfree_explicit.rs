//! A finite 𝓑 = {4, 9, 25}: the characteristic sequence is periodic with
//! period 900, so cylinder measures can be checked by counting.

use lyaprank::mirsky::{bfree_exact_frequencies, cylinder_measure, BFreeSet, CylinderSpec};
use lyaprank::returnwords::empirical_frequency;
use lyaprank::sequences::bfree_characteristic;
use lyaprank::word::w;

fn main() -> lyaprank::Result<()> {
    let set = BFreeSet::explicit(vec![4, 9, 25])?;
    let x = bfree_characteristic(&set, 900 * 200);
    for word in ["1", "0", "11", "101", "1111", "0110"] {
        let nu = cylinder_measure(&CylinderSpec::of_word(&w(word)), &set, 1e-13)?;
        println!("nu[{word:<4}] = {nu:.12}   counted {:.12}", empirical_frequency(&x, &w(word)));
    }
    let t = bfree_exact_frequencies(&set, 1e-13)?;
    for (word, f) in &t.exact {
        println!("F_{word} = {f:.12}");
    }
    Ok(())
}
