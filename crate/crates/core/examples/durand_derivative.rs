//! The derivative substitution of ζ(0) = 01, ζ(1) = 100110.

use lyaprank::substanalysis::{derivative_substitution, exact_frequencies_via_durand, perron};
use lyaprank::substitution::Substitution;

fn main() -> lyaprank::Result<()> {
    let sub = Substitution::from_strs(&["01", "100110"])?;
    let d = derivative_substitution(&sub)?;
    for (i, r) in d.return_words.iter().enumerate() {
        println!("return word {i} = {r:<4} eta({i}) = {}", d.eta.image(i as u16));
    }
    println!("phi . eta = zeta . phi: {}", d.conjugacy_holds(&sub));
    let m = d.composition_matrix();
    println!("M_eta = {:?}", m.entries);
    let p = perron(&m)?;
    println!("Perron eigenvalue {:.12}, vector {:?}", p.eigenvalue, p.probability_vector);
    let t = exact_frequencies_via_durand(&sub)?;
    println!("rho0 = {}", t.rho0);
    for (word, f) in &t.exact {
        println!("F_{word} = {f:.15}");
    }
    Ok(())
}
