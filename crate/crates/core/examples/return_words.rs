//! Cutting a prefix into return words to 0, and the empirical table.

use lyaprank::returnwords::{decompose, empirical_exact_frequencies};
use lyaprank::substitution::Substitution;

fn main() -> lyaprank::Result<()> {
    let x = Substitution::thue_morse().fixed_point(32)?;
    println!("prefix   {x}");
    let d = decompose(&x)?;
    println!("head     {} then 0^{}", d.head, d.head_zeros);
    for (w, zeros) in &d.blocks {
        println!("block    {w} 0^{zeros}");
    }
    println!("residual {} 0^{}", d.residual, d.residual_zeros);
    println!("reassembles: {}", d.reassemble() == x);

    let long = Substitution::thue_morse().fixed_point(1 << 20)?;
    let t = empirical_exact_frequencies(&long, 64);
    println!("rho0 {:.6}, slack {:.2e}", t.rho0, t.lemma_slack());
    for (w, f) in &t.exact {
        println!("F_{w:<3} {f:.6}");
    }
    Ok(())
}
