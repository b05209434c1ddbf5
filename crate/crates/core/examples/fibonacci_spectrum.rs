//! Fibonacci weights: ψ(β) = (√5 − 2) log 2 + ((3 − √5)/2) log Σ e^{βf(i,j)},
//! checked on a general potential.

use lyaprank::multifractal::{derivative_limits, pressure, PotentialSpec, WeightSequence};
use lyaprank::substitution::Substitution;

fn main() -> lyaprank::Result<()> {
    let pot = PotentialSpec::new(vec![vec![0.0, 1.5], vec![-0.5, 2.0]])?;
    let table = WeightSequence::Substitution { substitution: Substitution::fibonacci() }.frequencies()?;
    let s5 = 5f64.sqrt();
    for beta in [-4.0, -1.0, 0.0, 0.5, 3.0] {
        let sum: f64 = pot.table.iter().flatten().map(|f| (beta * f).exp()).sum();
        let by_formula = (s5 - 2.0) * 2f64.ln() + (3.0 - s5) / 2.0 * sum.ln();
        println!("beta {beta:>5}: psi {:.15}  formula {by_formula:.15}", pressure(&pot, &table, beta)?);
    }
    let (lo, hi) = derivative_limits(&pot, &table)?;
    println!("psi'(-inf) = {lo:.12}  ((3-sqrt5)/2 * min f = {:.12})", (3.0 - s5) / 2.0 * pot.min());
    println!("psi'(+inf) = {hi:.12}  ((3-sqrt5)/2 * max f = {:.12})", (3.0 - s5) / 2.0 * pot.max());
    Ok(())
}
