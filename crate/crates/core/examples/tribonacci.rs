//! Tribonacci: Perron data of the composition matrix and the three
//! closed-form coefficients 1/ρ − 1/ρ² − 1/ρ³, 1/ρ², 1/ρ³.

use lyaprank::substanalysis::{composition_matrix, exact_frequencies_via_durand, is_primitive, perron};
use lyaprank::substitution::Substitution;
use lyaprank::word::w;

fn main() -> lyaprank::Result<()> {
    let sub = Substitution::tribonacci();
    let m = composition_matrix(&sub);
    println!("M = {:?}, primitive: {}", m.entries, is_primitive(&m));
    let p = perron(&m)?;
    println!("rho = {:.15} after {} iterations (residual {:e})", p.eigenvalue, p.iterations, p.residual);
    println!("letter frequencies {:?}", p.probability_vector);

    let r = p.eigenvalue;
    let t = exact_frequencies_via_durand(&sub)?;
    println!("rho0 - F_1 - F_2 = {:.15}   1/r - 1/r^2 - 1/r^3 = {:.15}",
        t.rho0 - t.get(&w("1")) - t.get(&w("2")), 1.0 / r - 1.0 / (r * r) - 1.0 / (r * r * r));
    println!("F_1 = {:.15}   1/r^2 = {:.15}", t.get(&w("1")), 1.0 / (r * r));
    println!("F_2 = {:.15}   1/r^3 = {:.15}", t.get(&w("2")), 1.0 / (r * r * r));
    Ok(())
}
