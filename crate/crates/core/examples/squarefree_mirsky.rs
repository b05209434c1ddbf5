//! Square-free integers: Euler products, exact return-word frequencies,
//! cylinder measures, and a sieve over [1, 10^7].

use lyaprank::mirsky::{bfree_exact_frequencies, cylinder_measure, euler_zeta, BFreeSet, CylinderSpec};
use lyaprank::returnwords::empirical_exact_frequencies;
use lyaprank::sequences::bfree_characteristic;
use lyaprank::word::w;

fn main() -> lyaprank::Result<()> {
    let sq = BFreeSet::squarefree();
    let precision = 1e-12;
    for t in 1..=3 {
        println!("zeta_{t}(2) = {:.15}", euler_zeta(t, 2.0, &sq, precision)?);
    }
    let exact = bfree_exact_frequencies(&sq, precision)?;
    let x = bfree_characteristic(&sq, 10_000_000);
    let emp = empirical_exact_frequencies(&x, 64);
    println!("rho0 = {:.15}  (1 - 6/pi^2 = {:.15})", exact.rho0, 1.0 - 6.0 / std::f64::consts::PI.powi(2));
    for (word, f) in &exact.exact {
        println!("F_{word:<3} = {f:.15}   sieve {:.7}", emp.get(word));
    }
    for word in ["10", "110", "1110", "0110"] {
        let nu = cylinder_measure(&CylinderSpec::of_word(&w(word)), &sq, precision)?;
        println!("nu[{word}] = {nu:.15}");
    }
    Ok(())
}
