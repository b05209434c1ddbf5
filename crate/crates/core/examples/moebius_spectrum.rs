//! Square-free weights with f(x₀, x₁) = x₀x₁: pressure, its derivative and
//! the dimension spectrum, written as CSV into the temp directory.

use lyaprank::cli::output::{pressure_csv, spectrum_csv};
use lyaprank::multifractal::{
    finite_difference_gap, min_second_difference, pressure_curve, spectrum, BetaGrid, PotentialSpec, WeightSequence,
};

fn main() -> lyaprank::Result<()> {
    let pot = PotentialSpec::product(2);
    let table = WeightSequence::MoebiusSquared.frequencies()?;
    let curve = pressure_curve(&pot, &table, &BetaGrid::default(), 4)?;
    let sp = spectrum(&pot, &curve)?;
    println!("support [{:.9}, {:.9}]", sp.support.0, sp.support.1);
    println!("min second difference {:.2e}", min_second_difference(&curve));
    println!("finite-difference gap {:.2e}", finite_difference_gap(&pot, &curve)?);
    for s in curve.samples.iter().step_by(100) {
        println!("beta {:>6.1}  psi {:>12.8}  dpsi {:.8}", s.beta, s.psi, s.dpsi);
    }
    let dir = std::env::temp_dir();
    std::fs::write(dir.join("moebius_pressure.csv"), pressure_csv(&curve))?;
    std::fs::write(dir.join("moebius_spectrum.csv"), spectrum_csv(&sp))?;
    println!("wrote {}", dir.join("moebius_*.csv").display());
    Ok(())
}
