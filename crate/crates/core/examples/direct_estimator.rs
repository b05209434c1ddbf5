//! The renormalized product estimator: trace, norm independence and the
//! spectral radius by repeated squaring.

use lyaprank::lyapunov::{cmat, direct_estimate_word, spectral_radius, MatrixFamily, NormKind};
use lyaprank::substitution::Substitution;

fn main() -> lyaprank::Result<()> {
    let f = MatrixFamily::from_real(
        &[1.0, 2.0, 0.5],
        &[0.3, 1.0, 1.0],
        &[&[&[0.5, 1.0, 0.0], &[0.2, 0.3, 1.0], &[1.0, 0.0, 0.4]], &[&[1.0, 0.1, 0.1], &[0.0, 0.9, 0.0], &[0.2, 0.0, 1.0]]],
    )?;
    let x = Substitution::tribonacci().fixed_point(1 << 18)?;
    let a = direct_estimate_word(&f, &x, NormKind::Frobenius)?;
    let b = direct_estimate_word(&f, &x, NormKind::Operator1)?;
    for ((n, u), (_, v)) in a.trace.iter().zip(&b.trace) {
        println!("n = {n:>7}  frobenius {u}  operator-1 {v}");
    }
    for m in [cmat(&[&[2.0, 1.0], &[1.0, 1.0]]), cmat(&[&[0.0, -1.0], &[1.0, 0.0]]), cmat(&[&[3.0, 1.0], &[0.0, 3.0]])] {
        println!("spectral radius {:.15}", spectral_radius(&m)?);
    }
    Ok(())
}
