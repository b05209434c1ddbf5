//! Fibonacci fixed point: exact frequencies from the Perron vector, the
//! closed form, and the direct product as a check.
//!
//!     cargo run --release --example fibonacci

use lyaprank::lyapunov::{closed_form_lyapunov, direct_estimate_word, MatrixFamily, NormKind};
use lyaprank::substanalysis::exact_frequencies_via_durand;
use lyaprank::substitution::Substitution;
use lyaprank::word::w;

fn main() -> lyaprank::Result<()> {
    let fib = Substitution::fibonacci();
    let t = exact_frequencies_via_durand(&fib)?;
    let f1 = t.get(&w("1"));
    println!("rho0 = {:.15}  F_1 = {:.15}", t.rho0, f1);
    println!("coefficient of log v'u  : {:.15}  (sqrt5 - 2 = {:.15})", t.rho0 - f1, 5f64.sqrt() - 2.0);
    println!("coefficient of log v'Au : {:.15}", f1);

    let family = MatrixFamily::from_real(&[1.0, 0.5], &[0.3, 1.0], &[&[&[1.2, 0.4], &[0.7, 0.9]]])?;
    let closed = closed_form_lyapunov(&family, &t)?;
    let x = fib.fixed_point(1_000_000)?;
    let direct = direct_estimate_word(&family, &x, NormKind::Frobenius)?;
    println!("closed form  L = {}", closed.value);
    println!("direct n=1e6 L = {}", direct.estimate);
    for (n, v) in direct.trace.iter().step_by(4) {
        println!("  n = {n:>8}  {v}");
    }
    Ok(())
}
