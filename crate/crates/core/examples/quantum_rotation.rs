//! A rotation R_θ driven by a two-state Markov chain, with A₀ = e₁e₁′.
//! The series is Σ_n F_{1ⁿ} log|cos nθ| with
//! F_{1ⁿ} = π₀(1 − p₀)p₁ⁿ⁻¹(1 − p₁).

use lyaprank::lyapunov::{direct_estimate, markov_lyapunov, MatrixFamily, NormKind, SeriesOptions};
use lyaprank::sequences::{SequenceSource, SequenceStream};

fn main() -> lyaprank::Result<()> {
    let (p0, p1) = (0.3, 0.6);
    let rows = vec![vec![p0, 1.0 - p0], vec![1.0 - p1, p1]];
    let pi0 = (1.0 - p1) / (2.0 - p0 - p1);
    for theta in [0.1f64, 0.5, 1.0, 1.4] {
        let (c, s) = (theta.cos(), theta.sin());
        let f = MatrixFamily::from_real(&[1.0, 0.0], &[1.0, 0.0], &[&[&[c, -s], &[s, c]]])?;
        let series = markov_lyapunov(&f, &rows, SeriesOptions::default())?.value.to_f64();
        let by_hand: f64 = (1..4000)
            .map(|n| pi0 * (1.0 - p0) * p1.powi(n - 1) * (1.0 - p1) * (n as f64 * theta).cos().abs().ln())
            .sum();
        let mut stream = SequenceStream::new(SequenceSource::Markov { transition: rows.clone(), seed: 1 })?;
        let direct = direct_estimate(&f, &mut stream, 400_000, NormKind::Frobenius)?.estimate.to_f64();
        println!("theta = {theta:<4} series {series:+.8}  by hand {by_hand:+.8}  direct {direct:+.5}");
    }
    Ok(())
}
