//! i.i.d. products with A₀ = diag(1, 0): the series against seeded direct
//! estimates.

use lyaprank::lyapunov::{bernoulli_lyapunov, direct_estimate_many, MatrixFamily, NormKind, SeriesOptions};
use lyaprank::sequences::SequenceSource;

fn main() -> lyaprank::Result<()> {
    let f = MatrixFamily::from_real(&[1.0, 0.0], &[1.0, 0.0], &[&[&[0.9, 0.4], &[0.3, 1.1]]])?;
    for p in [0.2, 0.5, 0.8] {
        let series = bernoulli_lyapunov(&f, &[p, 1.0 - p], SeriesOptions::default())?;
        let sources: Vec<_> =
            (0..32).map(|seed| SequenceSource::Bernoulli { probs: vec![p, 1.0 - p], seed }).collect();
        let runs = direct_estimate_many(&f, &sources, 100_000, NormKind::Frobenius, 4)?;
        let xs: Vec<f64> = runs.iter().map(|r| r.estimate.to_f64()).collect();
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        let sd = (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (xs.len() - 1) as f64).sqrt();
        let se = sd / (xs.len() as f64).sqrt();
        println!(
            "p = {p}: series {:.6} (truncated mass {:.1e})  direct mean {mean:.6} +- {se:.1e}  z = {:.2}",
            series.value.to_f64(),
            series.truncated_mass,
            (series.value.to_f64() - mean) / se
        );
    }
    Ok(())
}
