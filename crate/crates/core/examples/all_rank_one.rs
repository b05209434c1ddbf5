//! Every matrix rank one: L = Σ p_i p_j log|v_i′u_j| against the direct
//! product on a Bernoulli sample.

use lyaprank::lyapunov::{all_rank_one_lyapunov, direct_estimate, MatrixFamily, NormKind, RankOneMatrix};
use lyaprank::sequences::{SequenceSource, SequenceStream};

fn main() -> lyaprank::Result<()> {
    let ms = [
        RankOneMatrix::from_real(&[1.0, 2.0], &[0.5, 1.0])?,
        RankOneMatrix::from_real(&[0.3, 1.0], &[1.0, -0.2])?,
        RankOneMatrix::from_real(&[2.0, -0.5], &[0.4, 0.4])?,
    ];
    let p = [0.5, 0.3, 0.2];
    // v₀′u₂ = 0 with u₂ = (2, −1) would give −∞ for both
    let l = all_rank_one_lyapunov(&ms, &p)?;
    let f = MatrixFamily::new(ms[0].clone(), ms[1..].iter().map(|m| m.to_dense()).collect())?;
    let mut s = SequenceStream::new(SequenceSource::Bernoulli { probs: p.to_vec(), seed: 5 })?;
    let d = direct_estimate(&f, &mut s, 1_000_000, NormKind::Frobenius)?;
    println!("double sum {l}\ndirect     {}", d.estimate);
    Ok(())
}
