//! ω = 0 1 0 11 0 111 0 …, where 0 has frequency zero. The direct product
//! grows like ρ(A₁)ⁿ while the return-word series gives 0.

use lyaprank::lyapunov::{closed_form_lyapunov, direct_estimate_word, spectral_radius, MatrixFamily, NormKind};
use lyaprank::returnwords::{empirical_exact_frequencies, rho0_vanishes, FrequencyMethod, FrequencyTable};
use lyaprank::sequences::{SequenceSource, SequenceStream};

fn main() -> lyaprank::Result<()> {
    let f = MatrixFamily::from_real(&[1.0, 1.0], &[1.0, 1.0], &[&[&[2.0, 1.0], &[1.0, 1.0]]])?;
    let rho = spectral_radius(f.other(1))?;
    let mut s = SequenceStream::new(SequenceSource::GrowingBlocks)?;
    for n in [10_000, 100_000, 2_000_000] {
        let x = s.prefix(n)?.to_vec();
        let direct = direct_estimate_word(&f, &x, NormKind::Frobenius)?.estimate;
        let table = empirical_exact_frequencies(&x, 64);
        let closed = closed_form_lyapunov(&f, &table)?.value;
        println!("n = {n:>8}: rho0 = {:.2e}  direct {direct}  closed {closed}  flagged {}", table.rho0, rho0_vanishes(&x));
    }
    let limit = FrequencyTable { rho0: 0.0, exact: Default::default(), method: FrequencyMethod::Empirical };
    let v = closed_form_lyapunov(&f, &limit)?;
    println!("log rho(A1) = {:.15}", rho.ln());
    println!("limit closed form = {}  warnings: {:?}", v.value, v.warnings.iter().map(|w| w.to_string()).collect::<Vec<_>>());
    Ok(())
}
