//! Complex entries: A₀ = uv′ with complex u, v and a non-real A₁ along the
//! Thue–Morse sequence.

use lyaprank::lyapunov::{closed_form_lyapunov, direct_estimate_word, MatrixFamily, NormKind, RankOneMatrix, C64};
use lyaprank::substanalysis::exact_frequencies_via_durand;
use lyaprank::substitution::Substitution;
use nalgebra::{DMatrix, DVector};

fn main() -> lyaprank::Result<()> {
    let c = |re, im| C64::new(re, im);
    let u = DVector::from_vec(vec![c(1.0, 0.5), c(0.2, -1.0)]);
    let v = DVector::from_vec(vec![c(0.7, 0.0), c(1.0, 0.3)]);
    let a1 = DMatrix::from_row_slice(2, 2, &[c(0.8, 0.6), c(0.1, 0.0), c(0.0, -0.4), c(1.1, 0.2)]);
    let f = MatrixFamily::new(RankOneMatrix::new(u, v)?, vec![a1])?;
    println!("v'u = {}", f.a0().lambda());
    let tm = Substitution::thue_morse();
    let t = exact_frequencies_via_durand(&tm)?;
    let closed = closed_form_lyapunov(&f, &t)?;
    let direct = direct_estimate_word(&f, &tm.fixed_point(1 << 20)?, NormKind::Frobenius)?;
    println!("closed {}\ndirect {}", closed.value, direct.estimate);
    for (w, term) in &closed.per_word_terms {
        println!("  term {w:<3} {term:+.12}");
    }
    Ok(())
}
