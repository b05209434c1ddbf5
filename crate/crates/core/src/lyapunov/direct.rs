use nalgebra::{ComplexField, DMatrix};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequences::{SequenceSource, SequenceStream};
use crate::word::Symbol;

use super::family::MatrixFamily;
use super::value::ExtendedReal;
use super::CMatrix;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormKind {
    #[default]
    Frobenius,
    /// Largest absolute column sum.
    Operator1,
}

/// `(1/n) log‖A_{ω₀}⋯A_{ω_{n−1}}‖` and the running values at `n = 1, 2, 4, …`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DirectEstimate {
    pub estimate: ExtendedReal,
    pub trace: Vec<(usize, ExtendedReal)>,
    pub steps: usize,
}

fn norm_of<T: ComplexField<RealField = f64> + Copy>(m: &DMatrix<T>, kind: NormKind) -> f64 {
    match kind {
        NormKind::Frobenius => m.iter().map(|x| x.modulus_squared()).sum::<f64>().sqrt(),
        NormKind::Operator1 => m
            .column_iter()
            .map(|c| c.iter().map(|x| x.modulus()).sum::<f64>())
            .fold(0.0, f64::max),
    }
}

/// Renormalize after every product by the Frobenius norm; the requested
/// norm is only applied to the normalized result.
fn run<T: ComplexField<RealField = f64> + Copy>(
    mats: &[DMatrix<T>],
    symbols: &mut dyn FnMut(usize) -> Result<Symbol>,
    n: usize,
    norm: NormKind,
) -> Result<DirectEstimate> {
    if n == 0 {
        return Err(Error::Config("direct estimate needs n ≥ 1".into()));
    }
    let d = mats[0].nrows();
    let mut prod = DMatrix::<T>::identity(d, d);
    let mut tmp = DMatrix::<T>::zeros(d, d);
    let mut log_acc = 0.0;
    let mut trace = Vec::new();
    let mut next_mark = 1usize;
    for k in 0..n {
        let a = symbols(k)? as usize;
        let m = mats.get(a).ok_or_else(|| {
            Error::DimensionMismatch(format!("sequence symbol {a} but only {} matrices", mats.len()))
        })?;
        prod.mul_to(m, &mut tmp);
        std::mem::swap(&mut prod, &mut tmp);
        let f = norm_of(&prod, NormKind::Frobenius);
        if f == 0.0 {
            trace.push((k + 1, ExtendedReal::NegInfinity));
            return Ok(DirectEstimate { estimate: ExtendedReal::NegInfinity, trace, steps: k + 1 });
        }
        if !f.is_finite() {
            return Err(Error::NumericalBreakdown(format!("norm {f} at step {}", k + 1)));
        }
        prod.unscale_mut(f);
        log_acc += f.ln();
        if k + 1 == next_mark {
            let v = (log_acc + norm_of(&prod, norm).ln()) / (k + 1) as f64;
            trace.push((k + 1, ExtendedReal::Finite(v)));
            next_mark *= 2;
        }
    }
    let v = (log_acc + norm_of(&prod, norm).ln()) / n as f64;
    if !v.is_finite() {
        return Err(Error::NumericalBreakdown(format!("estimate is {v}")));
    }
    if trace.last().map(|t| t.0) != Some(n) {
        trace.push((n, ExtendedReal::Finite(v)));
    }
    Ok(DirectEstimate { estimate: ExtendedReal::Finite(v), trace, steps: n })
}

fn run_family(
    family: &MatrixFamily,
    symbols: &mut dyn FnMut(usize) -> Result<Symbol>,
    n: usize,
    norm: NormKind,
) -> Result<DirectEstimate> {
    match family.real_dense() {
        Some(real) => run(&real, symbols, n, norm),
        None => run(family.all_dense(), symbols, n, norm),
    }
}

/// Direct estimate along the first `n` symbols of a stream.
pub fn direct_estimate(family: &MatrixFamily, omega: &mut SequenceStream, n: usize, norm: NormKind) -> Result<DirectEstimate> {
    let prefix = omega.prefix(n)?.to_vec();
    direct_estimate_word(family, &prefix, norm)
}

/// Direct estimate along an explicit word.
pub fn direct_estimate_word(family: &MatrixFamily, omega: &[Symbol], norm: NormKind) -> Result<DirectEstimate> {
    run_family(family, &mut |k| Ok(omega[k]), omega.len(), norm)
}

/// One estimate per source, spread over `threads` workers. Results come back
/// in input order and do not depend on the thread count.
pub fn direct_estimate_many(
    family: &MatrixFamily,
    sources: &[SequenceSource],
    n: usize,
    norm: NormKind,
    threads: usize,
) -> Result<Vec<DirectEstimate>> {
    let threads = threads.max(1).min(sources.len().max(1));
    let mut slots: Vec<Option<Result<DirectEstimate>>> = vec![None; sources.len()];
    std::thread::scope(|scope| {
        for (chunk_idx, chunk) in slots.chunks_mut(sources.len().div_ceil(threads).max(1)).enumerate() {
            let start = chunk_idx * sources.len().div_ceil(threads).max(1);
            scope.spawn(move || {
                for (i, slot) in chunk.iter_mut().enumerate() {
                    let r = SequenceStream::new(sources[start + i].clone())
                        .and_then(|mut s| direct_estimate(family, &mut s, n, norm));
                    *slot = Some(r);
                }
            });
        }
    });
    slots.into_iter().map(|s| s.expect("every slot filled")).collect()
}

/// `ρ(A) = lim ‖A^{2^k}‖^{1/2^k}`, by repeated squaring with renormalization.
pub fn spectral_radius(a: &CMatrix) -> Result<f64> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("spectral radius of a non-square matrix".into()));
    }
    let mut b = a.clone();
    let n0 = b.norm();
    if n0 == 0.0 {
        return Ok(0.0);
    }
    b.unscale_mut(n0);
    // A^{2^k} = exp(l) · B with ‖B‖_F = 1, and log ρ ≈ l / 2^k.
    let mut l = n0.ln();
    let mut prev = l;
    let mut pow = 1.0f64;
    for _ in 0..200 {
        let sq = &b * &b;
        let f = sq.norm();
        if f == 0.0 {
            return Ok(0.0);
        }
        b = sq.unscale(f);
        l = 2.0 * l + f.ln();
        pow *= 2.0;
        let est = l / pow;
        if (est - prev).abs() <= 1e-13 * est.abs().max(1.0) && pow >= 1024.0 {
            return Ok(est.exp());
        }
        prev = est;
    }
    Err(Error::NoConvergence { iterations: 200, residual: (l / pow - prev).abs() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lyapunov::cmat;
    use crate::word::{w, Word};

    #[test]
    fn identity_family_has_zero_exponent() {
        let f = MatrixFamily::from_real(&[1.0, 0.0], &[1.0, 0.0], &[&[&[1.0, 0.0], &[0.0, 1.0]]]).unwrap();
        let e = direct_estimate_word(&f, &Word::repeat(1, 1000), NormKind::Frobenius).unwrap();
        assert!((e.estimate.to_f64() - 2f64.sqrt().ln() / 1000.0).abs() < 1e-15);
        let e = direct_estimate_word(&f, &Word::repeat(1, 1000), NormKind::Operator1).unwrap();
        assert!(e.estimate.to_f64().abs() < 1e-15);
        assert_eq!(e.trace.iter().map(|t| t.0).collect::<Vec<_>>(), vec![1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1000]);
    }

    #[test]
    fn zero_product_is_minus_infinity() {
        // v′u = 0 makes A₀A₁A₀ vanish once A₁ maps u to a multiple of u
        let f = MatrixFamily::from_real(&[1.0, 0.0], &[0.0, 1.0], &[&[&[2.0, 1.0], &[0.0, 1.0]]]).unwrap();
        let e = direct_estimate_word(&f, &w("0100"), NormKind::Frobenius).unwrap();
        assert_eq!(e.estimate, ExtendedReal::NegInfinity);
        assert!(e.steps <= 4);
    }

    #[test]
    fn norms_agree_up_to_log_d_over_n() {
        let f = MatrixFamily::from_real(
            &[1.0, 2.0, 0.5],
            &[0.3, 1.0, 1.0],
            &[&[&[0.5, 1.0, 0.0], &[0.2, 0.3, 1.0], &[1.0, 0.0, 0.4]]],
        )
        .unwrap();
        let x = crate::substitution::Substitution::fibonacci().fixed_point(5000).unwrap();
        let a = direct_estimate_word(&f, &x, NormKind::Frobenius).unwrap().estimate.to_f64();
        let b = direct_estimate_word(&f, &x, NormKind::Operator1).unwrap().estimate.to_f64();
        assert!((a - b).abs() <= 3f64.ln() / 5000.0);
    }

    #[test]
    fn radii() {
        assert!((spectral_radius(&cmat(&[&[1.0, 0.0], &[0.0, 1.0]])).unwrap() - 1.0).abs() < 1e-12);
        assert!((spectral_radius(&cmat(&[&[2.0, 0.0], &[0.0, 1.0]])).unwrap() - 2.0).abs() < 1e-12);
        assert!((spectral_radius(&cmat(&[&[1.0, 1.0], &[1.0, 1.0]])).unwrap() - 2.0).abs() < 1e-12);
        let golden = (3.0 + 5f64.sqrt()) / 2.0;
        assert!((spectral_radius(&cmat(&[&[2.0, 1.0], &[1.0, 1.0]])).unwrap() - golden).abs() < 1e-12);
        // rotation: complex pair on the unit circle
        let t: f64 = 0.3;
        let r = cmat(&[&[t.cos(), -t.sin()], &[t.sin(), t.cos()]]);
        assert!((spectral_radius(&r).unwrap() - 1.0).abs() < 1e-12);
        // nilpotent
        assert_eq!(spectral_radius(&cmat(&[&[0.0, 1.0], &[0.0, 0.0]])).unwrap(), 0.0);
        // Jordan block: slow polynomial factor
        assert!((spectral_radius(&cmat(&[&[3.0, 1.0], &[0.0, 3.0]])).unwrap() - 3.0).abs() < 1e-10);
    }

    #[test]
    fn many_is_thread_independent() {
        let f = MatrixFamily::from_real(&[1.0, 0.0], &[1.0, 0.0], &[&[&[0.9, 0.4], &[0.3, 1.1]]]).unwrap();
        let sources: Vec<_> = (0..5)
            .map(|s| SequenceSource::Bernoulli { probs: vec![0.5, 0.5], seed: s })
            .collect();
        let a = direct_estimate_many(&f, &sources, 2000, NormKind::Frobenius, 1).unwrap();
        let b = direct_estimate_many(&f, &sources, 2000, NormKind::Frobenius, 3).unwrap();
        assert_eq!(a, b);
    }
}
