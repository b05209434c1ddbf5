use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::returnwords::FrequencyTable;
use crate::word::{Symbol, Word};

use super::family::{MatrixFamily, RankOneMatrix};
use super::value::{DegenerateReason, ExtendedReal, LyapunovValue, Warning};
use super::{CVector, C64};

/// A contraction `v′A_w u` counts as zero when it is below this multiple of
/// `(|w|+1) · ‖v′A_w‖ · ‖u‖`, i.e. at rounding level.
pub const ZERO_TOLERANCE: f64 = 1e-14;

/// `v′A_w u` for a 0-free word, multiplied left to right. Can overflow for
/// long words; see [`log_word_contraction`].
pub fn word_matrix_contraction(family: &MatrixFamily, w: &[Symbol]) -> C64 {
    let mut y = family.a0().v.clone();
    for &a in w {
        y = family.dense(a as usize).tr_mul(&y);
    }
    (y.transpose() * &family.a0().u)[(0, 0)]
}

/// A row vector `v′A_{w₁}⋯A_{w_k}` stored as `scale · y` with `‖y‖ = 1`.
#[derive(Clone, Debug)]
pub(crate) struct ScaledRow {
    pub y: CVector,
    pub log_scale: f64,
    pub zero: bool,
}

impl ScaledRow {
    pub fn start(v: &CVector) -> Self {
        let n = v.norm();
        ScaledRow { y: v / C64::new(n, 0.0), log_scale: n.ln(), zero: false }
    }

    pub fn step(&self, family: &MatrixFamily, a: Symbol) -> Self {
        if self.zero {
            return self.clone();
        }
        let y = family.dense(a as usize).tr_mul(&self.y);
        let n = y.norm();
        if n == 0.0 {
            return ScaledRow { y, log_scale: self.log_scale, zero: true };
        }
        ScaledRow { y: y / C64::new(n, 0.0), log_scale: self.log_scale + n.ln(), zero: false }
    }

    /// `log|y · u|` plus the scale, or `None` for an exact (rounding-level) zero.
    pub fn log_contract(&self, u: &CVector, word_len: usize) -> Option<f64> {
        if self.zero {
            return None;
        }
        let c = (self.y.transpose() * u)[(0, 0)].norm();
        if c <= ZERO_TOLERANCE * (word_len as f64 + 1.0) * u.norm() {
            return None;
        }
        Some(c.ln() + self.log_scale)
    }
}

/// `log|v′A_w u|`, computed with renormalization; `None` when it vanishes.
pub fn log_word_contraction(family: &MatrixFamily, w: &[Symbol]) -> Option<f64> {
    let mut row = ScaledRow::start(&family.a0().v);
    for &a in w {
        row = row.step(family, a);
    }
    row.log_contract(&family.a0().u, w.len())
}

fn check_word(family: &MatrixFamily, w: &Word) -> Result<()> {
    if w.is_empty() {
        return Err(Error::InvalidWord("empty return word in frequency table".into()));
    }
    if let Some(&bad) = w.iter().find(|&&a| a == 0 || a as usize >= family.count()) {
        return Err(Error::DimensionMismatch(format!(
            "return word {w} uses letter {bad}; family has letters 1..{}",
            family.count() - 1
        )));
    }
    Ok(())
}

/// `L = ρ₀ log|v′u| + Σ_w F_w log(|v′A_w u| / |v′u|)`.
///
/// Terms are added from the longest word down. `−∞` is a value, not an
/// error: it comes from `v′u = 0` or from a word with `F_w > 0` and
/// `v′A_w u = 0`.
pub fn closed_form_lyapunov(family: &MatrixFamily, freqs: &FrequencyTable) -> Result<LyapunovValue> {
    for w in freqs.exact.keys() {
        check_word(family, w)?;
    }
    let mut warnings = Vec::new();
    if freqs.rho0 <= 0.0 {
        warnings.push(Warning::Rho0Zero);
    }
    let lambda = family.a0().lambda().norm();
    if lambda == 0.0 {
        let mut v = LyapunovValue::degenerate(DegenerateReason::LambdaZero, ExtendedReal::NegInfinity);
        v.warnings = warnings;
        return Ok(v);
    }
    let log_lambda = lambda.ln();
    let rho0_term = freqs.rho0 * log_lambda;

    let mut words: Vec<(&Word, f64)> = freqs.exact.iter().map(|(w, &f)| (w, f)).collect();
    words.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(b.0)));
    let mut per_word = BTreeMap::new();
    let mut sum = 0.0;
    for (w, f) in words {
        if f == 0.0 {
            per_word.insert(w.clone(), 0.0);
            continue;
        }
        match log_word_contraction(family, w) {
            None => {
                let mut v = LyapunovValue::degenerate(
                    DegenerateReason::AnnihilatingWord(w.clone()),
                    ExtendedReal::Finite(rho0_term),
                );
                v.warnings = warnings;
                return Ok(v);
            }
            Some(lc) => {
                let term = f * (lc - log_lambda);
                per_word.insert(w.clone(), term);
                sum += term;
            }
        }
    }
    Ok(LyapunovValue {
        value: ExtendedReal::Finite(rho0_term + sum),
        rho0_term: ExtendedReal::Finite(rho0_term),
        per_word_terms: per_word,
        degenerate: None,
        warnings,
        truncated_mass: 0.0,
        remainder_bound: 0.0,
    })
}

/// `Σ_{i,j} p_i p_j log|v_i′u_j|` for i.i.d. products of rank-one matrices
/// `u_i v_i′`.
pub fn all_rank_one_lyapunov(matrices: &[RankOneMatrix], p: &[f64]) -> Result<ExtendedReal> {
    if matrices.len() != p.len() {
        return Err(Error::DimensionMismatch(format!("{} matrices, {} probabilities", matrices.len(), p.len())));
    }
    crate::sequences::check_probability_vector(p)?;
    let d = matrices.first().map(|m| m.dimension()).unwrap_or(0);
    if matrices.iter().any(|m| m.dimension() != d) {
        return Err(Error::DimensionMismatch("rank-one factors of different sizes".into()));
    }
    let mut total = 0.0;
    for (mi, &pi) in matrices.iter().zip(p) {
        for (mj, &pj) in matrices.iter().zip(p) {
            let w = pi * pj;
            if w == 0.0 {
                continue;
            }
            let c = (mi.v.transpose() * &mj.u)[(0, 0)].norm();
            if c == 0.0 {
                return Ok(ExtendedReal::NegInfinity);
            }
            total += w * c.ln();
        }
    }
    Ok(ExtendedReal::Finite(total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::returnwords::FrequencyMethod;
    use crate::word::w;

    fn table(rho0: f64, pairs: &[(&str, f64)]) -> FrequencyTable {
        FrequencyTable {
            rho0,
            exact: pairs.iter().map(|(k, v)| (w(k), *v)).collect(),
            method: FrequencyMethod::Empirical,
        }
    }

    #[test]
    fn contractions_of_the_beta_family() {
        let beta: f64 = 0.7;
        let e = beta.exp();
        let f = MatrixFamily::from_real(&[1.0, 1.0], &[1.0, 1.0], &[&[&[1.0, 1.0], &[1.0, e]]]).unwrap();
        assert!((word_matrix_contraction(&f, &[]).re - 2.0).abs() < 1e-14);
        assert!((word_matrix_contraction(&f, &[1]).re - (3.0 + e)).abs() < 1e-13);
        assert!((word_matrix_contraction(&f, &[1, 1]).re - (5.0 + 2.0 * e + e * e)).abs() < 1e-12);
        let lc = log_word_contraction(&f, &[1, 1]).unwrap();
        assert!((lc - (5.0 + 2.0 * e + e * e).ln()).abs() < 1e-14);
    }

    #[test]
    fn log_contraction_survives_long_words() {
        let f = MatrixFamily::from_real(&[1.0, 1.0], &[1.0, 1.0], &[&[&[1e10, 0.0], &[0.0, 1e10]]]).unwrap();
        let w = vec![1u16; 100];
        let lc = log_word_contraction(&f, &w).unwrap();
        assert!((lc - (2.0f64.ln() + 1000.0 * 10f64.ln())).abs() < 1e-9);
    }

    #[test]
    fn fibonacci_closed_form_shape() {
        let s5 = 5f64.sqrt();
        let f = MatrixFamily::from_real(&[1.0, 2.0], &[0.5, 1.0], &[&[&[1.0, 2.0], &[3.0, 1.0]]]).unwrap();
        let t = table((s5 - 1.0) / 2.0, &[("1", (3.0 - s5) / 2.0)]);
        let got = closed_form_lyapunov(&f, &t).unwrap();
        let vu = word_matrix_contraction(&f, &[]).re;
        let vau = word_matrix_contraction(&f, &[1]).re;
        let expect = (s5 - 2.0) * vu.ln() + (3.0 - s5) / 2.0 * vau.ln();
        assert!((got.value.finite().unwrap() - expect).abs() < 1e-14);
        assert!(got.breakdown_sum().distance(got.value) < 1e-15);
    }

    #[test]
    fn degenerate_cases() {
        let f = MatrixFamily::from_real(&[1.0, 0.0], &[0.0, 1.0], &[&[&[1.0, 1.0], &[1.0, 1.0]]]).unwrap();
        let v = closed_form_lyapunov(&f, &table(0.5, &[("1", 0.25)])).unwrap();
        assert_eq!(v.value, ExtendedReal::NegInfinity);
        assert_eq!(v.degenerate, Some(DegenerateReason::LambdaZero));

        // v′A₁u = 0 with λ ≠ 0
        let g = MatrixFamily::from_real(&[1.0, 0.0], &[1.0, 0.0], &[&[&[0.0, 1.0], &[1.0, 0.0]]]).unwrap();
        let v = closed_form_lyapunov(&g, &table(0.5, &[("1", 0.1), ("11", 0.1)])).unwrap();
        assert_eq!(v.degenerate, Some(DegenerateReason::AnnihilatingWord(w("1"))));
        // zero frequency on the annihilating word is harmless
        let v = closed_form_lyapunov(&g, &table(0.5, &[("1", 0.0), ("11", 0.2)])).unwrap();
        assert_eq!(v.value, ExtendedReal::Finite(0.0));
    }

    #[test]
    fn rho0_zero_warns() {
        let f = MatrixFamily::from_real(&[1.0, 1.0], &[1.0, 1.0], &[&[&[2.0, 1.0], &[1.0, 1.0]]]).unwrap();
        let v = closed_form_lyapunov(&f, &table(0.0, &[])).unwrap();
        assert_eq!(v.warnings, vec![Warning::Rho0Zero]);
        assert_eq!(v.value, ExtendedReal::Finite(0.0));
    }

    #[test]
    fn rejects_foreign_letters() {
        let f = MatrixFamily::from_real(&[1.0], &[1.0], &[&[&[2.0]]]).unwrap();
        assert!(closed_form_lyapunov(&f, &table(0.5, &[("2", 0.1)])).is_err());
        assert!(closed_form_lyapunov(&f, &table(0.5, &[("10", 0.1)])).is_err());
    }

    #[test]
    fn all_rank_one() {
        let a = RankOneMatrix::from_real(&[2.0, 1.0], &[1.0, 3.0]).unwrap();
        let v = all_rank_one_lyapunov(std::slice::from_ref(&a), &[1.0]).unwrap();
        assert!((v.finite().unwrap() - 5f64.ln()).abs() < 1e-15);

        let e1 = RankOneMatrix::from_real(&[1.0, 0.0], &[1.0, 0.0]).unwrap();
        let e2 = RankOneMatrix::from_real(&[0.0, 1.0], &[0.0, 1.0]).unwrap();
        assert_eq!(all_rank_one_lyapunov(&[e1, e2], &[0.5, 0.5]).unwrap(), ExtendedReal::NegInfinity);
    }

    #[test]
    fn complex_family() {
        let i = C64::new(0.0, 1.0);
        let a1 = super::super::CMatrix::from_row_slice(2, 2, &[i, C64::new(1.0, 0.0), C64::new(0.0, 0.0), i]);
        let a0 = RankOneMatrix::new(super::super::cvec(&[1.0, 1.0]), super::super::cvec(&[1.0, 0.0])).unwrap();
        let f = MatrixFamily::new(a0, vec![a1]).unwrap();
        // v′A₁u = i + 1
        let c = word_matrix_contraction(&f, &[1]);
        assert!((c - C64::new(1.0, 1.0)).norm() < 1e-15);
        assert!(!f.is_real());
    }
}
