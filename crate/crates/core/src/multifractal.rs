//! Pressure and dimension spectra of weighted Birkhoff sums
//! `Σ_k w_k f(x_k, x_{k+1})` over the full shift on `S` letters.
//!
//! With `A_w(β) = (e^{β w f(i,j)})`, the partition function is
//! `𝟏′A_{w₀}(β)A_{w₁}(β)⋯𝟏`. Weight 0 gives `𝟏𝟏′`, which is rank one with
//! `𝟏′𝟏 = |S|`, so the pressure is a closed-form Lyapunov exponent:
//!
//! ```text
//! ψ(β) = ρ₀ log|S| + Σ_w F_w log(𝟏′A₁(β)^{|w|}𝟏 / |S|)
//! ```
//!
//! Everything below works with logarithms of transfer vectors, so β of
//! either sign and large `|f|` never overflow.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lyapunov::{cvec, MatrixFamily, RankOneMatrix};
use crate::mirsky::{bfree_exact_frequencies, BFreeSet};
use crate::returnwords::{empirical_exact_frequencies, FrequencyTable, DEFAULT_MAX_RETURN_LEN};
use crate::substanalysis::exact_frequencies_via_durand;
use crate::substitution::Substitution;
use crate::word::Word;

pub const DEFAULT_BETA_MIN: f64 = -40.0;
pub const DEFAULT_BETA_MAX: f64 = 40.0;
pub const DEFAULT_BETA_POINTS: usize = 801;
/// Central-difference step for the derivative check.
pub const FD_STEP: f64 = 1e-5;
/// Relative tolerance for analytic vs finite-difference `ψ′`.
pub const FD_TOLERANCE: f64 = 1e-6;
/// Precision used for Euler-product frequencies of `μ²`.
pub const MOEBIUS_PRECISION: f64 = 1e-13;

/// `f(i, j)` on `S × S`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PotentialSpec {
    pub table: Vec<Vec<f64>>,
}

impl PotentialSpec {
    pub fn new(table: Vec<Vec<f64>>) -> Result<Self> {
        let s = table.len();
        if s == 0 {
            return Err(Error::InvalidFamily("potential table is empty".into()));
        }
        if table.iter().any(|r| r.len() != s) {
            return Err(Error::DimensionMismatch(format!("potential table must be {s}x{s}")));
        }
        if table.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidFamily("potential has a non-finite entry".into()));
        }
        Ok(PotentialSpec { table })
    }

    /// `f(x₀, x₁) = x₀x₁` on `{0, …, s−1}`.
    pub fn product(s: usize) -> Self {
        PotentialSpec { table: (0..s).map(|i| (0..s).map(|j| (i * j) as f64).collect()).collect() }
    }

    pub fn alphabet_size(&self) -> usize {
        self.table.len()
    }

    pub fn max(&self) -> f64 {
        self.table.iter().flatten().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.table.iter().flatten().copied().fold(f64::INFINITY, f64::min)
    }
}

/// `(e^{β w f(i,j)})`.
pub fn beta_matrix(pot: &PotentialSpec, weight: f64, beta: f64) -> DMatrix<f64> {
    let s = pot.alphabet_size();
    DMatrix::from_fn(s, s, |i, j| (beta * weight * pot.table[i][j]).exp())
}

/// `{𝟏𝟏′, A₁(β)}` as a matrix family.
pub fn beta_family(pot: &PotentialSpec, beta: f64) -> Result<MatrixFamily> {
    let ones = vec![1.0; pot.alphabet_size()];
    let a0 = RankOneMatrix::new(cvec(&ones), cvec(&ones))?;
    let a1 = beta_matrix(pot, 1.0, beta).map(|x| crate::lyapunov::C64::new(x, 0.0));
    MatrixFamily::new(a0, vec![a1])
}

/// A `{0,1}`-valued weight sequence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "camelCase")]
pub enum WeightSequence {
    /// Fixed point of a substitution on `{0, 1}`.
    Substitution { substitution: Substitution },
    /// `μ²(k)`, the square-free indicator.
    MoebiusSquared,
    /// An explicit prefix; frequencies are read off it.
    Explicit { word: Word },
}

impl WeightSequence {
    /// Exact frequencies: Durand for substitutions, Euler products for `μ²`,
    /// counts for explicit words.
    pub fn frequencies(&self) -> Result<FrequencyTable> {
        match self {
            WeightSequence::Substitution { substitution } => {
                if substitution.alphabet_size() > 2 {
                    return Err(Error::UnsupportedWeight(format!(
                        "substitution on {} letters; only rank-one weight 0 and weight 1 are handled",
                        substitution.alphabet_size()
                    )));
                }
                exact_frequencies_via_durand(substitution)
            }
            WeightSequence::MoebiusSquared => bfree_exact_frequencies(&BFreeSet::squarefree(), MOEBIUS_PRECISION),
            WeightSequence::Explicit { word } => {
                if let Some(&x) = word.iter().find(|&&x| x > 1) {
                    return Err(Error::UnsupportedWeight(format!(
                        "weight {x} found; only weight 0 maps to a rank-one matrix"
                    )));
                }
                Ok(empirical_exact_frequencies(word, DEFAULT_MAX_RETURN_LEN))
            }
        }
    }
}

fn check_table(freqs: &FrequencyTable) -> Result<()> {
    for w in freqs.exact.keys() {
        if let Some(&x) = w.iter().find(|&&x| x != 1) {
            return Err(Error::UnsupportedWeight(format!("return word {w} contains weight {x}")));
        }
    }
    Ok(())
}

fn log_sum_exp(xs: impl Iterator<Item = f64> + Clone) -> f64 {
    let m = xs.clone().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + xs.map(|x| (x - m).exp()).sum::<f64>().ln()
}

/// Log transfer vectors for `A = A₁(β)`: `ℓ_k = log(𝟏′A^k)` and
/// `r_k = log(A^k𝟏)`, for `k = 0..=n`.
struct Transfer {
    left: Vec<Vec<f64>>,
    right: Vec<Vec<f64>>,
}

impl Transfer {
    fn new(pot: &PotentialSpec, beta: f64, n: usize) -> Self {
        let s = pot.alphabet_size();
        let f = &pot.table;
        let mut left = vec![vec![0.0; s]];
        let mut right = vec![vec![0.0; s]];
        for _ in 0..n {
            let l = left.last().unwrap();
            let next: Vec<f64> = (0..s).map(|j| log_sum_exp((0..s).map(|i| l[i] + beta * f[i][j]))).collect();
            left.push(next);
            let r = right.last().unwrap();
            let next: Vec<f64> = (0..s).map(|i| log_sum_exp((0..s).map(|j| beta * f[i][j] + r[j]))).collect();
            right.push(next);
        }
        Transfer { left, right }
    }

    /// `log 𝟏′A^n𝟏`.
    fn log_total(&self, n: usize) -> f64 {
        log_sum_exp(self.left[n].iter().copied())
    }

    /// `d/dβ log 𝟏′A^n𝟏`: for each of the `n` edges, the average of `f`
    /// under the weights `𝟏′A^k e_i · A_{ij} · e_j′A^{n−1−k}𝟏`.
    fn dlog_total(&self, pot: &PotentialSpec, beta: f64, n: usize) -> f64 {
        let s = pot.alphabet_size();
        let f = &pot.table;
        let mut total = 0.0;
        for k in 0..n {
            let l = &self.left[k];
            let r = &self.right[n - 1 - k];
            let logs: Vec<f64> =
                (0..s * s).map(|ij| l[ij / s] + beta * f[ij / s][ij % s] + r[ij % s]).collect();
            let m = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let (mut num, mut den) = (0.0, 0.0);
            for (ij, x) in logs.iter().enumerate() {
                let e = (x - m).exp();
                num += e * f[ij / s][ij % s];
                den += e;
            }
            total += num / den;
        }
        total
    }
}

fn max_len(freqs: &FrequencyTable) -> usize {
    freqs.exact.keys().map(|w| w.len()).max().unwrap_or(0)
}

/// `ψ(β)` and `ψ′(β)` together.
pub fn pressure_and_derivative(pot: &PotentialSpec, freqs: &FrequencyTable, beta: f64) -> Result<(f64, f64)> {
    check_table(freqs)?;
    let log_s = (pot.alphabet_size() as f64).ln();
    let t = Transfer::new(pot, beta, max_len(freqs));
    let mut psi = freqs.rho0 * log_s;
    let mut dpsi = 0.0;
    for (w, &fw) in &freqs.exact {
        if fw == 0.0 {
            continue;
        }
        psi += fw * (t.log_total(w.len()) - log_s);
        dpsi += fw * t.dlog_total(pot, beta, w.len());
    }
    if !psi.is_finite() || !dpsi.is_finite() {
        return Err(Error::NumericalBreakdown(format!("pressure at β = {beta} is not finite")));
    }
    Ok((psi, dpsi))
}

pub fn pressure(pot: &PotentialSpec, freqs: &FrequencyTable, beta: f64) -> Result<f64> {
    pressure_and_derivative(pot, freqs, beta).map(|p| p.0)
}

pub fn pressure_derivative(pot: &PotentialSpec, freqs: &FrequencyTable, beta: f64) -> Result<f64> {
    pressure_and_derivative(pot, freqs, beta).map(|p| p.1)
}

/// Best sum of `f` along a walk of `n` edges, by max-plus (or min-plus)
/// iteration.
fn extremal_walk(pot: &PotentialSpec, n: usize, maximize: bool) -> f64 {
    let s = pot.alphabet_size();
    let pick = |a: f64, b: f64| if maximize { a.max(b) } else { a.min(b) };
    let init = if maximize { f64::NEG_INFINITY } else { f64::INFINITY };
    let mut m = vec![0.0; s];
    for _ in 0..n {
        m = (0..s).map(|j| (0..s).fold(init, |acc, i| pick(acc, m[i] + pot.table[i][j]))).collect();
    }
    m.into_iter().fold(init, pick)
}

/// `(ψ′(−∞), ψ′(+∞))`: each return word contributes `F_w` times the least
/// (greatest) sum of `f` along a walk of `|w|` edges.
pub fn derivative_limits(pot: &PotentialSpec, freqs: &FrequencyTable) -> Result<(f64, f64)> {
    check_table(freqs)?;
    let (mut lo, mut hi) = (0.0, 0.0);
    for (w, &fw) in &freqs.exact {
        lo += fw * extremal_walk(pot, w.len(), false);
        hi += fw * extremal_walk(pot, w.len(), true);
    }
    Ok((lo, hi))
}

/// Sorted, finite β values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BetaGrid {
    Uniform { min: f64, max: f64, points: usize },
    Values(Vec<f64>),
}

impl Default for BetaGrid {
    fn default() -> Self {
        BetaGrid::Uniform { min: DEFAULT_BETA_MIN, max: DEFAULT_BETA_MAX, points: DEFAULT_BETA_POINTS }
    }
}

impl BetaGrid {
    pub fn values(&self) -> Result<Vec<f64>> {
        let v = match self {
            BetaGrid::Uniform { points: 0, .. } => Vec::new(),
            BetaGrid::Uniform { min, points: 1, .. } => vec![*min],
            &BetaGrid::Uniform { min, max, points } => {
                (0..points).map(|k| min + (max - min) * k as f64 / (points - 1) as f64).collect()
            }
            BetaGrid::Values(v) => v.clone(),
        };
        if v.is_empty() {
            return Err(Error::GridEmpty);
        }
        if v.iter().any(|x| !x.is_finite()) || v.windows(2).any(|p| p[0] >= p[1]) {
            return Err(Error::Config("β grid must be finite and strictly increasing".into()));
        }
        Ok(v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PressureSample {
    pub beta: f64,
    pub psi: f64,
    pub dpsi: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PressureCurve {
    pub samples: Vec<PressureSample>,
    pub table: FrequencyTable,
    /// `(ψ′(−∞), ψ′(+∞))`.
    pub limits: (f64, f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSample {
    pub alpha: f64,
    pub dim: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumCurve {
    pub samples: Vec<SpectrumSample>,
    /// `[ψ′(−∞), ψ′(+∞)]`.
    pub support: (f64, f64),
}

/// Evaluate `ψ` and `ψ′` on a grid with `threads` workers. The output
/// order follows the grid.
pub fn pressure_curve(pot: &PotentialSpec, freqs: &FrequencyTable, grid: &BetaGrid, threads: usize) -> Result<PressureCurve> {
    let betas = grid.values()?;
    check_table(freqs)?;
    let threads = threads.clamp(1, betas.len());
    let chunk = betas.len().div_ceil(threads);
    let mut slots: Vec<Option<Result<PressureSample>>> = vec![None; betas.len()];
    std::thread::scope(|scope| {
        for (c, out) in slots.chunks_mut(chunk).enumerate() {
            let betas = &betas[c * chunk..];
            scope.spawn(move || {
                for (slot, &beta) in out.iter_mut().zip(betas) {
                    *slot = Some(
                        pressure_and_derivative(pot, freqs, beta).map(|(psi, dpsi)| PressureSample { beta, psi, dpsi }),
                    );
                }
            });
        }
    });
    let samples = slots.into_iter().map(|s| s.expect("filled")).collect::<Result<Vec<_>>>()?;
    let limits = derivative_limits(pot, freqs)?;
    Ok(PressureCurve { samples, table: freqs.clone(), limits })
}

/// `(α, dim) = (ψ′(β), (ψ(β) − βψ′(β)) / log|S|)` for each grid point.
pub fn spectrum(pot: &PotentialSpec, curve: &PressureCurve) -> Result<SpectrumCurve> {
    let s = pot.alphabet_size();
    if s < 2 {
        return Err(Error::InvalidFamily("a one-letter alphabet has no dimension spectrum".into()));
    }
    let log_s = (s as f64).ln();
    let samples = curve
        .samples
        .iter()
        .map(|p| SpectrumSample { alpha: p.dpsi, dim: (p.psi - p.beta * p.dpsi) / log_s })
        .collect();
    Ok(SpectrumCurve { samples, support: curve.limits })
}

/// `min_β (ψ(β) − αβ) / log|S|` over the sampled grid.
pub fn legendre_on_grid(curve: &PressureCurve, alpha: f64, alphabet_size: usize) -> f64 {
    let log_s = (alphabet_size as f64).ln();
    curve.samples.iter().map(|p| p.psi - alpha * p.beta).fold(f64::INFINITY, f64::min) / log_s
}

/// Smallest second difference of `ψ` on the grid, scaled to the
/// local spacing. Negative values beyond rounding mean non-convexity.
pub fn min_second_difference(curve: &PressureCurve) -> f64 {
    curve
        .samples
        .windows(3)
        .map(|w| {
            let (h1, h2) = (w[1].beta - w[0].beta, w[2].beta - w[1].beta);
            (w[2].psi - w[1].psi) / h2 - (w[1].psi - w[0].psi) / h1
        })
        .fold(f64::INFINITY, f64::min)
}

/// Worst relative gap between the analytic `ψ′` and a central difference
/// with step [`FD_STEP`]. The scale is `max(|ψ′|, 10⁻³·(ψ′(+∞) − ψ′(−∞)))`,
/// so points deep in a flat tail are compared against the span of `ψ′`
/// instead of a value near zero.
pub fn finite_difference_gap(pot: &PotentialSpec, curve: &PressureCurve) -> Result<f64> {
    let span = (curve.limits.1 - curve.limits.0).abs();
    let mut worst: f64 = 0.0;
    for p in &curve.samples {
        let up = pressure(pot, &curve.table, p.beta + FD_STEP)?;
        let down = pressure(pot, &curve.table, p.beta - FD_STEP)?;
        let fd = (up - down) / (2.0 * FD_STEP);
        let scale = p.dpsi.abs().max(1e-3 * span).max(f64::MIN_POSITIVE);
        worst = worst.max((fd - p.dpsi).abs() / scale);
    }
    Ok(worst)
}
