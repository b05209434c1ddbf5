//! Lyapunov exponents of products `A_{ω₀} A_{ω₁} ⋯` where `A₀ = uv′` has
//! rank one: the closed forms, their series specializations for Bernoulli
//! and Markov sequences, and a direct renormalized-product estimator.
//!
//! All matrices are complex; real families are stored with zero imaginary
//! parts and run through a real fast path where it matters.

mod closed;
mod direct;
mod family;
mod series;
mod value;

pub use closed::{all_rank_one_lyapunov, closed_form_lyapunov, log_word_contraction, word_matrix_contraction, ZERO_TOLERANCE};
pub use direct::{direct_estimate, direct_estimate_many, direct_estimate_word, spectral_radius, DirectEstimate, NormKind};
pub use family::{MatrixFamily, RankOneMatrix, CONDITION_LIMIT, RANK_ONE_TOLERANCE};
pub use series::{bernoulli_lyapunov, markov_frequency_table, markov_lyapunov, SeriesOptions};
pub use value::{DegenerateReason, ExtendedReal, LyapunovValue, Warning};

pub type C64 = num_complex::Complex64;
pub type CMatrix = nalgebra::DMatrix<C64>;
pub type CVector = nalgebra::DVector<C64>;

/// Complex vector from real entries.
pub fn cvec(xs: &[f64]) -> CVector {
    CVector::from_iterator(xs.len(), xs.iter().map(|&x| C64::new(x, 0.0)))
}

/// Complex matrix from real rows.
pub fn cmat(rows: &[&[f64]]) -> CMatrix {
    let r = rows.len();
    let c = rows.first().map_or(0, |x| x.len());
    CMatrix::from_fn(r, c, |i, j| C64::new(rows[i][j], 0.0))
}
