//! Lyapunov exponents of matrix products in which one matrix has rank one.
//!
//! When `A₀ = uv′`, the top exponent of `A_{ω₀} A_{ω₁} ⋯` along a sequence
//! `ω` is a series over the return words `w` to the symbol 0:
//!
//! ```text
//! L = ρ₀ log|v′u| + Σ_w F_w log(|v′A_w u| / |v′u|)
//! ```
//!
//! where `ρ₀` is the frequency of 0 and `F_w` the frequency of the block
//! `0w0`. The crate computes those frequencies exactly for substitutive and
//! 𝓑-free sequences, evaluates the series, and checks it against a direct
//! renormalized product.
//!
//! Modules, bottom up:
//!
//! - [`word`], [`substitution`], [`sequences`]: symbols and sequence sources
//! - [`returnwords`]: decomposition and empirical frequencies
//! - [`substanalysis`]: composition matrices, Perron data, induced and
//!   derivative substitutions, inclusion–exclusion
//! - [`mirsky`]: 𝓑-free sets, cylinder measures, Euler products
//! - [`lyapunov`]: closed forms, series and the direct estimator
//! - [`multifractal`]: pressure and dimension spectra
//! - [`cli`], [`validation`]: configuration, commands, acceptance checks

pub mod cli;
pub mod error;
pub mod lyapunov;
pub mod mirsky;
pub mod multifractal;
pub mod primes;
pub mod returnwords;
pub mod sequences;
pub mod substanalysis;
pub mod substitution;
pub mod validation;
pub mod word;

pub use error::{Error, Result};
pub use word::{Symbol, Word};
