//! The `lyaprank` command line: `freq`, `lyap`, `spectrum`, `validate` and
//! `sequence`. Structured input comes from a JSON file; flags only carry
//! paths, seeds and lengths.
//!
//! Exit codes: 0 on success, 2 for configuration errors, 3 for numeric
//! failures. A value of `−∞` is a result and exits with 0.

pub mod config;
pub mod output;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lyapunov::{
    bernoulli_lyapunov, closed_form_lyapunov, direct_estimate, markov_lyapunov, DirectEstimate, ExtendedReal,
    LyapunovValue, SeriesOptions, Warning,
};
use crate::mirsky::bfree_exact_frequencies;
use crate::multifractal::{pressure_curve, spectrum};
use crate::returnwords::{
    empirical_exact_frequencies, empirical_frequency, rho0_vanishes, FrequencyMethod, FrequencyTable,
    DEFAULT_MAX_RETURN_LEN,
};
use crate::sequences::{SequenceSource, SequenceStream};
use crate::substanalysis::{
    exact_frequencies_via_durand, exact_frequencies_via_inclusion_exclusion, exact_frequencies_via_michel,
};
use crate::validation;
use crate::word::Word;

use config::RunConfig;

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "LYAPRANK_THREADS";
pub const DEFAULT_PREFIX_LENGTH: usize = 1_000_000;
pub const DEFAULT_DUMP_LENGTH: usize = 100;
const DEFAULT_PRECISION: f64 = 1e-12;

#[derive(Debug, Parser)]
#[command(name = "lyaprank", version, about = "Lyapunov exponents of products with a rank-one matrix")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact and empirical return-word frequencies.
    Freq(Common),
    /// Closed-form exponent, optionally against the direct product.
    Lyap(Common),
    /// Pressure and dimension spectrum to CSV (and SVG).
    Spectrum(SpectrumArgs),
    /// Run the acceptance checks and print a JSON report.
    Validate(ValidateArgs),
    /// Print a prefix of the configured sequence.
    Sequence(Common),
}

#[derive(Debug, Args)]
pub struct Common {
    /// JSON configuration file.
    #[arg(short, long)]
    pub config: PathBuf,
    /// Seed for stochastic sequences, replacing the one in the file.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Prefix or product length, replacing the one in the file.
    #[arg(short = 'n', long)]
    pub length: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(short, long)]
    pub config: PathBuf,
    /// Directory for files not named in the configuration.
    #[arg(short, long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Optional configuration with `criteria` and `overrides`.
    #[arg(short, long)]
    pub config: Option<PathBuf>,
    /// Criterion ids to run; all when omitted.
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<u32>,
}

/// 2 for bad input, 3 for numeric trouble.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NoConvergence { .. }
        | Error::NumericalBreakdown(_)
        | Error::Divergent(_)
        | Error::MethodDisagreement { .. }
        | Error::DecompositionFailure(_)
        | Error::NotPrimitive
        | Error::NotGrowing { .. }
        | Error::MissingFrequency(_)
        | Error::PrecisionUnreachable { .. } => 3,
        _ => 2,
    }
}

/// Worker count from [`THREADS_ENV`], else the available parallelism.
pub fn thread_count() -> Result<usize> {
    match std::env::var(THREADS_ENV) {
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| Error::Config(format!("{THREADS_ENV} must be a positive integer, got `{s}`"))),
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

/// Parse arguments, run, and return the exit code. Output goes to `out`,
/// diagnostics to `err`.
pub fn main_with(args: impl IntoIterator<Item = String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    // a bad thread count is a config error for every subcommand
    match thread_count().and_then(|_| run(&cli.command, out, err)) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn run(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Freq(a) => {
            let cfg = load_common(a)?;
            let text = cmd_freq(&cfg)?;
            out.write_all(text.as_bytes())?;
        }
        Command::Lyap(a) => {
            let cfg = load_common(a)?;
            let report = cmd_lyap(&cfg)?;
            for w in &report.warnings {
                writeln!(err, "warning: {w}")?;
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializable"))?;
        }
        Command::Spectrum(a) => {
            let cfg = RunConfig::load(&a.config)?;
            let summary = cmd_spectrum(&cfg, &a.out_dir)?;
            out.write_all(summary.as_bytes())?;
        }
        Command::Validate(a) => {
            let cfg = match &a.config {
                Some(p) => RunConfig::load(p)?,
                None => RunConfig::default(),
            };
            let mut cfg = cfg;
            if !a.only.is_empty() {
                cfg.criteria = Some(a.only.clone());
            }
            let report = cmd_validate(&cfg)?;
            writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializable"))?;
        }
        Command::Sequence(a) => {
            let cfg = load_common(a)?;
            writeln!(out, "{}", cmd_sequence(&cfg)?)?;
        }
    }
    Ok(())
}

fn load_common(a: &Common) -> Result<RunConfig> {
    let mut cfg = RunConfig::load(&a.config)?;
    if let Some(seed) = a.seed {
        let seq = cfg.sequence.as_mut().ok_or_else(|| Error::Config("--seed needs a `sequence`".into()))?;
        if !seq.set_seed(seed) {
            return Err(Error::Config("--seed applies only to bernoulli and markov sequences".into()));
        }
    }
    if let Some(n) = a.length {
        cfg.prefix_length = Some(n);
        if cfg.direct_length.is_some() {
            cfg.direct_length = Some(n);
        }
    }
    Ok(cfg)
}

fn precision(cfg: &RunConfig) -> f64 {
    cfg.precision.unwrap_or(DEFAULT_PRECISION)
}

/// The natural exact method for a source, or `empirical`.
pub fn default_method(source: &SequenceSource) -> FrequencyMethod {
    match source {
        SequenceSource::Substitution(_) => FrequencyMethod::Durand,
        SequenceSource::BFree(_) => FrequencyMethod::Mirsky,
        _ => FrequencyMethod::Empirical,
    }
}

/// `prefixLength`, else the whole word for explicit sequences, else
/// [`DEFAULT_PREFIX_LENGTH`].
fn prefix_length(cfg: &RunConfig, source: &SequenceSource) -> usize {
    match (cfg.prefix_length, source) {
        (Some(n), _) => n,
        (None, SequenceSource::Explicit(w)) => w.len(),
        (None, _) => DEFAULT_PREFIX_LENGTH,
    }
}

fn prefix(source: &SequenceSource, n: usize) -> Result<Word> {
    let mut s = SequenceStream::new(source.clone())?;
    Ok(Word::from(s.prefix(n)?))
}

/// Cylinder frequencies of the empirical return words, read off the
/// prefix, then inclusion–exclusion.
fn empirical_inclusion_exclusion(x: &[u16], max_len: usize) -> Result<FrequencyTable> {
    let words: Vec<Word> = empirical_exact_frequencies(x, max_len).exact.into_keys().collect();
    let mut cyl: std::collections::BTreeMap<Word, f64> =
        words.iter().map(|w| (w.clone(), empirical_frequency(x, w))).collect();
    cyl.insert(Word::new(vec![0]), empirical_frequency(x, &[0]));
    exact_frequencies_via_inclusion_exclusion(&cyl, &words)
}

pub fn frequency_table(cfg: &RunConfig, source: &SequenceSource, method: FrequencyMethod) -> Result<FrequencyTable> {
    let max_len = cfg.max_return_length.unwrap_or(DEFAULT_MAX_RETURN_LEN);
    let n = prefix_length(cfg, source);
    let wrong = || Error::Config(format!("method `{}` does not apply to this sequence", method.name()));
    match method {
        FrequencyMethod::Empirical => Ok(empirical_exact_frequencies(&prefix(source, n)?, max_len)),
        FrequencyMethod::InclusionExclusion => empirical_inclusion_exclusion(&prefix(source, n)?, max_len),
        FrequencyMethod::Durand => match source {
            SequenceSource::Substitution(s) => exact_frequencies_via_durand(s),
            _ => Err(wrong()),
        },
        FrequencyMethod::Michel => match source {
            SequenceSource::Substitution(s) => exact_frequencies_via_michel(s),
            _ => Err(wrong()),
        },
        FrequencyMethod::Mirsky => match source {
            SequenceSource::BFree(b) => bfree_exact_frequencies(b, precision(cfg)),
            _ => Err(wrong()),
        },
    }
}

/// `word,F` tables, one per method. With several methods each table is
/// preceded by `# <method>` and followed by the pairwise discrepancies.
pub fn cmd_freq(cfg: &RunConfig) -> Result<String> {
    let source = cfg.require_sequence()?;
    let methods = cfg.methods.clone().unwrap_or_else(|| vec![default_method(&source)]);
    if methods.is_empty() {
        return Err(Error::Config("`methods` is empty".into()));
    }
    let tables = methods
        .iter()
        .map(|&m| frequency_table(cfg, &source, m))
        .collect::<Result<Vec<_>>>()?;
    if tables.len() == 1 {
        return Ok(output::frequency_csv(&tables[0]));
    }
    let mut s = String::new();
    for (m, t) in methods.iter().zip(&tables) {
        s.push_str(&format!("# {}\n", m.name()));
        s.push_str(&output::frequency_csv(t));
    }
    for i in 0..tables.len() {
        for j in i + 1..tables.len() {
            s.push_str(&format!(
                "# maxDiscrepancy {} {} {}\n",
                methods[i].name(),
                methods[j].name(),
                output::real(tables[i].max_discrepancy(&tables[j]))
            ));
        }
    }
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LyapReport {
    /// `closedForm`, or `series` for Bernoulli and Markov sequences.
    pub method: String,
    pub frequency_method: Option<FrequencyMethod>,
    pub value: ExtendedReal,
    pub result: LyapunovValue,
    pub direct: Option<DirectEstimate>,
    /// `|closed − direct|` when both are finite.
    pub gap: Option<f64>,
    pub warnings: Vec<String>,
}

pub fn cmd_lyap(cfg: &RunConfig) -> Result<LyapReport> {
    let source = cfg.require_sequence()?;
    let family = cfg.require_family()?;
    if source.alphabet_size() > family.count() {
        return Err(Error::DimensionMismatch(format!(
            "sequence uses {} letters, family has {} matrices",
            source.alphabet_size(),
            family.count()
        )));
    }
    let (method, freq_method, result, sample) = match &source {
        SequenceSource::Bernoulli { probs, .. } => {
            ("series", None, bernoulli_lyapunov(&family, probs, SeriesOptions::default())?, None)
        }
        SequenceSource::Markov { transition, .. } => {
            ("series", None, markov_lyapunov(&family, transition, SeriesOptions::default())?, None)
        }
        _ => {
            let m = cfg.frequency_method.unwrap_or_else(|| default_method(&source));
            let table = frequency_table(cfg, &source, m)?;
            let sample = matches!(m, FrequencyMethod::Empirical | FrequencyMethod::InclusionExclusion)
                .then(|| prefix(&source, prefix_length(cfg, &source)))
                .transpose()?;
            ("closedForm", Some(m), closed_form_lyapunov(&family, &table)?, sample)
        }
    };
    let mut warnings: Vec<String> = result.warnings.iter().map(|w| w.to_string()).collect();
    let rho0_warning = Warning::Rho0Zero.to_string();
    if sample.as_ref().is_some_and(|x| rho0_vanishes(x)) && !warnings.contains(&rho0_warning) {
        warnings.push(rho0_warning);
    }
    let direct = match cfg.direct_length {
        Some(n) => {
            let mut s = SequenceStream::new(source.clone())?;
            Some(direct_estimate(&family, &mut s, n, cfg.norm.unwrap_or_default())?)
        }
        None => None,
    };
    let gap = direct.as_ref().and_then(|d| match (result.value, d.estimate) {
        (ExtendedReal::Finite(a), ExtendedReal::Finite(b)) => Some((a - b).abs()),
        _ => None,
    });
    Ok(LyapReport {
        method: method.into(),
        frequency_method: freq_method,
        value: result.value,
        result,
        direct,
        gap,
        warnings,
    })
}

fn resolve(path: Option<&PathBuf>, dir: &Path, default: &str) -> PathBuf {
    path.cloned().unwrap_or_else(|| dir.join(default))
}

fn write_file(path: &Path, bytes: &str) -> Result<()> {
    std::fs::write(path, bytes).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Writes `pressure.csv`, `spectrum.csv` and, when asked, an SVG. Returns a
/// short summary.
pub fn cmd_spectrum(cfg: &RunConfig, out_dir: &Path) -> Result<String> {
    let pot = cfg
        .potential
        .as_ref()
        .ok_or_else(|| Error::Config("field `potential` is required".into()))?
        .to_potential()?;
    let weights = cfg
        .weights
        .as_ref()
        .ok_or_else(|| Error::Config("field `weights` is required".into()))?
        .to_weights()?;
    let grid = cfg.grid.clone().unwrap_or_default();
    grid.values()?;
    let table = weights.frequencies()?;
    let curve = pressure_curve(&pot, &table, &grid, thread_count()?)?;
    let spec = spectrum(&pot, &curve)?;
    let o = cfg.output.clone().unwrap_or_default();
    let p_path = resolve(o.pressure_csv.as_ref(), out_dir, "pressure.csv");
    let s_path = resolve(o.spectrum_csv.as_ref(), out_dir, "spectrum.csv");
    write_file(&p_path, &output::pressure_csv(&curve))?;
    write_file(&s_path, &output::spectrum_csv(&spec))?;
    let mut summary = format!(
        "support,{},{}\npressure,{}\nspectrum,{}\n",
        output::real(spec.support.0),
        output::real(spec.support.1),
        p_path.display(),
        s_path.display()
    );
    if let Some(svg) = &o.svg {
        write_file(svg, &output::curves_svg(&curve, &spec))?;
        summary.push_str(&format!("svg,{}\n", svg.display()));
    }
    Ok(summary)
}

pub fn cmd_validate(cfg: &RunConfig) -> Result<validation::ValidationReport> {
    let ids = cfg.criteria.clone().unwrap_or_else(|| validation::ALL_CRITERIA.to_vec());
    let overrides = cfg.overrides.clone().unwrap_or_default();
    Ok(validation::run(&ids, &overrides, thread_count()?))
}

pub fn cmd_sequence(cfg: &RunConfig) -> Result<String> {
    let source = cfg.require_sequence()?;
    let n = cfg.prefix_length.unwrap_or(DEFAULT_DUMP_LENGTH);
    Ok(prefix(&source, n)?.to_string())
}
