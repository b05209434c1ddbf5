//! 𝓑-free sets and the Mirsky measure: admissibility, cylinder values,
//! Euler products ζ^𝓑_t(s) and the exact return-word frequencies of the
//! characteristic sequence.
//!
//! For the square-free family the infinite products are split at a prime
//! cutoff `P` with `P² > span(A)`. Beyond it every factor has the same
//! numerator `t`, and the tail is
//! `log ∏_{p>P} (1 − t/p^s) = −Σ_m t^m/m · Σ_{p>P} p^{-ms}`,
//! evaluated through the prime zeta function. The result is accurate to
//! roughly `1e-14` absolute, whatever precision is asked for.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes::{primes_cow, prime_zeta_tail};
use crate::returnwords::{FrequencyMethod, FrequencyTable};
use crate::substanalysis::inclusion_exclusion_frequencies;
use crate::word::Word;

/// Smallest precision this module will promise.
pub const PRECISION_FLOOR: f64 = 1e-14;

/// Prime cutoff used when no cylinder forces a larger one.
pub const DEFAULT_PRIME_CUTOFF: u64 = 1000;

/// A pairwise coprime set `𝓑 = {b₁ < b₂ < …}` with `Σ 1/b_k < ∞`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum BFreeSet {
    /// `{p² : p prime}`: the square-free integers.
    Squarefree,
    /// A finite list of generators.
    Explicit { generators: Vec<u64> },
}

impl BFreeSet {
    pub fn squarefree() -> Self {
        BFreeSet::Squarefree
    }

    /// Validates `b ≥ 2` and pairwise coprimality; sorts the list.
    pub fn explicit(mut generators: Vec<u64>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidBFreeSet("no generators".into()));
        }
        generators.sort_unstable();
        if generators[0] < 2 {
            return Err(Error::InvalidBFreeSet("generators must be at least 2".into()));
        }
        for (i, &a) in generators.iter().enumerate() {
            for &b in &generators[i + 1..] {
                if gcd(a, b) != 1 {
                    return Err(Error::InvalidBFreeSet(format!("{a} and {b} are not coprime")));
                }
            }
        }
        Ok(BFreeSet::Explicit { generators })
    }

    /// Re-run the checks of [`BFreeSet::explicit`] on a deserialized value.
    pub fn validated(self) -> Result<Self> {
        match self {
            BFreeSet::Squarefree => Ok(self),
            BFreeSet::Explicit { generators } => BFreeSet::explicit(generators),
        }
    }

    /// Generators `≤ limit`, increasing.
    pub fn generators_up_to(&self, limit: u64) -> Vec<u64> {
        match self {
            BFreeSet::Squarefree => {
                let mut r = (limit as f64).sqrt() as u64;
                while r * r > limit {
                    r -= 1;
                }
                while (r + 1) * (r + 1) <= limit {
                    r += 1;
                }
                primes_cow(r).iter().map(|&p| p * p).collect()
            }
            BFreeSet::Explicit { generators } => {
                generators.iter().copied().take_while(|&b| b <= limit).collect()
            }
        }
    }

    pub fn first_generator(&self) -> u64 {
        match self {
            BFreeSet::Squarefree => 4,
            BFreeSet::Explicit { generators } => generators[0],
        }
    }

    /// An upper bound on `Σ_{b > cutoff} 1/b`.
    pub fn tail_bound(&self, cutoff: u64) -> f64 {
        match self {
            // Σ_{p > q} 1/p² ≤ Σ_{n > q} 1/n² ≤ 1/q with q = ⌊√cutoff⌋.
            BFreeSet::Squarefree => 1.0 / ((cutoff as f64).sqrt().floor().max(1.0)),
            BFreeSet::Explicit { generators } => {
                generators.iter().filter(|&&b| b > cutoff).map(|&b| 1.0 / b as f64).sum()
            }
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Positions forced to 1 (`a`) and to 0 (`b`). Integers start at 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CylinderSpec {
    pub ones: BTreeSet<u64>,
    pub zeros: BTreeSet<u64>,
}

impl CylinderSpec {
    pub fn new(ones: impl IntoIterator<Item = u64>, zeros: impl IntoIterator<Item = u64>) -> Self {
        CylinderSpec { ones: ones.into_iter().collect(), zeros: zeros.into_iter().collect() }
    }

    /// The cylinder of a word read from position 1: `[1 1 0]` is `A={1,2}, B={3}`.
    pub fn of_word(word: &[u16]) -> Self {
        let mut spec = CylinderSpec::default();
        for (i, &s) in word.iter().enumerate() {
            if s == 0 {
                spec.zeros.insert(i as u64 + 1);
            } else {
                spec.ones.insert(i as u64 + 1);
            }
        }
        spec
    }
}

/// `t(A, b)`: how many classes modulo `b` meet `A`.
pub fn residue_class_count(a: &BTreeSet<u64>, b: u64) -> u64 {
    assert!(b >= 2);
    a.iter().map(|&x| x % b).collect::<HashSet<_>>().len() as u64
}

/// `t(A, b) < b` for every generator. Generators larger than `|A|` cannot
/// be saturated, so only those up to `|A|` are checked.
pub fn is_admissible(a: &BTreeSet<u64>, set: &BFreeSet) -> bool {
    set.generators_up_to(a.len() as u64)
        .into_iter()
        .all(|b| residue_class_count(a, b) < b)
}

fn check_precision(precision: f64) -> Result<()> {
    if !(precision >= PRECISION_FLOOR) {
        return Err(Error::PrecisionUnreachable { requested: precision, floor: PRECISION_FLOOR });
    }
    Ok(())
}

/// `Σ_b log(1 − t(b)/b^{s/2})` over all generators, where `t(b)` equals
/// `t_far` for every generator beyond `√span`. `None` when a factor is ≤ 0.
fn log_euler_product(set: &BFreeSet, s: f64, span: u64, t_far: u64, t_of: &dyn Fn(u64) -> u64) -> Option<f64> {
    match set {
        BFreeSet::Explicit { generators } => {
            let mut acc = 0.0;
            for &b in generators {
                let x = t_of(b) as f64 / (b as f64).powf(s / 2.0);
                if x >= 1.0 {
                    return None;
                }
                acc += (-x).ln_1p();
            }
            Some(acc)
        }
        BFreeSet::Squarefree => {
            let mut cutoff = DEFAULT_PRIME_CUTOFF;
            while cutoff * cutoff <= span {
                cutoff *= 2;
            }
            let primes = primes_cow(cutoff);
            let mut head = 0.0;
            for &p in primes.iter().rev() {
                let x = t_of(p * p) as f64 / (p as f64).powf(s);
                if x >= 1.0 {
                    return None;
                }
                head += (-x).ln_1p();
            }
            let t = t_far as f64;
            let mut tail = 0.0;
            let mut tm = 1.0;
            for m in 1..200 {
                tm *= t;
                let term = tm / m as f64 * prime_zeta_tail(m as f64 * s, cutoff);
                tail += term;
                if term < 1e-20 {
                    break;
                }
            }
            Some(head - tail)
        }
    }
}

/// `ν(C¹_A) = ∏_k (1 − t(A, b_k)/b_k)`, zero when `A` is not admissible.
pub fn cylinder_measure_positive(a: &BTreeSet<u64>, set: &BFreeSet, precision: f64) -> Result<f64> {
    check_precision(precision)?;
    if a.is_empty() {
        return Ok(1.0);
    }
    if !is_admissible(a, set) {
        return Ok(0.0);
    }
    let span = a.last().unwrap() - a.first().unwrap();
    let n = a.len() as u64;
    let log = log_euler_product(set, 2.0, span, n, &|b| residue_class_count(a, b))
        .expect("admissible sets give positive factors");
    Ok(log.exp())
}

/// `ν(C_{A,B}) = Σ_{A⊆D⊆A∪B} (−1)^{|D∖A|} ν(C¹_D)`.
pub fn cylinder_measure(spec: &CylinderSpec, set: &BFreeSet, precision: f64) -> Result<f64> {
    check_precision(precision)?;
    if spec.ones.iter().any(|x| spec.zeros.contains(x)) || spec.ones.contains(&0) || spec.zeros.contains(&0) {
        return Err(Error::InvalidCylinder(format!("{spec:?}")));
    }
    let free: Vec<u64> = spec.zeros.iter().copied().collect();
    if free.len() > 20 {
        return Err(Error::TooManyFreePositions(free.len()));
    }
    let mut total = 0.0;
    for mask in 0u32..(1u32 << free.len()) {
        let mut d = spec.ones.clone();
        for (i, &x) in free.iter().enumerate() {
            if mask >> i & 1 == 1 {
                d.insert(x);
            }
        }
        let sign = if mask.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * cylinder_measure_positive(&d, set, precision)?;
    }
    Ok(total)
}

/// `ζ^𝓑_t(s) = ∏_k (1 − t/b_k^{s/2})^{-1}`. For the square-free family this
/// is `ζ_t(s) = ∏_p (1 − t/p^s)^{-1}`.
pub fn euler_zeta(t: u64, s: f64, set: &BFreeSet, precision: f64) -> Result<f64> {
    check_precision(precision)?;
    if matches!(set, BFreeSet::Squarefree) && s <= 1.0 {
        return Err(Error::Divergent(format!("Σ p^-s diverges for s = {s}")));
    }
    let log = log_euler_product(set, s, 0, t, &|_| t)
        .ok_or_else(|| Error::Divergent(format!("a factor 1 - {t}/b^(s/2) is not positive at s = {s}")))?;
    Ok((-log).exp())
}

/// Exact return-word frequencies `F_{1^t}`, `1 ≤ t < b₁`, of the 𝓑-free
/// characteristic sequence.
///
/// Two routes are computed: the alternating sum over chains started from
/// `ν([1^t]) = 1/ζ^𝓑_t(2)`, and the telescoping difference
/// `F_{1^t} = ν([1^t 0]) − ν([1^{t+1} 0])` of cylinder measures. They must
/// agree within `10 · precision`.
pub fn bfree_exact_frequencies(set: &BFreeSet, precision: f64) -> Result<FrequencyTable> {
    check_precision(precision)?;
    let b1 = set.first_generator();
    let words: Vec<Word> = (1..b1).map(|t| Word::repeat(1, t as usize)).collect();
    let mut cyl = BTreeMap::new();
    for w in &words {
        cyl.insert(w.clone(), 1.0 / euler_zeta(w.len() as u64, 2.0, set, precision)?);
    }
    let alternating = inclusion_exclusion_frequencies(&cyl, &words)?;
    let mut exact = BTreeMap::new();
    for w in &words {
        let t = w.len() as u64;
        let a = cylinder_measure(&CylinderSpec::new(1..=t, [t + 1]), set, precision)?;
        let b = cylinder_measure(&CylinderSpec::new(1..=t + 1, [t + 2]), set, precision)?;
        let telescoped = a - b;
        let alt = alternating[w];
        if (alt - telescoped).abs() > 10.0 * precision {
            return Err(Error::MethodDisagreement { word: w.to_string(), first: alt, second: telescoped });
        }
        exact.insert(w.clone(), alt);
    }
    let rho0 = 1.0 - 1.0 / euler_zeta(1, 2.0, set, precision)?;
    Ok(FrequencyTable { rho0, exact, method: FrequencyMethod::Mirsky })
}

/// `ν([0^r])`, the frequency of a run of `r` consecutive non-𝓑-free integers.
pub fn zero_run_measure(r: u64, set: &BFreeSet, precision: f64) -> Result<f64> {
    cylinder_measure(&CylinderSpec::new([], 1..=r), set, precision)
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: f64 = 1e-12;

    fn set(xs: &[u64]) -> BTreeSet<u64> {
        xs.iter().copied().collect()
    }

    #[test]
    fn residue_classes() {
        assert_eq!(residue_class_count(&set(&[1, 2, 3]), 4), 3);
        assert_eq!(residue_class_count(&set(&[1, 5]), 4), 1);
        assert_eq!(residue_class_count(&set(&[1, 2, 3, 4]), 4), 4);
    }

    #[test]
    fn admissibility() {
        let sf = BFreeSet::squarefree();
        assert!(is_admissible(&set(&[1, 2, 3]), &sf));
        assert!(!is_admissible(&set(&[1, 2, 3, 4]), &sf));
        assert!(is_admissible(&set(&[]), &sf));
        // 1..9 covers every class mod 4 as well
        assert!(!is_admissible(&(1..=9).collect(), &sf));
        // {1,2,3,5,6,7} misses 0 mod 4 and 0 mod 9 and so on
        assert!(is_admissible(&set(&[1, 2, 3, 5, 6, 7]), &sf));
    }

    #[test]
    fn explicit_sets_are_validated() {
        assert!(BFreeSet::explicit(vec![4, 6]).is_err());
        assert!(BFreeSet::explicit(vec![1, 3]).is_err());
        assert!(BFreeSet::explicit(vec![]).is_err());
        assert_eq!(BFreeSet::explicit(vec![9, 4]).unwrap().first_generator(), 4);
    }

    #[test]
    fn squarefree_generators() {
        assert_eq!(BFreeSet::squarefree().generators_up_to(50), vec![4, 9, 25, 49]);
        assert_eq!(BFreeSet::squarefree().generators_up_to(48), vec![4, 9, 25]);
    }

    #[test]
    fn euler_zeta_reference_values() {
        let sf = BFreeSet::squarefree();
        let pi2_6 = std::f64::consts::PI.powi(2) / 6.0;
        assert!((euler_zeta(1, 2.0, &sf, P).unwrap() - pi2_6).abs() < 1e-13);
        assert!((euler_zeta(2, 2.0, &sf, P).unwrap() - 3.09948639430177005847).abs() < 1e-13);
        assert!((euler_zeta(3, 2.0, &sf, P).unwrap() - 7.96895417183238622169).abs() < 1e-12);
        assert!(matches!(euler_zeta(4, 2.0, &sf, P), Err(Error::Divergent(_))));
        assert!(matches!(euler_zeta(1, 1.0, &sf, P), Err(Error::Divergent(_))));
        assert!(matches!(euler_zeta(1, 2.0, &sf, 1e-20), Err(Error::PrecisionUnreachable { .. })));
    }

    #[test]
    fn positive_cylinders() {
        let sf = BFreeSet::squarefree();
        let v1 = cylinder_measure_positive(&set(&[1]), &sf, P).unwrap();
        assert!((v1 - 6.0 / std::f64::consts::PI.powi(2)).abs() < 1e-14);
        assert_eq!(cylinder_measure_positive(&set(&[]), &sf, P).unwrap(), 1.0);
        let v123 = cylinder_measure_positive(&set(&[1, 2, 3]), &sf, P).unwrap();
        assert!((v123 - 0.12548698090580929833).abs() < 1e-13);
        assert_eq!(cylinder_measure_positive(&set(&[1, 2, 3, 4]), &sf, P).unwrap(), 0.0);
    }

    #[test]
    fn spread_out_cylinder_matches_direct_product() {
        // A = {1, 2, 50}: classes collapse for small p² only.
        let sf = BFreeSet::squarefree();
        let a = set(&[1, 2, 50]);
        let got = cylinder_measure_positive(&a, &sf, P).unwrap();
        let mut direct = 1.0;
        for &p in crate::primes::small_primes() {
            let b = p * p;
            direct *= 1.0 - residue_class_count(&a, b) as f64 / b as f64;
        }
        // primes beyond the shared table change the product by < 3e-5 relative
        assert!((got / direct - 1.0).abs() < 3e-5, "{got} {direct}");
        assert!(got < direct);
    }

    #[test]
    fn general_cylinders() {
        let sf = BFreeSet::squarefree();
        let v10 = cylinder_measure(&CylinderSpec::new([1], [2]), &sf, P).unwrap();
        assert!((v10 - 0.28529300291478195808).abs() < 1e-13);
        let v110 = cylinder_measure(&CylinderSpec::new([1, 2], [3]), &sf, P).unwrap();
        assert!((v110 - 0.19714711803343537225).abs() < 1e-13);
        assert_eq!(cylinder_measure(&CylinderSpec::default(), &sf, P).unwrap(), 1.0);
        let too_many = CylinderSpec::new([], 1..=21);
        assert_eq!(cylinder_measure(&too_many, &sf, P), Err(Error::TooManyFreePositions(21)));
        assert!(cylinder_measure(&CylinderSpec::new([1], [1]), &sf, P).is_err());
    }

    #[test]
    fn cylinders_of_all_words_sum_to_one() {
        let sf = BFreeSet::squarefree();
        for len in 1..=5usize {
            let mut total = 0.0;
            for bits in 0..(1u32 << len) {
                let word: Vec<u16> = (0..len).map(|i| (bits >> i & 1) as u16).collect();
                total += cylinder_measure(&CylinderSpec::of_word(&word), &sf, P).unwrap();
            }
            assert!((total - 1.0).abs() < 1e-12, "{len}: {total}");
        }
    }

    #[test]
    fn squarefree_exact_frequencies() {
        let table = bfree_exact_frequencies(&BFreeSet::squarefree(), P).unwrap();
        assert_eq!(table.exact.len(), 3);
        let f = |s: &str| table.exact[&crate::word::w(s)];
        assert!((f("1") - 0.08814588488134658584).abs() < 1e-13);
        assert!((f("11") - 0.07166013712762607391).abs() < 1e-13);
        assert!((f("111") - 0.12548698090580929833).abs() < 1e-13);
        assert!((table.rho0 - (1.0 - 0.607927101854026628)).abs() < 1e-14);
        // Σ (t+1) F_{1^t} ≤ 1
        let s: f64 = table.exact.iter().map(|(w, f)| (w.len() + 1) as f64 * f).sum();
        assert!(s <= 1.0 + 1e-12);
    }

    #[test]
    fn explicit_set_frequencies_match_brute_force() {
        // 𝓑 = {4, 9, 25}: the sequence is periodic with period 900.
        let set = BFreeSet::explicit(vec![4, 9, 25]).unwrap();
        let table = bfree_exact_frequencies(&set, P).unwrap();
        let eta = crate::sequences::bfree_characteristic(&set, 900 * 41);
        for (w, f) in &table.exact {
            let pattern = Word::repeat(0, 1).concat(w).concat(&[0]);
            // occurrences starting in [0, 36000)
            let count = pattern.occurrences_in(&eta[..900 * 40 + pattern.len() - 1]) as f64;
            assert!((count / (900.0 * 40.0) - f).abs() < 1e-12, "{w}: {count} {f}");
        }
    }

    #[test]
    fn measures_decrease_under_inclusion() {
        let sf = BFreeSet::squarefree();
        let chain = [vec![1], vec![1, 2], vec![1, 2, 3], vec![1, 2, 3, 7], vec![1, 2, 3, 7, 11]];
        let vals: Vec<f64> = chain
            .iter()
            .map(|a| cylinder_measure_positive(&set(a), &sf, P).unwrap())
            .collect();
        assert!(vals.windows(2).all(|w| w[1] <= w[0]), "{vals:?}");
    }
}
