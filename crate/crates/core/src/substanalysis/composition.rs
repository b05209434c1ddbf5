use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::substitution::Substitution;

pub const PERRON_MAX_ITERATIONS: usize = 100_000;
const PERRON_TOLERANCE: f64 = 1e-12;

/// `m[α][β]` = number of `α` in `ζ(β)`. Stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionMatrix {
    pub entries: Vec<Vec<u64>>,
}

impl CompositionMatrix {
    pub fn from_rows(entries: Vec<Vec<u64>>) -> Self {
        let s = entries.len();
        assert!(entries.iter().all(|r| r.len() == s), "square matrix");
        CompositionMatrix { entries }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn column_sums(&self) -> Vec<u64> {
        (0..self.size()).map(|b| self.entries.iter().map(|r| r[b]).sum()).collect()
    }

    pub fn mul(&self, other: &CompositionMatrix) -> CompositionMatrix {
        let s = self.size();
        let mut out = vec![vec![0u64; s]; s];
        for i in 0..s {
            for k in 0..s {
                let a = self.entries[i][k];
                if a == 0 {
                    continue;
                }
                for j in 0..s {
                    out[i][j] += a * other.entries[k][j];
                }
            }
        }
        CompositionMatrix { entries: out }
    }
}

pub fn composition_matrix(sub: &Substitution) -> CompositionMatrix {
    let s = sub.alphabet_size();
    let mut m = vec![vec![0u64; s]; s];
    for (b, img) in sub.images().iter().enumerate() {
        for &a in img.iter() {
            m[a as usize][b] += 1;
        }
    }
    CompositionMatrix { entries: m }
}

fn bool_mul(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let s = a.len();
    let mut out = vec![vec![false; s]; s];
    for i in 0..s {
        for k in 0..s {
            if a[i][k] {
                for j in 0..s {
                    out[i][j] |= b[k][j];
                }
            }
        }
    }
    out
}

/// `M^N > 0` with Wielandt's exponent `N = s² − 2s + 2`.
pub fn is_primitive(m: &CompositionMatrix) -> bool {
    let s = m.size();
    if s == 0 {
        return false;
    }
    let mut exp = s * s + 2 - 2 * s;
    let mut base: Vec<Vec<bool>> = m.entries.iter().map(|r| r.iter().map(|&x| x > 0).collect()).collect();
    let mut acc: Option<Vec<Vec<bool>>> = None;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(a) => bool_mul(&a, &base),
            });
        }
        exp >>= 1;
        if exp > 0 {
            base = bool_mul(&base, &base);
        }
    }
    acc.expect("exponent ≥ 1").iter().all(|r| r.iter().all(|&x| x))
}

/// Perron eigenvalue and probability eigenvector of a primitive matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PerronData {
    pub eigenvalue: f64,
    pub probability_vector: Vec<f64>,
    pub iterations: usize,
    pub residual: f64,
}

/// Power iteration from the uniform vector. Stops once
/// `‖Mv − ρv‖∞ ≤ 1e-12·ρ` and the residual has stopped improving.
pub fn perron(m: &CompositionMatrix) -> Result<PerronData> {
    if !is_primitive(m) {
        return Err(Error::NotPrimitive);
    }
    let s = m.size();
    let a: Vec<Vec<f64>> = m.entries.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
    let apply = |v: &[f64]| -> Vec<f64> {
        a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
    };
    let mut v = vec![1.0 / s as f64; s];
    let mut best: Option<PerronData> = None;
    let mut polish = 0usize;
    for it in 1..=PERRON_MAX_ITERATIONS {
        let mv = apply(&v);
        let rho: f64 = mv.iter().sum();
        let residual = mv.iter().zip(&v).map(|(x, y)| (x - rho * y).abs()).fold(0.0, f64::max);
        let improved = best.as_ref().is_none_or(|b| residual < b.residual);
        if improved {
            best = Some(PerronData { eigenvalue: rho, probability_vector: v.clone(), iterations: it, residual });
        }
        if residual <= PERRON_TOLERANCE * rho {
            polish += 1;
            if !improved || polish > 50 || residual <= 4.0 * f64::EPSILON * rho {
                break;
            }
        }
        v = mv.iter().map(|x| x / rho).collect();
    }
    let best = best.expect("at least one iteration");
    if best.residual > PERRON_TOLERANCE * best.eigenvalue {
        return Err(Error::NoConvergence { iterations: PERRON_MAX_ITERATIONS, residual: best.residual });
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cm(rows: &[&[u64]]) -> CompositionMatrix {
        CompositionMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect())
    }

    #[test]
    fn known_matrices() {
        assert_eq!(composition_matrix(&Substitution::fibonacci()), cm(&[&[1, 1], &[1, 0]]));
        assert_eq!(
            composition_matrix(&Substitution::tribonacci()),
            cm(&[&[1, 1, 1], &[1, 0, 0], &[0, 1, 0]])
        );
        let id = Substitution::from_strs(&["0", "1", "2"]).unwrap();
        assert_eq!(composition_matrix(&id), cm(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        let ex = Substitution::from_strs(&["01", "100110"]).unwrap();
        assert_eq!(composition_matrix(&ex), cm(&[&[1, 3], &[1, 3]]));
    }

    #[test]
    fn primitivity() {
        assert!(is_primitive(&cm(&[&[1, 1], &[1, 0]])));
        assert!(!is_primitive(&cm(&[&[1, 0], &[0, 1]])));
        assert!(is_primitive(&cm(&[&[1, 3], &[1, 3]])));
        // irreducible but periodic
        assert!(!is_primitive(&cm(&[&[0, 1], &[1, 0]])));
        assert!(is_primitive(&cm(&[&[2]])));
        // Wielandt's extremal matrix needs the full exponent (s−1)² + 1 = 10
        let w = cm(&[&[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 1, 0, 0]]);
        assert!(is_primitive(&w));
    }

    #[test]
    fn tribonacci_perron() {
        let p = perron(&composition_matrix(&Substitution::tribonacci())).unwrap();
        assert!((p.eigenvalue - 1.839286755214161).abs() < 1e-12);
        let r = p.eigenvalue;
        let v = &p.probability_vector;
        assert!((v[0] - 1.0 / r).abs() < 1e-12);
        assert!((v[1] - 1.0 / (r * r)).abs() < 1e-12);
        assert!((v[2] - 1.0 / (r * r * r)).abs() < 1e-12);
    }

    #[test]
    fn fibonacci_perron() {
        let p = perron(&composition_matrix(&Substitution::fibonacci())).unwrap();
        let s5 = 5f64.sqrt();
        assert!((p.eigenvalue - (1.0 + s5) / 2.0).abs() < 1e-12);
        assert!((p.probability_vector[0] - (s5 - 1.0) / 2.0).abs() < 1e-12);
        assert!((p.probability_vector[1] - (3.0 - s5) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn perron_rejects_reducible() {
        assert_eq!(perron(&cm(&[&[1, 0], &[0, 1]])), Err(Error::NotPrimitive));
    }

    fn random_sub() -> impl Strategy<Value = Substitution> {
        (1usize..5).prop_flat_map(|s| {
            proptest::collection::vec(proptest::collection::vec(0..s as u16, 1..6), s)
                .prop_map(|imgs| Substitution::new(imgs.into_iter().map(Into::into).collect(), 0).unwrap())
        })
    }

    proptest! {
        #[test]
        fn matrix_of_square_is_square_of_matrix(sub in random_sub()) {
            let m = composition_matrix(&sub);
            let imgs: Vec<_> = (0..sub.alphabet_size()).map(|a| sub.iterate(&[a as u16], 2)).collect();
            let sq = Substitution::new(imgs, 0).unwrap();
            prop_assert_eq!(composition_matrix(&sq), m.mul(&m));
            let lens: Vec<u64> = sub.images().iter().map(|w| w.len() as u64).collect();
            prop_assert_eq!(m.column_sums(), lens);
        }

        #[test]
        fn perron_residual_holds(sub in random_sub()) {
            let m = composition_matrix(&sub);
            if let Ok(p) = perron(&m) {
                prop_assert!(p.residual <= 1e-12 * p.eigenvalue);
                prop_assert!(p.probability_vector.iter().all(|&x| x >= 0.0));
                prop_assert!((p.probability_vector.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            } else {
                prop_assert!(!is_primitive(&m));
            }
        }
    }
}
