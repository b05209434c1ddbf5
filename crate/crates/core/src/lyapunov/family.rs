use nalgebra::DMatrix;

use crate::error::{Error, Result};

use super::{CMatrix, CVector, C64};

/// Relative Frobenius residual allowed when a dense `A₀` is factored.
pub const RANK_ONE_TOLERANCE: f64 = 1e-10;
/// Matrices with a larger 2-norm condition number count as singular.
pub const CONDITION_LIMIT: f64 = 1e12;

/// `uv′` with `v′` the plain transpose (no conjugation).
#[derive(Clone, Debug, PartialEq)]
pub struct RankOneMatrix {
    pub u: CVector,
    pub v: CVector,
    lambda: C64,
}

impl RankOneMatrix {
    pub fn new(u: CVector, v: CVector) -> Result<Self> {
        if u.len() != v.len() || u.is_empty() {
            return Err(Error::DimensionMismatch(format!("u has {} entries, v has {}", u.len(), v.len())));
        }
        if u.iter().all(|x| *x == C64::new(0.0, 0.0)) || v.iter().all(|x| *x == C64::new(0.0, 0.0)) {
            return Err(Error::InvalidFamily("A0 = uv' must be nonzero".into()));
        }
        let lambda = v.transpose() * &u;
        Ok(RankOneMatrix { u, v, lambda: lambda[(0, 0)] })
    }

    pub fn from_real(u: &[f64], v: &[f64]) -> Result<Self> {
        RankOneMatrix::new(super::cvec(u), super::cvec(v))
    }

    /// `v′u`.
    pub fn lambda(&self) -> C64 {
        self.lambda
    }

    pub fn dimension(&self) -> usize {
        self.u.len()
    }

    pub fn to_dense(&self) -> CMatrix {
        &self.u * self.v.transpose()
    }

    /// `‖uv′‖_F = ‖u‖₂‖v‖₂`.
    pub fn frobenius_norm(&self) -> f64 {
        self.u.norm() * self.v.norm()
    }

    /// Factor a dense matrix through its largest entry, rejecting it when
    /// `‖A − uv′‖_F > tol·‖A‖_F`.
    pub fn from_dense(a: &CMatrix, tol: f64) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch("A0 is not square".into()));
        }
        let (mut bi, mut bj, mut best) = (0, 0, 0.0);
        for i in 0..a.nrows() {
            for j in 0..a.ncols() {
                let m = a[(i, j)].norm();
                if m > best {
                    (bi, bj, best) = (i, j, m);
                }
            }
        }
        if best == 0.0 {
            return Err(Error::InvalidFamily("A0 is the zero matrix".into()));
        }
        let pivot = a[(bi, bj)];
        let u = a.column(bj).into_owned();
        let v = a.row(bi).transpose().map(|x| x / pivot);
        let r = RankOneMatrix::new(u, v)?;
        let residual = (a - r.to_dense()).norm() / a.norm();
        if residual > tol {
            return Err(Error::RankOneViolation(residual));
        }
        Ok(r)
    }
}

/// `{A₀ = uv′, A₁, …, A_{m−1}}`, all `d × d`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixFamily {
    a0: RankOneMatrix,
    others: Vec<CMatrix>,
    dense: Vec<CMatrix>,
    all_nonnegative: bool,
    others_invertible: bool,
    real: bool,
}

fn is_real(m: &CMatrix) -> bool {
    m.iter().all(|x| x.im == 0.0)
}

fn is_nonnegative(m: &CMatrix) -> bool {
    m.iter().all(|x| x.im == 0.0 && x.re >= 0.0)
}

fn is_invertible(m: &CMatrix) -> bool {
    let sv = m.clone().singular_values();
    let max = sv.max();
    let min = sv.min();
    max > 0.0 && min > 0.0 && max / min < CONDITION_LIMIT
}

impl MatrixFamily {
    pub fn new(a0: RankOneMatrix, others: Vec<CMatrix>) -> Result<Self> {
        let d = a0.dimension();
        if others.is_empty() {
            return Err(Error::InvalidFamily("need at least one matrix besides A0".into()));
        }
        for (j, m) in others.iter().enumerate() {
            if m.nrows() != d || m.ncols() != d {
                return Err(Error::DimensionMismatch(format!(
                    "A{} is {}x{}, A0 is {d}x{d}",
                    j + 1,
                    m.nrows(),
                    m.ncols()
                )));
            }
            if m.iter().any(|x| !x.re.is_finite() || !x.im.is_finite()) {
                return Err(Error::InvalidFamily(format!("A{} has a non-finite entry", j + 1)));
            }
        }
        let a0_dense = a0.to_dense();
        let all_nonnegative = is_nonnegative(&a0_dense) && others.iter().all(is_nonnegative);
        let real = is_real(&a0_dense) && others.iter().all(is_real);
        let others_invertible = others.iter().all(is_invertible);
        let mut dense = vec![a0_dense];
        dense.extend(others.iter().cloned());
        Ok(MatrixFamily { a0, others, dense, all_nonnegative, others_invertible, real })
    }

    /// Real convenience constructor.
    pub fn from_real(u: &[f64], v: &[f64], others: &[&[&[f64]]]) -> Result<Self> {
        let a0 = RankOneMatrix::from_real(u, v)?;
        MatrixFamily::new(a0, others.iter().map(|m| super::cmat(m)).collect())
    }

    pub fn dimension(&self) -> usize {
        self.a0.dimension()
    }

    /// `m`, the number of matrices.
    pub fn count(&self) -> usize {
        self.others.len() + 1
    }

    pub fn a0(&self) -> &RankOneMatrix {
        &self.a0
    }

    /// `A_j` for `j ≥ 1`.
    pub fn other(&self, j: usize) -> &CMatrix {
        &self.others[j - 1]
    }

    /// Dense `A_j` for any `j`, `A₀` included.
    pub fn dense(&self, j: usize) -> &CMatrix {
        &self.dense[j]
    }

    pub fn all_dense(&self) -> &[CMatrix] {
        &self.dense
    }

    pub fn all_nonnegative(&self) -> bool {
        self.all_nonnegative
    }

    pub fn others_invertible(&self) -> bool {
        self.others_invertible
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    /// Real parts of the dense matrices, for real families.
    pub fn real_dense(&self) -> Option<Vec<DMatrix<f64>>> {
        self.real.then(|| self.dense.iter().map(|m| m.map(|x| x.re)).collect())
    }

    /// `max_j ‖A_j‖₂` over `j ≥ 1`.
    pub fn max_other_norm(&self) -> f64 {
        self.others
            .iter()
            .map(|m| m.clone().singular_values().max())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lyapunov::{cmat, cvec};
    use proptest::prelude::*;

    #[test]
    fn factor_dense_rank_one() {
        let a = cmat(&[&[2.0, 4.0], &[1.0, 2.0]]);
        let r = RankOneMatrix::from_dense(&a, RANK_ONE_TOLERANCE).unwrap();
        assert!((r.to_dense() - &a).norm() < 1e-14);
        let b = cmat(&[&[1.0, 0.0], &[0.0, 1.0]]);
        assert!(matches!(RankOneMatrix::from_dense(&b, RANK_ONE_TOLERANCE), Err(Error::RankOneViolation(_))));
    }

    #[test]
    fn family_flags() {
        let f = MatrixFamily::from_real(&[1.0, 1.0], &[1.0, 1.0], &[&[&[2.0, 1.0], &[1.0, 1.0]]]).unwrap();
        assert!(f.all_nonnegative() && f.others_invertible() && f.is_real());
        assert_eq!(f.count(), 2);
        let g = MatrixFamily::from_real(&[1.0, 0.0], &[1.0, 0.0], &[&[&[1.0, 1.0], &[1.0, 1.0]]]).unwrap();
        assert!(!g.others_invertible());
        let h = MatrixFamily::from_real(&[1.0, 0.0], &[1.0, 0.0], &[&[&[0.0, -1.0], &[1.0, 0.0]]]).unwrap();
        assert!(!h.all_nonnegative() && h.others_invertible());
        assert!(MatrixFamily::from_real(&[1.0, 0.0], &[1.0, 0.0], &[&[&[1.0]]]).is_err());
        assert!(MatrixFamily::from_real(&[1.0, 0.0], &[1.0, 0.0], &[]).is_err());
    }

    fn vecs() -> impl Strategy<Value = (Vec<f64>, Vec<f64>, Vec<f64>, Vec<f64>)> {
        (1usize..6).prop_flat_map(|d| {
            let v = || proptest::collection::vec(-2.0f64..2.0, d);
            (v(), v(), v(), v())
        })
    }

    proptest! {
        #[test]
        fn rank_one_algebra((ur, ui, vr, vi) in vecs()) {
            let u = CVector::from_iterator(ur.len(), ur.iter().zip(&ui).map(|(a, b)| C64::new(*a, *b)));
            let v = CVector::from_iterator(vr.len(), vr.iter().zip(&vi).map(|(a, b)| C64::new(*a, *b)));
            prop_assume!(u.norm() > 1e-3 && v.norm() > 1e-3);
            let r = RankOneMatrix::new(u, v).unwrap();
            let a = r.to_dense();
            let fro = a.norm();
            prop_assert!((fro - r.frobenius_norm()).abs() <= 1e-12 * fro);
            let mut power = a.clone();
            for t in 1..=6i32 {
                let expect = &a * r.lambda().powi(t - 1);
                // relative to ‖u‖^t ‖v‖^t, the size of the factors
                let scale = fro.powi(t);
                prop_assert!((&power - &expect).norm() <= 1e-12 * scale, "t = {}", t);
                power = &power * &a;
            }
        }

        #[test]
        fn dense_factorization_round_trip(u in proptest::collection::vec(-2.0f64..2.0, 3), v in proptest::collection::vec(-2.0f64..2.0, 3)) {
            let r = RankOneMatrix::from_real(&u, &v);
            prop_assume!(r.is_ok());
            let a = r.unwrap().to_dense();
            prop_assume!(a.norm() > 1e-6);
            let back = RankOneMatrix::from_dense(&a, RANK_ONE_TOLERANCE).unwrap();
            prop_assert!((back.to_dense() - &a).norm() <= 1e-12 * a.norm());
        }
    }

    #[test]
    fn frobenius_identity_on_fixed_vectors() {
        let r = RankOneMatrix::new(cvec(&[1.0, 2.0, 2.0]), cvec(&[3.0, 0.0, 4.0])).unwrap();
        assert!((r.frobenius_norm() - 15.0).abs() < 1e-14);
        assert_eq!(r.lambda(), C64::new(11.0, 0.0));
    }
}
