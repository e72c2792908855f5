//! Exterior powers: compound matrices, wedge Gram matrices, the induced map
//! on similitudes, and multipliers.
//!
//! The k-th output module is `V0^{(1-k)} (x) Lambda^k V1` with basis
//! `e0^{1-k} (x) e_I` for `I` in [`SubsetIndex`] order. On it the form is
//! `Psi0^{1-k} det(Psi1[I, J])` and a pair `(gamma0, gamma1)` acts by
//! `gamma0^{1-k} Lambda^k gamma1`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::cyclofield::{CycloElement, CycloField, EmbeddingId};
use crate::error::check_range;
use crate::hodge::{hermitian_at, HermitianModule};
use crate::matrix::Matrix;
use crate::par::Exec;
use crate::ring::{Field, Ring};
use crate::subsets::SubsetIndex;
use crate::{Error, Result};

/// Basis `e0^{1-k} (x) e_{i1} ^ ... ^ e_{ik}` of the k-th output module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeBasis {
    index: SubsetIndex,
}

impl WedgeBasis {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        Ok(WedgeBasis {
            index: SubsetIndex::new(n, k)?,
        })
    }

    pub fn index(&self) -> &SubsetIndex {
        &self.index
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn label(&self, i: usize) -> String {
        let k = self.index.k() as i64;
        let wedge: Vec<String> = self.index.get(i).iter().map(|e| format!("e{e}")).collect();
        let wedge = if wedge.is_empty() {
            "1".to_string()
        } else {
            wedge.join("^")
        };
        match 1 - k {
            0 => wedge,
            1 => format!("e0 (x) {wedge}"),
            p => format!("e0^{p} (x) {wedge}"),
        }
    }
}

/// Matrix of k-by-k minors in [`SubsetIndex`] order.
pub fn compound<R: Ring>(ring: &R, m: &Matrix<R::Elem>, k: usize) -> Result<Matrix<R::Elem>> {
    compound_with(ring, m, k, Exec::default())
}

pub fn compound_with<R: Ring>(
    ring: &R,
    m: &Matrix<R::Elem>,
    k: usize,
    exec: Exec,
) -> Result<Matrix<R::Elem>> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch(format!(
            "compound of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    check_range(k, 0, n)?;
    let idx = SubsetIndex::new(n, k)?;
    let size = idx.len();
    let positions: Vec<Vec<usize>> = (0..size).map(|i| idx.positions(i)).collect();
    let entries = exec.map(size * size, |t| {
        let (i, j) = (t / size, t % size);
        m.select(&positions[i], &positions[j]).det(ring)
    });
    Matrix::from_vec(size, size, entries)
}

fn scalar_power(field: &CycloField, x: &CycloElement, e: i64) -> Result<CycloElement> {
    if x.is_zero() {
        return Err(Error::ZeroScalar);
    }
    field.powi(x, e).ok_or(Error::ZeroScalar)
}

/// `Psi0^{1-k} Lambda^k Psi1`.
pub fn wedge_gram(
    psi0: &CycloElement,
    psi1: &Matrix<CycloElement>,
    k: usize,
) -> Result<Matrix<CycloElement>> {
    let field = psi0.field();
    let c = scalar_power(field, psi0, 1 - k as i64)?;
    Ok(compound(field, psi1, k)?.scale(field, &c))
}

/// The k-th output module built from a rank-one and a rank-n module.
pub fn wedge_module(
    v0: &HermitianModule,
    v1: &HermitianModule,
    k: usize,
) -> Result<HermitianModule> {
    if v0.rank() != 1 {
        return Err(Error::ShapeMismatch(format!(
            "first module has rank {}, expected 1",
            v0.rank()
        )));
    }
    let w = wedge_gram(&v0.gram()[(0, 0)], v1.gram(), k)?;
    HermitianModule::new(v1.field(), w)
}

/// `+1` if `W^dagger = W`, `-1` if `W^dagger = -W`, `None` otherwise
/// (or for the zero matrix, where both hold).
pub fn adjoint_sign(field: &CycloField, w: &Matrix<CycloElement>) -> Option<i8> {
    if w.is_zero(field) {
        return None;
    }
    let adj = w.conj_transpose(field);
    if adj == *w {
        Some(1)
    } else if adj == w.neg(field) {
        Some(-1)
    } else {
        None
    }
}

/// Closed form for the adjoint sign of a wedge Gram: `conj(Psi0)^{1-k}`
/// contributes `(-1)^{1-k}` and `Lambda^k(Psi1^dagger)` contributes
/// `(-1)^k`, so the output is skew-Hermitian for every `k`.
pub fn expected_adjoint_sign(_k: usize) -> i8 {
    -1
}

/// `gamma0^{1-k} Lambda^k gamma1`.
pub fn g_k(
    gamma0: &CycloElement,
    gamma1: &Matrix<CycloElement>,
    k: usize,
) -> Result<Matrix<CycloElement>> {
    let field = gamma0.field();
    let c = scalar_power(field, gamma0, 1 - k as i64)?;
    Ok(compound(field, gamma1, k)?.scale(field, &c))
}

/// The `mu` with `gamma^dagger Psi gamma = mu Psi`, compared exactly.
pub fn multiplier(
    gamma: &Matrix<CycloElement>,
    psi: &Matrix<CycloElement>,
) -> Result<CycloElement> {
    if !gamma.is_square() || !psi.is_square() || gamma.rows() != psi.rows() {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} map against a {}x{} form",
            gamma.rows(),
            gamma.cols(),
            psi.rows(),
            psi.cols()
        )));
    }
    let Some(first) = psi.entries().first() else {
        return Err(Error::DegenerateForm);
    };
    let field = first.field().clone();
    let pos = psi
        .entries()
        .iter()
        .position(|e| !e.is_zero())
        .ok_or(Error::DegenerateForm)?;
    let pulled = gamma
        .conj_transpose(&field)
        .mul(&field, psi)
        .mul(&field, gamma);
    let (i, j) = (pos / psi.cols(), pos % psi.cols());
    let mu = field
        .div(&pulled[(i, j)], &psi[(i, j)])
        .ok_or(Error::DegenerateForm)?;
    if pulled != psi.scale(&field, &mu) {
        return Err(Error::NotASimilitude);
    }
    Ok(mu)
}

/// Outcome of the positivity check for one wedge Gram at one embedding.
#[derive(Clone, Debug, PartialEq)]
pub struct PositivityReport {
    pub sigma: EmbeddingId,
    /// Sign of `i Psi0_sigma`.
    pub sign0: i8,
    /// Sign of the definite `i Psi1_sigma`.
    pub sign1: i8,
    /// `sign0^{1-k} sign1^k`, the sign of `i W_sigma`.
    pub orientation: i8,
    /// Smallest eigenvalue of `orientation * i W_sigma`.
    pub min_eigenvalue: f64,
    /// Largest absolute eigenvalue of `i W_sigma`.
    pub max_abs_eigenvalue: f64,
    /// Max entry difference between `i W_sigma` and
    /// `(i Psi0_sigma)^{1-k} Lambda^k (i Psi1_sigma)`.
    pub identity_residual: f64,
}

impl PositivityReport {
    pub fn relative_margin(&self) -> f64 {
        self.min_eigenvalue / self.max_abs_eigenvalue
    }

    pub fn positive(&self, tolerance: f64) -> bool {
        self.relative_margin() > tolerance
    }
}

fn eigenvalues(h: DMatrix<Complex64>) -> Vec<f64> {
    if h.nrows() == 0 {
        return Vec::new();
    }
    let mut ev: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

fn definite_sign(ev: &[f64]) -> Option<i8> {
    if ev.iter().all(|&v| v > 0.0) {
        Some(1)
    } else if ev.iter().all(|&v| v < 0.0) {
        Some(-1)
    } else {
        None
    }
}

/// Complex compound in double precision, for the determinant identity.
fn compound_c64(m: &DMatrix<Complex64>, k: usize) -> DMatrix<Complex64> {
    let idx = SubsetIndex::new(m.nrows(), k).expect("k <= n");
    let mut out = DMatrix::zeros(idx.len(), idx.len());
    for i in 0..idx.len() {
        for j in 0..idx.len() {
            let (ri, cj) = (idx.positions(i), idx.positions(j));
            let sub = DMatrix::from_fn(k, k, |a, b| m[(ri[a], cj[b])]);
            out[(i, j)] = if k == 0 {
                Complex64::new(1.0, 0.0)
            } else {
                sub.determinant()
            };
        }
    }
    out
}

/// Checks that `i W_sigma` is definite with the sign forced by the inputs.
///
/// Requires `i Psi0_sigma` nonzero and `i Psi1_sigma` definite; returns
/// [`Error::DegenerateForm`] otherwise.
pub fn positivity_at(
    v0: &HermitianModule,
    v1: &HermitianModule,
    k: usize,
    sigma: EmbeddingId,
) -> Result<PositivityReport> {
    let field = v1.field();
    field.embedding(sigma.k())?;
    let h0 = hermitian_at(v0.gram(), sigma.k());
    let h1 = hermitian_at(v1.gram(), sigma.k());
    let sign0 = definite_sign(&eigenvalues(h0.clone())).ok_or(Error::DegenerateForm)?;
    let sign1 = definite_sign(&eigenvalues(h1.clone())).ok_or(Error::DegenerateForm)?;
    let w = wedge_module(v0, v1, k)?;
    let hw = hermitian_at(w.gram(), sigma.k());
    let orientation = if (1 - k as i64).rem_euclid(2) == 1 {
        sign0
    } else {
        1
    } * if k % 2 == 1 { sign1 } else { 1 };

    let scalar = h0[(0, 0)].re.powi(1 - k as i32);
    let predicted = compound_c64(&h1, k) * Complex64::new(scalar, 0.0);
    let identity_residual = (&hw - &predicted).iter().fold(0f64, |a, z| a.max(z.norm()));

    let ev = eigenvalues(hw * Complex64::new(orientation as f64, 0.0));
    let max_abs_eigenvalue = ev.iter().fold(0f64, |a, v| a.max(v.abs()));
    let min_eigenvalue = ev.first().copied().unwrap_or(0.0);
    Ok(PositivityReport {
        sigma,
        sign0,
        sign1,
        orientation,
        min_eigenvalue,
        max_abs_eigenvalue,
        identity_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{
        random_matrix, random_similitude_pair, random_skew_hermitian, trial_rng,
    };
    use crate::ring::{rational, Rationals};
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn q_matrix(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rational(x, 1)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn compound_examples() {
        let m = q_matrix(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        assert_eq!(compound(&Rationals, &m, 1).unwrap(), m);
        let top = compound(&Rationals, &m, 3).unwrap();
        assert_eq!(top.rows(), 1);
        assert_eq!(top[(0, 0)], rational(-3, 1));
        assert_eq!(
            compound(&Rationals, &m, 0).unwrap(),
            Matrix::identity(&Rationals, 1)
        );
        let d = Matrix::diagonal(
            &Rationals,
            &[
                rational(2, 1),
                rational(3, 1),
                rational(5, 1),
                rational(7, 1),
            ],
        );
        let c = compound(&Rationals, &d, 2).unwrap();
        let idx = SubsetIndex::new(4, 2).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                let expect = if i == j {
                    idx.get(i)
                        .iter()
                        .map(|&e| [2, 3, 5, 7][e - 1])
                        .product::<i64>()
                } else {
                    0
                };
                assert_eq!(c[(i, j)], rational(expect, 1));
            }
        }
        assert!(compound(&Rationals, &m, 4).is_err());
    }

    #[test]
    fn wedge_gram_examples() {
        let l = CycloField::new(4).unwrap();
        let i = l.zeta();
        let psi1 = Matrix::scalar(&l, 3, &i);
        assert_eq!(wedge_gram(&i, &psi1, 1).unwrap(), psi1);
        assert_eq!(wedge_gram(&i, &psi1, 0).unwrap(), Matrix::scalar(&l, 1, &i));
        // (-i) * i^2 = i on the diagonal
        assert_eq!(wedge_gram(&i, &psi1, 2).unwrap(), Matrix::scalar(&l, 3, &i));
        assert_eq!(wedge_gram(&l.zero(), &psi1, 2), Err(Error::ZeroScalar));
    }

    #[test]
    fn g_k_examples() {
        let l = CycloField::new(5).unwrap();
        let g0 = l.from_integer_coeffs(&[1, 2]);
        let g1 = random_matrix(&l, 3, &mut trial_rng(3, 0), 3);
        assert_eq!(g_k(&g0, &g1, 1).unwrap(), g1);
        assert_eq!(g_k(&g0, &g1, 0).unwrap(), Matrix::scalar(&l, 1, &g0));
        let c = l.from_integer_coeffs(&[0, 1, -1]);
        let got = g_k(&g0, &Matrix::scalar(&l, 3, &c), 2).unwrap();
        let expect = &g0.inv().unwrap() * &c.pow(2);
        assert_eq!(got, Matrix::scalar(&l, 3, &expect));
    }

    #[test]
    fn multiplier_examples() {
        let l = CycloField::new(4).unwrap();
        let psi = Matrix::scalar(&l, 2, &l.zeta());
        assert_eq!(
            multiplier(&Matrix::identity(&l, 2), &psi).unwrap(),
            l.int(1)
        );
        assert_eq!(
            multiplier(&Matrix::scalar(&l, 2, &l.int(3)), &psi).unwrap(),
            l.int(9)
        );
        let bad =
            Matrix::from_rows(vec![vec![l.int(1), l.int(1)], vec![l.int(0), l.int(1)]]).unwrap();
        assert_eq!(multiplier(&bad, &psi), Err(Error::NotASimilitude));
    }

    #[test]
    fn wedge_grams_are_skew_hermitian() {
        for t in 0..60u64 {
            let m = [4u64, 5, 8][t as usize % 3];
            let l = CycloField::new(m).unwrap();
            let mut rng = trial_rng(5, t);
            let n = 1 + t as usize % 4;
            let v1 = random_skew_hermitian(&l, n, &mut rng);
            let v0 = HermitianModule::scalar(l.imaginary_unit_like()).unwrap();
            for k in 0..=n {
                let w = wedge_gram(&v0.gram()[(0, 0)], v1.gram(), k).unwrap();
                if let Some(s) = adjoint_sign(&l, &w) {
                    assert_eq!(s, expected_adjoint_sign(k));
                } else {
                    assert!(w.is_zero(&l));
                }
            }
        }
    }

    #[test]
    fn similitudes_transport() {
        let l = CycloField::new(4).unwrap();
        for t in 0..20u64 {
            let mut rng = trial_rng(9, t);
            let n = 1 + t as usize % 3;
            let pair = random_similitude_pair(&l, n, &mut rng);
            for k in 0..=n {
                let g = g_k(&pair.gamma0, &pair.gamma1, k).unwrap();
                let w = wedge_gram(&pair.psi0, &pair.psi1, k).unwrap();
                assert_eq!(multiplier(&g, &w).unwrap(), pair.mu);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn compound_is_functorial(seed in 0u64..1_000_000, k in 0usize..=5) {
            let mut rng = trial_rng(seed, 0);
            let a = crate::instances::random_rational_matrix(5, &mut rng);
            let b = crate::instances::random_rational_matrix(5, &mut rng);
            let lhs = compound(&Rationals, &a.mul(&Rationals, &b), k).unwrap();
            let rhs = compound(&Rationals, &a, k).unwrap().mul(&Rationals, &compound(&Rationals, &b, k).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn sequential_and_parallel_agree(seed in 0u64..1_000_000, k in 0usize..=4) {
            let mut rng = trial_rng(seed, 1);
            let a = crate::instances::random_rational_matrix(4, &mut rng);
            prop_assert_eq!(
                compound_with(&Rationals, &a, k, Exec::Sequential).unwrap(),
                compound_with(&Rationals, &a, k, Exec::Parallel).unwrap()
            );
        }
    }
}
