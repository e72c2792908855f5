//! The ball `B_{1,n-1}` and its image in the matrix domain
//! `B_{C(n-1,k-1), C(n-1,k)}`.
//!
//! Floating point by design: membership is an operator-norm inequality,
//! tested with a guard band.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::arith::binomial;
use crate::error::check_range;
use crate::instances::trial_rng;
use crate::matrix::Matrix;
use crate::par::Exec;
use crate::ring::Ring;
use crate::subsets::{colex_rank, colex_subsets};
use crate::{Error, Result};

/// Guard band for the strict inequality `||A|| < 1`.
pub const BALL_GUARD: f64 = 1e-10;

/// A point of the open unit ball in `C^{n-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct BallPoint {
    x: Vec<Complex64>,
}

impl BallPoint {
    pub fn new(x: Vec<Complex64>) -> Result<Self> {
        let norm = euclidean_norm(&x);
        #[allow(clippy::neg_cmp_op_on_partial_ord)] // also rejects NaN
        if !(norm < 1.0) {
            return Err(Error::InvalidInput(format!(
                "point has norm {norm}, outside the open unit ball"
            )));
        }
        Ok(BallPoint { x })
    }

    /// Uniform in the ball: a Gaussian direction and radius `U^{1/2d}`.
    pub fn random<R: Rng>(dim: usize, rng: &mut R) -> Self {
        if dim == 0 {
            return BallPoint { x: Vec::new() };
        }
        loop {
            let g: Vec<Complex64> = (0..dim)
                .map(|_| Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
                .collect();
            let norm = euclidean_norm(&g);
            if norm == 0.0 {
                continue;
            }
            let u: f64 = rng.random();
            let radius = u.powf(1.0 / (2 * dim) as f64);
            let x: Vec<Complex64> = g.iter().map(|z| z * (radius / norm)).collect();
            if euclidean_norm(&x) < 1.0 {
                return BallPoint { x };
            }
        }
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.x
    }

    pub fn norm(&self) -> f64 {
        euclidean_norm(&self.x)
    }
}

pub fn euclidean_norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub type DomainMatrix = DMatrix<Complex64>;

/// The `C(b,k-1) x C(b,k)` matrix `A(x)` over any ring, `b = len(x)`:
/// `A_{I,J} = (-1)^{nu-1} x_{i_nu}` when `I = J - {i_nu}`.
///
/// Built row by row, by inserting each missing element into `I`.
pub fn satake_matrix_in<R: Ring>(ring: &R, x: &[R::Elem], k: usize) -> Result<Matrix<R::Elem>> {
    let b = x.len();
    check_range(k, 1, b.max(1))?;
    let ground: Vec<usize> = (1..=b).collect();
    let rows = colex_subsets(&ground, k - 1);
    let cols = binomial(b as i64, k as i64) as usize;
    let mut out = Matrix::zeros(ring, rows.len(), cols);
    for (r, i) in rows.iter().enumerate() {
        for e in ground.iter().copied().filter(|e| !i.contains(e)) {
            let nu = 1 + i.iter().filter(|&&t| t < e).count();
            let mut j: Vec<usize> = i.iter().map(|&t| t - 1).collect();
            j.insert(nu - 1, e - 1);
            let v = &x[e - 1];
            out.set(
                r,
                colex_rank(&j),
                if nu % 2 == 1 { v.clone() } else { ring.neg(v) },
            );
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, Default)]
struct ComplexRing;

impl Ring for ComplexRing {
    type Elem = Complex64;
    fn zero(&self) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }
    fn one(&self) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a + b
    }
    fn neg(&self, a: &Complex64) -> Complex64 {
        -a
    }
    fn mul(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a * b
    }
}

/// The embedding matrix of a ball point for `1 <= k <= n - 1`.
pub fn satake_matrix(x: &BallPoint, n: usize, k: usize) -> Result<DomainMatrix> {
    if x.coords().len() + 1 != n {
        return Err(Error::ShapeMismatch(format!(
            "point in C^{} for n = {n}",
            x.coords().len()
        )));
    }
    check_range(k, 1, n.saturating_sub(1))?;
    let a = satake_matrix_in(&ComplexRing, x.coords(), k)?;
    Ok(DMatrix::from_fn(a.rows(), a.cols(), |i, j| a[(i, j)]))
}

/// Largest singular value.
pub fn op_norm(m: &DomainMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone()
        .singular_values()
        .iter()
        .fold(0f64, |a, &s| a.max(s))
}

pub fn in_ball(m: &DomainMatrix) -> bool {
    op_norm(m) < 1.0 - BALL_GUARD
}

/// Summary of a batch of ball-embedding trials.
#[derive(Clone, Debug, PartialEq)]
pub struct BallTrials {
    pub n: usize,
    pub k: usize,
    pub trials: usize,
    pub inside: usize,
    /// Largest `op_norm(A(x)) / ||x||`.
    pub max_ratio: f64,
    pub max_norm: f64,
    /// First trial whose image left the ball, with its norm.
    pub first_failure: Option<(usize, f64)>,
}

impl BallTrials {
    pub fn all_inside(&self) -> bool {
        self.inside == self.trials
    }
}

pub fn ball_trials(n: usize, k: usize, trials: usize, seed: u64, exec: Exec) -> Result<BallTrials> {
    check_range(k, 1, n.saturating_sub(1))?;
    let results = exec.map(trials, |t| {
        let mut rng = trial_rng(seed, t as u64);
        let x = BallPoint::random(n - 1, &mut rng);
        let a = satake_matrix(&x, n, k).expect("shape checked above");
        let norm = op_norm(&a);
        (in_ball(&a), norm, norm / x.norm())
    });
    let mut out = BallTrials {
        n,
        k,
        trials,
        inside: 0,
        max_ratio: 0.0,
        max_norm: 0.0,
        first_failure: None,
    };
    for (t, (inside, norm, ratio)) in results.into_iter().enumerate() {
        if inside {
            out.inside += 1;
        } else if out.first_failure.is_none() {
            out.first_failure = Some((t, norm));
        }
        out.max_norm = out.max_norm.max(norm);
        if ratio.is_finite() {
            out.max_ratio = out.max_ratio.max(ratio);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;
    use crate::serretate::contraction_matrix;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn satake_examples() {
        let x = BallPoint::new(vec![c(0.3), c(0.4)]).unwrap();
        let a = satake_matrix(&x, 3, 1).unwrap();
        assert_eq!(a, DMatrix::from_row_slice(1, 2, &[c(0.3), c(0.4)]));
        let a = satake_matrix(&x, 3, 2).unwrap();
        assert_eq!(a, DMatrix::from_row_slice(2, 1, &[c(-0.4), c(0.3)]));
        let z = BallPoint::new(vec![c(0.0); 4]).unwrap();
        assert_eq!(op_norm(&satake_matrix(&z, 5, 2).unwrap()), 0.0);
        assert!(satake_matrix(&x, 3, 3).is_err());
        assert!(satake_matrix(&x, 4, 1).is_err());
        assert!(BallPoint::new(vec![c(0.6), c(0.8)]).is_err());
    }

    #[test]
    fn norm_examples() {
        let row = DMatrix::from_row_slice(1, 2, &[c(0.3), c(0.4)]);
        assert!((op_norm(&row) - 0.5).abs() < 1e-12);
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(0.2), c(0.7), c(0.1)]));
        assert!((op_norm(&d) - 0.7).abs() < 1e-12);
        assert_eq!(op_norm(&DMatrix::zeros(2, 3)), 0.0);
        assert!(in_ball(&DMatrix::zeros(2, 2)));
        assert!(!in_ball(&DMatrix::identity(3, 3)));
        let x = BallPoint::new(vec![c(0.3), c(0.4)]).unwrap();
        assert!(in_ball(&satake_matrix(&x, 3, 1).unwrap()));
    }

    #[test]
    fn holomorphic_entries() {
        for b in 1..6 {
            let ring = PolyRing::with_prefix("x", 1, b);
            for k in 1..=b {
                let a = satake_matrix_in(&ring, &ring.vars(), k).unwrap();
                assert!(a
                    .entries()
                    .iter()
                    .all(|p| p.is_zero() || (p.is_linear_form() && p.terms().count() == 1)));
            }
        }
    }

    #[test]
    fn matches_contraction_symbolically() {
        for b in 1..7 {
            let ring = PolyRing::with_prefix("x", 1, b);
            for k in 1..=b {
                assert_eq!(
                    satake_matrix_in(&ring, &ring.vars(), k).unwrap(),
                    contraction_matrix(&ring, &ring.vars(), k).unwrap()
                );
            }
        }
    }

    #[test]
    fn trials_are_deterministic() {
        let a = ball_trials(5, 2, 200, 42, Exec::Sequential).unwrap();
        let b = ball_trials(5, 2, 200, 42, Exec::Parallel).unwrap();
        assert_eq!(a, b);
        assert!(a.all_inside());
        assert!(a.max_ratio <= 1.0 + 1e-12);
    }

    proptest! {
        #[test]
        fn ball_maps_into_ball(seed in 0u64..10_000, n in 2usize..7, kk in 0usize..6) {
            let k = 1 + kk % (n - 1);
            let x = BallPoint::random(n - 1, &mut trial_rng(seed, 0));
            prop_assert!(x.norm() < 1.0);
            prop_assert!(in_ball(&satake_matrix(&x, n, k).unwrap()));
        }
    }
}
