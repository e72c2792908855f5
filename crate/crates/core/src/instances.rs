//! Seeded random inputs for property checks and trial suites.
//!
//! Every trial draws from its own ChaCha stream `(seed, index)`, so results
//! do not depend on how trials are scheduled across threads.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyclofield::{CycloElement, CycloField};
use crate::hodge::HermitianModule;
use crate::matrix::Matrix;
use crate::pairings::{is_perfect, trace_gram};
use crate::ring::{rational, Field, Ring};

pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Integer coordinates uniform in `[-bound, bound]`.
pub fn random_element<R: Rng>(field: &CycloField, rng: &mut R, bound: i64) -> CycloElement {
    let coeffs: Vec<i64> = (0..field.degree())
        .map(|_| rng.random_range(-bound..=bound))
        .collect();
    field.from_integer_coeffs(&coeffs)
}

pub fn random_nonzero_element<R: Rng>(field: &CycloField, rng: &mut R, bound: i64) -> CycloElement {
    loop {
        let x = random_element(field, rng, bound);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn random_matrix<R: Rng>(
    field: &CycloField,
    n: usize,
    rng: &mut R,
    bound: i64,
) -> Matrix<CycloElement> {
    Matrix::from_fn(n, n, |_, _| random_element(field, rng, bound))
}

/// Entries `a/b` with `|a| <= 9`, `1 <= b <= 4`.
pub fn random_rational_matrix<R: Rng>(n: usize, rng: &mut R) -> Matrix<BigRational> {
    Matrix::from_fn(n, n, |_, _| {
        rational(rng.random_range(-9..=9), rng.random_range(1..=4))
    })
}

/// `A - A^dagger` for random integral `A`.
pub fn random_skew_hermitian<R: Rng>(field: &CycloField, n: usize, rng: &mut R) -> HermitianModule {
    let a = random_matrix(field, n, rng, 3);
    let g = a.sub(field, &a.conj_transpose(field));
    HermitianModule::new(field, g).expect("A - A^dagger is skew-Hermitian")
}

pub fn random_nondegenerate_skew_hermitian<R: Rng>(
    field: &CycloField,
    n: usize,
    rng: &mut R,
) -> HermitianModule {
    loop {
        let h = random_skew_hermitian(field, n, rng);
        if !h.det().is_zero() {
            return h;
        }
    }
}

fn random_unit_residue<R: Rng>(rng: &mut R, p: u64, bound: i64, positive: bool) -> i64 {
    loop {
        let r: i64 = rng.random_range(1..=bound);
        if r.rem_euclid(p as i64) != 0 {
            return if positive || rng.random::<bool>() {
                r
            } else {
                -r
            };
        }
    }
}

fn norm_is_p_unit(x: &CycloElement, p: u64) -> bool {
    let n = x.norm();
    let p = BigInt::from(p);
    !n.is_zero() && !n.numer().is_multiple_of(&p) && !n.denom().is_multiple_of(&p)
}

/// Lower-unitriangular times upper-triangular with unit diagonal entries
/// `zeta^t`: an integral matrix whose determinant is a root of unity.
pub fn random_unimodular<R: Rng>(
    field: &CycloField,
    n: usize,
    rng: &mut R,
) -> Matrix<CycloElement> {
    let m = field.m() as i64;
    let lower = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Greater => random_element(field, rng, 1),
        std::cmp::Ordering::Equal => field.one(),
        std::cmp::Ordering::Less => field.zero(),
    });
    let upper = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => random_element(field, rng, 1),
        std::cmp::Ordering::Equal => field.zeta_pow(rng.random_range(0..m)),
        std::cmp::Ordering::Greater => field.zero(),
    });
    lower.mul(field, &upper)
}

/// A rank-one and a rank-n module, both perfect at the unramified prime `p`.
///
/// The forms are `r0 delta` and `A^dagger diag(r_j delta) A` with
/// `delta = zeta - zeta^{-1}`, `p`-unit integers `r` and an integral `A`
/// whose determinant has `p`-unit norm.
pub fn random_perfect_pair<R: Rng>(
    field: &CycloField,
    n: usize,
    p: u64,
    rng: &mut R,
) -> (HermitianModule, HermitianModule) {
    let delta = field.imaginary_unit_like();
    let v0 =
        HermitianModule::scalar(delta.scale(&rational(random_unit_residue(rng, p, 4, false), 1)))
            .expect("skew scalar");
    for attempt in 0.. {
        let d: Vec<CycloElement> = (0..n)
            .map(|_| delta.scale(&rational(random_unit_residue(rng, p, 4, false), 1)))
            .collect();
        let a = if attempt < 8 {
            random_matrix(field, n, rng, 2)
        } else {
            random_unimodular(field, n, rng)
        };
        let det = a.det_field(field);
        if !norm_is_p_unit(&det, p) {
            continue;
        }
        let g = a
            .conj_transpose(field)
            .mul(field, &Matrix::diagonal(field, &d))
            .mul(field, &a);
        let v1 = HermitianModule::new(field, g).expect("congruent to a skew diagonal");
        if is_perfect(&trace_gram(&v1), p).unwrap_or(false) {
            return (v0, v1);
        }
    }
    unreachable!()
}

/// A rank-one and a rank-n module whose forms `i Psi_sigma` are definite of
/// the same sign at every embedding.
pub fn random_definite_pair<R: Rng>(
    field: &CycloField,
    n: usize,
    rng: &mut R,
) -> (HermitianModule, HermitianModule) {
    let delta = field.imaginary_unit_like();
    let sign: i64 = if rng.random::<bool>() { 1 } else { -1 };
    let v0 = HermitianModule::scalar(delta.scale(&rational(sign * rng.random_range(1..=5), 1)))
        .expect("skew scalar");
    loop {
        let a = random_matrix(field, n, rng, 2);
        if a.det_field(field).is_zero() {
            continue;
        }
        let d: Vec<CycloElement> = (0..n)
            .map(|_| delta.scale(&rational(sign * rng.random_range(1..=5), 1)))
            .collect();
        let g = a
            .conj_transpose(field)
            .mul(field, &Matrix::diagonal(field, &d))
            .mul(field, &a);
        return (
            v0,
            HermitianModule::new(field, g).expect("congruent to a skew diagonal"),
        );
    }
}

/// Cayley transform `(I - X)^{-1} (I + X)` with `X = Psi^{-1} S`, `S`
/// Hermitian: an isometry of `Psi`, or `None` if `I - X` is singular.
fn cayley_isometry<R: Rng>(
    field: &CycloField,
    psi: &Matrix<CycloElement>,
    rng: &mut R,
) -> Option<Matrix<CycloElement>> {
    let n = psi.rows();
    let b = random_matrix(field, n, rng, 2);
    let s = b.add(field, &b.conj_transpose(field));
    let x = psi.inverse(field)?.mul(field, &s);
    let id = Matrix::identity(field, n);
    Some(
        id.sub(field, &x)
            .inverse(field)?
            .mul(field, &id.add(field, &x)),
    )
}

/// Forms with similitudes of a common multiplier `mu`.
#[derive(Clone, Debug)]
pub struct SimilitudePair {
    pub psi0: CycloElement,
    pub psi1: Matrix<CycloElement>,
    pub gamma0: CycloElement,
    pub gamma1: Matrix<CycloElement>,
    pub mu: CycloElement,
}

/// `gamma_i = c u_i` with `u_i` Cayley isometries, so both multipliers are
/// `c c*`.
pub fn random_similitude_pair<R: Rng>(field: &CycloField, n: usize, rng: &mut R) -> SimilitudePair {
    let psi0 = random_nonzero_element(field, rng, 2);
    let psi0 = &psi0 - &psi0.conj();
    let psi0 = if psi0.is_zero() {
        field.imaginary_unit_like()
    } else {
        psi0
    };
    let psi1 = random_nondegenerate_skew_hermitian(field, n, rng)
        .gram()
        .clone();
    let c = random_nonzero_element(field, rng, 2);
    let psi0_m = Matrix::scalar(field, 1, &psi0);
    let u0 = loop {
        if let Some(u) = cayley_isometry(field, &psi0_m, rng) {
            break u[(0, 0)].clone();
        }
    };
    let u1 = loop {
        if let Some(u) = cayley_isometry(field, &psi1, rng) {
            break u;
        }
    };
    SimilitudePair {
        gamma0: &c * &u0,
        gamma1: u1.scale(field, &c),
        mu: &c * &c.conj(),
        psi0,
        psi1,
    }
}

/// An invertible matrix pair `(gamma0, gamma1)` with small entries.
pub fn random_group_element<R: Rng>(
    field: &CycloField,
    n: usize,
    rng: &mut R,
) -> (CycloElement, Matrix<CycloElement>) {
    let g0 = random_nonzero_element(field, rng, 2);
    loop {
        let g1 = random_matrix(field, n, rng, 2);
        if field.inv(&g1.det_field(field)).is_some() {
            return (g0, g1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::multiplier;

    #[test]
    fn streams_are_reproducible() {
        let a: Vec<u32> = (0..5).map(|_| trial_rng(1, 2).random()).collect();
        let b: Vec<u32> = (0..5).map(|_| trial_rng(1, 2).random()).collect();
        assert_eq!(a, b);
        assert_ne!(
            trial_rng(1, 2).random::<u64>(),
            trial_rng(1, 3).random::<u64>()
        );
    }

    #[test]
    fn generated_pairs_have_their_properties() {
        let l = CycloField::new(5).unwrap();
        for t in 0..10 {
            let mut rng = trial_rng(21, t);
            let (v0, v1) = random_perfect_pair(&l, 3, 7, &mut rng);
            assert!(is_perfect(&trace_gram(&v0), 7).unwrap());
            assert!(is_perfect(&trace_gram(&v1), 7).unwrap());
            let s = random_similitude_pair(&l, 2, &mut rng);
            assert_eq!(multiplier(&s.gamma1, &s.psi1).unwrap(), s.mu);
            assert_eq!(
                multiplier(
                    &Matrix::scalar(&l, 1, &s.gamma0),
                    &Matrix::scalar(&l, 1, &s.psi0)
                )
                .unwrap(),
                s.mu
            );
        }
    }
}
