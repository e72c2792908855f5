//! Exact routines checked against independent floating-point or brute-force
//! computations.

use num_complex::Complex64;
use num_rational::BigRational;
use pelwedge_core::arith::{binomial, multiplicative_order, totient};
use pelwedge_core::cyclofield::{frobenius_orbits, CycloElement, CycloField};
use pelwedge_core::domains::{op_norm, satake_matrix, BallPoint};
use pelwedge_core::exterior::{compound, multiplier, wedge_gram};
use pelwedge_core::hodge::{signature_at, signature_at_numeric};
use pelwedge_core::instances::{
    random_element, random_matrix, random_nondegenerate_skew_hermitian, random_skew_hermitian,
    trial_rng,
};
use pelwedge_core::matrix::Matrix;
use pelwedge_core::numeric::{rational_to_f64, zeta_f64, Precision};
use pelwedge_core::pairings::trace_gram;
use pelwedge_core::ring::{Rationals, Ring};
use pelwedge_core::subsets::SubsetIndex;
use proptest::prelude::*;

const MODULI: [u64; 6] = [3, 4, 5, 7, 8, 12];

/// `sum_t a_t zeta^t` evaluated through the defining formula.
fn embed_by_powers(x: &CycloElement, k: u64) -> Complex64 {
    let m = x.field().m();
    x.coords()
        .iter()
        .enumerate()
        .map(|(t, c)| zeta_f64(m, k, t as u64) * rational_to_f64(c))
        .sum()
}

fn leibniz<R: Ring>(ring: &R, m: &Matrix<R::Elem>, rows: &[usize], cols: &[usize]) -> R::Elem {
    let k = rows.len();
    let mut perm: Vec<usize> = (0..k).collect();
    let mut total = ring.zero();
    loop {
        let inversions = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .filter(|&(i, j)| perm[i] > perm[j])
            .count();
        let term = (0..k).fold(ring.one(), |acc, i| {
            ring.mul(&acc, &m[(rows[i], cols[perm[i]])])
        });
        total = if inversions % 2 == 0 {
            ring.add(&total, &term)
        } else {
            ring.sub(&total, &term)
        };
        // next permutation in lexicographic order
        let Some(i) = (0..k.saturating_sub(1))
            .rev()
            .find(|&i| perm[i] < perm[i + 1])
        else {
            break;
        };
        let j = (i + 1..k).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    total
}

#[test]
fn trace_gram_matches_summed_embeddings() {
    for (s, &m) in MODULI.iter().enumerate() {
        let field = CycloField::new(m).unwrap();
        let d = field.degree();
        for t in 0..4 {
            let h = random_skew_hermitian(&field, 2, &mut trial_rng(s as u64, t));
            let g = trace_gram(&h);
            for (i, j, a, b) in (0..2).flat_map(|i| {
                (0..2)
                    .flat_map(move |j| (0..d).flat_map(move |a| (0..d).map(move |b| (i, j, a, b))))
            }) {
                let x = &field.zeta_pow(b as i64 - a as i64) * &h.gram()[(i, j)];
                let numeric: f64 = field
                    .units()
                    .iter()
                    .map(|&k| embed_by_powers(&x, k).re)
                    .sum();
                let exact = rational_to_f64(&g.matrix()[(i * d + a, j * d + b)]);
                assert!(
                    (numeric - exact).abs() < 1e-9,
                    "m={m}: {numeric} vs {exact}"
                );
            }
        }
    }
}

#[test]
fn norms_are_products_of_embeddings() {
    for (s, &m) in MODULI.iter().enumerate() {
        let field = CycloField::new(m).unwrap();
        let mut rng = trial_rng(100 + s as u64, 0);
        for _ in 0..10 {
            let x = random_element(&field, &mut rng, 3);
            let prod: Complex64 = field
                .units()
                .iter()
                .map(|&k| embed_by_powers(&x, k))
                .product();
            let exact = rational_to_f64(&x.norm());
            assert!((prod.re - exact).abs() < 1e-8 * exact.abs().max(1.0));
            assert!(prod.im.abs() < 1e-8 * exact.abs().max(1.0));
        }
    }
}

#[test]
fn frobenius_orbits_have_order_size() {
    for &m in &MODULI {
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            if m % p == 0 {
                continue;
            }
            let part = frobenius_orbits(m, p).unwrap();
            // brute force: orbit of k under multiplication by p
            let f = (1..)
                .find(|&f| (0..f).fold(1u64, |a, _| a * p % m) == 1)
                .unwrap();
            assert_eq!(Some(f), multiplicative_order(p, m));
            assert_eq!(part.len() as u64 * f, totient(m));
            for orbit in part.orbits() {
                let k = orbit[0];
                let mut expect: Vec<u64> =
                    (0..f).map(|e| (0..e).fold(k, |a, _| a * p % m)).collect();
                let mut got = orbit.clone();
                expect.sort_unstable();
                got.sort_unstable();
                assert_eq!(got, expect);
            }
        }
    }
}

#[test]
fn exact_and_floating_signatures_agree_on_more_fields() {
    for &m in &[7u64, 12] {
        let field = CycloField::new(m).unwrap();
        for t in 0..20 {
            let h = random_nondegenerate_skew_hermitian(&field, 3, &mut trial_rng(m, t));
            for sigma in field.embeddings() {
                assert_eq!(
                    signature_at(&h, sigma, Precision::default()).unwrap(),
                    signature_at_numeric(&h, sigma).unwrap()
                );
            }
        }
    }
}

#[test]
fn wedge_gram_entries_are_scaled_minors() {
    let field = CycloField::new(5).unwrap();
    let mut rng = trial_rng(7, 0);
    let psi1 = random_skew_hermitian(&field, 4, &mut rng).gram().clone();
    let psi0 = field.imaginary_unit_like();
    for k in 1..=4 {
        let w = wedge_gram(&psi0, &psi1, k).unwrap();
        let scale = if k == 1 {
            field.int(1)
        } else {
            psi0.inv().unwrap().pow(k as u32 - 1)
        };
        let idx = SubsetIndex::new(4, k).unwrap();
        for i in 0..idx.len() {
            for j in 0..idx.len() {
                let minor = leibniz(&field, &psi1, &idx.positions(i), &idx.positions(j));
                assert_eq!(w[(i, j)], &scale * &minor);
            }
        }
    }
}

#[test]
fn multiplier_of_a_scalar_matrix() {
    // gamma = c I scales any form by c c*
    let field = CycloField::new(8).unwrap();
    let mut rng = trial_rng(8, 0);
    let psi = random_nondegenerate_skew_hermitian(&field, 3, &mut rng)
        .gram()
        .clone();
    let c = random_element(&field, &mut rng, 3);
    let gamma = Matrix::scalar(&field, 3, &c);
    assert_eq!(multiplier(&gamma, &psi).unwrap(), &c * &c.conj());
}

fn q_matrix(v: &[i64], n: usize) -> Matrix<BigRational> {
    Matrix::from_vec(
        n,
        n,
        v.iter()
            .map(|&x| BigRational::from_integer(x.into()))
            .collect(),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn compound_is_multiplicative(a in prop::collection::vec(-4i64..5, 16), b in prop::collection::vec(-4i64..5, 16), k in 0usize..5) {
        let (a, b) = (q_matrix(&a, 4), q_matrix(&b, 4));
        let lhs = compound(&Rationals, &a.mul(&Rationals, &b), k).unwrap();
        let rhs = compound(&Rationals, &a, k).unwrap().mul(&Rationals, &compound(&Rationals, &b, k).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn compound_determinant(a in prop::collection::vec(-3i64..4, 16), k in 1usize..5) {
        // det of the k-th compound is det^C(n-1, k-1)
        let a = q_matrix(&a, 4);
        let d = a.det(&Rationals);
        let c = compound(&Rationals, &a, k).unwrap();
        let e = binomial(3, k as i64 - 1) as i32;
        prop_assert_eq!(c.det(&Rationals), num_traits::pow::Pow::pow(&d, e));
    }

    #[test]
    fn interior_product_is_a_partial_isometry(re in prop::collection::vec(-0.5f64..0.5, 5), im in prop::collection::vec(-0.5f64..0.5, 5), k in 1usize..6) {
        let x: Vec<Complex64> = re.iter().zip(&im).map(|(&a, &b)| Complex64::new(a, b) * 0.4).collect();
        let p = BallPoint::new(x).unwrap();
        let a = satake_matrix(&p, 6, k).unwrap();
        prop_assert!((op_norm(&a) - p.norm()).abs() < 1e-12);
    }

    #[test]
    fn embeddings_multiply(m_idx in 0usize..6, seed in 0u64..1000) {
        let field = CycloField::new(MODULI[m_idx]).unwrap();
        let mut rng = trial_rng(seed, 1);
        let a = random_matrix(&field, 1, &mut rng, 3)[(0, 0)].clone();
        let b = random_element(&field, &mut rng, 3);
        for &k in field.units() {
            let lhs = embed_by_powers(&(&a * &b), k);
            let rhs = embed_by_powers(&a, k) * embed_by_powers(&b, k);
            prop_assert!((lhs - rhs).norm() < 1e-9 * (1.0 + rhs.norm()));
            prop_assert!((a.embed_f64(k) - embed_by_powers(&a, k)).norm() < 1e-9);
        }
    }
}
