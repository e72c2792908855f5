//! Rational trace forms and perfectness at a prime.
//!
//! The trace form of `(O_L^n, Psi)` is `psi(x, y) = tr_{L/Q}(x^dagger Psi y)`
//! on the `Z`-basis `zeta^a e_i`, indexed `i * phi(m) + a`. At a prime `p`
//! not dividing `m` it is perfect over `Z_(p)` iff every entry is
//! `p`-integral and the determinant is a `p`-adic unit.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::is_prime;
use crate::cyclofield::CycloField;
use crate::error::check_range;
use crate::exterior::wedge_module;
use crate::hodge::HermitianModule;
use crate::matrix::Matrix;
use crate::ring::Rationals;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceGram {
    m: u64,
    rank: usize,
    matrix: Matrix<BigRational>,
}

impl TraceGram {
    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrix(&self) -> &Matrix<BigRational> {
        &self.matrix
    }

    pub fn det(&self) -> BigRational {
        self.matrix.det_field(&Rationals)
    }
}

pub fn trace_gram(h: &HermitianModule) -> TraceGram {
    let field: &CycloField = h.field();
    let d = field.degree();
    let n = h.rank();
    // tr(zeta^{b-a} Psi_ij) depends on b - a only
    let shifted: Vec<Vec<BigRational>> = h
        .gram()
        .entries()
        .iter()
        .map(|psi| {
            (0..field.m() as i64)
                .map(|s| (&field.zeta_pow(s) * psi).trace())
                .collect()
        })
        .collect();
    let m = field.m() as i64;
    let matrix = Matrix::from_fn(n * d, n * d, |r, c| {
        let (i, a) = (r / d, r % d);
        let (j, b) = (c / d, c % d);
        shifted[i * n + j][(b as i64 - a as i64).rem_euclid(m) as usize].clone()
    });
    for r in 0..n * d {
        for c in r..n * d {
            assert!(
                matrix[(r, c)] == -matrix[(c, r)].clone(),
                "trace form of a skew-Hermitian form is alternating"
            );
        }
    }
    TraceGram {
        m: field.m(),
        rank: n,
        matrix,
    }
}

/// `v_p(x)` for nonzero rational `x`.
pub fn p_adic_valuation(x: &BigRational, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let count = |n: &BigInt| {
        let mut n = n.clone();
        let mut v = 0i64;
        while (&n % &p).is_zero() {
            n /= &p;
            v += 1;
        }
        v
    };
    Some(count(x.numer()) - count(x.denom()))
}

/// `v_p(det T)`.
pub fn perfectness_valuation(t: &TraceGram, p: u64) -> Result<i64> {
    p_adic_valuation(&t.det(), p).ok_or(Error::DegenerateForm)
}

pub fn is_p_integral(t: &TraceGram, p: u64) -> bool {
    let p = BigInt::from(p);
    t.matrix
        .entries()
        .iter()
        .all(|x| !(x.denom() % &p).is_zero())
}

pub fn is_perfect(t: &TraceGram, p: u64) -> Result<bool> {
    Ok(is_p_integral(t, p) && perfectness_valuation(t, p)? == 0)
}

/// Perfectness data of one trace form at `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Perfectness {
    pub valuation: i64,
    pub integral: bool,
}

impl Perfectness {
    pub fn of(t: &TraceGram, p: u64) -> Result<Self> {
        Ok(Perfectness {
            valuation: perfectness_valuation(t, p)?,
            integral: is_p_integral(t, p),
        })
    }

    pub fn perfect(&self) -> bool {
        self.integral && self.valuation == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrinzOutcome {
    /// Both inputs and the output are perfect.
    Holds,
    /// Both inputs are perfect but the output is not.
    Violated,
    /// Some input is not perfect; nothing to test.
    Vacuous,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrinzReport {
    pub k: usize,
    pub p: u64,
    pub input0: Perfectness,
    pub input1: Perfectness,
    pub output: Perfectness,
    pub outcome: PrinzOutcome,
}

/// Tests "both inputs perfect at `p` implies the k-th output perfect at `p`".
pub fn verify_prinz(
    v0: &HermitianModule,
    v1: &HermitianModule,
    k: usize,
    p: u64,
) -> Result<PrinzReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let m = v1.field().m();
    if m.is_multiple_of(p) {
        return Err(Error::RamifiedPrime { p, m });
    }
    check_range(k, 0, v1.rank())?;
    let input0 = Perfectness::of(&trace_gram(v0), p)?;
    let input1 = Perfectness::of(&trace_gram(v1), p)?;
    let output = Perfectness::of(&trace_gram(&wedge_module(v0, v1, k)?), p)?;
    let outcome = match (input0.perfect() && input1.perfect(), output.perfect()) {
        (false, _) => PrinzOutcome::Vacuous,
        (true, true) => PrinzOutcome::Holds,
        (true, false) => PrinzOutcome::Violated,
    };
    Ok(PrinzReport {
        k,
        p,
        input0,
        input1,
        output,
        outcome,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{
        random_perfect_pair, random_skew_hermitian, random_unimodular, trial_rng,
    };
    use crate::ring::rational;

    fn q(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rational(x, 1)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn gaussian_example() {
        let l = CycloField::new(4).unwrap();
        let h = HermitianModule::scalar(l.zeta()).unwrap();
        let t = trace_gram(&h);
        assert_eq!(t.matrix(), &q(&[&[0, -2], &[2, 0]]));
        assert_eq!(perfectness_valuation(&t, 5), Ok(0));
        assert_eq!(perfectness_valuation(&t, 2), Ok(2));
        let z = HermitianModule::new(&l, Matrix::zeros(&l, 2, 2)).unwrap();
        assert!(trace_gram(&z).matrix().is_zero(&Rationals));
        assert_eq!(
            perfectness_valuation(&trace_gram(&z), 3),
            Err(Error::DegenerateForm)
        );
    }

    #[test]
    fn block_diagonal_stays_block_diagonal() {
        let l = CycloField::new(5).unwrap();
        let d = l.imaginary_unit_like();
        let g = Matrix::diagonal(&l, &[d.clone(), d.scale(&rational(3, 1))]);
        let t = trace_gram(&HermitianModule::new(&l, g).unwrap());
        for r in 0..8 {
            for c in 0..8 {
                if r / 4 != c / 4 {
                    assert!(t.matrix()[(r, c)].is_zero());
                }
            }
        }
    }

    #[test]
    fn valuation_helper() {
        assert_eq!(p_adic_valuation(&rational(50, 3), 5), Some(2));
        assert_eq!(p_adic_valuation(&rational(2, 75), 5), Some(-2));
        assert_eq!(p_adic_valuation(&rational(0, 1), 5), None);
    }

    #[test]
    fn prinz_examples() {
        let l = CycloField::new(5).unwrap();
        let mut rng = trial_rng(2, 0);
        let (v0, v1) = random_perfect_pair(&l, 3, 3, &mut rng);
        for k in 0..=3 {
            let r = verify_prinz(&v0, &v1, k, 3).unwrap();
            assert_eq!(r.outcome, PrinzOutcome::Holds);
            assert_eq!(r.output.valuation, 0);
        }
        let r1 = verify_prinz(&v0, &v1, 1, 3).unwrap();
        assert_eq!(r1.output, r1.input1);
        let scaled = HermitianModule::new(&l, v1.gram().scale(&l, &l.int(3))).unwrap();
        let r = verify_prinz(&v0, &scaled, 2, 3).unwrap();
        assert!(r.input1.valuation > 0);
        assert_eq!(r.outcome, PrinzOutcome::Vacuous);
        assert_eq!(
            verify_prinz(&v0, &v1, 1, 5).unwrap_err(),
            Error::RamifiedPrime { p: 5, m: 5 }
        );
    }

    #[test]
    fn determinant_matches_norm_formula() {
        // det(trace form) = +-N(det Psi) disc^n with |disc| = 125 for m = 5
        let l = CycloField::new(5).unwrap();
        for t in 0..20 {
            let h = random_skew_hermitian(&l, 1 + t % 3, &mut trial_rng(4, t as u64));
            let det = trace_gram(&h).det();
            let n = h.rank() as u32;
            let expect = h.det().norm() * BigRational::from_integer(BigInt::from(125).pow(n));
            assert!(det == expect || det == -expect);
        }
    }

    #[test]
    fn antisymmetry_across_fields() {
        for (t, m) in [4u64, 5, 8].iter().cycle().take(100).enumerate() {
            let l = CycloField::new(*m).unwrap();
            let h = random_skew_hermitian(&l, 1 + t % 3, &mut trial_rng(8, t as u64));
            let a = trace_gram(&h).matrix().clone();
            assert_eq!(a.transpose(), a.neg(&Rationals));
        }
    }

    #[test]
    fn unimodular_base_change_keeps_valuation() {
        for m in [4u64, 5] {
            let l = CycloField::new(m).unwrap();
            for t in 0..10u64 {
                let mut rng = trial_rng(13, t);
                let h = random_skew_hermitian(&l, 3, &mut rng);
                if h.det().is_zero() {
                    continue;
                }
                let b = random_unimodular(&l, 3, &mut rng);
                let h2 = h.base_change(&b).unwrap();
                for p in [3u64, 7, 13] {
                    assert_eq!(
                        perfectness_valuation(&trace_gram(&h), p).unwrap(),
                        perfectness_valuation(&trace_gram(&h2), p).unwrap()
                    );
                }
            }
        }
    }
}
