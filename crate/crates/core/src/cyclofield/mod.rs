//! Exact arithmetic in the cyclotomic CM field `Q(zeta_m)`.
//!
//! Elements are rational coordinate vectors in the power basis
//! `1, zeta, ..., zeta^(d-1)` with `d = phi(m)`. The power basis is also a
//! `Z`-basis of the ring of integers, so p-integrality of an element is
//! p-integrality of its coordinates.

mod cmtype;
mod orbits;
mod spadesuit;

pub use cmtype::{CMType, EmbeddingId};
pub use orbits::{frobenius_orbits, FrobeniusOrbitPartition};
pub use spadesuit::{check_spadesuit, Bullet, SpadesuitInput, SpadesuitReport};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{divisors, gcd, mobius, ramanujan_sum, totient};
use crate::matrix::Matrix;
use crate::numeric::{rational_to_f64, zeta_f64, HpComplex, Precision, ZetaTable};
use crate::ring::{Field, Involution, Rationals, Ring};
use crate::{Error, Result};

#[derive(Debug)]
struct FieldData {
    m: u64,
    degree: usize,
    units: Vec<u64>,
    /// Coefficients of the cyclotomic polynomial, constant term first.
    cyclotomic: Vec<BigInt>,
    /// Power-basis coordinates of `zeta^t` for `0 <= t < m`.
    powers: Vec<Vec<BigInt>>,
}

/// The field `Q(zeta_m)`. Cheap to clone.
#[derive(Clone, Debug)]
pub struct CycloField {
    inner: Arc<FieldData>,
}

impl PartialEq for CycloField {
    fn eq(&self, other: &Self) -> bool {
        self.inner.m == other.inner.m
    }
}

impl Eq for CycloField {}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact quotient of integer polynomials by a monic divisor.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let mut q = vec![BigInt::zero(); num.len() - dn];
    for i in (0..q.len()).rev() {
        let c = rem[i + dn].clone();
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= &c * d;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    q
}

fn x_pow_minus_one(d: u64) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); d as usize + 1];
    v[0] = BigInt::from(-1);
    v[d as usize] = BigInt::one();
    v
}

/// `Phi_m(x) = prod_{d | m} (x^d - 1)^{mu(m/d)}`.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    let mut num = vec![BigInt::one()];
    let mut den = vec![BigInt::one()];
    for d in divisors(m) {
        match mobius(m / d) {
            1 => num = poly_mul(&num, &x_pow_minus_one(d)),
            -1 => den = poly_mul(&den, &x_pow_minus_one(d)),
            _ => {}
        }
    }
    poly_div_exact(&num, &den)
}

impl CycloField {
    pub fn new(m: u64) -> Result<Self> {
        if m < 3 || m % 4 == 2 {
            return Err(Error::InvalidModulus(m));
        }
        let degree = totient(m) as usize;
        let units: Vec<u64> = (1..m).filter(|&k| gcd(k, m) == 1).collect();
        let cyclotomic = cyclotomic_polynomial(m);
        let mut powers = Vec::with_capacity(m as usize);
        let mut cur = vec![BigInt::zero(); degree];
        cur[0] = BigInt::one();
        for _ in 0..m {
            powers.push(cur.clone());
            // multiply by x and reduce with the monic relation
            let top = cur[degree - 1].clone();
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = BigInt::zero();
            if !top.is_zero() {
                for (i, c) in cyclotomic.iter().take(degree).enumerate() {
                    cur[i] -= &top * c;
                }
            }
        }
        Ok(CycloField {
            inner: Arc::new(FieldData {
                m,
                degree,
                units,
                cyclotomic,
                powers,
            }),
        })
    }

    pub fn m(&self) -> u64 {
        self.inner.m
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    /// Residues `k` in `(Z/m)^*`, increasing.
    pub fn units(&self) -> &[u64] {
        &self.inner.units
    }

    pub fn embeddings(&self) -> Vec<EmbeddingId> {
        self.units()
            .iter()
            .map(|&k| EmbeddingId::new_unchecked(k))
            .collect()
    }

    pub fn cyclotomic(&self) -> &[BigInt] {
        &self.inner.cyclotomic
    }

    pub fn is_unit(&self, k: u64) -> bool {
        k < self.m() && gcd(k, self.m()) == 1
    }

    pub fn embedding(&self, k: u64) -> Result<EmbeddingId> {
        if self.is_unit(k) {
            Ok(EmbeddingId::new_unchecked(k))
        } else {
            Err(Error::NotAUnit { k, m: self.m() })
        }
    }

    pub fn element(&self, coords: Vec<BigRational>) -> CycloElement {
        self.from_coeffs(&coords)
    }

    /// `sum_t coeffs[t] zeta^t` for a coefficient list of any length.
    pub fn from_coeffs(&self, coeffs: &[BigRational]) -> CycloElement {
        let m = self.m() as usize;
        let mut coords = vec![BigRational::zero(); self.degree()];
        for (t, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, p) in self.inner.powers[t % m].iter().enumerate() {
                if !p.is_zero() {
                    coords[i] += c * BigRational::from_integer(p.clone());
                }
            }
        }
        CycloElement {
            field: self.clone(),
            coords,
        }
    }

    pub fn from_integer_coeffs(&self, coeffs: &[i64]) -> CycloElement {
        let q: Vec<BigRational> = coeffs
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect();
        self.from_coeffs(&q)
    }

    pub fn rational(&self, r: BigRational) -> CycloElement {
        let mut coords = vec![BigRational::zero(); self.degree()];
        coords[0] = r;
        CycloElement {
            field: self.clone(),
            coords,
        }
    }

    pub fn int(&self, n: i64) -> CycloElement {
        self.rational(BigRational::from_integer(n.into()))
    }

    /// `zeta^t` for any integer exponent.
    pub fn zeta_pow(&self, t: i64) -> CycloElement {
        let m = self.m() as i64;
        let coords = self.inner.powers[t.rem_euclid(m) as usize]
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        CycloElement {
            field: self.clone(),
            coords,
        }
    }

    pub fn zeta(&self) -> CycloElement {
        self.zeta_pow(1)
    }

    /// `zeta - zeta^{-1}`: purely imaginary at every embedding, and a unit
    /// away from primes dividing `m`.
    pub fn imaginary_unit_like(&self) -> CycloElement {
        &self.zeta() - &self.zeta_pow(-1)
    }

    /// Exact `tr(zeta^t)`.
    pub fn trace_of_power(&self, t: i64) -> BigRational {
        let m = self.m() as i64;
        BigRational::from_integer(ramanujan_sum(self.m(), t.rem_euclid(m) as u64).into())
    }

    fn check(&self, other: &CycloField) {
        assert!(
            self == other,
            "{}",
            Error::FieldMismatch(self.m(), other.m())
        );
    }
}

/// An element of `Q(zeta_m)`.
#[derive(Clone, PartialEq, Eq)]
pub struct CycloElement {
    field: CycloField,
    coords: Vec<BigRational>,
}

impl CycloElement {
    pub fn field(&self) -> &CycloField {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(Zero::is_zero)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self * other)
    }

    pub fn same_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.m(), other.field.m()));
        }
        Ok(())
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CycloElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| c * r).collect(),
        }
    }

    /// Image under `zeta -> zeta^{m-1}`.
    pub fn conj(&self) -> Self {
        let m = self.field.m() as usize;
        let mut coeffs = vec![BigRational::zero(); m];
        for (t, c) in self.coords.iter().enumerate() {
            coeffs[(m - t) % m] += c;
        }
        self.field.from_coeffs(&coeffs)
    }

    /// `tr_{L/Q}`, exact.
    pub fn trace(&self) -> BigRational {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(t, c)| c * self.field.trace_of_power(t as i64))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// Matrix of multiplication by `self` on the power basis (columns are
    /// images of basis vectors).
    pub fn multiplication_matrix(&self) -> Matrix<BigRational> {
        let d = self.field.degree();
        let cols: Vec<Vec<BigRational>> = (0..d)
            .map(|j| (self * &self.field.zeta_pow(j as i64)).coords)
            .collect();
        Matrix::from_fn(d, d, |i, j| cols[j][i].clone())
    }

    /// `N_{L/Q}`, exact.
    pub fn norm(&self) -> BigRational {
        self.multiplication_matrix().det_field(&Rationals)
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut e0 = vec![BigRational::zero(); self.field.degree()];
        e0[0] = BigRational::one();
        let coords = self.multiplication_matrix().solve(&Rationals, &e0)?;
        Some(CycloElement {
            field: self.field.clone(),
            coords,
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        self.field.pow(self, e)
    }

    /// `true` iff every coordinate has no `p` in its denominator.
    pub fn is_p_integral(&self, p: u64) -> bool {
        let p = BigInt::from(p);
        self.coords.iter().all(|c| !(c.denom() % &p).is_zero())
    }

    /// `sigma_k(self)` in double precision.
    pub fn embed_f64(&self, k: u64) -> Complex64 {
        let m = self.field.m();
        self.coords
            .iter()
            .enumerate()
            .map(|(t, c)| zeta_f64(m, k, t as u64) * rational_to_f64(c))
            .sum()
    }

    /// `sigma_k(self)` at the requested precision.
    pub fn embed(&self, k: u64, precision: Precision) -> HpComplex {
        ZetaTable::new(self.field.m(), k, precision).eval(&self.coords)
    }
}

impl fmt::Debug for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in Q(zeta_{})", self, self.field.m())
    }
}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (t, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mon = match t {
                0 => String::new(),
                1 => "zeta".to_string(),
                _ => format!("zeta^{t}"),
            };
            if t == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mon}")?;
            } else {
                write!(f, "{mag}*{mon}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for &CycloElement {
    type Output = CycloElement;
    fn add(self, rhs: &CycloElement) -> CycloElement {
        self.field.check(&rhs.field);
        CycloElement {
            field: self.field.clone(),
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CycloElement {
    type Output = CycloElement;
    fn sub(self, rhs: &CycloElement) -> CycloElement {
        self.field.check(&rhs.field);
        CycloElement {
            field: self.field.clone(),
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &CycloElement {
    type Output = CycloElement;
    fn neg(self) -> CycloElement {
        CycloElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &CycloElement {
    type Output = CycloElement;
    fn mul(self, rhs: &CycloElement) -> CycloElement {
        self.field.check(&rhs.field);
        let d = self.field.degree();
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        self.field.from_coeffs(&prod)
    }
}

impl Ring for CycloField {
    type Elem = CycloElement;

    fn zero(&self) -> CycloElement {
        self.int(0)
    }
    fn one(&self) -> CycloElement {
        self.int(1)
    }
    fn add(&self, a: &CycloElement, b: &CycloElement) -> CycloElement {
        a + b
    }
    fn neg(&self, a: &CycloElement) -> CycloElement {
        -a
    }
    fn mul(&self, a: &CycloElement, b: &CycloElement) -> CycloElement {
        a * b
    }
    fn sub(&self, a: &CycloElement, b: &CycloElement) -> CycloElement {
        a - b
    }
    fn is_zero(&self, a: &CycloElement) -> bool {
        a.is_zero()
    }
    fn from_i64(&self, n: i64) -> CycloElement {
        self.int(n)
    }
}

impl Field for CycloField {
    fn inv(&self, a: &CycloElement) -> Option<CycloElement> {
        a.inv()
    }
}

impl Involution for CycloField {
    fn conj(&self, a: &CycloElement) -> CycloElement {
        a.conj()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rational;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        rational(n, 1)
    }

    #[test]
    fn rejects_bad_moduli() {
        assert_eq!(CycloField::new(6).unwrap_err(), Error::InvalidModulus(6));
        assert!(CycloField::new(2).is_err());
        assert!(CycloField::new(12).is_ok());
    }

    #[test]
    fn cyclotomic_polynomials() {
        let as_i64 = |m| -> Vec<i64> {
            cyclotomic_polynomial(m)
                .iter()
                .map(|c| i64::try_from(c).unwrap())
                .collect()
        };
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(as_i64(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn conj_examples() {
        let l = CycloField::new(4).unwrap();
        let i = l.zeta();
        assert_eq!(i.conj(), -&i);
        assert_eq!(l.int(3).conj(), l.int(3));
        let l5 = CycloField::new(5).unwrap();
        assert_eq!(l5.zeta().conj().coords(), &[q(-1), q(-1), q(-1), q(-1)]);
    }

    #[test]
    fn trace_examples() {
        let l = CycloField::new(4).unwrap();
        assert_eq!(l.int(1).trace(), q(2));
        assert_eq!(l.zeta().trace(), q(0));
        let l5 = CycloField::new(5).unwrap();
        assert_eq!(l5.zeta().trace(), q(-1));
    }

    #[test]
    fn norm_and_inverse() {
        let l = CycloField::new(4).unwrap();
        let x = l.from_integer_coeffs(&[1, 1]);
        assert_eq!(x.norm(), q(2));
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, l.int(1));
        let l5 = CycloField::new(5).unwrap();
        assert_eq!(l5.imaginary_unit_like().norm(), q(5));
        assert!(l5.zero().inv().is_none());
    }

    #[test]
    fn p_integrality() {
        let l = CycloField::new(5).unwrap();
        let x = l.element(vec![rational(1, 3), q(2), q(0), rational(5, 2)]);
        assert!(x.is_p_integral(5));
        assert!(!x.is_p_integral(3));
        assert!(!x.is_p_integral(2));
    }

    #[test]
    fn display() {
        let l = CycloField::new(5).unwrap();
        assert_eq!(
            l.from_integer_coeffs(&[0, 0, 0, 0, 1]).to_string(),
            "-1 - zeta - zeta^2 - zeta^3"
        );
        assert_eq!(l.zero().to_string(), "0");
        assert_eq!(
            l.element(vec![q(0), rational(-1, 2), q(0), q(0)])
                .to_string(),
            "-1/2*zeta"
        );
    }

    fn element(m: u64) -> impl Strategy<Value = CycloElement> {
        let l = CycloField::new(m).unwrap();
        let d = l.degree();
        proptest::collection::vec((-20i64..20, 1i64..6), d)
            .prop_map(move |v| l.element(v.into_iter().map(|(a, b)| rational(a, b)).collect()))
    }

    fn pair() -> impl Strategy<Value = (CycloElement, CycloElement)> {
        prop_oneof![Just(4u64), Just(5), Just(7), Just(8), Just(12)]
            .prop_flat_map(|m| (element(m), element(m)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(250))]

        #[test]
        fn conj_is_a_ring_involution((x, y) in pair()) {
            prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
            prop_assert_eq!((&x + &y).conj(), &x.conj() + &y.conj());
            prop_assert_eq!(x.conj().conj(), x.clone());
        }

        #[test]
        fn ring_axioms((x, y) in pair(), z_seed in 0i64..7) {
            let z = x.field().zeta_pow(z_seed);
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &y, &y * &x);
        }

        #[test]
        fn trace_matches_embeddings((x, _y) in pair()) {
            let field = x.field().clone();
            let numeric: f64 = field.units().iter().map(|&k| x.embed_f64(k).re).sum();
            let exact = rational_to_f64(&x.trace());
            prop_assert!((numeric - exact).abs() < 1e-9 * (1.0 + exact.abs()));
        }

        #[test]
        fn norm_form_is_nonnegative((x, _y) in pair()) {
            let xx = &x * &x.conj();
            for &k in x.field().units() {
                let z = xx.embed_f64(k);
                prop_assert!(z.re > -1e-9 && z.im.abs() < 1e-9 * (1.0 + z.re));
            }
        }

        #[test]
        fn inverse_round_trip((x, _y) in pair()) {
            prop_assume!(!x.is_zero());
            let inv = x.inv().unwrap();
            prop_assert_eq!(&x * &inv, x.field().int(1));
        }
    }
}
