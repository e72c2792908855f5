//! Complex embeddings and CM types.

use std::collections::BTreeSet;
use std::fmt;

use crate::numeric::{HpComplex, Precision, ZetaTable};
use crate::{Error, Result};

use super::{CycloElement, CycloField};

/// The embedding `sigma_k : zeta -> exp(2 pi i k / m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EmbeddingId {
    k: u64,
}

impl EmbeddingId {
    pub(crate) fn new_unchecked(k: u64) -> Self {
        EmbeddingId { k }
    }

    pub fn k(self) -> u64 {
        self.k
    }

    /// `sigma_k` composed with complex conjugation, i.e. `sigma_{m-k}`.
    pub fn conj(self, m: u64) -> Self {
        EmbeddingId { k: m - self.k }
    }
}

impl fmt::Display for EmbeddingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sigma_{}", self.k)
    }
}

/// One embedding out of each conjugate pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CMType {
    field: CycloField,
    members: BTreeSet<u64>,
}

impl CMType {
    pub fn new(field: &CycloField, members: impl IntoIterator<Item = u64>) -> Result<Self> {
        let m = field.m();
        let members: BTreeSet<u64> = members.into_iter().collect();
        for &k in &members {
            if !field.is_unit(k) {
                return Err(Error::NotAUnit { k, m });
            }
        }
        for &k in field.units() {
            let both = members.contains(&k) && members.contains(&(m - k));
            let neither = !members.contains(&k) && !members.contains(&(m - k));
            if both || neither {
                return Err(Error::NotACmType(format!(
                    "exactly one of {k} and {} must be chosen modulo {m}",
                    m - k
                )));
            }
        }
        Ok(CMType {
            field: field.clone(),
            members,
        })
    }

    /// Every CM type of the field, ordered by the bitmask over the
    /// representatives `k < m/2`.
    pub fn all(field: &CycloField) -> Vec<CMType> {
        let m = field.m();
        let reps: Vec<u64> = field
            .units()
            .iter()
            .copied()
            .filter(|&k| 2 * k < m)
            .collect();
        (0u64..1 << reps.len())
            .map(|mask| {
                let members =
                    reps.iter()
                        .enumerate()
                        .map(|(i, &k)| if mask >> i & 1 == 0 { k } else { m - k });
                CMType::new(field, members).expect("one from each pair")
            })
            .collect()
    }

    pub fn field(&self) -> &CycloField {
        &self.field
    }

    pub fn members(&self) -> &BTreeSet<u64> {
        &self.members
    }

    pub fn contains(&self, sigma: EmbeddingId) -> bool {
        self.members.contains(&sigma.k())
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The complementary CM type `Phi*`.
    pub fn conjugate(&self) -> CMType {
        let m = self.field.m();
        CMType {
            field: self.field.clone(),
            members: self.members.iter().map(|&k| m - k).collect(),
        }
    }

    /// `sum_{sigma in Phi} sigma(x)` at the given precision.
    pub fn cm_trace(&self, x: &CycloElement, precision: Precision) -> Result<HpComplex> {
        if x.field() != &self.field {
            return Err(Error::FieldMismatch(x.field().m(), self.field.m()));
        }
        let p = precision.get();
        Ok(self.members.iter().fold(HpComplex::zero(p), |acc, &k| {
            acc.add(
                &ZetaTable::new(self.field.m(), k, precision).eval(x.coords()),
                p,
            )
        }))
    }
}

impl fmt::Display for CMType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(|k| k.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::bf_to_f64;
    use crate::ring::rational;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn close(z: &HpComplex, w: Complex64, tol: f64) -> bool {
        (z.to_complex64() - w).norm() < tol
    }

    #[test]
    fn validation() {
        let l = CycloField::new(5).unwrap();
        assert!(CMType::new(&l, [1, 2]).is_ok());
        assert!(matches!(CMType::new(&l, [1, 4]), Err(Error::NotACmType(_))));
        assert!(matches!(CMType::new(&l, [1]), Err(Error::NotACmType(_))));
        assert_eq!(
            CMType::new(&l, [1, 5]).unwrap_err(),
            Error::NotAUnit { k: 5, m: 5 }
        );
        assert_eq!(CMType::all(&l).len(), 4);
        assert_eq!(CMType::all(&CycloField::new(8).unwrap()).len(), 4);
        assert_eq!(CMType::all(&CycloField::new(4).unwrap()).len(), 2);
    }

    #[test]
    fn cm_trace_examples() {
        let l4 = CycloField::new(4).unwrap();
        let phi = CMType::new(&l4, [1]).unwrap();
        let t = phi.cm_trace(&l4.zeta(), Precision::default()).unwrap();
        assert!(close(&t, Complex64::i(), 1e-15));

        let l5 = CycloField::new(5).unwrap();
        for phi in CMType::all(&l5) {
            let t = phi.cm_trace(&l5.int(1), Precision::default()).unwrap();
            assert!(close(&t, Complex64::new(2.0, 0.0), 1e-15));
        }
        let phi = CMType::new(&l5, [1, 2]).unwrap();
        let t = phi.cm_trace(&l5.zeta(), Precision::digits(40)).unwrap();
        let tau = std::f64::consts::TAU;
        let expect =
            Complex64::from_polar(1.0, tau / 5.0) + Complex64::from_polar(1.0, 2.0 * tau / 5.0);
        assert!(close(&t, expect, 1e-15));
    }

    #[test]
    fn deterministic_for_fixed_precision() {
        let l = CycloField::new(7).unwrap();
        let phi = CMType::all(&l)[3].clone();
        let x = l.element(vec![
            rational(1, 3),
            rational(-2, 1),
            rational(0, 1),
            rational(5, 7),
            rational(1, 1),
            rational(0, 1),
        ]);
        let a = phi
            .cm_trace(&x, Precision::bits(256))
            .unwrap()
            .to_decimal(60);
        let b = phi
            .cm_trace(&x, Precision::bits(256))
            .unwrap()
            .to_decimal(60);
        assert_eq!(a, b);
    }

    fn elements() -> impl Strategy<Value = CycloElement> {
        prop_oneof![Just(4u64), Just(5), Just(8)].prop_flat_map(|m| {
            let l = CycloField::new(m).unwrap();
            proptest::collection::vec((-50i64..50, 1i64..9), l.degree())
                .prop_map(move |v| l.element(v.into_iter().map(|(a, b)| rational(a, b)).collect()))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn split_trace_adds_up(x in elements(), pick in 0usize..8) {
            let l = x.field().clone();
            let all = CMType::all(&l);
            let phi = &all[pick % all.len()];
            let prec = Precision::digits(40);
            let s = phi.cm_trace(&x, prec).unwrap().add(&phi.conjugate().cm_trace(&x, prec).unwrap(), prec.get());
            let exact = crate::numeric::rational_to_bf(&x.trace(), prec.get());
            let diff = s.re.sub(&exact, prec.get(), astro_float::RoundingMode::ToEven);
            prop_assert!(bf_to_f64(&diff).abs() < 1e-30);
            prop_assert!(bf_to_f64(&s.im).abs() < 1e-30);
        }
    }
}
