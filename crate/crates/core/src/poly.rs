//! Sparse multivariate polynomials with integer coefficients.
//!
//! Terms are stored in a `BTreeMap` keyed by [`Monomial`], so iteration
//! order, equality and rendering are canonical. Identities checked over this
//! ring are polynomial identities, not sampled ones.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::ring::Ring;

/// Sorted `(variable, exponent)` pairs with positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(u16, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(index: u16) -> Self {
        Monomial(vec![(index, 1)])
    }

    pub fn factors(&self) -> &[(u16, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn var(index: u16) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(index), BigInt::one());
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// True when every term has degree exactly one (a linear form).
    pub fn is_linear_form(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 1)
    }

    /// Variables occurring with nonzero coefficient.
    pub fn variables(&self) -> Vec<u16> {
        let mut vars: Vec<u16> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|&(v, _)| v))
            .collect();
        vars.sort_unstable();
        vars.dedup();
        vars
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// Substitute integer values for the variables.
    pub fn evaluate(&self, values: &[BigInt]) -> BigInt {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.factors().iter().fold(c.clone(), |acc, &(v, e)| {
                    acc * num_traits::pow(values[v as usize].clone(), e as usize)
                })
            })
            .sum()
    }
}

/// Polynomial ring over `Z` with named indeterminates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    names: Vec<String>,
}

impl PolyRing {
    pub fn new(names: Vec<String>) -> Self {
        assert!(names.len() <= u16::MAX as usize, "too many indeterminates");
        PolyRing { names }
    }

    /// Indeterminates `{prefix}{start}`, `{prefix}{start+1}`, ...
    pub fn with_prefix(prefix: &str, start: usize, count: usize) -> Self {
        PolyRing::new(
            (start..start + count)
                .map(|i| format!("{prefix}{i}"))
                .collect(),
        )
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn var(&self, index: usize) -> Poly {
        assert!(
            index < self.names.len(),
            "indeterminate {index} out of range"
        );
        Poly::var(index as u16)
    }

    pub fn vars(&self) -> Vec<Poly> {
        (0..self.names.len()).map(|i| self.var(i)).collect()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn render(&self, p: &Poly) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in p.terms().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    s.push('-');
                }
            } else {
                s.push_str(if negative { " - " } else { " + " });
            }
            let abs = c.abs();
            let is_unit = abs.is_one();
            if m.factors().is_empty() {
                let _ = write!(s, "{abs}");
                continue;
            }
            if !is_unit {
                let _ = write!(s, "{abs}*");
            }
            let parts: Vec<String> = m
                .factors()
                .iter()
                .map(|&(v, e)| {
                    let name = self
                        .names
                        .get(v as usize)
                        .map(String::as_str)
                        .unwrap_or("?");
                    if e == 1 {
                        name.to_string()
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            s.push_str(&parts.join("*"));
        }
        s
    }
}

impl Ring for PolyRing {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Poly::zero()
    }
    fn one(&self) -> Poly {
        Poly::constant(1)
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b)
    }
    fn neg(&self, a: &Poly) -> Poly {
        a.neg()
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul(b)
    }
    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
    fn from_i64(&self, n: i64) -> Poly {
        Poly::constant(n)
    }
}
