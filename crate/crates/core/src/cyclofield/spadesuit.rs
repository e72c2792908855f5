//! The four hypotheses on `(Phi0, Phin, p, l, forms)` that make the integral
//! model well behaved.
//!
//! Primes of `L` above `p` are labeled by Frobenius orbits: the prime
//! `sigma_k^{-1}(P)` is the coset `k<p>` (see [`super::frobenius_orbits`]).

use std::collections::BTreeSet;

use crate::arith::{gcd, is_prime};
use crate::hodge::HermitianModule;
use crate::pairings::{trace_gram, Perfectness};
use crate::{Error, Result};

use super::{frobenius_orbits, CMType};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpadesuitInput {
    pub phi0: CMType,
    pub phin: CMType,
    pub p: u64,
    pub l: u64,
    /// Rank-one module.
    pub gram0: HermitianModule,
    /// Rank-n module.
    pub gram1: HermitianModule,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bullet {
    pub index: u8,
    pub name: &'static str,
    pub holds: bool,
    pub detail: String,
}

/// Data derived when the orbit conditions (bullets 3 and 4) hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitData {
    /// `q_1..q_m`: first the primes of `sigma_1..sigma_r`, then the rest of
    /// `pi`, each as its orbit of residues.
    pub pi: Vec<Vec<u64>>,
    /// `q_1*..q_m*`, aligned with `pi`.
    pub pi_star: Vec<Vec<u64>>,
    /// `|Phin| - |Phi0|`, ascending.
    pub split_embeddings: Vec<u64>,
    pub r: usize,
    /// Number of primes in `pi`.
    pub prime_count: usize,
}

impl SplitData {
    /// Support of the idempotent `e_i` (1-based), as embedding residues.
    pub fn idempotent(&self, i: usize) -> &[u64] {
        &self.pi[i - 1]
    }

    pub fn idempotent_star(&self, i: usize) -> &[u64] {
        &self.pi_star[i - 1]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpadesuitReport {
    pub m: u64,
    pub p: u64,
    pub l: u64,
    pub n: usize,
    pub orbits: Vec<Vec<u64>>,
    pub bullets: Vec<Bullet>,
    pub split: Option<SplitData>,
}

impl SpadesuitReport {
    pub fn all_hold(&self) -> bool {
        self.bullets.iter().all(|b| b.holds)
    }

    pub fn verdicts(&self) -> Vec<bool> {
        self.bullets.iter().map(|b| b.holds).collect()
    }
}

fn perfectness_text(name: &str, p: Result<Perfectness>) -> (bool, String) {
    match p {
        Ok(x) => (
            x.perfect(),
            format!(
                "{name}: v_p(det) = {}, p-integral = {}",
                x.valuation, x.integral
            ),
        ),
        Err(_) => (false, format!("{name}: degenerate")),
    }
}

fn validate(input: &SpadesuitInput) -> Result<()> {
    let field = input.phi0.field();
    let m = field.m();
    for other in [input.phin.field(), input.gram0.field(), input.gram1.field()] {
        if other != field {
            return Err(Error::FieldMismatch(m, other.m()));
        }
    }
    if !is_prime(input.p) {
        return Err(Error::NotPrime(input.p));
    }
    if m.is_multiple_of(input.p) {
        return Err(Error::RamifiedPrime { p: input.p, m });
    }
    if input.l < 3 {
        return Err(Error::InvalidInput(format!("level {} is below 3", input.l)));
    }
    if input.phi0 == input.phin {
        return Err(Error::InvalidInput("the two CM types coincide".into()));
    }
    if input.gram0.rank() != 1 {
        return Err(Error::ShapeMismatch(format!(
            "gram0 has rank {}, expected 1",
            input.gram0.rank()
        )));
    }
    if input.gram1.rank() == 0 {
        return Err(Error::ShapeMismatch("gram1 is empty".into()));
    }
    Ok(())
}

pub fn check_spadesuit(input: &SpadesuitInput) -> Result<SpadesuitReport> {
    validate(input)?;
    let field = input.phi0.field();
    let (m, p) = (field.m(), input.p);
    let part = frobenius_orbits(m, p)?;

    let (ok0, text0) = perfectness_text("gram0", Perfectness::of(&trace_gram(&input.gram0), p));
    let (ok1, text1) = perfectness_text("gram1", Perfectness::of(&trace_gram(&input.gram1), p));
    let b1 = Bullet {
        index: 1,
        name: "perfect pairings at p",
        holds: ok0 && ok1,
        detail: format!("{text0}; {text1}"),
    };

    let g = gcd(p, input.l);
    let b2 = Bullet {
        index: 2,
        name: "p coprime to l",
        holds: g == 1,
        detail: format!("gcd({p}, {}) = {g}", input.l),
    };

    let phi0 = input.phi0.members();
    let star: BTreeSet<usize> = phi0
        .iter()
        .map(|&k| part.orbit_of(k).expect("unit"))
        .collect();
    let covered: BTreeSet<u64> = star
        .iter()
        .flat_map(|&i| part.orbits()[i].iter().copied())
        .collect();
    let holds3 = covered == *phi0;
    let detail3 = if holds3 {
        format!("|Phi0| is the union of {} orbit(s)", star.len())
    } else {
        let extra: Vec<String> = covered.difference(phi0).map(|k| k.to_string()).collect();
        format!(
            "orbits meeting |Phi0| also contain {} outside it",
            extra.join(",")
        )
    };
    let b3 = Bullet {
        index: 3,
        name: "|Phi0| is a union of orbits",
        holds: holds3,
        detail: detail3,
    };

    let split_embeddings: Vec<u64> = input.phin.members().difference(phi0).copied().collect();
    let split_orbits: Vec<usize> = split_embeddings
        .iter()
        .map(|&k| part.orbit_of(k).expect("unit"))
        .collect();
    let distinct: BTreeSet<usize> = split_orbits.iter().copied().collect();
    let holds4 = distinct.len() == split_orbits.len();
    let detail4 = if holds4 {
        format!(
            "r = {} embedding(s) in distinct orbits",
            split_embeddings.len()
        )
    } else {
        let clash = split_embeddings
            .iter()
            .zip(&split_orbits)
            .filter(|(_, o)| split_orbits.iter().filter(|x| x == o).count() > 1)
            .map(|(k, _)| k.to_string())
            .collect::<Vec<_>>()
            .join(",");
        format!("embeddings {clash} share an orbit")
    };
    let b4 = Bullet {
        index: 4,
        name: "primes of |Phin|-|Phi0| distinct",
        holds: holds4,
        detail: detail4,
    };

    let split = (holds3 && holds4).then(|| {
        let mut order: Vec<usize> = split_orbits.clone();
        let mut rest: Vec<usize> = (0..part.len())
            .filter(|&i| !star.contains(&i) && !order.contains(&i))
            .collect();
        rest.sort_unstable();
        order.extend(rest);
        let pi: Vec<Vec<u64>> = order.iter().map(|&i| sorted(&part.orbits()[i])).collect();
        let pi_star: Vec<Vec<u64>> = order
            .iter()
            .map(|&i| sorted(&part.orbits()[part.conjugate_orbit(i)]))
            .collect();
        SplitData {
            prime_count: pi.len(),
            r: split_embeddings.len(),
            pi,
            pi_star,
            split_embeddings: split_embeddings.clone(),
        }
    });

    Ok(SpadesuitReport {
        m,
        p,
        l: input.l,
        n: input.gram1.rank(),
        orbits: part.orbits().to_vec(),
        bullets: vec![b1, b2, b3, b4],
        split,
    })
}

fn sorted(v: &[u64]) -> Vec<u64> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}
