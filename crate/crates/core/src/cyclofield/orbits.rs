//! Orbits of multiplication by `p` on `(Z/m)^*`.
//!
//! For `p` prime to `m` these label the primes of `Q(zeta_m)` above `p`:
//! the prime `sigma_k^{-1}(P)` for a fixed `P` depends only on the coset
//! `k<p>`.

use crate::arith::{gcd, is_prime};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusOrbitPartition {
    m: u64,
    p: u64,
    /// Each orbit lists `k, pk, p^2 k, ...` starting from its least element;
    /// orbits are sorted by that least element.
    orbits: Vec<Vec<u64>>,
}

pub fn frobenius_orbits(m: u64, p: u64) -> Result<FrobeniusOrbitPartition> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m.is_multiple_of(p) {
        return Err(Error::RamifiedPrime { p, m });
    }
    let mut seen = vec![false; m as usize];
    let mut orbits = Vec::new();
    for k in (1..m).filter(|&k| gcd(k, m) == 1) {
        if seen[k as usize] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut j = k;
        while !seen[j as usize] {
            seen[j as usize] = true;
            orbit.push(j);
            j = (j * p) % m;
        }
        orbits.push(orbit);
    }
    Ok(FrobeniusOrbitPartition { m, p, orbits })
}

impl FrobeniusOrbitPartition {
    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn orbits(&self) -> &[Vec<u64>] {
        &self.orbits
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    /// Common orbit size, the residue degree of `p`.
    pub fn orbit_size(&self) -> usize {
        self.orbits.first().map_or(0, Vec::len)
    }

    /// Index of the orbit containing the unit `k`.
    pub fn orbit_of(&self, k: u64) -> Option<usize> {
        self.orbits.iter().position(|o| o.contains(&(k % self.m)))
    }

    /// Index of the orbit `-O` for orbit `i`.
    pub fn conjugate_orbit(&self, i: usize) -> usize {
        self.orbit_of(self.m - self.orbits[i][0])
            .expect("units are closed under negation")
    }
}
