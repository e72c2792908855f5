//! Signatures of `i * Psi_sigma`.
//!
//! The exact route: take the characteristic polynomial of `Psi` over `L`,
//! push it through `sigma` and rotate it into the characteristic polynomial
//! of the Hermitian matrix `i Psi_sigma`. That polynomial is real-rooted, so
//! Descartes' rule of signs counts its positive roots exactly. Only the signs
//! of its coefficients are needed, and each one is either exactly zero
//! (decided in `L`) or certified numerically with increasing precision.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use num_rational::BigRational;

use crate::cyclofield::{CycloElement, CycloField, EmbeddingId};
use crate::matrix::Matrix;
use crate::numeric::{Precision, ZetaTable};
use crate::ring::Ring;
use crate::{Error, Result};

use super::{CMTraceVector, HermitianModule};

/// Coefficients `c_0, ..., c_n` of `det(x I - A)`, by Faddeev–LeVerrier.
pub fn characteristic_polynomial(
    field: &CycloField,
    a: &Matrix<CycloElement>,
) -> Vec<CycloElement> {
    let n = a.rows();
    let mut c = vec![field.zero(); n + 1];
    c[n] = field.one();
    let mut m = Matrix::zeros(field, n, n);
    for k in 1..=n {
        m = a
            .mul(field, &m)
            .add(field, &Matrix::scalar(field, n, &c[n - k + 1]));
        let t = a.mul(field, &m).trace(field);
        let inv_k = BigRational::new((-1).into(), (k as i64).into());
        c[n - k] = t.scale(&inv_k);
    }
    c
}

/// Per-embedding `(p_sigma, q_sigma)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureProfile {
    entries: BTreeMap<EmbeddingId, (usize, usize)>,
}

impl SignatureProfile {
    pub fn get(&self, sigma: EmbeddingId) -> Option<(usize, usize)> {
        self.entries.get(&sigma).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (EmbeddingId, (usize, usize))> + '_ {
        self.entries.iter().map(|(&s, &pq)| (s, pq))
    }

    /// The CM-trace vector of positive parts, `sigma -> p_sigma`.
    pub fn positive_parts(&self, field: &CycloField) -> CMTraceVector {
        CMTraceVector::from_fn(field, |s| self.entries[&s].0 as i64)
    }
}

/// Which part of `sigma(c)` a real coefficient reads, and with what sign.
enum Part {
    Re(i8),
    Im(i8),
}

fn certified_sign(e: &CycloElement, k: u64, part: &Part, start: Precision) -> Result<i8> {
    let mut prec = start;
    loop {
        let table = ZetaTable::new(e.field().m(), k, prec);
        let z = table.eval(e.coords());
        let v = match part {
            Part::Re(_) => z.re,
            Part::Im(_) => z.im,
        };
        let err = table.error_bound(e.coords());
        if v.abs() > err {
            return Ok(if v.is_negative() { -1 } else { 1 });
        }
        prec = prec.doubled().ok_or(Error::PrecisionExhausted(k))?;
    }
}

/// Signs of the real coefficients of `det(x I - i Psi_sigma)` from the
/// characteristic polynomial of `Psi` over `L`.
fn hermitian_coefficient_signs(
    charpoly: &[CycloElement],
    k: u64,
    precision: Precision,
) -> Result<Vec<i8>> {
    let n = charpoly.len() - 1;
    charpoly
        .iter()
        .enumerate()
        .map(|(j, c)| {
            // det(x - iA) = i^n chi_A(-i x), so a_j = i^{n+3j} sigma(c_j)
            let part = match (n + 3 * j) % 4 {
                0 => Part::Re(1),
                1 => Part::Im(-1),
                2 => Part::Re(-1),
                _ => Part::Im(1),
            };
            // Re sigma(c) vanishes iff c + c* = 0, Im sigma(c) iff c - c* = 0
            let e = match part {
                Part::Re(_) => c + &c.conj(),
                Part::Im(_) => c - &c.conj(),
            };
            if e.is_zero() {
                return Ok(0);
            }
            let flip = match part {
                Part::Re(s) | Part::Im(s) => s,
            };
            Ok(flip * certified_sign(&e, k, &part, precision)?)
        })
        .collect()
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let nonzero: Vec<i8> = signs.filter(|&s| s != 0).collect();
    nonzero.windows(2).filter(|w| w[0] != w[1]).count()
}

fn signature_from_charpoly(
    charpoly: &[CycloElement],
    sigma: EmbeddingId,
    precision: Precision,
) -> Result<(usize, usize)> {
    let n = charpoly.len() - 1;
    if charpoly[0].is_zero() {
        return Err(Error::SingularAtEmbedding(sigma.k()));
    }
    let signs = hermitian_coefficient_signs(charpoly, sigma.k(), precision)?;
    let positive = sign_changes(signs.iter().copied());
    let negative = sign_changes(
        signs
            .iter()
            .enumerate()
            .map(|(j, &s)| if j % 2 == 1 { -s } else { s }),
    );
    debug_assert_eq!(
        positive + negative,
        n,
        "Hermitian polynomial must be real-rooted"
    );
    Ok((positive, negative))
}

/// `(p_sigma, q_sigma)`: the numbers of positive and negative eigenvalues of
/// `i Psi_sigma`.
pub fn signature_at(
    h: &HermitianModule,
    sigma: EmbeddingId,
    precision: Precision,
) -> Result<(usize, usize)> {
    check_embedding(h.field(), sigma)?;
    let cp = characteristic_polynomial(h.field(), h.gram());
    signature_from_charpoly(&cp, sigma, precision)
}

pub fn signature_profile(h: &HermitianModule, precision: Precision) -> Result<SignatureProfile> {
    let cp = characteristic_polynomial(h.field(), h.gram());
    let entries = h
        .field()
        .embeddings()
        .into_iter()
        .map(|s| Ok((s, signature_from_charpoly(&cp, s, precision)?)))
        .collect::<Result<_>>()?;
    Ok(SignatureProfile { entries })
}

/// `true` iff `p_sigma` equals the coefficient of `phi` at every `sigma`.
pub fn compatible(h: &HermitianModule, phi: &CMTraceVector, precision: Precision) -> Result<bool> {
    let profile = signature_profile(h, precision)?;
    let ok = profile.iter().all(|(s, (p, _))| phi.coeff(s) == p as i64);
    Ok(ok)
}

fn check_embedding(field: &CycloField, sigma: EmbeddingId) -> Result<()> {
    field.embedding(sigma.k()).map(|_| ())
}

/// `i Psi_sigma` as a double-precision complex matrix.
pub fn hermitian_at(gram: &Matrix<CycloElement>, k: u64) -> DMatrix<Complex64> {
    DMatrix::from_fn(gram.rows(), gram.cols(), |i, j| {
        Complex64::i() * gram[(i, j)].embed_f64(k)
    })
}

/// Eigenvalues of `i Psi_sigma` in double precision, ascending.
pub fn hermitian_eigenvalues(gram: &Matrix<CycloElement>, k: u64) -> Vec<f64> {
    let h = hermitian_at(gram, k);
    if h.nrows() == 0 {
        return Vec::new();
    }
    let mut ev: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Floating-point signature through a Hermitian eigensolver. Independent
/// of [`signature_at`]; eigenvalues within `1e-9` (relative) of zero are
/// reported as singular.
pub fn signature_at_numeric(h: &HermitianModule, sigma: EmbeddingId) -> Result<(usize, usize)> {
    check_embedding(h.field(), sigma)?;
    let ev = hermitian_eigenvalues(h.gram(), sigma.k());
    let scale = ev
        .iter()
        .fold(0f64, |a, v| a.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    if ev.iter().any(|v| v.abs() <= 1e-9 * scale) {
        return Err(Error::SingularAtEmbedding(sigma.k()));
    }
    let p = ev.iter().filter(|&&v| v > 0.0).count();
    Ok((p, ev.len() - p))
}
