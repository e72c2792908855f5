//! Block matrices of ordinary deformations and the contraction map.
//!
//! An extension of an étale part of height `b` by a connected part of
//! height `a` acts on its Tate module by `[[c1 E_a, C], [0, E_b]]`. For
//! `a = 1`, taking k-th exterior powers gives a block matrix of the same
//! shape whose cocycle block is the contraction of the original row `C`;
//! this module builds both sides and compares them exactly.

use num_bigint::BigInt;
use rand::Rng;

use crate::arith::binomial;
use crate::error::check_range;
use crate::exterior::compound_with;
use crate::instances::trial_rng;
use crate::matrix::Matrix;
use crate::par::Exec;
use crate::poly::{Poly, PolyRing};
use crate::ring::{rational, IntegersModPrimePower, Rationals, Ring};
use crate::subsets::{colex_rank, colex_subsets, SubsetIndex};
use crate::{Error, Result};

/// Deformation parameters: an `a x b` matrix over a coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationParams<E> {
    pub a: usize,
    pub b: usize,
    pub phi: Matrix<E>,
}

impl<E: Clone> DeformationParams<E> {
    pub fn new(a: usize, b: usize, phi: Matrix<E>) -> Result<Self> {
        if phi.rows() != a || phi.cols() != b {
            return Err(Error::ShapeMismatch(format!(
                "parameters are {}x{}, expected {a}x{b}",
                phi.rows(),
                phi.cols()
            )));
        }
        Ok(DeformationParams { a, b, phi })
    }

    /// The `1 x b` case.
    pub fn row(phi: Vec<E>) -> Self {
        let b = phi.len();
        DeformationParams {
            a: 1,
            b,
            phi: Matrix::from_vec(1, b, phi).expect("1 x b"),
        }
    }
}

/// `[[c1 E_a, C], [0, E_b]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationBlock<E> {
    pub a: usize,
    pub b: usize,
    pub c1: E,
    pub c: Matrix<E>,
    pub assembled: Matrix<E>,
}

pub fn assemble_block<R: Ring>(
    ring: &R,
    c1: &R::Elem,
    c: &Matrix<R::Elem>,
    a: usize,
    b: usize,
) -> Result<DeformationBlock<R::Elem>> {
    if c.rows() != a || c.cols() != b {
        return Err(Error::ShapeMismatch(format!(
            "cocycle block is {}x{}, expected {a}x{b}",
            c.rows(),
            c.cols()
        )));
    }
    let assembled = Matrix::from_fn(a + b, a + b, |i, j| match (i < a, j < a) {
        (true, true) if i == j => c1.clone(),
        (true, false) => c[(i, j - a)].clone(),
        (false, false) if i == j => ring.one(),
        _ => ring.zero(),
    });
    Ok(DeformationBlock {
        a,
        b,
        c1: c1.clone(),
        c: c.clone(),
        assembled,
    })
}

/// The `C(b,k-1) x C(b,k)` contraction matrix of `x in R^b`: entry `(I, J)`
/// is `(-1)^{nu-1} x_{j_nu}` when `I = J - {j_nu}`, rows and columns in colex
/// order of subsets of `{1..b}`.
pub fn contraction_matrix<R: Ring>(ring: &R, x: &[R::Elem], k: usize) -> Result<Matrix<R::Elem>> {
    let b = x.len();
    check_range(k, 1, b + 1)?;
    let rows = binomial(b as i64, k as i64 - 1) as usize;
    let cols = colex_subsets(&(1..=b).collect::<Vec<_>>(), k);
    let mut out = Matrix::zeros(ring, rows, cols.len());
    for (col, j) in cols.iter().enumerate() {
        for nu in 0..k {
            let rest: Vec<usize> = j
                .iter()
                .enumerate()
                .filter(|&(t, _)| t != nu)
                .map(|(_, &e)| e - 1)
                .collect();
            let v = &x[j[nu] - 1];
            out.set(
                colex_rank(&rest),
                col,
                if nu % 2 == 0 { v.clone() } else { ring.neg(v) },
            );
        }
    }
    Ok(out)
}

/// Parameters at level `k` obtained by contracting a `1 x b` row.
pub fn contract<R: Ring>(
    ring: &R,
    phi: &DeformationParams<R::Elem>,
    k: usize,
) -> Result<DeformationParams<R::Elem>> {
    if phi.a != 1 {
        return Err(Error::ShapeMismatch(format!(
            "contraction needs a = 1, got a = {}",
            phi.a
        )));
    }
    let row: Vec<R::Elem> = phi.phi.row(0).to_vec();
    let c = contraction_matrix(ring, &row, k)?;
    DeformationParams::new(c.rows(), c.cols(), c)
}

/// Connected and étale heights of the k-th exterior power of a height-n
/// group with one-dimensional connected part.
pub fn wedge_heights(n: usize, k: usize) -> (usize, usize) {
    let (n, k) = (n as i64, k as i64);
    (binomial(n - 1, k - 1) as usize, binomial(n - 1, k) as usize)
}

/// Ordinary iff every étale rank `f_i` equals `n - 1`.
pub fn is_ordinary(f: &[usize], n: usize) -> bool {
    f.iter().all(|&fi| fi + 1 == n)
}

/// The claimed block form of `Lambda^k` of `[[c1, c_2..c_n], [0, E]]`.
pub fn wedge_block<R: Ring>(
    ring: &R,
    n: usize,
    k: usize,
    c1: &R::Elem,
    c: &[R::Elem],
) -> Result<DeformationBlock<R::Elem>> {
    if c.len() + 1 != n {
        return Err(Error::ShapeMismatch(format!(
            "{} cocycle entries for n = {n}",
            c.len()
        )));
    }
    check_range(k, 1, n)?;
    let block = contraction_matrix(ring, c, k)?;
    let (a, b) = wedge_heights(n, k);
    assemble_block(ring, c1, &block, a, b)
}

/// An entry where two sides of an identity differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryWitness {
    pub row: Vec<usize>,
    pub col: Vec<usize>,
    pub expected: String,
    pub found: String,
}

fn first_mismatch<E: Clone + PartialEq>(
    idx: &SubsetIndex,
    lhs: &Matrix<E>,
    rhs: &Matrix<E>,
    show: impl Fn(&E) -> String,
) -> Option<EntryWitness> {
    for i in 0..lhs.rows() {
        for j in 0..lhs.cols() {
            if lhs[(i, j)] != rhs[(i, j)] {
                return Some(EntryWitness {
                    row: idx.get(i).to_vec(),
                    col: idx.get(j).to_vec(),
                    expected: show(&rhs[(i, j)]),
                    found: show(&lhs[(i, j)]),
                });
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VdreiReport {
    pub n: usize,
    pub k: usize,
    pub holds: bool,
    pub entries_checked: usize,
    /// Nonzero cocycle-block entries of the compound that are not linear
    /// forms in `c_2..c_n`.
    pub nonlinear_entries: usize,
    pub witness: Option<EntryWitness>,
}

fn symbolic_row(n: usize) -> (PolyRing, Poly, Vec<Poly>) {
    let ring = PolyRing::with_prefix("c", 1, n);
    let vars = ring.vars();
    (ring, vars[0].clone(), vars[1..].to_vec())
}

/// Compares `Lambda^k` of the symbolic block `[[c1, c_2..c_n], [0, E]]`
/// (computed as a compound matrix) with [`wedge_block`], as an identity of
/// polynomials.
pub fn verify_vdrei(n: usize, k: usize, exec: Exec) -> Result<VdreiReport> {
    check_range(k, 1, n)?;
    let (ring, c1, c) = symbolic_row(n);
    let rho = assemble_block(
        &ring,
        &c1,
        &Matrix::from_vec(1, n - 1, c.clone())?,
        1,
        n - 1,
    )?;
    let lhs = compound_with(&ring, &rho.assembled, k, exec)?;
    let rhs = wedge_block(&ring, n, k, &c1, &c)?;
    let idx = SubsetIndex::new(n, k)?;
    let split = idx.split();
    let nonlinear_entries = (0..split)
        .flat_map(|i| (split..idx.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| !lhs[(i, j)].is_zero() && !lhs[(i, j)].is_linear_form())
        .count();
    let witness = first_mismatch(&idx, &lhs, &rhs.assembled, |p| ring.render(p));
    Ok(VdreiReport {
        n,
        k,
        holds: witness.is_none(),
        entries_checked: idx.len() * idx.len(),
        nonlinear_entries,
        witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VzehnReport {
    pub b: usize,
    pub k: usize,
    /// Block built from the contracted parameters equals [`wedge_block`].
    pub contracted_matches_wedge_block: bool,
    /// ... and equals the compound of the level-one block.
    pub contracted_matches_compound: bool,
    pub witness: Option<EntryWitness>,
}

impl VzehnReport {
    pub fn holds(&self) -> bool {
        self.contracted_matches_wedge_block && self.contracted_matches_compound
    }
}

/// Checks that the block assembled from `contract(phi, k)` is the k-th
/// exterior power of the block assembled from `phi`, over any ring.
pub fn verify_vzehn_in<R: Ring>(
    ring: &R,
    c1: &R::Elem,
    phi: &[R::Elem],
    k: usize,
    exec: Exec,
    show: impl Fn(&R::Elem) -> String,
) -> Result<VzehnReport> {
    let b = phi.len();
    check_range(k, 1, b + 1)?;
    let params = DeformationParams::row(phi.to_vec());
    let contracted = contract(ring, &params, k)?;
    let lhs = assemble_block(ring, c1, &contracted.phi, contracted.a, contracted.b)?;
    let wedge = wedge_block(ring, b + 1, k, c1, phi)?;
    let level_one = assemble_block(ring, c1, &params.phi, 1, b)?;
    let compound = compound_with(ring, &level_one.assembled, k, exec)?;
    let idx = SubsetIndex::new(b + 1, k)?;
    let w1 = first_mismatch(&idx, &lhs.assembled, &wedge.assembled, &show);
    let w2 = first_mismatch(&idx, &lhs.assembled, &compound, &show);
    Ok(VzehnReport {
        b,
        k,
        contracted_matches_wedge_block: w1.is_none(),
        contracted_matches_compound: w2.is_none(),
        witness: w1.or(w2),
    })
}

/// [`verify_vzehn_in`] with indeterminates `c1, p1..pb`.
pub fn verify_vzehn(b: usize, k: usize, exec: Exec) -> Result<VzehnReport> {
    let mut names = vec!["c1".to_string()];
    names.extend((1..=b).map(|i| format!("p{i}")));
    let ring = PolyRing::new(names);
    let vars = ring.vars();
    verify_vzehn_in(&ring, &vars[0], &vars[1..], k, exec, |p| ring.render(p))
}

/// Coefficient rings available for deformation parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientRingKind {
    Symbolic,
    Rational,
    ModPrimePower { p: u64, exponent: u32 },
}

/// [`verify_vzehn_in`] over the chosen ring; numeric rings draw `c1` and
/// `phi` from the trial stream `(seed, 0)`.
pub fn verify_vzehn_over(
    kind: CoefficientRingKind,
    b: usize,
    k: usize,
    seed: u64,
    exec: Exec,
) -> Result<VzehnReport> {
    let mut rng = trial_rng(seed, 0);
    match kind {
        CoefficientRingKind::Symbolic => verify_vzehn(b, k, exec),
        CoefficientRingKind::Rational => {
            let mut draw = || rational(rng.random_range(-50..=50), rng.random_range(1..=12));
            let c1 = draw();
            let phi: Vec<_> = (0..b).map(|_| draw()).collect();
            verify_vzehn_in(&Rationals, &c1, &phi, k, exec, |x| x.to_string())
        }
        CoefficientRingKind::ModPrimePower { p, exponent } => {
            let ring = IntegersModPrimePower::new(p, exponent)?;
            let modulus = ring.modulus().clone();
            let mut draw = || {
                let raw = BigInt::from(rng.random::<u64>());
                ring.reduce(&(raw % &modulus))
            };
            let c1 = draw();
            let phi: Vec<_> = (0..b).map(|_| draw()).collect();
            verify_vzehn_in(&ring, &c1, &phi, k, exec, |x| x.to_string())
        }
    }
}
