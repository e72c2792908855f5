//! CM-trace vectors, Hodge-weight bookkeeping and signatures.
//!
//! A Hodge weight is a pair `(p, q)`. For an embedding `sigma` and a pair of
//! CM types `(Phi0, Phin)` the k-th exterior power of the rank-n module and
//! the `(1-k)`-th power of the rank-one module carry the weights tabulated
//! by [`wedge_weights`] and [`twist_weights`]; their tensor product must be of
//! type `{(-1,0), (0,-1)}` with `(-1,0)`-multiplicity given by
//! [`derived_cm_trace`].

mod module;
mod signature;

pub use module::HermitianModule;
pub use signature::{
    characteristic_polynomial, compatible, hermitian_at, hermitian_eigenvalues, signature_at,
    signature_at_numeric, signature_profile, SignatureProfile,
};

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::binomial;
use crate::cyclofield::{CMType, CycloField, EmbeddingId};
use crate::error::check_range;
use crate::Result;

/// A formal integer combination of the embeddings of a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CMTraceVector {
    field: CycloField,
    /// Aligned with `field.units()`.
    coeffs: Vec<i64>,
}

impl CMTraceVector {
    pub fn zero(field: &CycloField) -> Self {
        CMTraceVector {
            field: field.clone(),
            coeffs: vec![0; field.degree()],
        }
    }

    pub fn from_fn(field: &CycloField, mut f: impl FnMut(EmbeddingId) -> i64) -> Self {
        CMTraceVector {
            field: field.clone(),
            coeffs: field.embeddings().into_iter().map(&mut f).collect(),
        }
    }

    pub fn from_cm_type(phi: &CMType) -> Self {
        Self::from_fn(phi.field(), |s| phi.contains(s) as i64)
    }

    pub fn field(&self) -> &CycloField {
        &self.field
    }

    pub fn coeff(&self, sigma: EmbeddingId) -> i64 {
        self.field
            .units()
            .iter()
            .position(|&k| k == sigma.k())
            .map_or(0, |i| self.coeffs[i])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(
            self.field, other.field,
            "CM-trace vectors over different fields"
        );
        CMTraceVector {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        CMTraceVector {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }
}

impl From<&CMType> for CMTraceVector {
    fn from(phi: &CMType) -> Self {
        Self::from_cm_type(phi)
    }
}

impl fmt::Display for CMTraceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .field
            .units()
            .iter()
            .zip(&self.coeffs)
            .map(|(k, c)| format!("{k}:{c}"))
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// `C(n-1,k) Phi0 + C(n-1,k-1) Phin`.
pub fn derived_cm_trace(
    n: usize,
    k: usize,
    phi0: &CMTraceVector,
    phin: &CMTraceVector,
) -> Result<CMTraceVector> {
    check_range(k, 0, n)?;
    let (n, k) = (n as i64, k as i64);
    Ok(phi0
        .scale(binomial(n - 1, k) as i64)
        .add(&phin.scale(binomial(n - 1, k - 1) as i64)))
}

/// Membership of an embedding in the two CM types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EmbeddingCase {
    Both,
    Only0,
    OnlyN,
    Neither,
}

impl EmbeddingCase {
    pub const ALL: [EmbeddingCase; 4] = [Self::Both, Self::Only0, Self::OnlyN, Self::Neither];

    pub fn name(self) -> &'static str {
        match self {
            Self::Both => "both",
            Self::Only0 => "only0",
            Self::OnlyN => "onlyn",
            Self::Neither => "neither",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
    }

    pub fn in_phi0(self) -> bool {
        matches!(self, Self::Both | Self::Only0)
    }
}

impl fmt::Display for EmbeddingCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn case_of(sigma: EmbeddingId, phi0: &CMType, phin: &CMType) -> EmbeddingCase {
    match (phi0.contains(sigma), phin.contains(sigma)) {
        (true, true) => EmbeddingCase::Both,
        (true, false) => EmbeddingCase::Only0,
        (false, true) => EmbeddingCase::OnlyN,
        (false, false) => EmbeddingCase::Neither,
    }
}

/// Dimension of the `(-1,0)` part of the rank-n module at an embedding.
pub fn dim_minus10(case: EmbeddingCase, n: usize) -> usize {
    match case {
        EmbeddingCase::Both => n,
        EmbeddingCase::Only0 => n.saturating_sub(1),
        EmbeddingCase::OnlyN => 1,
        EmbeddingCase::Neither => 0,
    }
}

pub type Weight = (i64, i64);

/// Weights with multiplicities at one embedding; zero counts are omitted.
pub type WeightCounts = BTreeMap<Weight, u64>;

fn push(counts: &mut WeightCounts, w: Weight, mult: u64) {
    if mult > 0 {
        *counts.entry(w).or_default() += mult;
    }
}

/// Weights of the k-th exterior power of the rank-n module at one embedding.
pub fn wedge_weights(case: EmbeddingCase, n: usize, k: usize) -> Result<WeightCounts> {
    check_range(k, 0, n)?;
    let (n, k) = (n as i64, k as i64);
    let full = binomial(n, k);
    let with_first = binomial(n - 1, k - 1);
    let without_first = binomial(n - 1, k);
    let mut out = WeightCounts::new();
    match case {
        EmbeddingCase::Both => push(&mut out, (-k, 0), full),
        EmbeddingCase::Only0 => {
            push(&mut out, (-k, 0), without_first);
            push(&mut out, (1 - k, -1), with_first);
        }
        EmbeddingCase::OnlyN => {
            push(&mut out, (-1, 1 - k), with_first);
            push(&mut out, (0, -k), without_first);
        }
        EmbeddingCase::Neither => push(&mut out, (0, -k), full),
    }
    Ok(out)
}

/// Weight of the `(1-k)`-th tensor power of the rank-one module.
pub fn twist_weights(in_phi0: bool, k: usize) -> Weight {
    let e = k as i64 - 1;
    if in_phi0 {
        (e, 0)
    } else {
        (0, e)
    }
}

/// Source of the two weight tables; swappable so tests can corrupt them.
pub trait WeightTables {
    fn wedge(&self, case: EmbeddingCase, n: usize, k: usize) -> Result<WeightCounts>;
    fn twist(&self, in_phi0: bool, k: usize) -> Weight;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct StandardTables;

impl WeightTables for StandardTables {
    fn wedge(&self, case: EmbeddingCase, n: usize, k: usize) -> Result<WeightCounts> {
        wedge_weights(case, n, k)
    }
    fn twist(&self, in_phi0: bool, k: usize) -> Weight {
        twist_weights(in_phi0, k)
    }
}

/// Weights of the k-th output module, per embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMultiset {
    pub entries: BTreeMap<EmbeddingId, WeightCounts>,
}

impl WeightMultiset {
    pub fn total(&self, sigma: EmbeddingId) -> u64 {
        self.entries.get(&sigma).map_or(0, |c| c.values().sum())
    }

    pub fn multiplicity(&self, sigma: EmbeddingId, w: Weight) -> u64 {
        self.entries
            .get(&sigma)
            .and_then(|c| c.get(&w))
            .copied()
            .unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Type11Report {
    pub n: usize,
    pub k: usize,
    pub weights: WeightMultiset,
    pub expected: CMTraceVector,
    /// Every weight is `(-1,0)` or `(0,-1)`.
    pub type11: bool,
    /// Per-embedding totals are `C(n,k)`.
    pub totals_match: bool,
    /// `(-1,0)`-multiplicities equal [`derived_cm_trace`].
    pub trace_matches: bool,
    /// First embedding where a check failed.
    pub witness: Option<EmbeddingId>,
}

impl Type11Report {
    pub fn holds(&self) -> bool {
        self.type11 && self.totals_match && self.trace_matches
    }
}

pub fn verify_type11(n: usize, k: usize, phi0: &CMType, phin: &CMType) -> Result<Type11Report> {
    verify_type11_with(&StandardTables, n, k, phi0, phin)
}

pub fn verify_type11_with(
    tables: &dyn WeightTables,
    n: usize,
    k: usize,
    phi0: &CMType,
    phin: &CMType,
) -> Result<Type11Report> {
    check_range(k, 0, n)?;
    let field = phi0.field();
    let expected = derived_cm_trace(n, k, &phi0.into(), &phin.into())?;
    let full = binomial(n as i64, k as i64);
    let mut entries = BTreeMap::new();
    let (mut type11, mut totals_match, mut trace_matches) = (true, true, true);
    let mut witness = None;
    for sigma in field.embeddings() {
        let case = case_of(sigma, phi0, phin);
        let (tp, tq) = tables.twist(case.in_phi0(), k);
        let mut counts = WeightCounts::new();
        for ((p, q), mult) in tables.wedge(case, n, k)? {
            push(&mut counts, (p + tp, q + tq), mult);
        }
        let ok11 = counts.keys().all(|w| *w == (-1, 0) || *w == (0, -1));
        let ok_total = counts.values().sum::<u64>() == full;
        let ok_trace = counts.get(&(-1, 0)).copied().unwrap_or(0) as i64 == expected.coeff(sigma);
        type11 &= ok11;
        totals_match &= ok_total;
        trace_matches &= ok_trace;
        if witness.is_none() && !(ok11 && ok_total && ok_trace) {
            witness = Some(sigma);
        }
        entries.insert(sigma, counts);
    }
    Ok(Type11Report {
        n,
        k,
        weights: WeightMultiset { entries },
        expected,
        type11,
        totals_match,
        trace_matches,
        witness,
    })
}
