//! The TOML input file: a field, two CM types, two Gram matrices and
//! optionally a prime and a level.
//!
//! ```toml
//! m = 4
//! n = 2
//! p = 5
//! l = 3
//! phi0 = [3]
//! phin = [1]
//! gram0 = [[[0, 1]]]
//! gram1 = [[[0, 1], [0]], [[0], [0, 1]]]
//! ```
//!
//! A Gram entry is the coefficient list of `sum_t a_t zeta^t`; coefficients
//! are integers or strings such as `"-3/4"`.

use std::ops::Range;
use std::path::Path;
use std::str::FromStr;

use num_rational::BigRational;
use pelwedge_core::arith::is_prime;
use pelwedge_core::cyclofield::{CMType, CycloElement, CycloField};
use pelwedge_core::hodge::HermitianModule;
use pelwedge_core::matrix::Matrix;
use pelwedge_core::Error;
use serde::Deserialize;
use sha2::{Digest, Sha256};
use toml::Spanned;

use crate::error::{CliError, CliResult};

#[derive(Deserialize)]
#[serde(untagged)]
enum Coeff {
    Int(i64),
    Text(String),
}

type RawGram = Vec<Vec<Spanned<Vec<Spanned<Coeff>>>>>;
type EntrySpans = Vec<Vec<Range<usize>>>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInput {
    m: Spanned<u64>,
    n: Option<Spanned<usize>>,
    p: Option<Spanned<u64>>,
    l: Option<Spanned<u64>>,
    phi0: Spanned<Vec<u64>>,
    phin: Spanned<Vec<u64>>,
    gram0: Spanned<RawGram>,
    gram1: Spanned<RawGram>,
}

#[derive(Clone, Debug)]
pub struct PelInput {
    pub path: String,
    /// SHA-256 of the file bytes, hex encoded.
    pub hash: String,
    pub field: CycloField,
    pub n: usize,
    pub p: Option<u64>,
    pub l: Option<u64>,
    pub phi0: CMType,
    pub phin: CMType,
    pub gram0: HermitianModule,
    pub gram1: HermitianModule,
}

pub fn load(path: &Path) -> CliResult<PelInput> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Unreadable {
        path: path.to_path_buf(),
        source,
    })?;
    let text = String::from_utf8(bytes).map_err(|e| {
        let offset = e.utf8_error().valid_up_to();
        let text = String::from_utf8_lossy(e.as_bytes()).into_owned();
        located(
            &path.display().to_string(),
            &text,
            offset,
            "file is not valid UTF-8".into(),
        )
    })?;
    parse(&text, &path.display().to_string())
}

pub fn hash_bytes(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn located(path: &str, text: &str, offset: usize, message: String) -> CliError {
    let offset = offset.min(text.len());
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
    CliError::Parse {
        path: path.to_string(),
        line,
        col,
        message,
    }
}

struct Ctx<'a> {
    path: &'a str,
    text: &'a str,
}

impl Ctx<'_> {
    fn err(&self, span: Range<usize>, message: impl Into<String>) -> CliError {
        located(self.path, self.text, span.start, message.into())
    }

    fn coeff(&self, c: &Spanned<Coeff>) -> CliResult<BigRational> {
        match c.get_ref() {
            Coeff::Int(v) => Ok(BigRational::from_integer((*v).into())),
            Coeff::Text(s) => BigRational::from_str(s.trim())
                .map_err(|_| self.err(c.span(), format!("cannot read {s:?} as a rational number"))),
        }
    }

    fn gram(
        &self,
        field: &CycloField,
        raw: &Spanned<RawGram>,
        name: &str,
    ) -> CliResult<(Matrix<CycloElement>, EntrySpans)> {
        let rows = raw.get_ref();
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(self.err(raw.span(), format!("{name} must be a square matrix")));
        }
        let mut spans = Vec::with_capacity(n);
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            spans.push(row.iter().map(|e| e.span()).collect());
            for entry in row {
                let coeffs = entry
                    .get_ref()
                    .iter()
                    .map(|c| self.coeff(c))
                    .collect::<CliResult<Vec<_>>>()?;
                data.push(field.from_coeffs(&coeffs));
            }
        }
        Ok((Matrix::from_vec(n, n, data)?, spans))
    }

    fn module(
        &self,
        field: &CycloField,
        raw: &Spanned<RawGram>,
        name: &str,
    ) -> CliResult<HermitianModule> {
        let (gram, spans) = self.gram(field, raw, name)?;
        HermitianModule::new(field, gram).map_err(|e| match e {
            Error::NotSkewHermitian { row, col } => self.err(
                spans[row][col].clone(),
                format!(
                    "{name} is not skew-Hermitian: entry ({}, {}) is not minus the conjugate of entry ({}, {})",
                    row + 1,
                    col + 1,
                    col + 1,
                    row + 1
                ),
            ),
            other => self.err(raw.span(), format!("{name}: {other}")),
        })
    }
}

pub fn parse(text: &str, path: &str) -> CliResult<PelInput> {
    let raw: RawInput = toml::from_str(text).map_err(|e| {
        let offset = e.span().map_or(0, |s| s.start);
        located(path, text, offset, e.message().to_string())
    })?;
    let ctx = Ctx { path, text };
    let field =
        CycloField::new(*raw.m.get_ref()).map_err(|e| ctx.err(raw.m.span(), e.to_string()))?;
    let cm = |s: &Spanned<Vec<u64>>| {
        CMType::new(&field, s.get_ref().iter().copied())
            .map_err(|e| ctx.err(s.span(), e.to_string()))
    };
    let phi0 = cm(&raw.phi0)?;
    let phin = cm(&raw.phin)?;
    let gram0 = ctx.module(&field, &raw.gram0, "gram0")?;
    if gram0.rank() != 1 {
        return Err(ctx.err(raw.gram0.span(), "gram0 must be 1 x 1"));
    }
    let gram1 = ctx.module(&field, &raw.gram1, "gram1")?;
    if gram1.rank() == 0 {
        return Err(ctx.err(raw.gram1.span(), "gram1 is empty"));
    }
    if let Some(n) = &raw.n {
        if *n.get_ref() != gram1.rank() {
            return Err(ctx.err(
                n.span(),
                format!("n = {} but gram1 has rank {}", n.get_ref(), gram1.rank()),
            ));
        }
    }
    if let Some(p) = &raw.p {
        if !is_prime(*p.get_ref()) {
            return Err(ctx.err(p.span(), format!("p = {} is not prime", p.get_ref())));
        }
    }
    if let Some(l) = &raw.l {
        if *l.get_ref() < 3 {
            return Err(ctx.err(
                l.span(),
                format!("level l = {} must be at least 3", l.get_ref()),
            ));
        }
    }
    Ok(PelInput {
        path: path.to_string(),
        hash: hash_bytes(text.as_bytes()),
        n: gram1.rank(),
        field,
        p: raw.p.map(|p| p.into_inner()),
        l: raw.l.map(|l| l.into_inner()),
        phi0,
        phin,
        gram0,
        gram1,
    })
}
