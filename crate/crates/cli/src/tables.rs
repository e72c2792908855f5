//! Tables behind `pelwedge table`.

use std::str::FromStr;

use num_complex::Complex64;
use pelwedge_core::arith::binomial;
use pelwedge_core::domains::{in_ball, op_norm, satake_matrix, BallPoint};
use pelwedge_core::exterior::wedge_module;
use pelwedge_core::hodge::{
    case_of, derived_cm_trace, signature_at, twist_weights, wedge_weights, EmbeddingCase,
};
use pelwedge_core::numeric::Precision;
use pelwedge_core::subsets::colex_subsets;
use pelwedge_core::Error;

use crate::error::{CliError, CliResult};
use crate::input::PelInput;
use crate::suites::MAX_RANK;

/// Column names and string rows; the caller wraps them in a document.
pub struct TableBody {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub notices: Vec<String>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn cols(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn need_n(n: Option<usize>) -> CliResult<usize> {
    match n {
        Some(n) if (1..=MAX_RANK).contains(&n) => Ok(n),
        Some(n) => Err(usage(format!("--n {n}: rank must be in 1..={MAX_RANK}"))),
        None => Err(usage("this table needs --n")),
    }
}

fn k_range(k: Option<usize>, lo: usize, hi: usize) -> CliResult<Vec<usize>> {
    match k {
        Some(k) if (lo..=hi).contains(&k) => Ok(vec![k]),
        Some(k) => Err(usage(format!("--k {k}: must be in {lo}..={hi}"))),
        None => Ok((lo..=hi).collect()),
    }
}

/// Binomial coefficients of the derived CM trace and the resulting
/// `(-1,0)` multiplicity in each embedding case, read off the weight tables.
pub fn traces(n: Option<usize>, input: Option<&PelInput>) -> CliResult<TableBody> {
    let n = match (n, input) {
        (None, Some(i)) => i.n,
        (n, _) => need_n(n)?,
    };
    let mut columns = cols(&[
        "k", "c_phi0", "c_phin", "rank", "both", "only0", "onlyn", "neither",
    ]);
    if let Some(i) = input {
        columns.extend(i.field.embeddings().into_iter().map(|s| s.to_string()));
    }
    let mut rows = Vec::new();
    for k in 0..=n {
        let (ni, ki) = (n as i64, k as i64);
        let mut row = vec![
            k.to_string(),
            binomial(ni - 1, ki).to_string(),
            binomial(ni - 1, ki - 1).to_string(),
            binomial(ni, ki).to_string(),
        ];
        for case in EmbeddingCase::ALL {
            let (tp, tq) = twist_weights(case.in_phi0(), k);
            let count: u64 = wedge_weights(case, n, k)?
                .into_iter()
                .filter(|&((p, q), _)| (p + tp, q + tq) == (-1, 0))
                .map(|(_, c)| c)
                .sum();
            row.push(count.to_string());
        }
        if let Some(i) = input {
            let t = derived_cm_trace(n, k, &(&i.phi0).into(), &(&i.phin).into())?;
            row.extend(t.coeffs().iter().map(|c| c.to_string()));
        }
        rows.push(row);
    }
    Ok(TableBody {
        columns,
        rows,
        notices: vec![],
    })
}

pub fn weights(n: Option<usize>, k: Option<usize>, case: Option<&str>) -> CliResult<TableBody> {
    let n = need_n(n)?;
    let cases = match case {
        Some(s) => vec![EmbeddingCase::parse(s).ok_or_else(|| {
            usage(format!(
                "--case {s}: expected both, only0, onlyn or neither"
            ))
        })?],
        None => EmbeddingCase::ALL.to_vec(),
    };
    let mut rows = Vec::new();
    for case in cases {
        for k in k_range(k, 0, n)? {
            let wedge = wedge_weights(case, n, k)?;
            let (tp, tq) = twist_weights(case.in_phi0(), k);
            let mut push = |part: &str, (p, q): (i64, i64), mult: u64| {
                rows.push(vec![
                    case.name().to_string(),
                    k.to_string(),
                    part.to_string(),
                    p.to_string(),
                    q.to_string(),
                    mult.to_string(),
                ]);
            };
            for (&w, &c) in &wedge {
                push("wedge", w, c);
            }
            push("twist", (tp, tq), 1);
            for (&(p, q), &c) in &wedge {
                push("total", (p + tp, q + tq), c);
            }
        }
    }
    Ok(TableBody {
        columns: cols(&["case", "k", "part", "p", "q", "multiplicity"]),
        rows,
        notices: vec![],
    })
}

/// Exact signatures of every output module built from the input file,
/// next to the derived CM trace they should match.
pub fn signatures(
    input: Option<&PelInput>,
    k: Option<usize>,
    precision: Precision,
) -> CliResult<TableBody> {
    let input = input.ok_or_else(|| usage("the signatures table needs --input FILE"))?;
    let mut rows = Vec::new();
    for k in k_range(k, 0, input.n)? {
        let w = wedge_module(&input.gram0, &input.gram1, k)?;
        let expected = derived_cm_trace(input.n, k, &(&input.phi0).into(), &(&input.phin).into())?;
        for sigma in input.field.embeddings() {
            let case = case_of(sigma, &input.phi0, &input.phin);
            let want = expected.coeff(sigma);
            let (p, q, ok) = match signature_at(&w, sigma, precision) {
                Ok((p, q)) => (p.to_string(), q.to_string(), p as i64 == want),
                Err(Error::SingularAtEmbedding(_)) => ("singular".into(), "singular".into(), false),
                Err(e) => return Err(e.into()),
            };
            rows.push(vec![
                k.to_string(),
                sigma.to_string(),
                case.name().to_string(),
                p,
                q,
                want.to_string(),
                ok.to_string(),
            ]);
        }
    }
    Ok(TableBody {
        columns: cols(&["k", "sigma", "case", "p", "q", "expected_p", "compatible"]),
        rows,
        notices: vec![],
    })
}

fn parse_point(x: &str) -> CliResult<Vec<Complex64>> {
    x.split(',')
        .map(|s| {
            let s = s.trim();
            Complex64::from_str(s)
                .map_err(|_| usage(format!("--x: cannot read {s:?} as a complex number")))
        })
        .collect()
}

fn show(z: Complex64) -> String {
    // adding 0.0 turns -0.0 into 0.0
    let (re, im) = (z.re + 0.0, z.im + 0.0);
    if im == 0.0 {
        format!("{re}")
    } else if re == 0.0 {
        format!("{im}i")
    } else if im < 0.0 {
        format!("{re}-{}i", -im)
    } else {
        format!("{re}+{im}i")
    }
}

fn subset_label(s: &[usize]) -> String {
    let inner: Vec<String> = s.iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// The matrix `A(x)`: rows are `(k-1)`-subsets, columns `k`-subsets of
/// `{1..n-1}`, both in colex order.
pub fn embedding_matrix(
    n: Option<usize>,
    k: Option<usize>,
    x: Option<&str>,
) -> CliResult<TableBody> {
    let n = need_n(n)?;
    if n < 2 {
        return Err(usage("the embedding matrix needs --n >= 2"));
    }
    let k = k.ok_or_else(|| usage("the embedding matrix needs --k"))?;
    if !(1..n).contains(&k) {
        return Err(usage(format!("--k {k}: must be in 1..={}", n - 1)));
    }
    let x = x.ok_or_else(|| usage("the embedding matrix needs --x"))?;
    let coords = parse_point(x)?;
    if coords.len() != n - 1 {
        return Err(usage(format!(
            "--x has {} coordinates, expected n - 1 = {}",
            coords.len(),
            n - 1
        )));
    }
    let point = BallPoint::new(coords).map_err(|e| usage(format!("--x: {e}")))?;
    let a = satake_matrix(&point, n, k)?;
    let ground: Vec<usize> = (1..n).collect();
    let mut columns = vec!["row".to_string()];
    columns.extend(colex_subsets(&ground, k).iter().map(|s| subset_label(s)));
    let rows = colex_subsets(&ground, k - 1)
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let mut row = vec![subset_label(s)];
            row.extend((0..a.ncols()).map(|j| show(a[(i, j)])));
            row
        })
        .collect();
    let notices = vec![format!(
        "operator norm {} (|x| = {}), inside ball: {}",
        op_norm(&a),
        point.norm(),
        in_ball(&a)
    )];
    Ok(TableBody {
        columns,
        rows,
        notices,
    })
}
