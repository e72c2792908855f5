//! Command-line front end for `pelwedge-core`.
//!
//! `pelwedge verify SUITE` runs a verification suite, `pelwedge table KIND`
//! prints a table and `pelwedge spadesuit --input FILE` checks the
//! integral-model hypotheses for an input file. See [`error`] for exit codes.

pub mod args;
pub mod error;
pub mod input;
pub mod report;
pub mod suites;
pub mod tables;

use std::ffi::OsString;
use std::time::Instant;

use clap::Parser;
use pelwedge_core::cyclofield::{check_spadesuit, SpadesuitInput};
use pelwedge_core::numeric::Precision;
use pelwedge_core::par::Exec;
use serde_json::{json, Map, Value};

use args::{Cli, Command, Common, Format, SpadesuitArgs, TableArgs, TableKind, VerifyArgs};
use error::{CliError, CliResult, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use report::{Check, Header, Report, Table};
use suites::{suite_name, SuiteParams};

/// What a run writes and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_PASS,
                    stdout: text,
                    stderr: String::new(),
                }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Verify(a) => verify(a),
        Command::Table(a) => table(a),
        Command::Spadesuit(a) => spadesuit(a),
    };
    match result {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("pelwedge: {e}\n"),
        },
    }
}

fn precision(c: &Common) -> CliResult<Precision> {
    match c.precision {
        None => Ok(Precision::from_env()),
        Some(b) if (1..=Precision::MAX_BITS).contains(&b) => Ok(Precision::bits(b)),
        Some(b) => Err(CliError::Usage(format!(
            "--precision {b}: must be in 1..={}",
            Precision::MAX_BITS
        ))),
    }
}

fn load_input(c: &Common) -> CliResult<Option<input::PelInput>> {
    c.input.as_deref().map(input::load).transpose()
}

/// Flags as given, in a fixed order; absent flags are omitted.
fn common_params(c: &Common) -> Map<String, Value> {
    let mut m = Map::new();
    let mut put = |k: &str, v: Option<Value>| {
        if let Some(v) = v {
            m.insert(k.to_string(), v);
        }
    };
    put("n", c.n.map(Value::from));
    put("k", c.k.map(Value::from));
    put("m", c.m.map(Value::from));
    put("p", c.p.map(Value::from));
    put("l", c.l.map(Value::from));
    m
}

fn verify(a: &VerifyArgs) -> CliResult<(i32, String)> {
    let started = Instant::now();
    let input = load_input(&a.common)?;
    let precision = precision(&a.common)?;
    let params = SuiteParams {
        n: a.common.n,
        k: a.common.k,
        m: a.common.m,
        p: a.common.p,
        trials: a.trials,
        seed: a.seed,
        precision,
        exec: if a.sequential {
            Exec::Sequential
        } else {
            Exec::default()
        },
        ring: a.ring,
        exponent: a.exponent,
        input: input.clone(),
    };
    let out = suites::run(a.suite, &params)?;
    let mut hp = common_params(&a.common);
    if let Some(t) = a.trials {
        hp.insert("trials".into(), t.into());
    }
    if a.ring != args::RingKind::Symbolic {
        hp.insert("ring".into(), format!("{:?}", a.ring).to_lowercase().into());
        hp.insert("exponent".into(), a.exponent.into());
    }
    let mut timings = out.timings;
    timings.push(("total".into(), started.elapsed().as_secs_f64()));
    let report = Report {
        header: Header {
            command: "verify".into(),
            target: suite_name(a.suite).into(),
            seed: Some(a.seed),
            precision_bits: precision.get(),
            input_hash: input.map(|i| i.hash),
            params: hp,
        },
        checks: out.checks,
        notices: out.notices,
        timings,
    };
    Ok((
        report.exit_code(),
        report.render(a.common.format.unwrap_or_default(), a.timings),
    ))
}

fn table(a: &TableArgs) -> CliResult<(i32, String)> {
    let input = load_input(&a.common)?;
    let precision = precision(&a.common)?;
    if let Some(m) = a.common.m {
        if !suites::DESK_MODULI.contains(&m) {
            return Err(CliError::Usage(format!(
                "--m {m}: supported moduli are 3, 4, 5, 7, 8, 12"
            )));
        }
    }
    let c = &a.common;
    let body = match a.kind {
        TableKind::Traces => tables::traces(c.n, input.as_ref())?,
        TableKind::Weights => tables::weights(c.n, c.k, a.case.as_deref())?,
        TableKind::Signatures => tables::signatures(input.as_ref(), c.k, precision)?,
        TableKind::EmbeddingMatrix => tables::embedding_matrix(c.n, c.k, a.x.as_deref())?,
    };
    let mut params = common_params(c);
    if let Some(case) = &a.case {
        params.insert("case".into(), case.clone().into());
    }
    if let Some(x) = &a.x {
        params.insert("x".into(), x.clone().into());
    }
    let kind = match a.kind {
        TableKind::Signatures => "signatures",
        TableKind::Traces => "traces",
        TableKind::Weights => "weights",
        TableKind::EmbeddingMatrix => "embedding-matrix",
    };
    let doc = Table {
        header: Header {
            command: "table".into(),
            target: kind.into(),
            seed: None,
            precision_bits: precision.get(),
            input_hash: input.map(|i| i.hash),
            params,
        },
        columns: body.columns,
        rows: body.rows,
        notices: body.notices,
    };
    Ok((EXIT_PASS, doc.render(c.format.unwrap_or(Format::Csv))))
}

fn spadesuit(a: &SpadesuitArgs) -> CliResult<(i32, String)> {
    let c = &a.common;
    let input =
        load_input(c)?.ok_or_else(|| CliError::Usage("spadesuit needs --input FILE".into()))?;
    let p =
        c.p.or(input.p)
            .ok_or_else(|| CliError::Usage("no prime given (--p or key `p` in the file)".into()))?;
    let l =
        c.l.or(input.l)
            .ok_or_else(|| CliError::Usage("no level given (--l or key `l` in the file)".into()))?;
    let report = check_spadesuit(&SpadesuitInput {
        phi0: input.phi0.clone(),
        phin: input.phin.clone(),
        p,
        l,
        gram0: input.gram0.clone(),
        gram1: input.gram1.clone(),
    })?;
    let checks = report
        .bullets
        .iter()
        .map(|b| {
            Check::new("spadesuit", format!("bullet{}", b.index), b.holds)
                .detail("name", b.name)
                .detail("detail", b.detail.clone())
                .witness(json!({"bullet": b.index, "m": report.m, "p": p, "l": l, "input_hash": input.hash}))
        })
        .collect();
    let orbits: Vec<String> = report.orbits.iter().map(|o| fmt_set(o)).collect();
    let mut notices = vec![format!(
        "Frobenius orbits mod {}: {}",
        report.m,
        orbits.join(" ")
    )];
    if let Some(s) = &report.split {
        let pi: Vec<String> = s.pi.iter().map(|o| fmt_set(o)).collect();
        let pi_star: Vec<String> = s.pi_star.iter().map(|o| fmt_set(o)).collect();
        notices.push(format!("pi = {}", pi.join(" ")));
        notices.push(format!("pi* = {}", pi_star.join(" ")));
        notices.push(format!("r = {}, primes in pi = {}", s.r, s.prime_count));
        for i in 1..=s.prime_count {
            notices.push(format!(
                "e_{i} on {}, e_{i}* on {}",
                fmt_set(s.idempotent(i)),
                fmt_set(s.idempotent_star(i))
            ));
        }
    }
    let mut params = common_params(c);
    params.insert("p".into(), p.into());
    params.insert("l".into(), l.into());
    let doc = Report {
        header: Header {
            command: "spadesuit".into(),
            target: input.path.clone(),
            seed: None,
            precision_bits: precision(c)?.get(),
            input_hash: Some(input.hash.clone()),
            params,
        },
        checks,
        notices,
        timings: vec![],
    };
    let code = if report.all_hold() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    };
    Ok((code, doc.render(c.format.unwrap_or_default(), false)))
}

fn fmt_set(s: &[u64]) -> String {
    let inner: Vec<String> = s.iter().map(|k| k.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}
