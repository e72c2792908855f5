//! Report documents and their three renderings.
//!
//! Records are newline-delimited JSON with a fixed field order; nothing
//! time-dependent goes into them, so equal seeds and inputs give equal bytes.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::args::Format;
use crate::error::{EXIT_FAIL, EXIT_PASS, EXIT_VACUOUS};

pub const SCHEMA: &str = "pelwedge/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Vacuous,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Vacuous => "VACUOUS",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub id: String,
    pub status: Status,
    pub details: Map<String, Value>,
    /// Enough to rerun this one check; set on failure.
    pub witness: Option<Value>,
}

impl Check {
    pub fn new(suite: &'static str, id: impl Into<String>, ok: bool) -> Self {
        Check {
            suite,
            id: id.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            details: Map::new(),
            witness: None,
        }
    }

    pub fn detail(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.details.insert(key.to_string(), value.into());
        self
    }

    pub fn witness(mut self, w: Value) -> Self {
        if self.status == Status::Fail {
            self.witness = Some(w);
        }
        self
    }
}

/// Header fields shared by every document.
#[derive(Clone, Debug, PartialEq)]
pub struct Header {
    pub command: String,
    pub target: String,
    pub seed: Option<u64>,
    pub precision_bits: usize,
    pub input_hash: Option<String>,
    pub params: Map<String, Value>,
}

impl Header {
    fn record(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "record": "header",
            "command": self.command,
            "target": self.target,
            "seed": self.seed,
            "precision_bits": self.precision_bits,
            "input_hash": self.input_hash,
            "params": self.params,
        })
    }

    fn text(&self) -> String {
        let mut s = format!("pelwedge {} {}", self.command, self.target);
        if let Some(seed) = self.seed {
            let _ = write!(s, "  seed={seed}");
        }
        let _ = write!(s, "  precision={} bits", self.precision_bits);
        if let Some(h) = &self.input_hash {
            let _ = write!(s, "  input={}", &h[..12.min(h.len())]);
        }
        for (k, v) in &self.params {
            let _ = write!(s, "  {k}={}", plain(v));
        }
        s
    }
}

/// Result of a `verify` or `spadesuit` run.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub header: Header,
    pub checks: Vec<Check>,
    pub notices: Vec<String>,
    /// `(label, seconds)`; shown in text output only.
    pub timings: Vec<(String, f64)>,
}

impl Report {
    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn exit_code(&self) -> i32 {
        if self.count(Status::Fail) > 0 {
            EXIT_FAIL
        } else if self.count(Status::Vacuous) > 0 {
            EXIT_VACUOUS
        } else {
            EXIT_PASS
        }
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.status == Status::Fail)
    }

    pub fn render(&self, format: Format, timings: bool) -> String {
        match format {
            Format::Records => self.records(),
            Format::Csv => self.csv(),
            Format::Text => self.text(timings),
        }
    }

    fn summary(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "record": "summary",
            "checks": self.checks.len(),
            "passed": self.count(Status::Pass),
            "failed": self.count(Status::Fail),
            "vacuous": self.count(Status::Vacuous),
            "exit_code": self.exit_code(),
            "notices": self.notices,
        })
    }

    pub fn records(&self) -> String {
        let mut out = String::new();
        push_line(&mut out, &self.header.record());
        for (i, c) in self.checks.iter().enumerate() {
            push_line(
                &mut out,
                &json!({
                    "schema": SCHEMA,
                    "record": "check",
                    "index": i,
                    "suite": c.suite,
                    "id": c.id,
                    "status": c.status,
                    "details": c.details,
                    "witness": c.witness,
                }),
            );
        }
        push_line(&mut out, &self.summary());
        out
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let _ = w.write_record([
            "schema", "index", "suite", "id", "status", "details", "witness",
        ]);
        for (i, c) in self.checks.iter().enumerate() {
            let witness = c.witness.as_ref().map(Value::to_string).unwrap_or_default();
            let _ = w.write_record([
                SCHEMA,
                &i.to_string(),
                c.suite,
                &c.id,
                c.status.label(),
                &Value::Object(c.details.clone()).to_string(),
                &witness,
            ]);
        }
        String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
    }

    fn text(&self, timings: bool) -> String {
        let mut out = self.header.text();
        out.push('\n');
        let width = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
        for c in &self.checks {
            let details: Vec<String> = c
                .details
                .iter()
                .map(|(k, v)| format!("{k}={}", plain(v)))
                .collect();
            let _ = writeln!(
                out,
                "  {:<7} {:<10} {:<width$}  {}",
                c.status.label(),
                c.suite,
                c.id,
                details.join(" ")
            );
            if let Some(w) = &c.witness {
                let _ = writeln!(out, "          witness: {w}");
            }
        }
        for n in &self.notices {
            let _ = writeln!(out, "note: {n}");
        }
        if timings {
            for (label, secs) in &self.timings {
                let _ = writeln!(out, "time: {label} {secs:.3}s");
            }
        }
        let _ = writeln!(
            out,
            "{} checks: {} passed, {} failed, {} vacuous",
            self.checks.len(),
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Vacuous)
        );
        out
    }
}

/// A deterministic table.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub header: Header,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub notices: Vec<String>,
}

impl Table {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let mut head = vec!["schema".to_string()];
                head.extend(self.columns.iter().cloned());
                let _ = w.write_record(&head);
                for r in &self.rows {
                    let mut rec = vec![SCHEMA.to_string()];
                    rec.extend(r.iter().cloned());
                    let _ = w.write_record(&rec);
                }
                String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
            }
            Format::Records => {
                let mut out = String::new();
                push_line(&mut out, &self.header.record());
                for (i, r) in self.rows.iter().enumerate() {
                    let values: Map<String, Value> = self
                        .columns
                        .iter()
                        .cloned()
                        .zip(r.iter().map(|v| Value::String(v.clone())))
                        .collect();
                    push_line(
                        &mut out,
                        &json!({"schema": SCHEMA, "record": "row", "index": i, "values": values}),
                    );
                }
                push_line(
                    &mut out,
                    &json!({"schema": SCHEMA, "record": "summary", "rows": self.rows.len(), "notices": self.notices}),
                );
                out
            }
            Format::Text => {
                let mut widths: Vec<usize> = self.columns.iter().map(String::len).collect();
                for r in &self.rows {
                    for (w, v) in widths.iter_mut().zip(r) {
                        *w = (*w).max(v.len());
                    }
                }
                let line = |cells: &[String]| {
                    let padded: Vec<String> = cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, w)| format!("{c:>w$}"))
                        .collect();
                    padded.join("  ").trim_end().to_string()
                };
                let mut out = self.header.text();
                out.push('\n');
                out.push_str(&line(&self.columns));
                out.push('\n');
                for r in &self.rows {
                    out.push_str(&line(r));
                    out.push('\n');
                }
                for n in &self.notices {
                    let _ = writeln!(out, "note: {n}");
                }
                out
            }
        }
    }
}

fn push_line(out: &mut String, v: &Value) {
    out.push_str(&v.to_string());
    out.push('\n');
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
