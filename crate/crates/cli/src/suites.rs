//! Verification suites behind `pelwedge verify`.
//!
//! Random suites draw trial `t` from the stream `(seed, t)`, so a single
//! failing trial can be replayed from its witness alone.

use std::time::Instant;

use pelwedge_core::arith::{binomial, is_prime};
use pelwedge_core::cyclofield::{CMType, CycloElement, CycloField};
use pelwedge_core::domains::ball_trials;
use pelwedge_core::exterior::{g_k, multiplier, positivity_at, wedge_gram};
use pelwedge_core::hodge::verify_type11;
use pelwedge_core::instances::{
    random_definite_pair, random_group_element, random_perfect_pair, random_similitude_pair,
    trial_rng,
};
use pelwedge_core::matrix::Matrix;
use pelwedge_core::numeric::Precision;
use pelwedge_core::pairings::{verify_prinz, PrinzOutcome};
use pelwedge_core::par::Exec;
use pelwedge_core::serretate::{
    verify_vdrei, verify_vzehn_over, CoefficientRingKind, EntryWitness,
};
use pelwedge_core::Error;
use rand::Rng;
use serde_json::{json, Value};

use crate::args::{RingKind, Suite};
use crate::error::{CliError, CliResult};
use crate::input::PelInput;
use crate::report::{Check, Status};

pub const DESK_MODULI: [u64; 6] = [3, 4, 5, 7, 8, 12];
pub const MAX_RANK: usize = 7;
pub const MAX_PRIME: u64 = 100;
/// Relative eigenvalue margin required by the positivity suite.
pub const POSITIVITY_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct SuiteParams {
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub m: Option<u64>,
    pub p: Option<u64>,
    pub trials: Option<usize>,
    pub seed: u64,
    pub precision: Precision,
    pub exec: Exec,
    pub ring: RingKind,
    pub exponent: u32,
    pub input: Option<PelInput>,
}

impl SuiteParams {
    pub fn new(seed: u64) -> Self {
        SuiteParams {
            n: None,
            k: None,
            m: None,
            p: None,
            trials: None,
            seed,
            precision: Precision::default(),
            exec: Exec::default(),
            ring: RingKind::Symbolic,
            exponent: 3,
            input: None,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteOutput {
    pub checks: Vec<Check>,
    pub notices: Vec<String>,
    pub timings: Vec<(String, f64)>,
}

pub fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Data => "data",
        Suite::Prinz => "prinz",
        Suite::Vdrei => "vdrei",
        Suite::Vzehn => "vzehn",
        Suite::Embedding => "embedding",
        Suite::Similitude => "similitude",
        Suite::Positivity => "positivity",
        Suite::All => "all",
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn check_params(p: &SuiteParams) -> CliResult<()> {
    if let Some(m) = p.m {
        if !DESK_MODULI.contains(&m) {
            return Err(usage(format!(
                "--m {m}: supported moduli are 3, 4, 5, 7, 8, 12"
            )));
        }
    }
    if let Some(n) = p.n {
        if n == 0 || n > MAX_RANK {
            return Err(usage(format!("--n {n}: rank must be in 1..={MAX_RANK}")));
        }
        if let Some(k) = p.k {
            if k > n {
                return Err(usage(format!("--k {k} exceeds --n {n}")));
            }
        }
    }
    if let Some(q) = p.p {
        if !is_prime(q) || q >= MAX_PRIME {
            return Err(usage(format!("--p {q}: need a prime below {MAX_PRIME}")));
        }
    }
    if p.trials == Some(0) {
        return Err(usage("--trials must be positive"));
    }
    Ok(())
}

pub fn run(suite: Suite, p: &SuiteParams) -> CliResult<SuiteOutput> {
    check_params(p)?;
    let order: Vec<Suite> = match suite {
        Suite::All => vec![
            Suite::Data,
            Suite::Prinz,
            Suite::Vdrei,
            Suite::Vzehn,
            Suite::Embedding,
            Suite::Similitude,
            Suite::Positivity,
        ],
        s => vec![s],
    };
    let mut out = SuiteOutput::default();
    for s in order {
        let start = Instant::now();
        let (checks, notices) = match s {
            Suite::Data => (data(p)?, vec![]),
            Suite::Prinz => prinz(p)?,
            Suite::Vdrei => (vdrei(p)?, vec![]),
            Suite::Vzehn => (vzehn(p)?, vec![]),
            Suite::Embedding => embedding(p)?,
            Suite::Similitude => (similitude(p)?, vec![]),
            Suite::Positivity => (positivity(p)?, vec![]),
            Suite::All => unreachable!(),
        };
        out.checks.extend(checks);
        out.notices.extend(notices);
        out.timings
            .push((suite_name(s).to_string(), start.elapsed().as_secs_f64()));
    }
    Ok(out)
}

fn ranks(n: Option<usize>, lo: usize, hi: usize) -> Vec<usize> {
    n.map_or_else(|| (lo..=hi).collect(), |n| vec![n])
}

fn ks(k: Option<usize>, lo: usize, n: usize) -> Vec<usize> {
    match k {
        Some(k) if k >= lo && k <= n => vec![k],
        Some(_) => vec![],
        None => (lo..=n).collect(),
    }
}

fn pick<'a, T, R: Rng>(rng: &mut R, xs: &'a [T]) -> &'a T {
    &xs[rng.random_range(0..xs.len())]
}

fn gram_rows(g: &Matrix<CycloElement>) -> Value {
    json!((0..g.rows())
        .map(|i| g.row(i).iter().map(|e| e.to_string()).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn members(phi: &CMType) -> Vec<u64> {
    phi.members().iter().copied().collect()
}

fn entry_witness(w: &EntryWitness) -> Value {
    json!({"row": w.row, "col": w.col, "expected": w.expected, "found": w.found})
}

/// Weight-type check for every CM-type pair, with the `(-1,0)` count compared
/// against the binomial formula directly.
fn data(p: &SuiteParams) -> CliResult<Vec<Check>> {
    let mut cases: Vec<(CycloField, Vec<(CMType, CMType)>)> = Vec::new();
    if let Some(input) = &p.input {
        cases.push((
            input.field.clone(),
            vec![(input.phi0.clone(), input.phin.clone())],
        ));
    } else {
        for m in p.m.map_or(vec![4, 5, 8], |m| vec![m]) {
            let field = CycloField::new(m)?;
            let all = CMType::all(&field);
            let pairs = all
                .iter()
                .flat_map(|a| {
                    all.iter()
                        .filter(move |b| *b != a)
                        .map(move |b| (a.clone(), b.clone()))
                })
                .collect();
            cases.push((field, pairs));
        }
    }
    let ns = match (&p.input, p.n) {
        (Some(input), None) => vec![input.n],
        (_, n) => ranks(n, 1, 6),
    };
    let mut checks = Vec::new();
    for (field, pairs) in &cases {
        let m = field.m();
        for &n in &ns {
            for k in ks(p.k, 0, n) {
                let mut witness = None;
                for (phi0, phin) in pairs {
                    let r = verify_type11(n, k, phi0, phin)?;
                    for sigma in field.embeddings() {
                        let expected = binomial(n as i64 - 1, k as i64)
                            * u64::from(phi0.contains(sigma))
                            + binomial(n as i64 - 1, k as i64 - 1)
                                * u64::from(phin.contains(sigma));
                        let found = r.weights.multiplicity(sigma, (-1, 0));
                        if witness.is_none() && (!r.holds() || found != expected) {
                            witness = Some(json!({
                                "m": m, "n": n, "k": k,
                                "phi0": members(phi0), "phin": members(phin),
                                "sigma": sigma.k(),
                                "found": found, "expected": expected,
                                "type11": r.type11, "totals_match": r.totals_match,
                            }));
                        }
                    }
                }
                let ok = witness.is_none();
                let mut c = Check::new("data", format!("m={m},n={n},k={k}"), ok)
                    .detail("pairs", pairs.len())
                    .detail("embeddings", field.degree());
                if let Some(w) = witness {
                    c = c.witness(w);
                }
                checks.push(c);
            }
        }
    }
    Ok(checks)
}

fn prinz_check(id: String, r: &pelwedge_core::pairings::PrinzReport) -> Check {
    let status = match r.outcome {
        PrinzOutcome::Holds => Status::Pass,
        PrinzOutcome::Violated => Status::Fail,
        PrinzOutcome::Vacuous => Status::Vacuous,
    };
    Check {
        status,
        ..Check::new("prinz", id, true)
    }
    .detail("k", r.k)
    .detail("p", r.p)
    .detail("v_in0", r.input0.valuation)
    .detail("v_in1", r.input1.valuation)
    .detail("v_out", r.output.valuation)
}

fn prinz(p: &SuiteParams) -> CliResult<(Vec<Check>, Vec<String>)> {
    if let Some(input) = &p.input {
        let prime = p.p.or(input.p).ok_or_else(|| {
            usage("prinz with --input needs a prime (--p or key `p` in the file)")
        })?;
        let mut checks = Vec::new();
        let mut notices = Vec::new();
        for k in ks(p.k, 0, input.n) {
            let id = format!("input,k={k}");
            match verify_prinz(&input.gram0, &input.gram1, k, prime) {
                Ok(r) => {
                    if r.outcome == PrinzOutcome::Vacuous && notices.is_empty() {
                        for (name, x) in [("gram0", &r.input0), ("gram1", &r.input1)] {
                            if !x.perfect() {
                                notices.push(format!(
                                    "hypothesis not met: {name} is not perfect at p = {prime} (v_p(det) = {}, p-integral = {})",
                                    x.valuation, x.integral
                                ));
                            }
                        }
                    }
                    let mut c = prinz_check(id, &r);
                    c = c.witness(json!({"input": input.path, "input_hash": input.hash, "k": k, "p": prime, "v_out": r.output.valuation}));
                    checks.push(c);
                }
                Err(Error::DegenerateForm) => {
                    if notices.is_empty() {
                        notices.push("hypothesis not met: an input form is degenerate".to_string());
                    }
                    checks.push(
                        Check {
                            status: Status::Vacuous,
                            ..Check::new("prinz", id, true)
                        }
                        .detail("k", k),
                    );
                }
                Err(e) => return Err(e.into()),
            }
        }
        return Ok((checks, notices));
    }

    let trials = p.trials.unwrap_or(200);
    let ms = p.m.map_or(vec![4, 5], |m| vec![m]);
    let ns = ranks(p.n, 1, 4);
    let ps = p.p.map_or(vec![3, 5, 7, 13], |q| vec![q]);
    let mut admissible = Vec::new();
    for &m in &ms {
        CycloField::new(m)?;
        let good: Vec<u64> = ps.iter().copied().filter(|q| m % q != 0).collect();
        if good.is_empty() {
            return Err(usage(format!(
                "no admissible prime for m = {m}: every candidate divides m"
            )));
        }
        admissible.push(good);
    }
    let seed = p.seed;
    let k_flag = p.k;
    let results = p.exec.map(trials, |t| -> CliResult<Check> {
        let mut rng = trial_rng(seed, t as u64);
        let i = rng.random_range(0..ms.len());
        let (m, prime) = (ms[i], *pick(&mut rng, &admissible[i]));
        let n = *pick(&mut rng, &ns);
        let field = CycloField::new(m)?;
        let (v0, v1) = random_perfect_pair(&field, n, prime, &mut rng);
        let mut vals = Vec::new();
        let mut witness = None;
        let mut status = Status::Pass;
        for k in ks(k_flag, 0, n) {
            let r = verify_prinz(&v0, &v1, k, prime)?;
            vals.push(r.output.valuation);
            let bad = r.outcome != PrinzOutcome::Holds || r.output.valuation != 0;
            if bad && witness.is_none() {
                status = if r.outcome == PrinzOutcome::Vacuous {
                    Status::Vacuous
                } else {
                    Status::Fail
                };
                witness = Some(json!({
                    "seed": seed, "trial": t, "m": m, "n": n, "p": prime, "k": k,
                    "v_out": r.output.valuation,
                    "gram0": gram_rows(v0.gram()), "gram1": gram_rows(v1.gram()),
                }));
            }
        }
        let mut c = Check {
            status,
            ..Check::new("prinz", format!("trial={t}"), true)
        }
        .detail("m", m)
        .detail("n", n)
        .detail("p", prime)
        .detail("v_out", json!(vals));
        if let Some(w) = witness {
            c.witness = Some(w);
        }
        Ok(c)
    });
    let checks = results.into_iter().collect::<CliResult<Vec<_>>>()?;
    Ok((checks, vec![]))
}

fn vdrei(p: &SuiteParams) -> CliResult<Vec<Check>> {
    let cases: Vec<(usize, usize)> = ranks(p.n, 1, MAX_RANK)
        .into_iter()
        .flat_map(|n| ks(p.k, 1, n).into_iter().map(move |k| (n, k)))
        .collect();
    let exec = p.exec;
    let results = exec.map(cases.len(), |i| verify_vdrei(cases[i].0, cases[i].1, exec));
    let mut checks = Vec::new();
    for r in results {
        let r = r?;
        let mut c = Check::new("vdrei", format!("n={},k={}", r.n, r.k), r.holds)
            .detail("entries", r.entries_checked)
            .detail("nonlinear_cocycle_entries", r.nonlinear_entries);
        if let Some(w) = &r.witness {
            c = c.witness(json!({"n": r.n, "k": r.k, "entry": entry_witness(w)}));
        }
        checks.push(c);
    }
    Ok(checks)
}

fn vzehn(p: &SuiteParams) -> CliResult<Vec<Check>> {
    let bs: Vec<usize> = match p.n {
        Some(1) => return Err(usage("vzehn needs --n >= 2 (n = b + 1)")),
        Some(n) => vec![n - 1],
        None => (1..MAX_RANK).collect(),
    };
    let kind = match p.ring {
        RingKind::Symbolic => CoefficientRingKind::Symbolic,
        RingKind::Rational => CoefficientRingKind::Rational,
        RingKind::Modp => CoefficientRingKind::ModPrimePower {
            p: p.p.unwrap_or(3),
            exponent: p.exponent,
        },
    };
    let ring_name = match kind {
        CoefficientRingKind::Symbolic => "symbolic".to_string(),
        CoefficientRingKind::Rational => "rational".to_string(),
        CoefficientRingKind::ModPrimePower { p, exponent } => format!("Z/{p}^{exponent}"),
    };
    let cases: Vec<(usize, usize)> = bs
        .into_iter()
        .flat_map(|b| ks(p.k, 1, b + 1).into_iter().map(move |k| (b, k)))
        .collect();
    let (exec, seed) = (p.exec, p.seed);
    let results = exec.map(cases.len(), |i| {
        verify_vzehn_over(kind, cases[i].0, cases[i].1, seed, exec)
    });
    let mut checks = Vec::new();
    for r in results {
        let r = r?;
        let mut c = Check::new("vzehn", format!("b={},k={}", r.b, r.k), r.holds())
            .detail("ring", ring_name.clone())
            .detail("matches_wedge_block", r.contracted_matches_wedge_block)
            .detail("matches_compound", r.contracted_matches_compound);
        if let Some(w) = &r.witness {
            c = c.witness(json!({"b": r.b, "k": r.k, "ring": ring_name, "seed": seed, "entry": entry_witness(w)}));
        }
        checks.push(c);
    }
    Ok(checks)
}

fn embedding(p: &SuiteParams) -> CliResult<(Vec<Check>, Vec<String>)> {
    let trials = p.trials.unwrap_or(1000);
    let ns = match p.n {
        Some(1) => return Err(usage("embedding needs --n >= 2")),
        n => ranks(n, 2, 6),
    };
    let mut checks = Vec::new();
    let mut max_ratio = 0f64;
    for n in ns {
        for k in ks(p.k, 1, n - 1) {
            let r = ball_trials(n, k, trials, p.seed, p.exec)?;
            max_ratio = max_ratio.max(r.max_ratio);
            let mut c = Check::new("embedding", format!("n={n},k={k}"), r.all_inside())
                .detail("trials", r.trials)
                .detail("inside", r.inside)
                .detail("max_ratio", r.max_ratio)
                .detail("max_norm", r.max_norm);
            if let Some((t, norm)) = r.first_failure {
                c = c.witness(json!({"n": n, "k": k, "seed": p.seed, "trial": t, "norm": norm}));
            }
            checks.push(c);
        }
    }
    let notice = format!("max observed norm ratio ||A(x)|| / |x| = {max_ratio}");
    Ok((checks, vec![notice]))
}

fn similitude(p: &SuiteParams) -> CliResult<Vec<Check>> {
    let trials = p.trials.unwrap_or(200);
    let field = CycloField::new(p.m.unwrap_or(4))?;
    let ns = ranks(p.n, 1, 4);
    let (seed, k_flag) = (p.seed, p.k);
    let results = p.exec.map(trials, |t| -> CliResult<Check> {
        let mut rng = trial_rng(seed, t as u64);
        let n = *pick(&mut rng, &ns);
        let s = random_similitude_pair(&field, n, &mut rng);
        let (a0, a1) = random_group_element(&field, n, &mut rng);
        let (b0, b1) = random_group_element(&field, n, &mut rng);
        let (ab0, ab1) = (&a0 * &b0, a1.mul(&field, &b1));
        let mut witness = None;
        for k in ks(k_flag, 0, n) {
            let w = wedge_gram(&s.psi0, &s.psi1, k)?;
            let g = g_k(&s.gamma0, &s.gamma1, k)?;
            let transport = match multiplier(&g, &w) {
                Ok(mu) => mu == s.mu,
                Err(Error::NotASimilitude) => false,
                Err(e) => return Err(e.into()),
            };
            let multiplicative =
                g_k(&ab0, &ab1, k)? == g_k(&a0, &a1, k)?.mul(&field, &g_k(&b0, &b1, k)?);
            if witness.is_none() && !(transport && multiplicative) {
                witness = Some(json!({
                    "seed": seed, "trial": t, "n": n, "k": k,
                    "transport": transport, "multiplicative": multiplicative,
                    "mu": s.mu.to_string(),
                }));
            }
        }
        let mut c = Check::new("similitude", format!("trial={t}"), witness.is_none())
            .detail("m", field.m())
            .detail("n", n)
            .detail("mu", s.mu.to_string());
        if let Some(w) = witness {
            c = c.witness(w);
        }
        Ok(c)
    });
    results.into_iter().collect()
}

fn positivity(p: &SuiteParams) -> CliResult<Vec<Check>> {
    let trials = p.trials.unwrap_or(100);
    let fields =
        p.m.map_or(vec![4, 5, 8], |m| vec![m])
            .into_iter()
            .map(CycloField::new)
            .collect::<Result<Vec<_>, _>>()?;
    let ns = ranks(p.n, 1, 4);
    let (seed, k_flag) = (p.seed, p.k);
    let results = p.exec.map(trials, |t| -> CliResult<Check> {
        let mut rng = trial_rng(seed, t as u64);
        let field = pick(&mut rng, &fields);
        let n = *pick(&mut rng, &ns);
        let (v0, v1) = random_definite_pair(field, n, &mut rng);
        let mut min_margin = f64::INFINITY;
        let mut max_residual = 0f64;
        let mut witness = None;
        for k in ks(k_flag, 0, n) {
            for sigma in field.embeddings() {
                let r = positivity_at(&v0, &v1, k, sigma)?;
                let margin = r.relative_margin();
                min_margin = min_margin.min(margin);
                max_residual =
                    max_residual.max(r.identity_residual / r.max_abs_eigenvalue.max(1.0));
                if witness.is_none() && !r.positive(POSITIVITY_TOLERANCE) {
                    witness = Some(json!({
                        "seed": seed, "trial": t, "m": field.m(), "n": n, "k": k,
                        "sigma": sigma.k(), "margin": margin, "orientation": r.orientation,
                    }));
                }
            }
        }
        let mut c = Check::new("positivity", format!("trial={t}"), witness.is_none())
            .detail("m", field.m())
            .detail("n", n)
            .detail("min_margin", min_margin)
            .detail("max_residual", max_residual);
        if let Some(w) = witness {
            c = c.witness(w);
        }
        Ok(c)
    });
    results.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> SuiteParams {
        SuiteParams {
            trials: Some(5),
            ..SuiteParams::new(1)
        }
    }

    #[test]
    fn small_runs_pass() {
        for s in [
            Suite::Prinz,
            Suite::Similitude,
            Suite::Positivity,
            Suite::Embedding,
        ] {
            let out = run(
                s,
                &SuiteParams {
                    n: Some(3),
                    ..params()
                },
            )
            .unwrap();
            assert!(out.checks.iter().all(|c| c.status == Status::Pass), "{s:?}");
        }
        let out = run(
            Suite::Vdrei,
            &SuiteParams {
                n: Some(4),
                ..params()
            },
        )
        .unwrap();
        assert_eq!(out.checks.len(), 4);
        let out = run(
            Suite::Data,
            &SuiteParams {
                m: Some(5),
                n: Some(3),
                ..params()
            },
        )
        .unwrap();
        assert_eq!(out.checks.len(), 4);
        assert!(out.checks.iter().all(|c| c.status == Status::Pass));
    }

    #[test]
    fn range_errors_are_usage_errors() {
        for bad in [
            SuiteParams {
                m: Some(6),
                ..params()
            },
            SuiteParams {
                n: Some(8),
                ..params()
            },
            SuiteParams {
                n: Some(2),
                k: Some(3),
                ..params()
            },
            SuiteParams {
                p: Some(9),
                ..params()
            },
        ] {
            assert!(matches!(run(Suite::Vdrei, &bad), Err(CliError::Usage(_))));
        }
        assert!(matches!(
            run(
                Suite::Prinz,
                &SuiteParams {
                    m: Some(4),
                    p: Some(2),
                    ..params()
                }
            ),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let a = run(
            Suite::Prinz,
            &SuiteParams {
                exec: Exec::Sequential,
                ..params()
            },
        )
        .unwrap();
        let b = run(
            Suite::Prinz,
            &SuiteParams {
                exec: Exec::Parallel,
                ..params()
            },
        )
        .unwrap();
        assert_eq!(a.checks, b.checks);
    }
}
