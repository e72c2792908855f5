//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p pelwedge-cli --test acceptance`.

use std::path::PathBuf;
use std::time::Instant;

use pelwedge_cli::args::Suite;
use pelwedge_cli::input;
use pelwedge_cli::report::Status;
use pelwedge_cli::run_args;
use pelwedge_cli::suites::{run, SuiteParams};
use pelwedge_core::arith::binomial;
use pelwedge_core::cyclofield::{check_spadesuit, CMType, CycloField, SpadesuitInput};
use pelwedge_core::domains::ball_trials;
use pelwedge_core::hodge::verify_type11;
use pelwedge_core::par::Exec;
use pelwedge_core::serretate::{verify_vdrei, verify_vzehn};

const SEED: u64 = 20240607;

struct Outcome {
    ok: bool,
    note: String,
}

fn outcome(ok: bool, note: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        note: note.into(),
    }
}

fn data_weights() -> Outcome {
    let mut cases = 0;
    for m in [4, 5, 8] {
        let field = CycloField::new(m).unwrap();
        let all = CMType::all(&field);
        for phi0 in &all {
            for phin in all.iter().filter(|t| *t != phi0) {
                for n in 1..=6usize {
                    for k in 0..=n {
                        let r = verify_type11(n, k, phi0, phin).unwrap();
                        if !r.holds() {
                            return outcome(
                                false,
                                format!("m={m} n={n} k={k} phi0={phi0} phin={phin}"),
                            );
                        }
                        for sigma in field.embeddings() {
                            let (n, k) = (n as i64, k as i64);
                            let want = binomial(n - 1, k) * u64::from(phi0.contains(sigma))
                                + binomial(n - 1, k - 1) * u64::from(phin.contains(sigma));
                            if r.weights.multiplicity(sigma, (-1, 0)) != want {
                                return outcome(
                                    false,
                                    format!("m={m} n={n} k={k} {sigma}: (-1,0) count"),
                                );
                            }
                        }
                        cases += 1;
                    }
                }
            }
        }
    }
    outcome(true, format!("{cases} (m, pair, n, k) cases"))
}

fn vdrei() -> Outcome {
    let mut cases = 0;
    for n in 1..=7 {
        for k in 1..=n {
            let r = verify_vdrei(n, k, Exec::default()).unwrap();
            if !r.holds || r.nonlinear_entries != 0 {
                return outcome(false, format!("n={n} k={k}: {:?}", r.witness));
            }
            cases += 1;
        }
    }
    outcome(true, format!("{cases} (n, k) identities"))
}

fn vzehn() -> Outcome {
    let mut cases = 0;
    for b in 1..=6 {
        for k in 1..=b + 1 {
            let r = verify_vzehn(b, k, Exec::default()).unwrap();
            if !r.holds() {
                return outcome(false, format!("b={b} k={k}: {:?}", r.witness));
            }
            cases += 1;
        }
    }
    outcome(true, format!("{cases} (b, k) identities"))
}

fn suite_checks(s: Suite, trials: usize) -> (Outcome, Vec<pelwedge_cli::report::Check>) {
    let out = run(
        s,
        &SuiteParams {
            trials: Some(trials),
            ..SuiteParams::new(SEED)
        },
    )
    .unwrap();
    let passed = out
        .checks
        .iter()
        .filter(|c| c.status == Status::Pass)
        .count();
    let o = match out.checks.iter().find(|c| c.status != Status::Pass) {
        Some(c) => outcome(
            false,
            format!("{} {}: {:?}", c.id, c.status.label(), c.witness),
        ),
        None => outcome(
            out.checks.len() == trials && passed == trials,
            format!("{passed}/{trials} trials"),
        ),
    };
    (o, out.checks)
}

fn suite(s: Suite, trials: usize) -> Outcome {
    suite_checks(s, trials).0
}

fn prinz() -> Outcome {
    let (o, checks) = suite_checks(Suite::Prinz, 200);
    let zero = checks.iter().all(|c| {
        c.details["v_out"]
            .as_array()
            .is_some_and(|v| v.iter().all(|x| x.as_i64() == Some(0)))
    });
    outcome(o.ok && zero, o.note)
}

fn embedding() -> Outcome {
    let mut max_ratio = 0f64;
    let mut cases = 0;
    for n in 2..=6 {
        for k in 1..n {
            let r = ball_trials(n, k, 1000, SEED, Exec::default()).unwrap();
            if !r.all_inside() {
                return outcome(
                    false,
                    format!("n={n} k={k}: first failure {:?}", r.first_failure),
                );
            }
            max_ratio = max_ratio.max(r.max_ratio);
            cases += 1;
        }
    }
    outcome(
        true,
        format!("{cases} (n, k) x 1000 trials, max norm ratio {max_ratio:.6}"),
    )
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn spadesuit() -> Outcome {
    let expected: [(&str, [bool; 4]); 3] = [
        ("gaussian_p5.toml", [true, true, true, true]),
        // 3 is inert in Q(i): the orbit bullet fails alongside coprimality
        ("gaussian_p3_l3.toml", [true, false, false, true]),
        ("quintic_p2.toml", [true, true, false, false]),
    ];
    for (name, want) in expected {
        let i = input::load(&fixture(name)).unwrap();
        let r = check_spadesuit(&SpadesuitInput {
            phi0: i.phi0,
            phin: i.phin,
            p: i.p.unwrap(),
            l: i.l.unwrap(),
            gram0: i.gram0,
            gram1: i.gram1,
        })
        .unwrap();
        if r.verdicts() != want {
            return outcome(false, format!("{name}: {:?}", r.verdicts()));
        }
    }
    outcome(true, "all-pass, coprimality failure, orbit failure")
}

fn reproducible() -> Outcome {
    let args = |extra: &[&str]| {
        let mut v = vec![
            "pelwedge", "verify", "all", "--seed", "99", "--format", "records",
        ];
        v.extend_from_slice(extra);
        run_args(v)
    };
    let a = args(&[]);
    let b = args(&[]);
    let c = args(&["--sequential"]);
    let ok = a.code == 0 && a.stdout == b.stdout && a.stdout == c.stdout;
    outcome(
        ok,
        format!(
            "{} bytes, identical across reruns and execution modes",
            a.stdout.len()
        ),
    )
}

type Criterion = (&'static str, f64, fn() -> Outcome);

fn main() {
    let criteria: Vec<Criterion> = vec![
        (
            "weights of the k-th module and derived CM trace",
            10.0,
            data_weights,
        ),
        (
            "compound of the symbolic block equals the wedge block",
            60.0,
            vdrei,
        ),
        (
            "contracted parameters give the exterior power block",
            60.0,
            vzehn,
        ),
        ("perfectness is inherited by exterior powers", 120.0, prinz),
        ("similitude transport and multiplicativity", 60.0, || {
            suite(Suite::Similitude, 200)
        }),
        ("ball embedding lands in the unit ball", 30.0, embedding),
        ("positivity transport to exterior powers", 60.0, || {
            suite(Suite::Positivity, 100)
        }),
        ("integral-model hypothesis fixtures", 1.0, spadesuit),
        (
            "byte-identical records for a fixed seed",
            f64::INFINITY,
            reproducible,
        ),
    ];
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        let secs = start.elapsed().as_secs_f64();
        let ok = o.ok && secs < *budget;
        if !ok {
            failed += 1;
        }
        let budget_note = if budget.is_finite() {
            format!(" / {budget:.0}s")
        } else {
            String::new()
        };
        println!(
            "{} [{}] {name} ({secs:.2}s{budget_note}): {}",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            o.note
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
