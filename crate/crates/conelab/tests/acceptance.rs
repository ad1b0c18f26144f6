//! Acceptance criteria 1-9. Prints one PASS/FAIL line per criterion and
//! exits non-zero when any fails. Time limits are wall-clock seconds.

use std::ops::RangeInclusive;
use std::process::{Command, ExitCode};
use std::time::Instant;

use conelab::convert::Context;
use conelab::suites::{run_suite, Suite};

struct Outcome {
    pass: bool,
    line: String,
    failures: Vec<String>,
}

fn suite_criterion(k: usize, suite: Suite, range: RangeInclusive<usize>, limit: f64) -> Outcome {
    let label = format!(
        "criterion {k} {suite} (n={}..{})",
        range.start(),
        range.end()
    );
    let t = Instant::now();
    let result = run_suite(suite, range, &Context::default());
    let secs = t.elapsed().as_secs_f64();
    match result {
        Ok(report) => {
            let failed: Vec<String> = report
                .checks
                .iter()
                .filter(|c| !c.pass)
                .map(|c| format!("n={} {}: {}", c.n, c.name, c.detail))
                .collect();
            let in_time = secs < limit;
            let mut failures = failed.clone();
            if !in_time {
                failures.push(format!("took {secs:.2}s, limit {limit}s"));
            }
            Outcome {
                pass: report.passed() && in_time,
                line: format!(
                    "{label}: {} checks, {} failed, {secs:.2}s (limit {limit}s)",
                    report.checks.len(),
                    failed.len()
                ),
                failures,
            }
        }
        Err(e) => Outcome {
            pass: false,
            line: format!("{label}: error after {secs:.2}s"),
            failures: vec![format!("{e:#}")],
        },
    }
}

fn run_cli(jobs: usize, suite: &str, n: &str) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_conelab"))
        .args([
            "--no-cache",
            "--jobs",
            &jobs.to_string(),
            "verify",
            suite,
            "--n",
            n,
        ])
        .output()
        .map_err(|e| format!("cannot run conelab: {e}"))?;
    if !out.status.success() {
        return Err(format!(
            "verify {suite} --jobs {jobs} exited with {}",
            out.status
        ));
    }
    Ok(out.stdout)
}

fn determinism(limit: f64) -> Outcome {
    let t = Instant::now();
    let mut failures = Vec::new();
    let cases = [
        ("psi-cut", "3..5"),
        ("equalities", "3..6"),
        ("orbits", "3..5"),
    ];
    for (suite, n) in cases {
        match (run_cli(1, suite, n), run_cli(8, suite, n)) {
            (Ok(a), Ok(b)) if a == b => {}
            (Ok(a), Ok(b)) => failures.push(format!(
                "{suite}: outputs differ ({} vs {} bytes)",
                a.len(),
                b.len()
            )),
            (Err(e), _) | (_, Err(e)) => failures.push(e),
        }
    }
    let secs = t.elapsed().as_secs_f64();
    if secs >= limit {
        failures.push(format!("took {secs:.2}s, limit {limit}s"));
    }
    Outcome {
        pass: failures.is_empty(),
        line: format!("criterion 9 determinism (--jobs 1 vs 8; psi-cut, equalities, orbits): {secs:.2}s (limit {limit}s)"),
        failures,
    }
}

fn main() -> ExitCode {
    let outcomes = [
        suite_criterion(1, Suite::Identities, 2..=6, 1.0),
        suite_criterion(2, Suite::Dimensions, 3..=7, 1.0),
        suite_criterion(3, Suite::SetFunctions, 3..=5, 5.0),
        suite_criterion(4, Suite::Inner, 3..=6, 5.0),
        suite_criterion(5, Suite::PsiCut, 3..=5, 120.0),
        suite_criterion(6, Suite::Equalities, 3..=6, 300.0),
        suite_criterion(7, Suite::Orbits, 3..=5, 300.0),
        suite_criterion(8, Suite::Table, 6..=6, 3.0 * 3600.0),
        determinism(600.0),
    ];
    let mut ok = true;
    for o in &outcomes {
        println!("{} {}", if o.pass { "PASS" } else { "FAIL" }, o.line);
        for f in &o.failures {
            println!("    {f}");
        }
        ok &= o.pass;
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
