use std::process::Command;
use std::time::{Duration, Instant};

use hsfield::suite::{self, Outcome, DEFAULT_SEED};

/// Criteria that cannot hold as stated; they run in full and must keep failing
/// for the documented reason, so a change in behaviour is noticed.
const KNOWN_RED: &[(u32, &str)] = &[(6, "multiplicative(e=1,p=2): D_(1)(X^(1)) = 1 + X1 but d/dX1 gives 1")];

const TIME_LIMITS: &[(u32, u64)] = &[(1, 5), (2, 10), (3, 5), (5, 10), (8, 10), (10, 10)];

fn line(o: &Outcome, took: Duration) -> String {
    let status = if o.passed { "PASS" } else { "FAIL" };
    format!("[{status}] {:>2} {:<28} {:>8.3}s  {}", o.id, o.name, took.as_secs_f64(), o.detail)
}

fn cli_determinism(seed: u64) -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_hsfield"))
            .args(["--format", "records", "suite", "acceptance", "--seed", &seed.to_string()])
            .env_remove("HF_BUDGET")
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    let same = a.stdout == b.stdout && !a.stdout.is_empty();
    let lines = String::from_utf8_lossy(&a.stdout).lines().count();
    Outcome {
        id: 13,
        name: "cli determinism",
        passed: same && a.status.code() == b.status.code(),
        detail: format!("{lines} record lines, identical={same}"),
    }
}

#[test]
fn acceptance() {
    let seed = DEFAULT_SEED;
    let mut failures = Vec::new();
    for id in 1..=13 {
        let start = Instant::now();
        let o = if id == 13 { cli_determinism(seed) } else { suite::run(id, seed) };
        let took = start.elapsed();
        println!("{}", line(&o, took));
        if let Some(&(_, limit)) = TIME_LIMITS.iter().find(|(i, _)| *i == id) {
            if took > Duration::from_secs(limit) {
                failures.push(format!("criterion {id} took {took:?}, limit {limit}s"));
            }
        }
        match KNOWN_RED.iter().find(|(i, _)| *i == id) {
            Some((_, why)) => {
                if o.passed {
                    failures.push(format!("criterion {id} now passes; drop it from the known-red list"));
                } else if !o.detail.contains(why) {
                    failures.push(format!("criterion {id} fails for a new reason: {}", o.detail));
                }
            }
            None if !o.passed => failures.push(format!("criterion {id}: {}", o.detail)),
            None => {}
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
