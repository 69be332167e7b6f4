//! Runs every acceptance check and prints one pass/fail line per criterion.
//!
//! Built without the libtest harness so the lines reach the terminal
//! uncaptured. Exits non-zero when any criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;

use lgdim::suite::{self, CheckResult};

/// The `≤` oracle is the slowest check and must stay usable interactively.
const LEQ_LIMIT_MS: u128 = 60_000;

fn main() -> ExitCode {
    let results = suite::run_suite(None);
    let mut by_criterion: BTreeMap<u8, Vec<&CheckResult>> = BTreeMap::new();
    for r in &results {
        by_criterion.entry(r.criterion).or_default().push(r);
    }
    let mut failed: Vec<u8> = (1..=11).filter(|c| !by_criterion.contains_key(c)).collect();
    for (criterion, rs) in &by_criterion {
        let slow = rs.iter().any(|r| r.tags.iter().any(|t| t == "leq") && r.elapsed_ms >= LEQ_LIMIT_MS);
        let passed = rs.iter().all(|r| r.passed) && !slow;
        let ms: u128 = rs.iter().map(|r| r.elapsed_ms).max().unwrap_or(0);
        let detail: Vec<String> = rs.iter().map(|r| format!("{}: {}", r.name, r.detail)).collect();
        println!("criterion {criterion:>2} [PRIMARY] {} ({ms} ms) {}", if passed { "PASS" } else { "FAIL" }, detail.join("; "));
        if !passed {
            failed.push(*criterion);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", by_criterion.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
