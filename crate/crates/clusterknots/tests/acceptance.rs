//! One line per acceptance criterion. Criteria whose printed reference
//! values contain a documented misprint report FAIL; the run as a whole
//! succeeds only if every other criterion passes and those reds are exactly
//! the documented ones (the computation reproduces the recorded correction).

use std::process::ExitCode;

use clusterknots::cli::selftest::{criteria, Status};

/// Criteria with a misprinted reference value.
const DOCUMENTED_REDS: [u8; 3] = [2, 8, 9];

fn main() -> ExitCode {
    let d = std::env::var("CLUSTERKNOTS_ORDER").ok().and_then(|s| s.parse().ok()).unwrap_or(2);
    let checks = criteria(d);
    let mut unexpected = Vec::new();
    for c in &checks {
        let n = c.criterion.expect("criteria carry a number");
        let verdict = if c.meets_criterion() { "PASS" } else { "FAIL" };
        let note = match (c.status, c.over_budget()) {
            (_, true) => format!(" (over budget: {:.2?} > {:?})", c.elapsed, c.budget.unwrap_or_default()),
            (Status::Deviation, _) => " (printed value misprinted; matches the recorded correction)".to_string(),
            _ => String::new(),
        };
        println!("criterion {n:>2}: {verdict} — {} [{:.2?}]{note}", c.name, c.elapsed);
        if !c.detail.is_empty() {
            println!("              {}", c.detail);
        }
        let expected = if DOCUMENTED_REDS.contains(&n) {
            c.status == Status::Deviation && !c.over_budget()
        } else {
            c.meets_criterion()
        };
        if !expected {
            unexpected.push(n);
        }
    }
    if checks.len() != 12 {
        println!("expected 12 criteria, found {}", checks.len());
        return ExitCode::FAILURE;
    }
    let passed = checks.iter().filter(|c| c.meets_criterion()).count();
    println!("{passed}/12 criteria met; documented reds: {DOCUMENTED_REDS:?}");
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
