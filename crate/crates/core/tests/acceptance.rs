//! One PASS/FAIL line per property suite; exits non-zero if any suite fails.
//!
//! The two-round equivalence suite can take minutes per instance; set
//! `AVOIDANCE_STRETCH_TIMEOUT_S` to shorten its per-instance budget.

use std::process::ExitCode;
use std::time::Duration;

use avoidance::verify::{run_suite, CaseStatus, Suite, VerifyConfig};

fn main() -> ExitCode {
    let mut cfg = VerifyConfig::default();
    if let Some(secs) = std::env::var("AVOIDANCE_STRETCH_TIMEOUT_S")
        .ok()
        .and_then(|s| s.parse().ok())
    {
        cfg.stretch_timeout = Duration::from_secs(secs);
    }
    let mut failed = Vec::new();
    for suite in Suite::ALL {
        let report = run_suite(suite, &cfg);
        for c in report.cases.iter().filter(|c| c.status != CaseStatus::Pass) {
            println!("{c}");
        }
        println!("{}", report.summary());
        if !report.passed() {
            failed.push(suite.name());
        }
    }
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failed suites: {failed:?}");
        ExitCode::FAILURE
    }
}
