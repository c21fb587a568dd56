//! Acceptance gate: every criterion at its stated tolerance and time limit.

use ftham::suite::{run_suite, SuiteOptions};

#[test]
fn acceptance_criteria() {
    let report = run_suite(&SuiteOptions::default());
    println!();
    for r in &report.results {
        println!("{}", r.line());
    }
    assert_eq!(report.results.len(), 10);
    let failed: Vec<_> = report.results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
