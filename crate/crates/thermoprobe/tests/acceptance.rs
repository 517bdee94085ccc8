//! Acceptance suite: runs every criterion and prints one pass/fail line per
//! criterion (visible with `cargo test --test acceptance -- --nocapture`).
//! The same checks back the `thermoprobe selftest` subcommand.

use thermoprobe::selftest::run_all;

#[test]
fn acceptance_criteria() {
    let outcomes = run_all();
    assert_eq!(outcomes.len(), 9);
    let mut failed = Vec::new();
    for o in &outcomes {
        println!(
            "{} [{}] {} ({:.1} s) {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.id,
            o.description,
            o.seconds,
            o.details
        );
        if !o.passed {
            failed.push(format!("[{}] {}: {}", o.id, o.description, o.details));
        }
    }
    assert!(
        failed.is_empty(),
        "acceptance criteria failed:\n{}",
        failed.join("\n")
    );
}
