//! Runs the acceptance suite and prints one line per criterion.

use blockcomb::selftest;

#[test]
fn acceptance_criteria() {
    let reports = selftest::run_all();
    let mut failed = 0;
    for r in &reports {
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!("[{status}] criterion {:>2}: {} ({})", r.id, r.name, r.detail);
        if !r.passed {
            failed += 1;
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
