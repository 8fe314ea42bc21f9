use std::io::Write;

use entropic::acceptance::{run_criterion, AcceptanceConfig, Budget, CRITERIA};

#[test]
fn acceptance_criteria() {
    let config = AcceptanceConfig::new(Budget::Full);
    // Direct writes bypass the test harness capture so the table always shows.
    let mut out = std::io::stdout().lock();
    let mut failed = Vec::new();
    for &(id, name) in &CRITERIA {
        match run_criterion(id, &config) {
            Ok(r) => {
                writeln!(out, "{}", r.line()).unwrap();
                if let Some(json) = &r.archive {
                    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join(format!("criterion_{id}.json"));
                    std::fs::write(&path, json).unwrap();
                    writeln!(out, "     archived {}", path.display()).unwrap();
                }
                if !r.passed {
                    failed.push(id);
                }
            }
            Err(e) => {
                writeln!(out, "[FAIL] {id} {name}: error: {e}").unwrap();
                failed.push(id);
            }
        }
        out.flush().unwrap();
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
