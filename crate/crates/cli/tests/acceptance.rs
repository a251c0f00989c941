use std::io::Write;

use hsp_lab::accept::{run_criterion, COUNT};

/// One PASS/FAIL line per criterion, written past the test harness capture.
#[test]
fn acceptance() {
    let mut failed = Vec::new();
    std::io::stdout().write_all(b"\n").unwrap();
    for id in 1..=COUNT {
        let line = match run_criterion(id, 1) {
            Ok(c) => {
                if !c.pass {
                    failed.push(id);
                }
                c.line()
            }
            Err(e) => {
                failed.push(id);
                format!("criterion {id}: FAIL (error) {e}")
            }
        };
        let mut out = std::io::stdout().lock();
        writeln!(out, "{line}").unwrap();
        out.flush().unwrap();
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
