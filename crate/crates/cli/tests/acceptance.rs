//! One verdict line per criterion. Values are compared exactly; the only
//! tolerances are the runtime budgets in `acceptance::budget`.

use std::fs;
use std::io::Write;
use std::process::Command;

use symsq::wdvv::Engine;
use symsq_cli::acceptance::{budget, run_core, title, Outcome, CRITERIA, EXPECTED_RED};

// Written to the process stdout directly so the verdicts show even when the
// harness captures test output.
fn emit(line: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

fn print_line(o: &Outcome) {
    let tag = if o.passed { "PASS" } else { "FAIL" };
    let limit = budget(o.id).map_or(String::new(), |d| format!(" [budget {} ms]", d.as_millis()));
    emit(&format!("criterion {:2} {tag} {}{limit}: {}", o.id, o.title, o.summary()));
}

// Two runs of the binary against separate caches.
fn binary_determinism() -> (bool, String) {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let cache = dir.path().join(name);
        let out = Command::new(env!("CARGO_BIN_EXE_symsq"))
            .args(["--json", "selftest", "--quick", "--cache"])
            .arg(&cache)
            .output()
            .unwrap();
        (out.stdout, fs::read(&cache).unwrap_or_default())
    };
    let (out1, cache1) = run("one.cache");
    let (out2, cache2) = run("two.cache");
    let ok = !out1.is_empty() && !cache1.is_empty() && out1 == out2 && cache1 == cache2;
    let detail = format!(
        "stdout {} vs {} bytes, cache {} vs {} bytes",
        out1.len(),
        out2.len(),
        cache1.len(),
        cache2.len()
    );
    (ok, detail)
}

#[test]
fn acceptance() {
    let mut engine = Engine::new();
    let outcomes = run_core(&mut engine);
    let mut failing = Vec::new();
    for o in &outcomes {
        print_line(o);
        if !o.passed {
            failing.push(o.id);
        }
    }
    let (ok, detail) = binary_determinism();
    let tag = if ok { "PASS" } else { "FAIL" };
    emit(&format!("criterion 12 {tag} {}: {detail}", title(12)));
    if !ok {
        failing.push(12);
    }
    assert_eq!(outcomes.len() + 1, CRITERIA.len());
    for id in &failing {
        if EXPECTED_RED.contains(id) {
            emit(&format!("criterion {id} is a known failure against the published value"));
        }
    }
    assert_eq!(failing, EXPECTED_RED, "failing criteria differ from the expected set");
}
