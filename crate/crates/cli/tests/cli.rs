use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use symsq_cli::Envelope;

fn symsq(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_symsq"));
    cmd.env_remove("SYMSQ_CACHE");
    match cache {
        Some(p) => {
            cmd.arg("--cache").arg(p);
        }
        None => {
            cmd.arg("--no-cache");
        }
    }
    cmd.args(args).output().unwrap()
}

fn envelope(out: &Output) -> Envelope {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn has_float(v: &Value) -> bool {
    match v {
        Value::Number(n) => n.is_f64(),
        Value::Array(a) => a.iter().any(has_float),
        Value::Object(m) => m.values().any(has_float),
        _ => false,
    }
}

#[test]
fn exit_codes() {
    assert_eq!(symsq(&["--help"], None).status.code(), Some(0));
    assert_eq!(symsq(&["--bogus"], None).status.code(), Some(2));
    assert_eq!(symsq(&["invariant", "-d", "1", "a^4, (a"], None).status.code(), Some(2));
    assert_eq!(symsq(&["crc", "verify", "--max-genus", "0"], None).status.code(), Some(2));
    assert_eq!(symsq(&["ring", "--show", "pairing"], None).status.code(), Some(0));
}

#[test]
fn invariant_examples() {
    for (d, expr, value, reason) in [
        ("1", "a^4, a^2", "6", "degree-one two-point table"),
        ("1", "g2, g2, g, g", "-1/2", "reconstruction"),
        ("5", "1, a, a^2", "0", "unit axiom"),
    ] {
        let out = symsq(&["--json", "invariant", "-d", d, expr], None);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let env = envelope(&out);
        assert_eq!(env.schema, "symsq.envelope/1");
        assert_eq!(env.verb, "invariant");
        assert_eq!(env.result["value"], value, "{expr}");
        assert_eq!(env.result["reason"], reason, "{expr}");
        assert!(!has_float(&serde_json::to_value(&env).unwrap()));
        assert!(env.timing_ms.is_none());
        let again: Envelope = serde_json::from_str(&env.to_json()).unwrap();
        assert_eq!(again, env);
    }
}

#[test]
fn json_is_reproducible_without_timing() {
    let a = symsq(&["--json", "hyperelliptic", "-d", "1", "--max-genus", "1"], None);
    let b = symsq(&["--json", "hyperelliptic", "-d", "1", "--max-genus", "1"], None);
    assert_eq!(a.stdout, b.stdout);
    let timed = envelope(&symsq(&["--json", "--timing", "ring"], None));
    assert!(timed.timing_ms.is_some());
}

#[test]
fn cache_flag_beats_environment() {
    let dir = tempfile::tempdir().unwrap();
    let from_env = dir.path().join("env.cache");
    let from_flag = dir.path().join("flag.cache");
    let out = Command::new(env!("CARGO_BIN_EXE_symsq"))
        .env("SYMSQ_CACHE", &from_env)
        .args(["invariant", "-d", "1", "g2, g2, g, g"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(from_env.exists());
    let out = Command::new(env!("CARGO_BIN_EXE_symsq"))
        .env("SYMSQ_CACHE", &from_env)
        .arg("--cache")
        .arg(&from_flag)
        .args(["invariant", "-d", "1", "g2, g2, g, g, g, g"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(from_flag.exists());
}

#[test]
fn cache_reuse_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("sub").join("inv.cache");
    let args = ["--json", "invariant", "-d", "1", "g2, g2, g, g"];
    let first = symsq(&args, Some(&cache));
    assert_eq!(envelope(&first).provenance, "computed");
    let second = symsq(&args, Some(&cache));
    assert_eq!(envelope(&second).provenance, "cache");
    assert!(String::from_utf8_lossy(&second.stderr).contains("loaded"));

    let text = fs::read_to_string(&cache).unwrap();
    fs::write(&cache, text.replacen("= -1/2", "= 7", 1)).unwrap();
    let third = symsq(&args, Some(&cache));
    assert!(third.status.success());
    assert!(String::from_utf8_lossy(&third.stderr).contains("rejected"));
    let env = envelope(&third);
    assert_eq!(env.result["value"], "-1/2");
    assert_eq!(env.provenance, "computed");
}

#[test]
fn crc_verify_passes() {
    let out = symsq(&["--json", "crc", "verify", "--max-genus", "3"], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn export_writes_entries() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("inv.json");
    let out = symsq(
        &["export", "--what", "invariants", "--out", path.to_str().unwrap(), "--max-degree", "1", "--max-points", "4"],
        None,
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["schema"], "symsq.invariants/1");
    let entries = doc["invariants"].as_array().unwrap();
    assert!(entries.iter().any(|e| e["key"] == "1|6,6,8,8" && e["value"] == "-1/2"));
    assert!(!has_float(&doc));
}
