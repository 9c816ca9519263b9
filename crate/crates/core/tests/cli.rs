use std::process::{Command, Output};

use serde_json::Value;

fn rankin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rankin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn without_durations(json: &[u8]) -> Value {
    let mut v: Value = serde_json::from_slice(json).expect("valid JSON");
    for row in v.as_array_mut().expect("top-level array") {
        row.as_object_mut().unwrap().remove("duration_ms");
    }
    v
}

#[test]
fn identity_at_default_order_passes() {
    let out = rankin(&["verify", "identity", "--order", "40"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS  identity.main"));
}

#[test]
fn composite_and_even_primes_are_usage_errors() {
    for p in ["4", "2", "9", "x"] {
        let out = rankin(&["verify", "gauss", "--prime", p]);
        assert_eq!(out.status.code(), Some(2), "prime {p}");
    }
}

#[test]
fn bad_flags_are_usage_errors() {
    assert_eq!(
        rankin(&["verify", "all", "--order", "-1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        rankin(&["verify", "all", "--frobnicate"]).status.code(),
        Some(2)
    );
    assert_eq!(rankin(&["verify", "everything"]).status.code(), Some(2));
    assert_eq!(
        rankin(&["verify", "gauss", "--tolerance", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        rankin(&["verify", "gauss", "--mmax", "0"]).status.code(),
        Some(2)
    );
}

#[test]
fn full_run_reports_json_and_passes() {
    let out = rankin(&["verify", "all", "--report", "json"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v.as_array().unwrap();
    for row in rows {
        let obj = row.as_object().unwrap();
        let mut keys: Vec<_> = obj.keys().map(String::as_str).collect();
        keys.sort_unstable();
        assert_eq!(
            keys,
            [
                "check",
                "detail",
                "duration_ms",
                "params",
                "residual",
                "status"
            ]
        );
        assert_eq!(obj["status"], "pass", "{row}");
        assert!(obj["params"].is_object());
        assert!(obj["residual"].is_null() || obj["residual"].is_number());
    }
    let names: Vec<_> = rows.iter().map(|r| r["check"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort_unstable();
    assert_eq!(names, sorted);
    for prefix in [
        "algebra.",
        "identity.",
        "gauss.",
        "hilbert.",
        "weil.",
        "matrix.",
    ] {
        assert!(names.iter().any(|n| n.starts_with(prefix)), "{prefix}");
    }
}

#[test]
fn json_is_deterministic_apart_from_durations() {
    let args = [
        "verify", "all", "--report", "json", "--order", "12", "--prime", "5", "--prime", "3",
        "--mmax", "3", "--seed", "17",
    ];
    let a = rankin(&args);
    let b = rankin(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(without_durations(&a.stdout), without_durations(&b.stdout));
}

#[test]
fn text_and_json_agree_on_outcomes() {
    let base = ["verify", "hilbert", "--prime", "3", "--prime", "7"];
    let text = String::from_utf8(rankin(&base).stdout).unwrap();
    let json = rankin(&[&base[..], &["--report", "json"]].concat());
    let v: Value = serde_json::from_slice(&json.stdout).unwrap();
    let rows: Vec<_> = text
        .lines()
        .filter(|l| l.starts_with("PASS") || l.starts_with("FAIL"))
        .collect();
    assert_eq!(rows.len(), v.as_array().unwrap().len());
    for (line, row) in rows.iter().zip(v.as_array().unwrap()) {
        let status = if row["status"] == "pass" {
            "PASS"
        } else {
            "FAIL"
        };
        assert!(line.starts_with(status));
        assert!(line.contains(row["check"].as_str().unwrap()));
    }
}

#[test]
fn out_flag_writes_report_file() {
    let dir = std::env::temp_dir().join(format!("rankin-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("matrix.json");
    let out = rankin(&[
        "verify",
        "matrix",
        "--report",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v[0]["check"], "matrix.identity");
    std::fs::remove_dir_all(&dir).unwrap();
}
