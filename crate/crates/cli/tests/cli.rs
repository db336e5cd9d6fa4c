use std::process::{Command, Output};

use serde_json::Value;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_osp-yangian"))
        .args(args)
        .env_remove("OSP_YANGIAN_THREADS")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn passing_run_writes_a_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = cli(&[
        "verify",
        "--N",
        "3",
        "--m",
        "1",
        "--K",
        "2",
        "--suites",
        "gauss,center",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["status"], "pass");
    let suites = v["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 2);
    for s in suites {
        for key in ["suite", "N", "m", "K", "status", "instances_checked", "failures", "millis"] {
            assert!(s.get(key).is_some(), "missing {key}");
        }
        assert_eq!(s["N"], 3);
        assert_eq!(s["K"], 2);
        assert_eq!(s["millis"], 0);
        assert!(s["instances_checked"].as_u64().unwrap() > 0);
    }
    // only the report itself remains: the temporary file was renamed
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["verify", "--N", "3", "--m", "1", "--K", "2", "--suites", "drinfeld_extended", "--mutation-controls"];
    let a = cli(&args);
    let b = cli(&[&args[..], &["--threads", "3"]].concat());
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["mutation_controls"].as_array().unwrap().len(), 2);
}

#[test]
fn failing_suite_exits_with_one() {
    let o = cli(&["verify", "--N", "4", "--m", "1", "--K", "2", "--suites", "drinfeld_extended", "--rep-check", "off"]);
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "fail");
    assert_eq!(v["rep_gate"]["status"], "skipped");
}

#[test]
fn configuration_errors_exit_with_two() {
    for args in [
        &["verify", "--N", "2", "--m", "1"][..],
        &["verify", "--N", "3", "--m", "0"],
        &["verify", "--N", "3", "--m", "1", "--K", "1"],
        &["verify", "--N", "3", "--m", "1", "--suites", "bogus"],
        &["dump-tables", "--N", "2", "--m", "1"],
    ] {
        let o = cli(args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("error"), "{args:?}");
    }
}

#[test]
fn markdown_format() {
    let o = cli(&["verify", "--N", "3", "--m", "1", "--K", "2", "--suites", "r_matrix", "--format", "markdown"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("# Verification report: N = 3, m = 1, K = 2"));
    assert!(text.contains("| r_matrix | pass |"));
}

#[test]
fn dump_tables_is_deterministic() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for d in [&a, &b] {
        let o = cli(&["dump-tables", "--N", "3", "--m", "1", "--K", "2", "--out", d.path().to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    }
    for name in ["commutators_N3_m1_K2.txt", "currents_N3_m1_K2.txt"] {
        let x = std::fs::read(a.path().join(name)).unwrap();
        assert_eq!(x, std::fs::read(b.path().join(name)).unwrap(), "{name}");
        assert!(!x.is_empty());
    }
    let table = std::fs::read_to_string(a.path().join("commutators_N3_m1_K2.txt")).unwrap();
    assert!(table.contains("[t(1,1)^(1), t(1,1)^(2)] = 0"));
    let currents = std::fs::read_to_string(a.path().join("currents_N3_m1_K2.txt")).unwrap();
    assert!(currents.contains("h_1^(1) = "));
    assert!(currents.contains("kappa_1,0 = "));
}
