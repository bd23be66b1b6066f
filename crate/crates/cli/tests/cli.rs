use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aperylike")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = run(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{args:?}: {e}\nstdout: {}\nstderr: {}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    });
    (v, out.status.code().unwrap())
}

fn terms(key: &str, n_max: &str) -> Vec<String> {
    let (v, code) = json(&["terms", "--seq", key, "--nmax", n_max]);
    assert_eq!(code, 0);
    assert_eq!(v["outcome"], "DATA");
    v["payload"]["terms"].as_array().unwrap().iter().map(|t| t.as_str().unwrap().to_string()).collect()
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn level11_terms() {
    let t = terms("level11", "10");
    assert_eq!(t.len(), 11);
    assert_eq!(&t[..5], ["1", "4", "28", "268", "3004"]);
    assert_eq!(t[10], "18200713168");
}

#[test]
fn scaled_level13_terms() {
    let t = terms("13scaled", "10");
    assert_eq!(t[10], "657035290739412");
}

#[test]
fn gaussian_terms() {
    assert_eq!(terms("15C", "3"), ["1", "2+2i", "6+8i", "44+52i"]);
}

#[test]
fn csv_terms() {
    let out = run(&["terms", "--seq", "15C", "--nmax", "2", "--format", "csv"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "n,T(n)\n0,1\n1,2+2i\n2,6+8i\n");
}

#[test]
fn reports_are_reproducible() {
    let a = run(&["terms", "--seq", "14C", "--nmax", "8"]).stdout;
    let b = run(&["terms", "--seq", "14C", "--nmax", "8"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn fourterm_params_table() {
    let (v, code) = json(&["reproduce", "fourterm-params"]);
    assert_eq!(code, 0);
    assert_eq!(v["outcome"], "PASS");
    assert_eq!(v["payload"]["rows"].as_array().unwrap().len(), 10);
    assert_eq!(v["payload"]["mismatches"].as_array().unwrap().len(), 0);
}

#[test]
fn term_tables() {
    for table in ["terms-14", "terms-15"] {
        let (v, code) = json(&["reproduce", table]);
        assert_eq!((code, v["outcome"].as_str()), (0, Some("PASS")), "{table}: {v}");
    }
}

#[test]
fn cp_counts_table() {
    let (v, code) = json(&["reproduce", "cp-counts", "--nmax", "1000", "--primes", "2,3,5,7,11,59"]);
    assert_eq!(code, 0);
    let c: Vec<u64> = v["payload"]["rows"].as_array().unwrap().iter().map(|r| r["c"].as_u64().unwrap()).collect();
    assert_eq!(c, [1000, 333, 200, 750, 875, 1000]);
}

#[test]
fn lucas_report_shape() {
    let (v, code) = json(&["lucas", "--seq", "level11", "--prime", "5", "--nmax", "100"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "lucas");
    assert_eq!(v["outcome"], "PASS");
    let p = &v["payload"];
    for field in ["seq", "p", "e", "n_max", "passes", "violations", "pattern_hits"] {
        assert!(p.get(field).is_some(), "missing {field}");
    }
    assert_eq!(p["p"], 5);
    assert_eq!(p["passes"], 101);
}

#[test]
fn failure_exits_nonzero() {
    // 14C has Lucas violations at p = 3.
    let (v, code) = json(&["lucas", "--seq", "14C", "--prime", "3", "--nmax", "200"]);
    assert_eq!(v["outcome"], "FAIL");
    assert_eq!(code, 1);
    assert!(!v["payload"]["violations"].as_array().unwrap().is_empty());
}

#[test]
fn errors_exit_two() {
    let out = run(&["terms", "--seq", "no-such-sequence"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no-such-sequence"));
}

#[test]
fn mutated_definition_is_located() {
    let (v, _) = json(&["catalog", "show", "level11"]);
    let mut def = v["payload"]["definition"].clone();
    let good = tmp("level11.json");
    std::fs::write(&good, def.to_string()).unwrap();
    let (ok, code) = json(&["verify-qseries", "--def", good.to_str().unwrap()]);
    assert_eq!((code, ok["outcome"].as_str()), (0, Some("PASS")));

    def["G"][1] = Value::from("-19");
    let bad = tmp("level11-mutated.json");
    std::fs::write(&bad, def.to_string()).unwrap();
    let (v, code) = json(&["verify-qseries", "--def", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["outcome"], "FAIL");
    let failed = v["payload"]["failed"].as_array().unwrap();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|c| c["row"] == "level11"));
}

#[test]
fn full_sweep_passes_at_low_order() {
    let (v, code) = json(&["verify-qseries", "--all", "--order", "5"]);
    assert_eq!((code, v["outcome"].as_str()), (0, Some("PASS")), "{}", v["payload"]["failed"]);
}

#[test]
fn catalog_export_roundtrips() {
    let out = run(&["catalog", "export", "--format", "json"]);
    let defs: Vec<Value> = serde_json::from_slice(&out.stdout).unwrap();
    assert!(defs.len() > 40);
    let path = tmp("exported.json");
    let row = defs.iter().find(|d| d["name"] == "15C").unwrap();
    std::fs::write(&path, row.to_string()).unwrap();
    let (v, _) = json(&["terms", "--def", path.to_str().unwrap(), "--nmax", "3"]);
    assert_eq!(v["payload"]["terms"][3], "44+52i");
}

#[test]
fn asymptotics_report() {
    let (v, code) = json(&["asymptotics", "--seq", "15A", "--terms", "600", "--diffs", "6", "--digits", "40"]);
    assert_eq!(code, 0);
    let p = &v["payload"];
    assert_eq!(p["R_exact"], "12");
    assert_eq!(p["b1_exact"], "-489/1000");
    assert_eq!(p["alpha_exact"], "-3/2");
    assert!(p["C_error"].as_str().unwrap().contains('e'));
}

#[test]
fn digits_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_aperylike"))
        .args(["asymptotics", "--seq", "level7", "--terms", "300", "--diffs", "4"])
        .env("APERY_DIGITS", "35")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["parameters"]["digits"], "35");
}
