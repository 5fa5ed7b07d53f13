//! End-to-end tests of the `weilsurf` binary: output contents, JSON
//! round-trips, and the exit-code contract.

use assert_cmd::Command;
use predicates::prelude::*;

fn cmd() -> Command {
    Command::cargo_bin("weilsurf").unwrap()
}

#[test]
fn elliptic_f9_lists_dic12() {
    cmd()
        .args(["elliptic", "--q", "9"])
        .assert()
        .success()
        .stdout(predicate::str::contains("dic12"))
        .stdout(predicate::str::contains("beta =    6"));
}

#[test]
fn elliptic_f2_has_beta_zero() {
    cmd()
        .args(["elliptic", "--q", "2"])
        .assert()
        .success()
        .stdout(predicate::str::contains("beta =    0"));
}

#[test]
fn elliptic_rejects_non_prime_power() {
    cmd().args(["elliptic", "--q", "12"]).assert().code(2);
}

#[test]
fn weil_surd_center() {
    cmd()
        .args(["weil", "--q", "7", "--pi", "surd:5,2"])
        .assert()
        .success()
        .stdout(predicate::str::contains("Q(sqrt 5, sqrt -2)"))
        .stdout(predicate::str::contains("g = 2"));
}

#[test]
fn weil_zeta8_all_invariants_zero() {
    cmd()
        .args(["weil", "--q", "4", "--pi", "zeta:8", "--json"])
        .assert()
        .success()
        .stdout(predicate::str::contains("\"g\": 2"))
        .stdout(predicate::str::contains("0/1"));
}

#[test]
fn weil_non_weil_poly_exits_3() {
    cmd()
        .args(["weil", "--q", "7", "--pi", "poly:1,0,0,0,1"])
        .assert()
        .code(3);
}

#[test]
fn weil_bad_spec_exits_2() {
    cmd().args(["weil", "--q", "7", "--pi", "nonsense"]).assert().code(2);
}

#[test]
fn tables_all_match_golden() {
    for (table, rows) in [("2", 5), ("10", 11), ("11", 14), ("12", 9), ("13", 20)] {
        let assert = cmd().args(["tables", "--table", table]).assert().success();
        let out = String::from_utf8(assert.get_output().stdout.clone()).unwrap();
        let data_rows = out.lines().filter(|l| !l.starts_with('#')).count();
        assert_eq!(data_rows, rows, "table {table}");
        assert!(out.contains("golden match: true"));
    }
}

#[test]
fn tables_unknown_exits_2() {
    cmd().args(["tables", "--table", "3"]).assert().code(2);
}

#[test]
fn tables_mismatched_golden_exits_4() {
    let dir = tempdir();
    std::fs::write(dir.join("tables_v1.txt"), "t2|1|cyclic_99|-\n").unwrap();
    cmd()
        .args(["tables", "--table", "2"])
        .env("WEILSURF_GOLDEN_DIR", &dir)
        .assert()
        .code(4);
    std::fs::remove_dir_all(&dir).ok();
}

fn tempdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("weilsurf-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn tables_json_roundtrip() {
    let assert = cmd()
        .args(["tables", "--table", "13", "--verify-witnesses", "--json"])
        .assert()
        .success();
    let out = String::from_utf8(assert.get_output().stdout.clone()).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["schema_version"], "1");
    assert_eq!(doc["results"]["rows"].as_array().unwrap().len(), 20);
    assert_eq!(doc["witnesses"].as_array().unwrap().len(), 20);
    // Round-trip: reserialize and reparse.
    let reprinted = serde_json::to_string_pretty(&doc).unwrap();
    let again: serde_json::Value = serde_json::from_str(&reprinted).unwrap();
    assert_eq!(doc, again);
}

#[test]
fn embed_ostar_over_sqrt2() {
    cmd()
        .args(["embed", "--group", "Ostar", "--center", "Qsqrt2"])
        .assert()
        .success()
        .stdout(predicate::str::contains("admissible"));
}

#[test]
fn embed_ostar_over_sqrt3_not_admissible() {
    cmd()
        .args(["embed", "--group", "ostar", "--center", "Qsqrt3"])
        .assert()
        .success()
        .stdout(predicate::str::contains("not admissible"));
}

#[test]
fn embed_unknown_group_exits_2() {
    cmd()
        .args(["embed", "--group", "nosuch", "--center", "Q"])
        .assert()
        .code(2);
}

#[test]
fn units_hurwitz() {
    cmd()
        .args(["units", "--order", "hurwitz_D2"])
        .assert()
        .success()
        .stdout(predicate::str::contains("24 torsion units, group T*"));
}

#[test]
fn units_icosian_json() {
    let assert = cmd()
        .args(["units", "--order", "icosian_over_golden", "--json"])
        .assert()
        .success();
    let out = String::from_utf8(assert.get_output().stdout.clone()).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["results"]["count"], 120);
    assert_eq!(doc["results"]["group"], "istar");
}

#[test]
fn units_unknown_order_exits_2() {
    cmd().args(["units", "--order", "nope"]).assert().code(2);
}
