use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn piblock(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_piblock"))
        .args(args)
        .arg("--corpus")
        .arg(corpus())
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = piblock(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn classes_of_s3() {
    let v = json(&["classes", "S3"]);
    let sizes: Vec<u64> = v["classes"].as_array().unwrap().iter().map(|c| c["size"].as_u64().unwrap()).collect();
    assert_eq!(sizes, vec![1, 3, 2]);
}

#[test]
fn chartab_of_a5() {
    let v = json(&["chartab", "A5"]);
    assert_eq!(v["degrees"], serde_json::json!([1, 3, 3, 4, 5]));
    let row = &v["characters"][1];
    assert!(row[3].as_str().unwrap().contains("E(5)"));
}

#[test]
fn builder_names_resolve() {
    let v = json(&["classes", "psl2-gamma:4:2"]);
    assert_eq!(v["order"], 120);
    assert_eq!(v["classes"].as_array().unwrap().len(), 7);
}

#[test]
fn blocks_and_piblocks() {
    let v = json(&["blocks", "A5", "--p", "5"]);
    let k: Vec<u64> = v["blocks"].as_array().unwrap().iter().map(|b| b["k"].as_u64().unwrap()).collect();
    assert_eq!(k, vec![4, 1]);
    assert_eq!(v["separable"], false);
    let v = json(&["piblocks", "S4", "--pi", "2,3"]);
    assert_eq!(v["blocks"][0]["defect"]["order"], 24);
    let v = json(&["defect", "S4", "--pi", "2", "--all-choices"]);
    assert_eq!(v["order"], 8);
    assert_eq!(v["all_choice_orders"], serde_json::json!([8]));
}

#[test]
fn verify_kgv_suite() {
    let v = json(&["verify", "--suite", "kgv"]);
    let s = &v["summary"];
    assert_eq!(s["violated"], 0);
    assert!(s["reports"].as_u64().unwrap() >= 15);
    let f21 = v["reports"].as_array().unwrap().iter().find(|r| r["group"] == "F21").unwrap();
    assert_eq!((f21["lhs"].as_u64(), f21["rhs"].as_u64()), (Some(5), Some(7)));
    assert_eq!(f21["verdict"], "holds");
}

#[test]
fn verify_quotient_reports_s4_equality() {
    let v = json(&["verify", "--suite", "quotient", "--pi", "3"]);
    let r = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["group"] == "S4" && r["params"]["pi"] == "{3}")
        .unwrap();
    assert_eq!((r["lhs"].as_u64(), r["rhs"].as_u64()), (Some(3), Some(3)));
    assert_eq!(r["verdict"], "equality");
}

#[test]
fn empty_corpus_gives_empty_summary() {
    let dir = std::env::temp_dir().join(format!("piblock-cli-empty-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_piblock"))
        .args(["verify", "--json", "--corpus"])
        .arg(&dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["summary"]["groups"], 0);
    assert_eq!(v["summary"]["reports"], 0);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn malformed_corpus_names_the_line() {
    let dir = std::env::temp_dir().join(format!("piblock-cli-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("bad.grp"), "group X\ndegree 3\ngen (0 1 7)\nend\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_piblock"))
        .args(["verify", "--corpus"])
        .arg(&dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.grp:3:"), "{err}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn unknown_group_is_an_error() {
    let out = piblock(&["classes", "NoSuchGroup"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn olsson_subcommand() {
    let v = json(&["olsson"]);
    assert_eq!(v["group_order"], 163_680);
    assert_eq!(v["block_count"], 1);
    assert_eq!(v["defect_order"], 32_736);
    assert_eq!(v["defect_abelianization"], 1);
    assert_eq!(v["linear_characters"], 5);
    assert!(v["k0"].as_u64().unwrap() >= 5);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c[1] == true));
}
