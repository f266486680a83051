use std::path::PathBuf;
use std::process::{Command, Output};

use coxeter_tc::enumerator::CosetTable;
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(name)
}

fn ctc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ctc")).args(args).output().expect("spawn ctc")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn path(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

#[test]
fn enumerate_flagship_vertex() {
    let gamma = data("gamma.cox");
    let out = ctc(&["enumerate", "--pres", path(&gamma), "--sub", "VERTEX", "--strategy", "felsch", "--progress", "0"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&out);
    assert_eq!(r["index"], 268800);
    assert_eq!(r["schema"], "ctc/1");
    assert_eq!(r["digest"].as_str().unwrap().len(), 64);
}

#[test]
fn coset_cap_exits_2() {
    let out = ctc(&["enumerate", "--pres", path(&data("gamma.cox")), "--sub", "VERTEX", "--max-cosets", "100"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("limit"));
}

#[test]
fn input_errors_exit_1() {
    let gamma = data("gamma.cox");
    assert_eq!(ctc(&["enumerate", "--pres", path(&gamma), "--sub", "NOPE"]).status.code(), Some(1));
    assert_eq!(ctc(&["enumerate", "--pres", "/nonexistent.cox"]).status.code(), Some(1));
    assert_eq!(ctc(&["enumerate", "--pres", path(&gamma), "--format", "xml"]).status.code(), Some(1));
    assert_eq!(ctc(&["enumerate", "--pres", path(&gamma), "--max-cosets", "0"]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cox");
    std::fs::write(&bad, "gens a b;\nrel (a s)^2;\n").unwrap();
    let out = ctc(&["enumerate", "--pres", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains('s'));
}

#[test]
fn deterministic_reports_and_table_export() {
    let dir = tempfile::tempdir().unwrap();
    let f4 = data("f4.cox");
    let mut outputs = Vec::new();
    for k in 0..2 {
        let report = dir.path().join(format!("r{k}.json"));
        let table = dir.path().join(format!("t{k}.tctb"));
        let out = ctc(&[
            "enumerate", "--pres", path(&f4), "--deterministic", "--out", report.to_str().unwrap(), "--table-out", table.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
        outputs.push((std::fs::read(&report).unwrap(), std::fs::read(&table).unwrap()));
    }
    assert_eq!(outputs[0], outputs[1]);
    let r: Value = serde_json::from_slice(&outputs[0].0).unwrap();
    assert!(r.get("elapsed_ms").is_none());
    assert_eq!(r["index"], 1152);
    let t = CosetTable::from_bytes(&outputs[0].1).unwrap();
    assert_eq!(t.index(), 1152);
    assert_eq!(t.digest(), r["digest"].as_str().unwrap());

    let jpath = dir.path().join("t.json");
    assert_eq!(ctc(&["enumerate", "--pres", path(&f4), "--table-out", jpath.to_str().unwrap(), "--table-format", "json"]).status.code(), Some(0));
    let tj: coxeter_tc::enumerator::TableJson = serde_json::from_slice(&std::fs::read(&jpath).unwrap()).unwrap();
    assert_eq!(CosetTable::from_json(&tj).unwrap(), t);
}

#[test]
fn text_and_tsv_formats() {
    let f4 = data("f4.cox");
    let text = String::from_utf8(ctc(&["enumerate", "--pres", path(&f4), "--format", "text"]).stdout).unwrap();
    assert!(text.lines().any(|l| l == "index: 1152"));
    let tsv = String::from_utf8(ctc(&["enumerate", "--pres", path(&f4), "--format", "tsv"]).stdout).unwrap();
    let lines: Vec<&str> = tsv.lines().collect();
    assert_eq!(lines.len(), 2);
    let col = lines[0].split('\t').position(|h| h == "index").unwrap();
    assert_eq!(lines[1].split('\t').nth(col), Some("1152"));
}

#[test]
fn table1_tsv_and_diffs() {
    let out = ctc(&["table1", "--format", "tsv"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let tsv = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = tsv.lines().collect();
    assert_eq!(lines[0], "s\tt\tv\tf\torder");
    assert_eq!(lines[2], "(2,0,0,0)\t(2,2,0,0)\t32\t128\t2359296");
    assert_eq!(lines[3], "(2,2,0,0)\t(2,2,0,0)\t2048\t2048\t150994944");
    assert_eq!(lines[4], "(3,0,0,0)\t(3,0,0,0)\t2340\t2340\t218350080");
    assert_eq!(lines[5], "(2,2,0,0)\t(3,0,0,0)\t268800\t340200\t25082265600");
    let diffs: Vec<&&str> = lines.iter().filter(|l| l.starts_with('#')).collect();
    assert_eq!(diffs.len(), 2);
    assert!(diffs[0].contains("(2,0,0,0) (2,0,0,0)"));
}

#[test]
fn gf2_verify_and_mutation() {
    let out = ctc(&["gf2-verify"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["all_pass"], true);
    assert_eq!(r["order"], "1045094400");
    assert_eq!(r["orbit_size"], 135);

    let text = std::fs::read_to_string(data("omega24.gf2")).unwrap();
    let mutated = text.replacen("1 0 0 0 0 0 0 0\n0 1 1 1 1 1 0 0", "1 0 0 0 0 0 0 0\n0 1 1 1 1 1 1 0", 1);
    assert_ne!(text, mutated);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.gf2");
    std::fs::write(&bad, mutated).unwrap();
    let out = ctc(&["gf2-verify", "--data", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let r = json(&out);
    assert_eq!(r["all_pass"], false);
    assert!(!r["failing_relators"].as_array().unwrap().is_empty());
}

#[test]
fn orbit_alone() {
    let r = json(&ctc(&["orbit"]));
    assert_eq!(r["orbit_size"], 135);
}

#[test]
fn mix_types_and_groups() {
    let r = json(&ctc(&["mix", "--types", "3:single", "2:double"]));
    assert_eq!(r["result"], "6:double");
    let r = json(&ctc(&["mix", "--types", "3000", "2200"]));
    assert_eq!(r["result_vector"], "(6,6,0,0)");
    assert_eq!(ctc(&["mix", "--types", "1:single", "2:double"]).status.code(), Some(1));

    let f4 = data("f4.cox");
    let r = json(&ctc(&["mix", "--group", path(&f4), path(&f4)]));
    assert_eq!(r["order"], "1152");

    let r = json(&ctc(&["mix", "--group", path(&data("psi.perm")), path(&data("omega24.gf2"))]));
    assert_eq!(r["degree"], 769);
    assert_eq!(r["order"], "25082265600");

    let out = ctc(&["mix", "--group", path(&f4), path(&data("psi.perm"))]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn intersection_property_of_base_groups() {
    for (file, order) in [("base2000.cox", "18432"), ("base3000.cox", "93312"), ("base2200.cox", "73728"), ("s2000.cox", "2359296")] {
        let out = ctc(&["ip", "--pres", path(&data(file))]);
        assert_eq!(out.status.code(), Some(0), "{file}: {}", String::from_utf8_lossy(&out.stderr));
        let r = json(&out);
        assert_eq!(r["order"], order);
        assert_eq!(r["holds"], true);
    }
}

#[test]
fn intersection_property_failure_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cox");
    // a = c collapses <a> and <c> onto each other.
    std::fs::write(&bad, "gens a b c;\ncoxeter [3,3];\nrel a c;\n").unwrap();
    let out = ctc(&["ip", "--pres", bad.to_str().unwrap()]);
    let r = json(&out);
    assert_eq!(r["holds"], false, "{r}");
    assert_eq!(out.status.code(), Some(3));
}
