use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const RC: &str = "R r 1 0 1\nC c 1 0 1e-3\nI u 1 0 PORT 1\n";
const RLC: &str = "R r 1 0 1\nC c 1 0 1\nL l 1 0 1\nI u 1 0 PORT 1\n";

fn structmor(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_structmor"))
        .args(args)
        .current_dir(cwd)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn listing(dir: &Path) -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    names
}

#[test]
fn parse_summarizes_minimal_rc() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("rc.cir"), RC).unwrap();
    let out = structmor(&["parse", "rc.cir"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!((v["N"].as_u64(), v["N0"].as_u64(), v["m"].as_u64()), (Some(1), Some(0), Some(1)));
    assert_eq!(v["hermitian"], Value::Bool(true));
    assert_eq!(v["tool"], "structmor");
    assert_eq!(v["command"], "parse");
}

#[test]
fn malformed_line_exits_2_with_line_number() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.cir"), "R r 1 0 1\nC c 1 0 nope\n").unwrap();
    let out = structmor(&["parse", "bad.cir"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn gen_is_deterministic_and_reparses() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["gen", "--kind", "rlc-ladder", "--sections", "6", "--seed", "9", "--coupling"];
    let a = structmor(&args, dir.path());
    let b = structmor(&args, dir.path());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    std::fs::write(dir.path().join("x.cir"), &a.stdout).unwrap();
    let mut args_out = args.to_vec();
    args_out.extend(["--out", "y.cir"]);
    assert_eq!(structmor(&args_out, dir.path()).status.code(), Some(0));
    let sx = json(&structmor(&["parse", "x.cir"], dir.path()));
    let sy = json(&structmor(&["parse", "y.cir"], dir.path()));
    assert_eq!(sx["elements"], sy["elements"]);
    assert_eq!(sx["N"], sy["N"]);
    assert_eq!(sx["elements"]["K"].as_u64().map(|k| k > 0), Some(true));
}

#[test]
fn reduce_minimal_rlc_to_unit_blocks() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("rlc.cir"), RLC).unwrap();
    let out = structmor(&["reduce", "rlc.cir", "--method", "sprim", "--s0", "1", "--n", "1", "--out", "o"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = read_json(&dir.path().join("o/report.json"));
    assert_eq!(report["block_columns"], serde_json::json!([1, 1]));
    assert_eq!(report["reduced_dim"], 2);
    assert_eq!(report["structure"]["all_exact"], Value::Bool(true));
    assert!(dir.path().join("o/model.json").exists());
    assert_eq!(listing(&dir.path().join("o")), ["model.json", "report.json"]);
    // The reduced model feeds back into the other commands.
    let m = structmor(&["moments", "o/model.json", "--s0", "1", "--k", "3"], dir.path());
    assert_eq!(m.status.code(), Some(0));
}

#[test]
fn unreachable_target_exits_3_with_payload() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("rlc.cir"), RLC).unwrap();
    let out = structmor(&["reduce", "rlc.cir", "--method", "prima", "--s0", "1", "--n", "5"], dir.path());
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    assert_eq!(v["error"], "target_unreachable");
    assert_eq!(v["requested_n"], 5);
    assert_eq!(v["achieved_n"], 2);
    assert!(listing(dir.path()) == ["rlc.cir"]);
}

#[test]
fn compare_shares_one_basis() {
    let dir = tempfile::tempdir().unwrap();
    let gen = structmor(&["gen", "--kind", "rlc-ladder", "--sections", "5", "--seed", "7"], dir.path());
    std::fs::write(dir.path().join("l.cir"), &gen.stdout).unwrap();
    let out = structmor(&["compare", "l.cir", "--s0", "peec", "--n", "4", "--points", "40", "--out", "cmp"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = read_json(&dir.path().join("cmp/compare.json"));
    let j = v["basis"]["j"].as_u64().unwrap();
    let sprim = &v["methods"]["sprim"];
    assert!(sprim["match"]["matched_count"].as_u64().unwrap() >= 2 * j);
    assert!(v["methods"]["prima"]["match"]["matched_count"].as_u64().unwrap() >= j);
    assert_eq!(
        listing(&dir.path().join("cmp")),
        ["compare.json", "prima.json", "sprim.json", "sweep_error.csv"]
    );
    let csv = std::fs::read_to_string(dir.path().join("cmp/sweep_error.csv")).unwrap();
    assert!(csv.starts_with("f_hz,rel_err_prima,rel_err_sprim\n"));
    assert_eq!(csv.lines().count(), 41);
}

#[test]
fn check_passes_on_generated_ladder() {
    let dir = tempfile::tempdir().unwrap();
    let gen = structmor(&["gen", "--kind", "rlc-ladder", "--sections", "8", "--seed", "2", "--coupling"], dir.path());
    std::fs::write(dir.path().join("l.cir"), &gen.stdout).unwrap();
    let out = structmor(&["check", "l.cir"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["all_pass"], Value::Bool(true));
    assert_eq!(v["j_relations"]["all_hold"], Value::Bool(true));
}

#[test]
fn sweep_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("rc.cir"), RC).unwrap();
    let out = structmor(
        &["sweep", "rc.cir", "--f-min", "1", "--f-max", "1000", "--points", "4", "--entry", "1,1", "--out", "s.csv"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("s.csv")).unwrap();
    assert_eq!(csv.lines().count(), 5);
    assert!(csv.lines().next().unwrap().starts_with("f_hz"));
    assert_eq!(listing(dir.path()), ["rc.cir", "s.csv"]);
    let bad = structmor(&["sweep", "rc.cir", "--f-min", "1", "--f-max", "10", "--entry", "2,1"], dir.path());
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn moments_of_minimal_rc() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("rc.cir"), "R r 1 0 1\nC c 1 0 1\nI u 1 0 PORT 1\n").unwrap();
    let out = structmor(&["moments", "rc.cir", "--s0", "0", "--k", "3"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    // H(s) = 1 / (1 + s) = sum of (-s)^k, so every moment is 1.
    let moments = json(&out)["moments"]["moments"].as_array().unwrap().clone();
    assert_eq!(moments.len(), 3);
    for m in moments {
        assert_eq!(m["entries"], serde_json::json!([[[1.0, 0.0]]]));
    }
}
