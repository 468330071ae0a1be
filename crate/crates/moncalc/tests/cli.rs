use std::path::PathBuf;
use std::process::{Command, Output};

const AS: &str = r#"{"characteristic": "generic", "genericRank": 1, "label": "L_psi",
 "atInf": {"eq1": [{"dim": 1, "twist": {}, "inner": {"tame": [[{}, 1]]}}]}}"#;
const DELTA: &str = r#"{"characteristic": "generic", "generators": ["s"],
 "singular": [{"point": {"s": 1}, "tame": [[{}, 1]]}]}"#;
const WILD_POINTS: &str = r#"{"characteristic": "generic", "generators": ["s"],
 "singular": [{"point": {"s": 1}, "value": 2, "wild": [[2, 1, 1]]}]}"#;

fn dir() -> PathBuf {
    let d = std::env::temp_dir().join(format!("moncalc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn file(name: &str, body: &str) -> PathBuf {
    let p = dir().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moncalc")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr_json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stderr).expect("diagnostic is JSON")
}

#[test]
fn convolve_artin_schreier_with_itself() {
    let a = file("as.json", AS);
    let a = a.to_str().unwrap();
    let out = run(&["convolve", a, a]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let lt1 = &doc["atInf"]["lt1"];
    assert_eq!(lt1.as_array().unwrap().len(), 1);
    assert_eq!((lt1[0][0].as_i64(), lt1[0][1].as_i64(), lt1[0][2].as_i64()), (Some(1), Some(2), Some(2)));
}

#[test]
fn convolve_writes_output_file_deterministically() {
    let a = file("as2.json", AS);
    let a = a.to_str().unwrap();
    let o1 = dir().join("c1.json");
    let o2 = dir().join("c2.json");
    assert!(run(&["convolve", a, a, "-o", o1.to_str().unwrap()]).status.success());
    assert!(run(&["convolve", a, a, "-o", o2.to_str().unwrap()]).status.success());
    assert_eq!(std::fs::read(&o1).unwrap(), std::fs::read(&o2).unwrap());
}

#[test]
fn euler_of_delta() {
    let d = file("delta.json", DELTA);
    let out = run(&["euler", d.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn bound_table() {
    let out = run(&["expsum", "bound", "--p", "5", "--d", "3", "--e", "2", "--rmax", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<Vec<&str>> = text.lines().skip(2).map(|l| l.split_whitespace().collect()).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!((rows[0][2], rows[0][5]), ("1", "PASS"));
    assert_eq!((rows[1][2], rows[1][5]), ("6", "PASS"));
}

#[test]
fn bound_rejects_bad_degree() {
    let out = run(&["expsum", "bound", "--p", "5", "--d", "5", "--e", "2"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(stderr_json(&out)["error"], "HypothesisViolated");
}

#[test]
fn mellin_passes() {
    let out = run(&["expsum", "mellin", "--p", "7", "--r", "2"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("PASS"));
}

#[test]
fn validation_errors_exit_2() {
    let bad = file("bad.json", r#"{"characteristic": "generic", "atInf": {"gt1": [[3, 2, 1]]}}"#);
    let out = run(&["euler", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_json(&out)["message"].as_str().unwrap().contains("atInf.gt1[0]"));
    let broken = file("broken.json", "{\n  \"characteristic\": \"generic\",\n  \"atInf\": [\n}");
    let out = run(&["euler", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_json(&out)["message"].as_str().unwrap().contains("line"));
}

#[test]
fn insufficient_data_exits_3() {
    let ind = file(
        "ind.json",
        r#"{"characteristic": "generic", "at0": {"eq1": [{"dim": 1, "indeterminate": ["twist", "inner"]}]}}"#,
    );
    let out = run(&["phi", ind.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stderr_json(&out)["error"], "InsufficientTwistData");
    // equal slopes at finite points need the cancellation term
    let w = file("wild.json", WILD_POINTS);
    let w = w.to_str().unwrap();
    let out = run(&["convolve", w, w]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stderr_json(&out)["error"], "NeedsCancellationData");
    let out = run(&["convolve", w, w, "--cancel", "s,s,1"]);
    assert!(out.status.success());
}

#[test]
fn zero_operand_exits_4() {
    let zero = file("zero.json", r#"{"characteristic": "generic"}"#);
    let a = file("as3.json", AS);
    let out = run(&["convolve", zero.to_str().unwrap(), a.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn ft_point_transform() {
    let d = file("delta2.json", DELTA);
    let out = run(&["ft", "--functor", "tinf", "--point", "s", d.to_str().unwrap()]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["atInf"]["eq1"][0]["twist"]["s"], 1);
    let back = file("ft.json", &stdout(&out));
    let out = run(&["ft", "--functor", "inverse-tinf", "--point", "s", back.to_str().unwrap()]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["singular"][0]["tame"][0][1], 1);
}

#[test]
fn phi_iterate_reaches_depth_zero() {
    let k = file(
        "deep.json",
        r#"{"characteristic": "generic", "genericRank": 4, "at0": {"lt1": [[1, 3, 3]]}}"#,
    );
    let out = run(&["phi", "--iterate", k.to_str().unwrap()]);
    assert!(out.status.success());
    let steps: Vec<serde_json::Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(steps.len(), 4);
    assert!(steps.last().unwrap()["at0"].as_object().unwrap().is_empty());
}

#[test]
fn check_suite() {
    let a = file("as4.json", AS);
    let a = a.to_str().unwrap();
    let out = run(&["check", a, a]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().filter(|l| l.starts_with("PASS")).count(), 5);
    let out = run(&["check", "--random", "5"]);
    assert!(out.status.success());
    assert!(!stdout(&out).contains("FAIL"));
}

#[test]
fn pkchi_multiply() {
    let p = file("p.json", r#"{"coeffs": {"1": 1, "-1": 1}}"#);
    let q = file("q.json", r#"{"blocksAtInf": [1], "euler": 1, "pure": true}"#);
    let out = run(&["pkchi", "multiply", p.to_str().unwrap(), q.to_str().unwrap()]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["coeffs"]["2"], 1);
    assert_eq!(doc["coeffs"]["0"], 1);
    assert_eq!(doc["blocksAtInf"], serde_json::json!([2]));
    assert_eq!(doc["euler"], 2);
    assert_eq!(doc["conjectural"], true);
}
