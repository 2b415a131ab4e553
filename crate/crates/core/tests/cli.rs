//! End-to-end checks of the binary: JSON shapes, exit codes, and the
//! environment cap overrides.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blockcomb"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_env(args: &[&str], key: &str, val: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blockcomb"))
        .args(args)
        .env(key, val)
        .output()
        .expect("binary runs")
}

fn json_line(out: &Output) -> serde_json::Value {
    let text = String::from_utf8_lossy(&out.stdout);
    let line = text.lines().next().expect("one output line");
    serde_json::from_str(line).expect("valid JSON")
}

#[test]
fn member_examples() {
    let out = run(&["member", "--xi", "w", "--set", "[3,7,10]"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_line(&out);
    assert_eq!(v["member"], true);
    assert_eq!(v["ladder_rule"], "drop-least-term,+1");
    assert_eq!(v["depth_cap"], 8);

    let out = run(&["member", "--xi", "1", "--set", "[]"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_line(&out)["member"], false);

    let out = run(&["member", "--xi", "2", "--collection", "[[1,2],[4]]"]);
    assert_eq!(json_line(&out)["member"], true);
}

#[test]
fn decompose_roundtrip() {
    let out = run(&["decompose", "--xi", "w", "--set", "[2,3,4,5,6,9]"]);
    let v = json_line(&out);
    assert_eq!(v["pieces"], serde_json::json!([[2, 3], [4, 5, 6, 9]]));
    assert_eq!(v["tail"], serde_json::json!([]));

    let out = run(&["decompose", "--xi", "w", "--stream", "arith:2,3", "--count", "2"]);
    let v = json_line(&out);
    assert_eq!(v["pieces"][0], serde_json::json!([2, 5]));
}

#[test]
fn enumerate_both_families() {
    let out = run(&["enumerate", "--family", "a", "--xi", "w", "--bound", "4"]);
    let v = json_line(&out);
    assert_eq!(v["members"], serde_json::json!([[1], [2, 3], [2, 4]]));
    assert_eq!(v["truncated"], false);

    let out = run(&["enumerate", "--family", "b", "--xi", "1", "--ground", "[[1],[2]]"]);
    let v = json_line(&out);
    assert_eq!(v["members"].as_array().unwrap().len(), 3);
}

#[test]
fn closure_and_part_roundtrip() {
    let fam = r#"{"ground":[[1],[2]],"members":[[[1],[2]]]}"#;
    let out = run(&["closure", "--kind", "star_down", "--family", fam]);
    let v = json_line(&out);
    // the output family parses back through the same schema
    let text = serde_json::to_string(&v["family"]).unwrap();
    let out2 = run(&["part", "--kind", "hereditary", "--family", &text]);
    assert_eq!(out2.status.code(), Some(0));
}

#[test]
fn index_trace_and_warning() {
    let out = run(&[
        "index", "--xi", "2", "--ground", "[[1],[2],[3],[4],[5],[6]]", "--m", "3",
    ]);
    let v = json_line(&out);
    assert_eq!(v["index"], 3);
    assert_eq!(v["trace"][0], 193);
    assert_eq!(v["stalled"], false);
    assert!(v.get("warning").is_none());

    let out = run(&[
        "index", "--xi", "2", "--ground", "[[1],[2],[3],[4],[5],[6]]", "--m", "6",
    ]);
    let v = json_line(&out);
    assert_eq!(v["index"], serde_json::Value::Null);
    assert_eq!(v["stalled"], true);
    assert!(v["warning"].is_string());
}

#[test]
fn search_modes() {
    let out = run(&[
        "search", "--mode", "hindman", "--coloring",
        r#"{"name":"parity_of","params":["min"],"colors":2}"#,
        "--blocks", "2", "--bound", "4",
    ]);
    let v = json_line(&out);
    assert_eq!(v["outcome"], "witness");
    assert_eq!(v["collection"], serde_json::json!([[1], [3]]));

    let out = run(&[
        "search", "--mode", "xi", "--xi", "w", "--coloring",
        r#"{"name":"size_mod","params":[2],"colors":2}"#,
        "--blocks", "2", "--bound", "6", "--start", "3",
    ]);
    let v = json_line(&out);
    assert_eq!(v["vacuous"], true);
}

#[test]
fn transport_exit_codes() {
    let out = run(&["transport", "--xi", "1", "--D", "[[1],[2]]"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_line(&out)["holds"], true);
}

#[test]
fn sumset_modes() {
    let out = run(&["sumset", "--xi", "1", "--L", "[1,2]"]);
    assert_eq!(json_line(&out)["tuples"], serde_json::json!([[1], [2], [3]]));

    let out = run(&["sumset", "--k-fold", "2", "--L", "[1,2]"]);
    assert_eq!(json_line(&out)["tuples"], serde_json::json!([[1, 2]]));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["member", "--xi", "w"]).status.code(), Some(2));
    assert_eq!(run(&["member", "--xi", "bogus!", "--set", "[1]"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["sumset", "--L", "[1,2]"]).status.code(), Some(2));
}

#[test]
fn cap_errors_exit_three() {
    let out = run_env(
        &["enumerate", "--family", "b", "--xi", "1", "--ground", "[[1],[2],[3]]"],
        "SCHREIER_FAMILY_CAP",
        "2",
    );
    assert_eq!(out.status.code(), Some(3));

    let out = run_env(
        &["member", "--xi", "w^(w^(w^w))", "--set", "[1]"],
        "SCHREIER_DEPTH_CAP",
        "4",
    );
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn depth_cap_env_reflected_in_stamp() {
    let out = run_env(&["member", "--xi", "w", "--set", "[1]"], "SCHREIER_DEPTH_CAP", "12");
    assert_eq!(json_line(&out)["depth_cap"], 12);
}
