use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn csn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_csn")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn error_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is JSON")
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

// splits 12|34 and 14|23 with unit weights
const CROSSING: &str = "4\nA 0 1 2 1\nB 1 0 1 2\nC 2 1 0 1\nD 1 2 1 0\n";

#[test]
fn census_n5_counts() {
    let out = csn(&["census", "--n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    let e = &doc["enumerated"];
    assert_eq!((e["chambers"].as_u64(), e["ridges"].as_u64()), (Some(12), Some(60)));
    assert_eq!((e["vertices"].as_u64(), e["edges"].as_u64()), (Some(10), Some(45)));
    assert_eq!(doc["formulas_match"], Value::Bool(true));
}

#[test]
fn census_above_bound_reports_formulas_only() {
    let out = csn(&["census", "--n", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert!(doc["enumerated"].is_null());
    assert_eq!(doc["formulas"]["vertices"], "501");
}

#[test]
fn census_types_at_n5() {
    let doc = json_of(&csn(&["census", "--n", "5", "--types"]));
    assert_eq!(doc["cell_types"].as_array().unwrap().len(), 7);
}

#[test]
fn kalmanson_pass_and_four_point_fail_on_crossing_pair() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.txt", CROSSING);
    let out = csn(&["check-kalmanson", &m]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["verdict"], "pass");
    assert_eq!(doc["ordering"], serde_json::json!([1, 2, 3, 4]));

    let out = csn(&["check-tree-metric", "--exact", &m]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["verdict"], "fail");

    let out = csn(&["check-kalmanson", &m, "--ordering", "1,3,2,4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json_of(&out)["witness"]["taxa"].is_array());
}

#[test]
fn network_metric_then_fit_recovers_weights() {
    let dir = TempDir::new().unwrap();
    let net = r#"{"n": 5, "splits": [{"block": [1, 2], "weight": "1/2"}, {"block": [1, 2, 3], "weight": "2"}, {"block": [2, 3], "weight": "3/4"}, {"block": [4], "weight": "1"}]}"#;
    let s = write(&dir, "net.json", net);
    let out = csn(&["--exact", "network-metric", &s]);
    assert_eq!(out.status.code(), Some(0));
    let m = write(&dir, "m.json", std::str::from_utf8(&out.stdout).unwrap());
    let fit = csn(&["--exact", "fit-network", &m, "--ordering", "1,2,3,4,5"]);
    assert_eq!(fit.status.code(), Some(0), "{}", String::from_utf8_lossy(&fit.stderr));
    let splits = json_of(&fit)["network"]["splits"].clone();
    let expected: Value = serde_json::from_str(net).unwrap();
    assert_eq!(splits, expected["splits"]);
}

#[test]
fn orderings_of_empty_system_n4() {
    let dir = TempDir::new().unwrap();
    let s = write(&dir, "s.json", r#"{"n": 4, "splits": []}"#);
    let doc = json_of(&csn(&["orderings", &s]));
    assert_eq!(doc["count"], 3);
}

#[test]
fn orderings_of_non_circular_system_is_negative() {
    let dir = TempDir::new().unwrap();
    let s = write(&dir, "s.json", r#"{"n": 6, "splits": [{"block": [1, 2]}, {"block": [1, 3]}, {"block": [1, 4]}]}"#);
    let out = csn(&["orderings", &s]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["count"], 0);
}

#[test]
fn twist_path_reaches_target_or_names_the_obstruction() {
    let dir = TempDir::new().unwrap();
    let p = write(
        &dir,
        "p.json",
        r#"{"ordering": [1, 2, 3, 4, 5, 6], "diagonals": [{"block": [1, 2]}, {"block": [4, 5]}, {"block": [1, 2, 3]}]}"#,
    );
    let out = csn(&["twist-path", &p, "--target", "1,2,3,6,5,4"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["result"]["ordering"], serde_json::json!([1, 2, 3, 6, 5, 4]));
    assert_eq!(doc["result"]["diagonals"].as_array().unwrap().len(), 3);

    let out = csn(&["twist-path", &p, "--target", "1,3,2,4,5,6"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["verdict"], "fail");
}

#[test]
fn render_draws_one_chord_per_diagonal() {
    let dir = TempDir::new().unwrap();
    let p = write(
        &dir,
        "p.json",
        r#"{"ordering": [1, 2, 3, 4, 5, 6, 7], "diagonals": [{"block": [1, 2], "weight": "1/3"}, {"block": [1, 2, 3]}, {"block": [5, 6]}, {"block": [4, 5, 6]}]}"#,
    );
    // mixed weighted and unweighted diagonals are rejected
    assert_eq!(csn(&["render", &p]).status.code(), Some(2));
    let p = write(
        &dir,
        "q.json",
        r#"{"ordering": [1, 2, 3, 4, 5, 6, 7], "diagonals": [{"block": [1, 2]}, {"block": [1, 2, 3]}, {"block": [5, 6]}, {"block": [4, 5, 6]}]}"#,
    );
    let out = csn(&["render", "--format", "svg", &p]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let doc = roxmltree::Document::parse(&text).expect("valid XML");
    let chords = doc.descendants().filter(|n| n.attribute("class") == Some("chord")).count();
    let taxa = doc.descendants().filter(|n| n.attribute("class") == Some("taxon")).count();
    assert_eq!((chords, taxa), (4, 7));
}

#[test]
fn embed_decode_round_trip_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let point = r#"{"chamber": [1, 2, 3, 4, 5, 6], "subflag": [
        {"diagonals": [{"block": [2, 3]}]},
        {"diagonals": [{"block": [2, 3]}, {"block": [1, 2, 3]}, {"block": [5, 6]}]}
    ], "coefficients": ["2/7", "5/7"]}"#;
    let p = write(&dir, "p.json", point);
    // normalise the hand-written input through a full cycle first
    let e1 = csn(&["embed", &p]);
    assert_eq!(e1.status.code(), Some(0), "{}", String::from_utf8_lossy(&e1.stderr));
    let e1_path = write(&dir, "e1.json", std::str::from_utf8(&e1.stdout).unwrap());
    let d1 = csn(&["decode", &e1_path]);
    assert_eq!(d1.status.code(), Some(0), "{}", String::from_utf8_lossy(&d1.stderr));
    let canonical = write(&dir, "canonical.json", std::str::from_utf8(&d1.stdout).unwrap());

    let e2 = csn(&["embed", &canonical]);
    assert_eq!(e2.stdout, e1.stdout);
    let e2_path = write(&dir, "e2.json", std::str::from_utf8(&e2.stdout).unwrap());
    let d2 = csn(&["decode", &e2_path]);
    assert_eq!(d2.stdout, std::fs::read(Path::new(&canonical)).unwrap());

    let decoded = json_of(&d2);
    assert_eq!(decoded["coefficients"], serde_json::json!(["2/7", "5/7"]));
}

#[test]
fn decode_rejects_points_outside_the_image() {
    let dir = TempDir::new().unwrap();
    let e = write(&dir, "e.json", r#"{"n": 5, "chamber": [1, 2, 3, 4, 5], "coordinates": {"1,2": "1"}}"#);
    let out = csn(&["decode", &e]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_of(&out)["error"]["code"], 2);
}

#[test]
fn moduli_atlas_n4_summary() {
    let out = csn(&["moduli-atlas", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let last: Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(last["summary"]["cells_by_dim"], serde_json::json!([3, 3]));
    assert_eq!(last["summary"]["euler_characteristic"], 0);
}

#[test]
fn cells_stream_json_lines() {
    let out = csn(&["cells", "--n", "5", "--dim", "1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 45);
    for line in text.lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["splits"].as_array().unwrap().len(), 2);
    }
}

#[test]
fn empty_triangle_at_n6() {
    let out = csn(&["empty-triangle", "--n", "6"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["witness"].as_array().unwrap().len(), 3);
}

#[test]
fn exit_codes_for_bad_input_and_capacity() {
    let out = csn(&["check-tree-metric", "/nonexistent/matrix.txt"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_of(&out)["error"]["kind"], "io");

    let out = csn(&["cells", "--n", "9"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(error_of(&out)["error"]["kind"], "capacity");

    let out = csn(&["--n-max", "5", "moduli-atlas", "--n", "6"]);
    assert_eq!(out.status.code(), Some(3));

    let out = csn(&["--tol", "-1", "census", "--n", "5"]);
    assert_eq!(out.status.code(), Some(2));

    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.txt", "4\n0 1 2\n");
    assert_eq!(csn(&["check-tree-metric", &m]).status.code(), Some(2));
    let m = write(&dir, "asym.txt", "3\n0 1 2\n2 0 1\n2 1 0\n");
    assert_eq!(csn(&["check-tree-metric", &m]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let a = csn(&["census", "--n", "6"]);
    let b = csn(&["census", "--n", "6"]);
    assert_eq!(a.stdout, b.stdout);
}
