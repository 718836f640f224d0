use std::path::Path;
use std::process::{Command, Output};

use corrcount::{families, graph6, io, Graph};
use serde_json::Value;

fn corrcount(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_corrcount")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("JSON line"))
        .collect()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn counts_proper_colourings_of_c5() {
    let out = corrcount(&["count", "--graph", "c5", "--assignment", "identity", "--k", "3"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["results"][0]["result"]["count"], "30");
    assert_eq!(doc["manifest"]["k"], 3);
}

#[test]
fn graph6_file_gives_one_row_per_line() {
    let dir = tempfile::tempdir().unwrap();
    let gs = [families::cycle(4).unwrap(), families::complete(4).unwrap()];
    let f = write(dir.path(), "g.g6", &io::emit_graphs(&gs));
    let out = corrcount(&["count", "--graph", &f, "--k", "3", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<_> = text.lines().collect();
    assert_eq!(rows[0], "graph_id,assignment,count,explored_nodes,truncated");
    assert!(rows[1].starts_with("g.g6:1,identity,18,"));
    assert!(rows[2].starts_with("g.g6:2,identity,0,"));
}

#[test]
fn malformed_graph6_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.g6", "D?\n");
    let out = corrcount(&["count", "--graph", &f, "--k", "3"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.g6"));
}

#[test]
fn budget_exhaustion_exits_three() {
    let out = corrcount(&["count", "--graph", "icosahedron", "--k", "5", "--budget", "10"]);
    assert_eq!(code(&out), 3);
    assert_eq!(json(&out)["results"][0]["result"]["truncated"], true);
}

#[test]
fn permutation_samples_repeat_under_a_seed() {
    let run = |seed: &str| {
        let out = corrcount(&[
            "count", "--graph", "dodecahedron", "--assignment", "permutation", "--k", "3", "--samples", "3",
            "--seed", seed, "--format", "csv",
        ]);
        assert_eq!(code(&out), 0);
        out.stdout
    };
    assert_eq!(run("7"), run("7"));
    assert_ne!(run("7"), run("8"));
}

#[test]
fn euler_girth_holds_on_small_planar_graphs() {
    let out = corrcount(&["verify", "--bound", "euler-girth", "--graph", "corpus:planar-connected:7"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["all_hold"], true);
    assert!(!doc["verdicts"].as_array().unwrap().is_empty());
}

#[test]
fn corrupted_count_is_reported_as_falsified() {
    let out = corrcount(&["verify", "--bound", "planar-5cc", "--graph", "icosahedron", "--count-override", "0"]);
    assert_eq!(code(&out), 1);
    let doc = json(&out);
    assert_eq!(doc["verdicts"][0]["holds"], false);
    assert_eq!(doc["all_hold"], false);
}

#[test]
fn unknown_bound_exits_64() {
    let out = corrcount(&["verify", "--bound", "no-such-bound", "--graph", "c5"]);
    assert_eq!(code(&out), 64);
    assert!(String::from_utf8_lossy(&out.stderr).contains("planar-5cc"));
}

#[test]
fn verify_skips_graphs_outside_the_hypothesis() {
    let out = corrcount(&["verify", "--bound", "girth5-3cc", "--graph", "icosahedron"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert!(doc["verdicts"].as_array().unwrap().is_empty());
    assert_eq!(doc["skipped"][0]["reason"], "girth below five");
}

#[test]
fn pendant_vertex_is_the_deletable_set() {
    let ico = families::icosahedron();
    let g = Graph::from_edges(13, ico.edges().map(|e| (e.0, e.1)).chain([(0, 12)])).unwrap();
    let out = corrcount(&["search", "deletable", "--graph", &graph6::encode(&g), "--r", "5"]);
    assert_eq!(code(&out), 0);
    let found = lines(&out);
    assert_eq!(found.len(), 1);
    assert_eq!(found[0]["x"], serde_json::json!([12]));
    assert_eq!(found[0]["complete"], true);
}

#[test]
fn empty_search_space_streams_nothing() {
    let out = corrcount(&["search", "deletable", "--graph", "c5", "--h", "0,1,2,3,4"]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
}

#[test]
fn triangle_is_critical_for_its_edge() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(
        dir.path(),
        "a.json",
        r#"{"lists": {"0": [0], "1": [0], "2": [0, 1]},
            "matchings": {"0,1": [], "0,2": [[0, 0]], "1,2": [[0, 1]]}}"#,
    );
    let out = corrcount(&["search", "critical", "--graph", "c3", "--assignment", &a, "--s", "0,1", "--s-edges", "0-1"]);
    assert_eq!(code(&out), 0);
    let found = lines(&out);
    assert_eq!(found.len(), 1);
    assert_eq!(found[0]["kind"], "critical");
    assert!(!found[0]["certificate"].as_array().unwrap().is_empty());
}

#[test]
fn extension_of_a_rim_edge_is_valid() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", r#"{"k": 5, "mode": "identity"}"#);
    let phi = write(dir.path(), "phi.json", r#"{"1": 0, "2": 1}"#);
    let out = corrcount(&["extend", "--embedding", "wheel(5)", "--assignment", &a, "--precoloured", &phi]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    let c = doc["colouring"].as_object().unwrap();
    assert_eq!(c.len(), 6);
    assert_eq!(c["1"], 0);
    assert_eq!(c["2"], 1);
    let g = families::wheel(5).unwrap();
    for e in g.edges() {
        assert_ne!(c[&e.0.to_string()], c[&e.1.to_string()], "{e:?}");
    }
}

#[test]
fn embedding_failing_euler_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "k4.json",
        r#"{"rotation": {"0": [1,2,3], "1": [0,2,3], "2": [0,1,3], "3": [0,1,2]}, "outer_face": [0,1,2]}"#,
    );
    let out = corrcount(&["count", "--graph", &f, "--k", "4"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("v - e + f"));
}

#[test]
fn embedding_file_round_trips_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let pg = families::named_plane("grid(2,3)").unwrap();
    let f = write(dir.path(), "grid.json", &io::emit_embedding(&pg));
    let out = corrcount(&["girth", "--graph", &f, "--vertex", "0", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "graph_id,girth,edge_girth,vertex_girth\ngrid.json,4,,4\n");
}

#[test]
fn deficiency_report_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("d.json");
    let out = corrcount(&[
        "deficiency", "--graph", "icosahedron", "--h", "0,1,2", "--epsilon", "1/50", "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(doc["results"][0]["report"]["def_g"], 0);
    assert_eq!(doc["manifest"]["epsilon"], serde_json::json!({"num": 1, "den": 50}));
}
