use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_star-pcg"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn scratch(name: &str, contents: &[u8]) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR"))
        .join(format!("cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn generate_grid_json_and_dot() {
    let out = run(&["generate", "grid", "3", "3", "3", "3"]);
    assert_eq!(code(&out), 0);
    let g = json(&out);
    assert_eq!(g["n"], 81);
    assert_eq!(g["edges"].as_array().unwrap().len(), 216);

    let dot = run(&["generate", "grid", "4", "2", "--dot"]);
    assert_eq!(code(&dot), 0);
    let text = String::from_utf8(dot.stdout).unwrap();
    assert!(text.starts_with("graph G {"));
    assert_eq!(text.matches(" -- ").count(), 10);
    assert!(text.contains("label=\"(3,1)\""));
}

#[test]
fn witness_outputs_match_known_values() {
    let c7 = json(&run(&["witness", "cycle", "7"]));
    assert_eq!(c7["weights"], serde_json::json!([8, 5, 10, 3, 12, 1, 6]));
    assert_eq!(c7["intervals"], serde_json::json!([[7, 7], [13, 15]]));

    let g44 = json(&run(&["witness", "grid", "4", "4"]));
    assert_eq!(g44["intervals"], serde_json::json!([[24, 25], [29, 30]]));

    let g42 = json(&run(&["witness", "grid", "4", "2"]));
    assert_eq!(g42["intervals"], serde_json::json!([[8, 10]]));
    assert_eq!(g42["weights"].as_array().unwrap().len(), 8);
}

#[test]
fn round_trip_through_pipes() {
    let families: &[&[&str]] = &[
        &["cycle", "3"],
        &["cycle", "8"],
        &["cycle", "11"],
        &["path", "1"],
        &["path", "9"],
        &["grid", "4", "2"],
        &["grid", "2", "5"],
        &["grid", "1", "6"],
        &["grid", "4", "4"],
        &["grid", "3", "7"],
        &["grid", "12", "5"],
    ];
    for fam in families {
        let g = run(&[&["generate"], *fam].concat());
        assert_eq!(code(&g), 0, "{fam:?}");
        let w = run(&[&["witness"], *fam].concat());
        assert_eq!(code(&w), 0, "{fam:?}");
        let wpath = scratch(&format!("rt-{}", fam.join("-")), &w.stdout);
        let v = run_stdin(&["verify", "-", wpath.to_str().unwrap()], &g.stdout);
        assert_eq!(
            code(&v),
            0,
            "{fam:?}: {}",
            String::from_utf8_lossy(&v.stdout)
        );
        assert_eq!(json(&v)["equal"], true);
    }
}

#[test]
fn verify_reports_missing_edges() {
    let g = scratch("c8.json", &run(&["generate", "cycle", "8"]).stdout);
    let w = scratch(
        "c8-w.json",
        br#"{"weights":[12,1,11,2,10,3,9,4],"intervals":[[12,13]]}"#,
    );
    let out = run(&["verify", g.to_str().unwrap(), w.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let report = json(&out);
    assert_eq!(report["equal"], false);
    assert_eq!(report["missing"], serde_json::json!([[0, 7]]));
    assert_eq!(report["extra"], serde_json::json!([]));
}

#[test]
fn obstruct_exit_codes() {
    let c5 = scratch("c5.json", &run(&["generate", "cycle", "5"]).stdout);
    let w5 = scratch("c5-w.json", b"[0,1,3,5,4]");
    let out = run(&["obstruct", c5.to_str().unwrap(), w5.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let cert = json(&out);
    assert_eq!(cert["k"], 1);
    assert_eq!(cert["x"], 0);

    let cyc = run(&[
        "obstruct",
        c5.to_str().unwrap(),
        w5.to_str().unwrap(),
        "--method",
        "cycle",
    ]);
    assert_eq!(code(&cyc), 0);

    let c3 = scratch("c3.json", &run(&["generate", "cycle", "3"]).stdout);
    let w3 = scratch("c3-w.json", b"[0,1,2]");
    let none = run(&["obstruct", c3.to_str().unwrap(), w3.to_str().unwrap()]);
    assert_eq!(code(&none), 2);
    assert_eq!(String::from_utf8_lossy(&none.stdout).trim(), "none");
}

#[test]
fn obstruct_grid4_with_trace() {
    let g = scratch(
        "g4.json",
        &run(&["generate", "grid", "3", "3", "3", "3"]).stdout,
    );
    let weights: Vec<u64> = (0..81).map(|i| (i * 37) % 81).collect();
    let w = scratch(
        "g4-w.json",
        serde_json::to_string(&weights).unwrap().as_bytes(),
    );
    let out = run(&[
        "obstruct",
        g.to_str().unwrap(),
        w.to_str().unwrap(),
        "--method",
        "grid4",
        "--trace",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert!(v.to_string().contains("\"route\""));
}

#[test]
fn mink_small_cycle() {
    let out = run(&["mink", "cycle", "4", "--max-weight", "6"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["best_k"], 1);
    assert_eq!(v["exhaustive_within_bound"], true);
    assert_eq!(v["explored"], 2401);

    let text = run(&["mink", "cycle", "4", "--max-weight", "6", "--text"]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("best k = 1"));
}

#[test]
fn mink_refuses_huge_exhaustive_spaces() {
    let out = run(&["mink", "cycle", "20", "--max-weight", "40"]);
    assert_eq!(code(&out), 64);
    assert!(!out.stderr.is_empty());
}

#[test]
fn usage_errors_exit_64() {
    for args in [
        &["bogus"][..],
        &["generate", "triangle", "3"],
        &["generate", "cycle", "2"],
        &["generate", "grid", "0", "3"],
        &["witness", "grid", "3", "3", "3"],
        &["mink", "cycle", "4", "--mode", "sideways"],
        &["verify", "/nonexistent/graph.json", "/nonexistent/w.json"],
    ] {
        let out = run(args);
        assert_eq!(code(&out), 64, "{args:?}");
    }
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
}

#[test]
fn output_is_byte_deterministic() {
    for args in [
        &["witness", "grid", "7", "5"][..],
        &["generate", "grid", "3", "4", "--dot"],
        &[
            "mink", "cycle", "5", "--mode", "random", "--trials", "3000", "--seed", "42", "--jobs",
            "3",
        ],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn output_flag_writes_file() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR"))
        .join(format!("cli-{}-out.json", std::process::id()));
    let out = run(&["generate", "path", "4", "-o", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let g: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(g["edges"], serde_json::json!([[0, 1], [1, 2], [2, 3]]));
}
