use std::path::PathBuf;
use std::process::{Command, Output};

use superwalk::graph_io::{parse_graph, parse_int_matrix_csv};
use superwalk_core::counting::{self, super_walk_matrix};
use superwalk_core::oracle::WalkKind;
use superwalk_core::spectral::HeatEngine;
use superwalk_core::{families, BigInt};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superwalk"))
        .args(args)
        .env_remove("SUPERWALK_ENUM_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn tmp(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("superwalk-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn fixtures_match_family() {
    let g = families::bridged_triangles();
    for name in ["bridged_triangles.edges", "bridged_triangles.json"] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        assert_eq!(parse_graph(&text).unwrap(), g, "{name}");
    }
}

#[test]
fn matrix_power_agrees_with_library() {
    let f = fixture("bridged_triangles.edges");
    let o = run(&[
        "matrix",
        "--graph",
        &f,
        "--kind",
        "even-laplacian",
        "--power",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let m = parse_int_matrix_csv(&stdout(&o)).unwrap();
    assert_eq!(m, super_walk_matrix(&families::bridged_triangles(), 2));
    assert_eq!(m.get(0, 1), &BigInt::from(-3));
}

#[test]
fn adjacency_and_formats() {
    let f = fixture("bridged_triangles.json");
    let o = run(&["matrix", "--graph", &f, "--kind", "adjacency"]);
    assert_eq!(stdout(&o).lines().next(), Some("0,1,0,1,0,0"));
    let o = run(&[
        "matrix",
        "--graph",
        &f,
        "--kind",
        "incidence",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).starts_with(r#"{"rows":6,"cols":7,"entries":[["-1","-1","0","0","0","0","0"]"#)
    );
    let o = run(&[
        "matrix",
        "--graph",
        &f,
        "--kind",
        "odd-laplacian",
        "--format",
        "text",
    ]);
    assert!(
        stdout(&o).starts_with(" 2  1 -1  0  0  0  0\n"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn incidence_power_is_a_parameter_error() {
    let f = fixture("bridged_triangles.edges");
    let o = run(&[
        "matrix",
        "--graph",
        &f,
        "--kind",
        "incidence",
        "--power",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stdout.is_empty());
}

#[test]
fn count_outputs() {
    let f = fixture("bridged_triangles.edges");
    let o = run(&[
        "count", "walks", "--graph", &f, "--from", "v1", "--to", "v4", "--length", "1",
    ]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "1\n"));

    let o = run(&[
        "count", "super", "--graph", &f, "--from", "v1", "--to", "v2", "--length", "2", "--method",
        "both",
    ]);
    assert_eq!(
        (o.status.code(), stdout(&o).as_str()),
        (Some(0), "matrix: -3, oracle: -3\n")
    );

    let o = run(&[
        "count",
        "edge-super",
        "--graph",
        &f,
        "--from",
        "e1",
        "--to",
        "e2",
        "--length",
        "2",
        "--method",
        "enumerate",
    ]);
    assert_eq!(stdout(&o), "3\n");

    let o = run(&[
        "count", "walks", "--graph", &f, "--from", "v1", "--to", "v6", "--length", "5", "--format",
        "json",
    ]);
    assert_eq!(
        stdout(&o),
        "{\"kind\":\"walk\",\"from\":\"v1\",\"to\":\"v6\",\"length\":5,\"matrix\":\"8\",\"oracle\":null}\n"
    );
}

#[test]
fn count_listing() {
    let f = fixture("bridged_triangles.edges");
    let o = run(&[
        "count", "super", "--graph", &f, "--from", "v1", "--to", "v2", "--length", "2", "--method",
        "both", "--list",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    let signs: Vec<i64> = lines[..5]
        .iter()
        .map(|l| {
            serde_json::from_str::<serde_json::Value>(l).unwrap()["sign"]
                .as_i64()
                .unwrap()
        })
        .collect();
    assert_eq!(signs.iter().filter(|&&s| s == -1).count(), 4);
    assert_eq!(lines[5], "matrix: -3, oracle: -3");

    let o = run(&[
        "count", "super", "--graph", &f, "--from", "v1", "--to", "v2", "--length", "2", "--list",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn enumeration_cap_override() {
    let f = fixture("bridged_triangles.edges");
    let args = [
        "count",
        "walks",
        "--graph",
        &f,
        "--from",
        "v1",
        "--to",
        "v2",
        "--length",
        "4",
        "--method",
        "enumerate",
        "--list",
    ];
    let o = Command::new(env!("CARGO_BIN_EXE_superwalk"))
        .args(args)
        .env("SUPERWALK_ENUM_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("cap"));
    assert_eq!(run(&args).status.code(), Some(0));
}

#[test]
fn unknown_labels() {
    let f = fixture("bridged_triangles.edges");
    let o = run(&[
        "count", "walks", "--graph", &f, "--from", "v1", "--to", "v9", "--length", "1",
    ]);
    assert_eq!(o.status.code(), Some(3));
    // Edge labels are not vertex labels.
    let o = run(&[
        "count", "super", "--graph", &f, "--from", "e1", "--to", "v2", "--length", "1",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn corrupted_graph_file() {
    let bad = tmp("bad.edges", "v1 v2\nv2 v2\n");
    let o = run(&["verify", "--graph", &bad, "--max-length", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));

    let o = run(&[
        "verify",
        "--graph",
        "/definitely/missing.edges",
        "--max-length",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_paths() {
    let f = fixture("bridged_triangles.edges");
    let o = run(&["verify", "--graph", &f, "--max-length", "4", "--flip-sweep"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o)
        .trim_end()
        .ends_with("sweep: pass over 8 orientations"));

    let o = run(&[
        "verify",
        "--graph",
        &f,
        "--max-length",
        "5",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], serde_json::json!(true));

    let o = run(&["verify", "--graph", &f, "--max-length", "0"]);
    assert_eq!(o.status.code(), Some(3));

    let o = run(&[
        "verify",
        "--graph",
        &f,
        "--max-length",
        "2",
        "--inject-fault",
        "odd-laplacian",
    ]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).contains("result: FAIL"));
}

#[test]
fn heat_outputs() {
    let f = fixture("bridged_triangles.edges");
    let o = run(&["heat", "--graph", &f, "--t", "0", "--supertrace"]);
    assert_eq!(stdout(&o), "-1.0\n");

    let o = run(&[
        "heat",
        "--graph",
        &f,
        "--t",
        "0.5",
        "--tol",
        "1e-12",
        "--supertrace",
    ]);
    let s: f64 = stdout(&o).trim().parse().unwrap();
    assert!((s + 1.0).abs() < 1e-9);

    let o = run(&[
        "heat",
        "--graph",
        &f,
        "--t",
        "1.0",
        "--tol",
        "1e-40",
        "--order-cap",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(3));

    let o = run(&["heat", "--graph", &f, "--t", "-0.5"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["heat", "--graph", &f, "--t", "0.5", "--tol", "0"]);
    assert_eq!(o.status.code(), Some(3));

    let o = run(&["heat", "--graph", &f, "--t", "0.25", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let k = HeatEngine::default()
        .kernels(&families::bridged_triangles(), 0.25, 1e-12)
        .unwrap();
    assert_eq!(v["odd"]["rows"], serde_json::json!(7));
    assert_eq!(
        v["even"]["entries"][0][0].as_f64().unwrap(),
        k.even.matrix.get(0, 0)
    );
}

#[test]
fn heat_state_evolution() {
    let f = fixture("bridged_triangles.edges");
    let mut psi = vec![0.0; 13];
    psi[0] = 1.0;
    psi[6] = 1.0;
    let state = tmp("state.json", &serde_json::to_string(&psi).unwrap());
    let o = run(&[
        "heat", "--graph", &f, "--t", "0.5", "--state", &state, "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let expected = HeatEngine::default()
        .evolve(&families::bridged_triangles(), &psi, 0.5, 1e-12)
        .unwrap();
    let got: Vec<f64> = v["state"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    assert_eq!(got, expected.state);
    assert_eq!(v["labels"][6], serde_json::json!("e1"));

    let short = tmp("short.json", "[1, 2]");
    let o = run(&["heat", "--graph", &f, "--t", "0.5", "--state", &short]);
    assert_eq!(o.status.code(), Some(2));
    let junk = tmp("junk.json", "not json");
    let o = run(&["heat", "--graph", &f, "--t", "0.5", "--state", &junk]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn random_graph_contract() {
    let a = run(&[
        "random-graph",
        "--vertices",
        "6",
        "--edge-prob",
        "0.5",
        "--seed",
        "99",
    ]);
    let b = run(&[
        "random-graph",
        "--vertices",
        "6",
        "--edge-prob",
        "0.5",
        "--seed",
        "99",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let g = parse_graph(&stdout(&a)).unwrap();
    assert_eq!(g, superwalk::random::random_graph(6, 0.5, 99).unwrap());

    let empty = run(&[
        "random-graph",
        "--vertices",
        "3",
        "--edge-prob",
        "0",
        "--seed",
        "1",
    ]);
    assert_eq!(parse_graph(&stdout(&empty)).unwrap().edge_count(), 0);
    let full = run(&[
        "random-graph",
        "--vertices",
        "4",
        "--edge-prob",
        "1",
        "--seed",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(parse_graph(&stdout(&full)).unwrap().edge_count(), 6);

    for bad in [
        ["--vertices", "0", "--edge-prob", "0.5"],
        ["--vertices", "3", "--edge-prob", "1.5"],
    ] {
        let mut args = vec!["random-graph"];
        args.extend(bad);
        args.extend(["--seed", "1"]);
        assert_eq!(run(&args).status.code(), Some(3));
    }
}

#[test]
fn out_flag_writes_file() {
    let f = fixture("bridged_triangles.edges");
    let out = tmp("adjacency.csv", "");
    let o = run(&[
        "matrix",
        "--graph",
        &f,
        "--kind",
        "adjacency",
        "--out",
        &out,
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(
        parse_int_matrix_csv(&text).unwrap(),
        families::bridged_triangles().adjacency_matrix()
    );
}

#[test]
fn in_process_run_matches_library() {
    let f = fixture("bridged_triangles.edges");
    let g = families::bridged_triangles();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let args = [
        "superwalk",
        "count",
        "edge-super",
        "--graph",
        &f,
        "--from",
        "e5",
        "--to",
        "e2",
        "--length",
        "4",
    ];
    let code = superwalk::cli::run(args, &mut out, &mut err);
    assert_eq!(code, 0);
    let expected = counting::signed_count_by_matrix(&g, WalkKind::EdgeSuper, 4, 1, 4).unwrap();
    assert_eq!(String::from_utf8(out).unwrap(), format!("{expected}\n"));
    assert_eq!(expected.to_string(), "47");
}

#[test]
fn help_and_bad_flags() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["count", "walks", "--graph"]).status.code(), Some(3));
    assert_eq!(
        run(&["matrix", "--graph", "x", "--kind", "weird"])
            .status
            .code(),
        Some(3)
    );
}
