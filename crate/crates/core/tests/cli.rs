use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

use pvc::graph::{parse_edge_list, read_edge_list};
use pvc::oracle::brute_force_solve;
use pvc::report::{strip_timing, CompressPayload};

fn pvc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pvc")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}\n{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn star_with_one_vertex_covers_every_edge() {
    let dir = tempfile::tempdir().unwrap();
    let star = write(dir.path(), "star5.txt", "0 1\n0 2\n0 3\n0 4\n0 5\n");
    let out = pvc(&["solve", "--input", &star, "--k", "1", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["value"], 5);
    assert!(out.stderr.is_empty());
}

#[test]
fn input_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let star = write(dir.path(), "star.txt", "0 1\n0 2\n");
    assert_eq!(pvc(&["solve", "--input", &star, "--k", "0"]).status.code(), Some(1));
    assert_eq!(pvc(&["solve", "--k", "0"]).status.code(), Some(1));
    assert_eq!(pvc(&["solve", "--input", &star, "--k", "4"]).status.code(), Some(1));
    let bad = write(dir.path(), "bad.txt", "0 1\n0 2 x\n");
    let out = pvc(&["solve", "--input", &bad, "--k", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert!(out.stdout.is_empty());
    assert_eq!(pvc(&["solve", "--input", "/nonexistent/graph.txt", "--k", "1"]).status.code(), Some(1));
    assert_eq!(pvc(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn size_guards_exit_two() {
    assert_eq!(pvc(&["uset", "--n", "30", "--l", "3", "--strategy", "exhaustive"]).status.code(), Some(2));
    assert_eq!(pvc(&["uset", "--n", "200", "--l", "12", "--strategy", "greedy"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let forest = dir.path().join("f.txt");
    let forest = forest.to_str().unwrap();
    assert_eq!(pvc(&["gen", "--model", "forest", "--n", "300", "--seed", "1", "--output", forest]).status.code(), Some(0));
    let out = pvc(&["solve", "--input", forest, "--k", "6", "--algorithm", "brute"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("10000000"));
}

#[test]
fn compress_requires_unit_weights() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "w.txt", "0 1 2\n1 2\n");
    assert_eq!(pvc(&["compress", "--input", &g, "--k", "1"]).status.code(), Some(2));
}

#[test]
fn gen_parse_serialize_round_trip() {
    for (model, extra) in [
        ("degenerate", vec!["--n", "40", "--d", "3"]),
        ("grid", vec!["--rows", "4", "--cols", "6"]),
        ("star", vec!["--leaves", "7"]),
        ("path", vec!["--n", "9"]),
        ("forest", vec!["--n", "50"]),
    ] {
        for weights in ["unit", "uniform:10"] {
            let mut args = vec!["gen", "--model", model, "--seed", "5", "--weights", weights];
            args.extend(extra.iter().copied());
            let out = pvc(&args);
            assert_eq!(out.status.code(), Some(0), "{model}");
            let text = String::from_utf8(out.stdout).unwrap();
            let g = parse_edge_list(&text).unwrap();
            let again = parse_edge_list(&g.to_edge_list()).unwrap();
            assert_eq!(g.labels(), again.labels(), "{model} {weights}");
            assert_eq!(g.edges().collect::<Vec<_>>(), again.edges().collect::<Vec<_>>());
            assert_eq!(g.to_edge_list(), text);
        }
    }
}

#[test]
fn compressed_output_solves_to_the_same_optimum() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..5 {
        let forest = dir.path().join(format!("forest{seed}.txt"));
        let forest = forest.to_str().unwrap();
        let reduced = dir.path().join(format!("reduced{seed}.json"));
        let reduced = reduced.to_str().unwrap();
        assert_eq!(pvc(&["gen", "--model", "forest", "--n", "120", "--seed", &seed.to_string(), "--output", forest]).status.code(), Some(0));
        let out = pvc(&["compress", "--input", forest, "--k", "2", "--p", "2", "--output", reduced]);
        assert_eq!(out.status.code(), Some(0));

        let payload: CompressPayload = serde_json::from_str(&std::fs::read_to_string(reduced).unwrap()).unwrap();
        assert!(payload.output.n <= 192);

        let solved = json(&pvc(&["solve", "--input", reduced, "--k", "2", "--json"]));
        let opt = brute_force_solve(&read_edge_list(forest).unwrap(), 2).unwrap().value;
        assert_eq!(solved["value"], opt, "seed {seed}");

        let check = pvc(&["verify", "--input", forest, "--compressed", reduced]);
        assert_eq!(check.status.code(), Some(0));
        assert_eq!(json(&check)["violations"], 0);
    }
}

#[test]
fn biclique_certificate_exits_three_and_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("k33.txt");
    let g = g.to_str().unwrap();
    let cert = dir.path().join("cert.json");
    let cert = cert.to_str().unwrap();
    assert_eq!(pvc(&["gen", "--model", "biclique", "--p", "3", "--right", "900", "--noise", "20", "--seed", "2", "--output", g]).status.code(), Some(0));
    let out = pvc(&["compress", "--input", g, "--k", "1", "--p", "3", "--output", cert]);
    assert_eq!(out.status.code(), Some(3));
    let check = pvc(&["verify", "--input", g, "--compressed", cert]);
    assert_eq!(check.status.code(), Some(0));
    assert_eq!(json(&check)["biclique_valid"], true);
}

#[test]
fn verify_flags_a_suboptimal_solution() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "p.txt", "0 1\n1 2\n2 3\n");
    let out = pvc(&["verify", "--input", &g, "--solution", "0", "--optimal"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(json(&out)["ok"], false);
    assert_eq!(json(&out)["optimum"], 2);
}

#[test]
fn bench_rows_record_family_sizes() {
    let out = pvc(&["bench", "--model", "path", "--n", "12", "--ks", "1,2", "--strategy", "exhaustive", "--format", "json"]);
    let rows = json(&out);
    for row in rows.as_array().unwrap() {
        assert_eq!(row["family_size"], 4096);
        assert_eq!(row["expected_family_size"], "4096");
    }
    let out = pvc(&["bench", "--model", "path", "--n", "12", "--ks", "3", "--algorithm", "brute", "--format", "json"]);
    let rows = json(&out);
    assert_eq!(rows[0]["members_evaluated"], 220);
    assert_eq!(rows[0]["expected_family_size"], "220");

    let csv = pvc(&["bench", "--model", "path", "--n", "12", "--ks", "1,20"]);
    assert_eq!(csv.status.code(), Some(0));
    let text = String::from_utf8(csv.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("model,n,m,degeneracy,k,"));
    assert!(lines[1].contains(",ok,"));
    assert!(!lines[2].contains(",ok,"));
}

#[test]
fn bench_reads_a_suite_file() {
    let dir = tempfile::tempdir().unwrap();
    let suite = write(
        dir.path(),
        "suite.json",
        r#"{ "rows": [
            { "model": "forest", "n": 60, "seed": 1, "ks": [1, 2], "strategy": "randomized", "solver_seed": 3 },
            { "model": "grid", "rows": 3, "cols": 3, "ks": [2], "algorithm": "brute" }
        ] }"#,
    );
    let out = pvc(&["bench", "--config", &suite, "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = json(&out);
    assert_eq!(rows.as_array().unwrap().len(), 3);
    assert_eq!(rows[2]["algorithm"], "brute");
}

#[test]
fn thread_env_fallback_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.txt");
    let g = g.to_str().unwrap();
    pvc(&["gen", "--model", "degenerate", "--n", "13", "--d", "2", "--seed", "8", "--output", g]);
    let mut payloads = Vec::new();
    for threads in ["1", "3"] {
        let out = Command::new(env!("CARGO_BIN_EXE_pvc"))
            .env("PVC_THREADS", threads)
            .args(["solve", "--input", g, "--k", "3", "--json"])
            .output()
            .unwrap();
        let mut v = json(&out);
        strip_timing(&mut v);
        payloads.push(v);
    }
    assert_eq!(payloads[0], payloads[1]);
}
