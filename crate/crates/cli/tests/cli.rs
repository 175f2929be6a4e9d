use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn ged(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ged"))
        .args(args)
        .env_remove("GED_ORDER_GUARD")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

fn scalar_nodes(values: &[f64]) -> String {
    let nodes: Vec<String> = values.iter().map(|v| format!("[{v:?}]")).collect();
    format!(r#"{{"directed":false,"attr_dim":1,"nodes":[{}],"edges":[]}}"#, nodes.join(","))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn dist_examples() {
    let dir = TempDir::new().unwrap();
    let three = write(dir.path(), "three.json", &scalar_nodes(&[3.0]));
    let five = write(dir.path(), "five.json", &scalar_nodes(&[5.0]));
    let a = write(dir.path(), "a.json", &scalar_nodes(&[1.0, 2.0]));
    let b = write(dir.path(), "b.json", &scalar_nodes(&[5.0, 0.0]));

    let o = ged(&["dist", s(&three), s(&five)]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "2.000000000000\n");
    assert_eq!(stdout(&ged(&["dist", s(&a), s(&a)])), "0.000000000000\n");
    assert_eq!(stdout(&ged(&["dist", s(&a), s(&b)])), "3.162277660168\n");
    assert_eq!(stdout(&ged(&["dist", s(&a), s(&b), "--witness"])), "3.162277660168\nwitness [1 0]\n");
}

#[test]
fn kernel_flags() {
    let dir = TempDir::new().unwrap();
    let pos = write(dir.path(), "p.json", &scalar_nodes(&[1.0]));
    let neg = write(dir.path(), "n.json", &scalar_nodes(&[-1.0]));
    let all = ged(&["kernel", s(&pos), s(&neg), "--pad", "pairwise-sum"]);
    assert_eq!(stdout(&all), "0.000000000000\n");
    let compact = ged(&["kernel", s(&pos), s(&neg), "--pad", "pairwise-sum", "--class", "compact"]);
    assert_eq!(stdout(&compact), "-1.000000000000\n");
    let delta = ged(&["kernel", s(&pos), s(&pos), "--score", "delta"]);
    assert_eq!(stdout(&delta), "1.000000000000\n");
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let good = write(dir.path(), "g.json", &scalar_nodes(&[1.0, 2.0, 3.0]));
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"directed":false,"attr_dim":1,"nodes":[[1.0],[2.0]],"edges":[{"from":0,"to":1,"attr":[0.0]}]}"#,
    );
    let o = ged(&["dist", s(&good), s(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("zero edge attribute"));
    assert_eq!(ged(&["dist", s(&good), "/nonexistent.json"]).status.code(), Some(1));
    assert_eq!(ged(&["dist", s(&good), s(&good), "--guard", "2"]).status.code(), Some(2));
    assert_eq!(ged(&["check", "--suite", "bogus"]).status.code(), Some(3));
}

#[test]
fn guard_from_environment_and_flag_precedence() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "g.json", &scalar_nodes(&[1.0, 2.0, 3.0]));
    let run = |env: &str, extra: &[&str]| {
        let mut args = vec!["dist", s(&g), s(&g)];
        args.extend_from_slice(extra);
        Command::new(env!("CARGO_BIN_EXE_ged"))
            .args(&args)
            .env("GED_ORDER_GUARD", env)
            .output()
            .unwrap()
    };
    assert_eq!(run("2", &[]).status.code(), Some(2));
    assert_eq!(run("2", &["--guard", "3"]).status.code(), Some(0));
}

#[test]
fn gram_outputs() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "b.json", &scalar_nodes(&[1.0, 2.0]));
    write(dir.path(), "a.json", &scalar_nodes(&[2.0, 1.0]));
    let o = ged(&["gram", s(dir.path()), "--kind", "distance"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "a.json,b.json\n0,0\n0,0\n");

    let single = TempDir::new().unwrap();
    write(single.path(), "x.json", &scalar_nodes(&[1.0, 2.0]));
    let out = single.path().join("k.csv");
    let o = ged(&["gram", s(single.path()), "--kind", "kernel", "-o", s(&out)]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(&out).unwrap(), "x.json\n5.00000000000\n");
}

#[test]
fn gram_random_collection_is_symmetric() {
    let dir = TempDir::new().unwrap();
    let graphs = [
        r#"{"directed":false,"attr_dim":1,"nodes":[[1.0],[-2.0],[0.5]],"edges":[{"from":0,"to":2,"attr":[1.5]}]}"#,
        r#"{"directed":false,"attr_dim":1,"nodes":[[0.3],[2.0],[1.0]],"edges":[{"from":0,"to":1,"attr":[-1.0]},{"from":1,"to":2,"attr":[2.0]}]}"#,
        r#"{"directed":false,"attr_dim":1,"nodes":[[3.0],[0.0],[-1.0]],"edges":[]}"#,
        r#"{"directed":false,"attr_dim":1,"nodes":[[1.1],[1.2],[1.3]],"edges":[{"from":0,"to":1,"attr":[0.7]},{"from":0,"to":2,"attr":[0.7]}]}"#,
        r#"{"directed":false,"attr_dim":1,"nodes":[[-0.5],[0.25],[4.0]],"edges":[{"from":1,"to":2,"attr":[-3.0]}]}"#,
    ];
    for (i, g) in graphs.iter().enumerate() {
        write(dir.path(), &format!("g{i}.json"), g);
    }
    let o = ged(&["gram", s(dir.path())]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 5);
    for i in 0..5 {
        assert_eq!(rows[i][i], 0.0);
        for j in 0..5 {
            assert!((rows[i][j] - rows[j][i]).abs() <= 1e-12);
        }
    }
    assert!(!text.contains('\r'));
}

#[test]
fn gram_rejects_mixed_dimensions() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "a.json", &scalar_nodes(&[1.0]));
    write(dir.path(), "b.json", r#"{"directed":false,"attr_dim":2,"nodes":[[1.0,2.0]],"edges":[]}"#);
    assert_eq!(ged(&["gram", s(dir.path())]).status.code(), Some(1));
}

#[test]
fn align_writes_nested_arrays() {
    let dir = TempDir::new().unwrap();
    let z = write(dir.path(), "z.json", &scalar_nodes(&[1.0, 2.0]));
    let x = write(dir.path(), "x.json", &scalar_nodes(&[5.0, 0.0]));
    let o = ged(&["align", "--center", s(&z), s(&x), s(&z)]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "[[[[0.0],[0.0]],[[0.0],[5.0]]],[[[1.0],[0.0]],[[0.0],[2.0]]]]\n");
    let singular = write(dir.path(), "s.json", &scalar_nodes(&[1.0, 1.0]));
    assert_eq!(ged(&["align", "--center", s(&singular), s(&x)]).status.code(), Some(1));
}

#[test]
fn mean_of_repeated_graph() {
    let dir = TempDir::new().unwrap();
    let body = r#"{"directed":false,"attr_dim":1,"nodes":[[1.0],[2.0]],"edges":[{"from":0,"to":1,"attr":[3.0]}]}"#;
    let x = write(dir.path(), "x.json", body);
    let o = ged(&["mean", s(&x), s(&x)]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), body);
    assert!(String::from_utf8_lossy(&o.stderr).contains("frechet 0.000000000000"));

    let out = dir.path().join("m.json");
    let o = ged(&["mean", s(&x), s(&x), "-o", s(&out)]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(&out).unwrap().trim(), body);
    assert!(stdout(&o).starts_with("iteration 0 frechet 0.000000000000"));
}

#[test]
fn check_suites_pass_and_are_reproducible() {
    let o = ged(&["check", "--suite", "metric", "--trials", "200", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[PASS] triangle inequality"));
    for suite in ["cauchy-schwarz", "homogeneity", "wgrt", "cone", "mcs", "mean", "ordinary"] {
        let a = ged(&["check", "--suite", suite, "--trials", "20", "--seed", "5"]);
        let b = ged(&["check", "--suite", suite, "--trials", "20", "--seed", "5"]);
        assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn identical_runs_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "a.json", &scalar_nodes(&[0.3, -1.2, 2.5]));
    let b = write(dir.path(), "b.json", &scalar_nodes(&[1.7, 0.4]));
    let c = write(dir.path(), "c.json", &scalar_nodes(&[-0.9, 2.2, 0.1]));
    let args = ["mean", s(&a), s(&b), s(&c), "--seed", "9"];
    let first = ged(&args);
    let second = ged(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stderr, second.stderr);
    let g1 = ged(&["gram", s(dir.path()), "--kind", "kernel"]);
    let g2 = ged(&["gram", s(dir.path()), "--kind", "kernel"]);
    assert_eq!(g1.stdout, g2.stdout);
}
