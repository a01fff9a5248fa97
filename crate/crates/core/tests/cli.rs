use std::path::Path;
use std::process::{Command, Output};

use chaincover::dag::{gen_worst_case, parse_chains, serialize_dag};
use tempfile::TempDir;

fn chaincover(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chaincover")).args(args).output().unwrap()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = path(dir, name);
    std::fs::write(&p, text).unwrap();
    p
}

fn read(p: impl AsRef<Path>) -> String {
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn compute_single_path() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "path.txt", "3 2\n0 1\n1 2\n");
    let output = path(&dir, "chains.txt");
    for algo in ["boosted", "naive"] {
        let out = chaincover(&["compute", "--algo", algo, "--input", &input, "--output", &output]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(read(&output), "0 1 2\n");
        let summary = String::from_utf8(out.stderr).unwrap();
        assert!(summary.contains("\"k\":1") || summary.contains("\"k\": 1"), "{summary}");
    }
}

#[test]
fn compute_mpc_repeats_the_middle() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "wc.txt", &serialize_dag(&gen_worst_case(10, 10).unwrap()));
    let out = chaincover(&["compute", "--algo", "mpc", "--input", &input]);
    assert!(out.status.success());
    let paths = parse_chains(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(paths.k(), 10);
    assert!(paths.total_length() >= 100);
}

#[test]
fn computed_chains_validate() {
    let dir = TempDir::new().unwrap();
    let graph = path(&dir, "g.txt");
    let chains = path(&dir, "c.txt");
    let gen = chaincover(&["gen", "random", "--n", "40", "--p", "0.1", "--seed", "7", "--output", &graph]);
    assert!(gen.status.success());
    let out = chaincover(&["compute", "--input", &graph, "--output", &chains]);
    assert!(out.status.success());
    let ok = chaincover(&["validate", "--graph", &graph, "--chains", &chains]);
    assert!(ok.status.success(), "{}", String::from_utf8_lossy(&ok.stderr));
}

#[test]
fn validate_rejects_bad_chains() {
    let dir = TempDir::new().unwrap();
    let graph = write(&dir, "g.txt", "3 2\n0 1\n1 2\n");
    let good = write(&dir, "good.txt", "0 1 2\n");
    let reversed = write(&dir, "rev.txt", "2 1 0\n");
    let split = write(&dir, "split.txt", "0 1\n2\n");
    let short = write(&dir, "short.txt", "0 1\n");

    assert_eq!(chaincover(&["validate", "--graph", &graph, "--chains", &good]).status.code(), Some(0));
    for bad in [&reversed, &split, &short] {
        let out = chaincover(&["validate", "--graph", &graph, "--chains", bad]);
        assert_eq!(out.status.code(), Some(1), "{bad}");
        assert!(!out.stderr.is_empty());
    }
    let wrong_k = chaincover(&["validate", "--graph", &graph, "--chains", &good, "--k", "2"]);
    assert_eq!(wrong_k.status.code(), Some(1));
}

#[test]
fn gen_is_reproducible() {
    let wc = chaincover(&["gen", "worst-case", "--k", "2", "--l", "1"]);
    assert_eq!(String::from_utf8(wc.stdout).unwrap(), "5 4\n0 2\n1 2\n2 3\n2 4\n");
    let a = chaincover(&["gen", "random", "--n", "40", "--p", "0.1", "--seed", "7"]);
    let b = chaincover(&["gen", "random", "--n", "40", "--p", "0.1", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stdout.starts_with(b"40 "));
}

#[test]
fn argument_and_input_errors_exit_one() {
    assert_eq!(chaincover(&["gen", "worst-case", "--k", "0", "--l", "3"]).status.code(), Some(1));
    assert_eq!(chaincover(&["compute", "--input", "/nonexistent/graph"]).status.code(), Some(1));
    assert_eq!(chaincover(&["frobnicate"]).status.code(), Some(1));
    let dir = TempDir::new().unwrap();
    let cyclic = write(&dir, "cyc.txt", "2 2\n0 1\n1 0\n");
    let out = chaincover(&["compute", "--input", &cyclic]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cycle"));
}

#[test]
fn bench_prints_one_row_per_algorithm_and_size() {
    let out = chaincover(&["bench", "--family", "worst-case", "--sizes", "4,8"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("algorithm,family,size"));
    assert_eq!(lines.len(), 5);
    assert!(lines[1..].iter().all(|l| l.split(',').count() == lines[0].split(',').count()));
}
