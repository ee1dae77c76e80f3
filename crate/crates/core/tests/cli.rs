use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_domdelay")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

const P6: &str = "p edge 6 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 6\n";
const C4: &str = "p edge 4 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n";

#[test]
fn enumerates_p6() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "p6.graph", P6);
    let g = g.to_str().unwrap();
    let o = run(&["enum-dom", g, "--mode", "p7"]);
    assert!(o.status.success());
    let mut lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    lines.sort();
    assert_eq!(lines, ["1 3 5", "1 3 6", "1 4 5", "1 4 6", "2 3 6", "2 4 6", "2 5"]);
    let o = run(&["enum-dom", g, "--mode", "p8", "--count-only"]);
    assert_eq!(stdout(&o).trim(), "7");
    let o = run(&["enum-rn", g, "--mode", "p8"]);
    assert_eq!(stdout(&o).lines().count(), 4);
    let o = run(&["enum-dir", g, "--mode", "p8", "--set", "2"]);
    assert_eq!(stdout(&o), "3 6\n4 6\n");
}

#[test]
fn classify_prints_partition() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "p6.graph", P6);
    let o = run(&["classify", g.to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("IR: 1 3 4 6"));
    assert!(text.contains("RN: 2 5"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let c4 = write(dir.path(), "c4.graph", C4);
    let c4 = c4.to_str().unwrap();
    let o = run(&["enum-dom", c4, "--mode", "p7", "--verify-class"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("1 2 3 4"));
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    assert_eq!(run(&["enum-dom", "/definitely/missing", "--mode", "p7"]).status.code(), Some(1));
    let bad = write(dir.path(), "bad.graph", "p edge 2 1\ne 1 9\n");
    assert_eq!(run(&["classify", bad.to_str().unwrap()]).status.code(), Some(1));
    let big = write(dir.path(), "big.graph", &format!("p edge 40 39\n{}", (2..=40).map(|v| format!("e 1 {v}\n")).collect::<String>()));
    assert_eq!(run(&["oracle", "dom", big.to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn reduction_and_generation() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.cnf", "p cnf 3 3\n1 2 3 0\n-1 2 -3 0\n1 -2 3 0\n");
    let out = dir.path().join("red.graph");
    let o = run(&["reduce-3sat", f.to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(fs::read_to_string(&out).unwrap().starts_with("p edge 39 "));
    let roles = fs::read_to_string(dir.path().join("red.graph.roles.jsonl")).unwrap();
    assert_eq!(roles.lines().count(), 39);
    let o = run(&["oracle", "drn-member", out.to_str().unwrap(), "--set", "auto-rn"]);
    assert!(o.status.success());

    let gd = dir.path().join("gen");
    let args = ["gen", "--class", "pk-free", "-n", "9", "-k", "8", "--count", "3", "--seed", "5", "--out-dir"];
    let o = run(&[&args[..], &[gd.to_str().unwrap()]].concat());
    assert!(o.status.success());
    let mut files: Vec<_> = fs::read_dir(&gd).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    assert_eq!(files.len(), 3);
    let first = fs::read_to_string(&files[0]).unwrap();
    let o = run(&["enum-dom", files[0].to_str().unwrap(), "--mode", "p8", "--verify-class", "--count-only"]);
    assert!(o.status.success());
    let again = run(&["gen", "--class", "pk-free", "-n", "9", "-k", "8", "--count", "1", "--seed", "5"]);
    assert_eq!(stdout(&again), first);
}

#[test]
fn bench_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "p6.graph", P6);
    let csv = dir.path().join("b.csv");
    let o = run(&["bench", g.to_str().unwrap(), "--mode", "p7", "-o", csv.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("solutions=7"));
    let text = fs::read_to_string(csv).unwrap();
    assert_eq!(text.lines().next(), Some("solution_index,size,delay_ns"));
    assert_eq!(text.lines().count(), 8);
}
