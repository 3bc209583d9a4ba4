use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const K3K2: &str = "unilie-graph v1 q=6 p=3\n1 2 1\n3 4 2\n5 6 3\n";

fn unilie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unilie")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn family(dir: &Path, name: &str, file: &str) -> PathBuf {
    let o = unilie(&["family", name]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    write(dir, file, &stdout(&o))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_reports_type_of_quaternionic() {
    let dir = TempDir::new().unwrap();
    let f = family(dir.path(), "quaternionic", "h.txt");
    let o = unilie(&["verify", "--input", s(&f)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("(3,4,2), s=3"), "{}", stdout(&o));
}

#[test]
fn verify_rejects_improper_coloring() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "bad.txt", "unilie-graph v1 q=3 p=1\n1 2 1\n2 3 1\n1 3 1\n");
    let o = unilie(&["verify", "--input", s(&f)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("NonProper"), "{}", stdout(&o));
}

#[test]
fn verify_reads_standard_input() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_unilie"))
        .args(["verify"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(K3K2.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(code(&o), 0);
}

#[test]
fn classify_lists_twelve_classes() {
    let o = unilie(&["classify", "--qmax", "5", "--format", "data"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 12);

    let text = unilie(&["classify", "--qmax", "5"]);
    assert_eq!(code(&text), 0);
    let data = unilie::io::report_data(&stdout(&text)).unwrap();
    assert_eq!(data, v);
}

#[test]
fn tiny_budget_exits_with_budget_code() {
    let o = unilie(&["classify", "--qmax", "5", "--budget", "10"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn unknown_flag_is_a_usage_error() {
    assert_eq!(code(&unilie(&["classify", "--bogus"])), 2);
    assert_eq!(code(&unilie(&["family", "nosuchfamily"])), 2);
    assert_eq!(code(&unilie(&["--help"])), 0);
}

#[test]
fn three_edges_against_bipartite_is_undetermined() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "a.txt", K3K2);
    let b = family(dir.path(), "dihedral:p=3", "b.txt");
    let o = unilie(&["iso", s(&a), s(&b)]);
    assert_eq!(code(&o), 4, "{}", stdout(&o));
}

#[test]
fn iso_separates_and_finds_witnesses() {
    let dir = TempDir::new().unwrap();
    let k5 = family(dir.path(), "k5", "k5.txt");
    let h = family(dir.path(), "quaternionic", "h.txt");
    assert_eq!(code(&unilie(&["iso", s(&k5), s(&h)])), 1);

    let ring = family(dir.path(), "ring:r=2,primed=true", "ring.txt");
    let sum = family(dir.path(), "h3+h3", "sum.txt");
    let w = dir.path().join("w.txt");
    let o = unilie(&["iso", s(&ring), s(&sum), "--save-witness", s(&w)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(w.exists());
    let o = unilie(&["iso", s(&ring), s(&sum), "--witness", s(&w)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    // the same witness does not map the algebra to itself
    let o = unilie(&["iso", s(&ring), s(&ring), "--witness", s(&w)]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
}

#[test]
fn jobs_do_not_change_output() {
    let one = unilie(&["classify", "--qmax", "5", "--jobs", "1"]);
    let four = unilie(&["classify", "--qmax", "5", "--jobs", "4"]);
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
    let one = unilie(&["factorize", "--n", "6", "--jobs", "1", "--format", "data"]);
    let four = unilie(&["factorize", "--n", "6", "--jobs", "4", "--format", "data"]);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn export_round_trips_through_every_format() {
    let dir = TempDir::new().unwrap();
    let g = family(dir.path(), "kneser:n=5,m=2", "g.txt");
    for fmt in ["dot", "data"] {
        let o = unilie(&["export", "--input", s(&g), "--format", fmt]);
        assert_eq!(code(&o), 0);
        let other = write(dir.path(), &format!("g.{fmt}"), &stdout(&o));
        let back = unilie(&["export", "--input", s(&other), "--format", "text"]);
        assert_eq!(stdout(&back), fs::read_to_string(&g).unwrap(), "{fmt}");
    }
}

#[test]
fn output_flag_writes_file() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out.txt");
    let o = unilie(&["factorize", "--n", "4", "--output", s(&out)]);
    assert_eq!(code(&o), 0);
    assert!(fs::read_to_string(&out).unwrap().contains('1'));
}

#[test]
fn other_verbs_run() {
    let dir = TempDir::new().unwrap();
    let h = family(dir.path(), "quaternionic", "h.txt");
    for verb in ["analyze", "orbit"] {
        let o = unilie(&[verb, "--input", s(&h)]);
        assert_eq!(code(&o), 0, "{verb}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(unilie::io::report_data(&stdout(&o)).is_ok(), "{verb}");
    }
    let o = unilie(&["family", "heisenberg:n=2", "--algebra"]);
    assert!(stdout(&o).starts_with("unilie-algebra"));
}
