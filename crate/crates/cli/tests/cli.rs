use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const MIXED6: &str = "j -> k\nk <-> l\nl -- r\nr -- q\nl -> p\nh -> q\n";
const NONMAX: &str = "j <-> k\nk -- p\nl -> p\np -> q\nq -> j\n";

struct Dir(TempDir);

impl Dir {
    fn new() -> Dir {
        Dir(TempDir::new().unwrap())
    }

    fn file(&self, name: &str, text: &str) -> PathBuf {
        let p = self.0.path().join(name);
        fs::write(&p, text).unwrap();
        p
    }
}

fn walksep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_walksep")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn separate_mixed6() {
    let d = Dir::new();
    let g = d.file("mixed6.g", MIXED6);
    let o = walksep(&["separate", p(&g), "--lhs", "j", "--rhs", "h", "--given", "l"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "separated\n");
    let o = walksep(&["separate", p(&g), "--lhs", "j", "--rhs", "h", "--given", "k,l", "--witness"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.starts_with("connected\nj -[->]- k"), "{out}");
}

#[test]
fn separate_json() {
    let d = Dir::new();
    let g = d.file("mixed6.g", MIXED6);
    let o = walksep(&["--json", "separate", p(&g), "--lhs", "j", "--rhs", "h", "--given", "k"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"], "separated");
}

#[test]
fn maximalize_nonmax() {
    let d = Dir::new();
    let g = d.file("nonmax.g", NONMAX);
    let o = walksep(&["maximalize", p(&g)]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "l -> j"), "{out}");
    let o = walksep(&["maximal-check", p(&g)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("not maximal\nj l\n"));
    let m = d.file("max.g", &out);
    assert_eq!(walksep(&["maximal-check", p(&m)]).status.code(), Some(0));
    assert_eq!(walksep(&["equiv", p(&g), p(&m)]).status.code(), Some(0));
}

#[test]
fn equiv_dotted_path_and_line_image() {
    let d = Dir::new();
    let dg = d.file("dg.g", "a .. b\nb .. c\n");
    let ug = d.file("ug.g", "a -- b\nb -- c\n");
    let o = walksep(&["equiv", p(&dg), p(&ug)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "equivalent\n");
    let dag = d.file("dag.g", "a -> b\nc -> b\n");
    let o = walksep(&["equiv", p(&ug), p(&dag)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("different\n"));
}

#[test]
fn model_closure_axioms_pipeline() {
    let d = Dir::new();
    let g = d.file("path.g", "1 -- 2\n2 -- 3\n3 -- 4\n");
    let o = walksep(&["model", p(&g)]);
    assert_eq!(o.status.code(), Some(0));
    let model = stdout(&o);
    assert!(model.starts_with("nodes 1,2,3,4\n"));
    assert!(model.lines().any(|l| l == "1 | 3 | 2"));
    let mf = d.file("m.txt", &model);
    let o = walksep(&["closure", p(&mf)]);
    assert_eq!(stdout(&o), model);
    let o = walksep(&["axioms", p(&mf)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 6);

    let pw = walksep(&["pairwise", p(&g)]);
    let pf = d.file("p.txt", &stdout(&pw));
    assert_eq!(stdout(&walksep(&["closure", p(&pf)])), model);

    let bad = d.file("bad.txt", "nodes 1,2,3\n1 | 2,3 | -\n");
    let o = walksep(&["axioms", p(&bad), "--axioms", "s2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("S2 FAIL"));
}

#[test]
fn symmetry_closure() {
    let d = Dir::new();
    let m = d.file("m.txt", "nodes 1,2\n1 | 2 | -\n");
    let o = walksep(&["closure", p(&m), "--axioms", "s1"]);
    assert_eq!(stdout(&o), "nodes 1,2\n1 | 2 | -\n2 | 1 | -\n");
}

#[test]
fn classify_and_gen() {
    let d = Dir::new();
    let g = d.file("nonmax.g", NONMAX);
    let out = stdout(&walksep(&["classify", p(&g)]));
    assert!(out.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["CMG", "yes"]));
    assert!(out.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["SG", "no"]));
    let a = walksep(&["gen", "--n", "5", "--class", "MAMP", "--seed", "7"]);
    let b = walksep(&["gen", "--n", "5", "--class", "MAMP", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let gf = d.file("gen.g", &stdout(&a));
    let out = stdout(&walksep(&["classify", p(&gf)]));
    assert!(out.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["MAMP", "yes"]));
}

#[test]
fn exit_codes() {
    let d = Dir::new();
    let bad = d.file("bad.g", "a => b\n");
    let o = walksep(&["classify", p(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
    assert_eq!(walksep(&["frobnicate"]).status.code(), Some(2));
    let g = d.file("mixed6.g", MIXED6);
    assert_eq!(walksep(&["separate", p(&g), "--lhs", "j", "--rhs", "zz"]).status.code(), Some(2));
    assert_eq!(walksep(&["separate", p(&g), "--lhs", "j", "--rhs", "j"]).status.code(), Some(2));
    assert_eq!(walksep(&["model", p(&g), "--bound", "6"]).status.code(), Some(3));
    let dotted = d.file("d.g", "a .. b\n");
    assert_eq!(walksep(&["maximalize", p(&dotted)]).status.code(), Some(2));
}
