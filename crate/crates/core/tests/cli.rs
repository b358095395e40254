use std::path::Path;
use std::process::{Command, Output};

const TETRAHEDRON: &str = "OFF\n4 4 0\n0 0 0\n1 0 1\n0 1 2\n0 0 3\n3 0 1 2\n3 0 1 3\n3 0 2 3\n3 1 2 3\n";

fn contracta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_contracta")).args(args).output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn diagram_of_a_sphere() {
    let dir = tempfile::tempdir().unwrap();
    let off = dir.path().join("tet.off");
    std::fs::write(&off, TETRAHEDRON).unwrap();
    let out = contracta(&["diagram", "--input", s(&off)]);
    assert!(out.status.success());
    // z heights 0..3: one essential component, one essential void
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "0 0 inf\n2 3 inf\n");

    let dgm = dir.path().join("d.dgm");
    let svg = dir.path().join("d.svg");
    let out = contracta(&["diagram", "--input", s(&off), "--dim", "2", "--out", s(&dgm), "--svg", s(&svg)]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(&dgm).unwrap(), "2 3 inf\n");
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
}

#[test]
fn pairing_with_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let off = dir.path().join("tet.off");
    std::fs::write(&off, TETRAHEDRON).unwrap();
    let out = contracta(&["pair", "--input", s(&off), "--oracle"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stderr).unwrap().contains("oracle agrees"));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let quad = dir.path().join("quad.off");
    std::fs::write(&quad, "OFF\n4 1 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n4 0 1 2 3\n").unwrap();
    assert_eq!(contracta(&["diagram", "--input", s(&quad)]).status.code(), Some(2));

    let disc = dir.path().join("disc.off");
    assert!(contracta(&["terrain", "--n", "4", "--out", s(&disc)]).status.success());
    assert_eq!(contracta(&["pair", "--input", s(&disc)]).status.code(), Some(2));

    let missing = dir.path().join("nope.off");
    assert_eq!(contracta(&["diagram", "--input", s(&missing)]).status.code(), Some(2));
    assert_eq!(
        contracta(&["simplify", "--input", s(&disc), "--epsilon", "-1"]).status.code(),
        Some(2)
    );
}

#[test]
fn bottleneck_between_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.dgm");
    let b = dir.path().join("b.dgm");
    std::fs::write(&a, "0 0 4\n1 3 5\n").unwrap();
    std::fs::write(&b, "0 1 3\n").unwrap();
    let run = |extra: &[&str]| {
        let mut args = vec!["bottleneck", s(&a), s(&b)];
        args.extend_from_slice(extra);
        String::from_utf8(contracta(&args).stdout).unwrap().trim().to_string()
    };
    assert_eq!(run(&["--dim", "0"]), "1");
    assert_eq!(run(&["--dim", "1"]), "1");
    assert_eq!(run(&[]), "1");
}

#[test]
fn verify_passes() {
    let out = contracta(&["verify", "--seed", "3", "--cases", "20"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
}
