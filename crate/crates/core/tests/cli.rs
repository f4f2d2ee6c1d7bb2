use std::path::PathBuf;
use std::process::{Command, Output};

use lattice_spectra::catalog::validate_dot;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lattice-spectra"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lattice-spectra-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

const M5: &str = "lattice M5\nelements 0 a b c 1\ncover 0 a\ncover 0 b\ncover 0 c\ncover a 1\ncover b 1\ncover c 1\n";
const N5: &str =
    "lattice N5\nelements 0 a b c 1\ncover 0 a\ncover a c\ncover c 1\ncover 0 b\ncover b 1\n";

#[test]
fn show_reports_distributivity_and_primes() {
    let m5 = scratch("m5.lat", M5);
    let o = run(&["show", m5.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("distributive: no (M5 sublattice)"), "{out}");
    assert!(out.contains("prime ideals: 0"), "{out}");

    let n5 = scratch("n5.lat", N5);
    let out = stdout(&run(&["show", n5.to_str().unwrap()]));
    assert!(out.contains("prime ideals: 2"), "{out}");
    assert!(out.contains("distributive: no (N5 sublattice)"), "{out}");

    let out = stdout(&run(&["show", "catalog:chain2"]));
    assert!(out.contains("distributive: yes"), "{out}");
}

#[test]
fn spec_counts() {
    let m5 = scratch("m5-spec.lat", M5);
    let out = stdout(&run(&["spec", m5.to_str().unwrap(), "--bitop"]));
    assert!(out.contains("points: 6\n"), "{out}");
    // opens of the topology generated by the delta images, counted by hand:
    // the empty set, three pairwise intersections, three deltas, everything
    assert!(out.contains("tau opens: 8\n"), "{out}");
    let out = stdout(&run(&["spec", m5.to_str().unwrap(), "--classical"]));
    assert!(out.contains("points: 0\n"), "{out}");
    let out = stdout(&run(&["spec", "catalog:diamond", "--bitop"]));
    assert!(
        out.contains("points: 2\n") && out.contains("tau == sigma: yes"),
        "{out}"
    );
}

#[test]
fn spec_writes_valid_dot() {
    let dot = scratch("m5.dot", "");
    let o = run(&["spec", "catalog:M5", "--dot", dot.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&dot).unwrap();
    assert_eq!(validate_dot(&text).unwrap().nodes, 6);
}

#[test]
fn verify_m5_file() {
    let m5 = scratch("m5-verify.lat", M5);
    let o = run(&["verify", m5.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("M5 RepTh: PASS (5 essential sets = Im(delta))"));
}

#[test]
fn verify_catalog_all_pass() {
    let o = run(&["verify", "--catalog"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(!out.contains("FAIL"));
    assert!(out.contains("lattices: 15,"));
}

#[test]
fn verify_output_is_deterministic_across_job_counts() {
    let one = bin()
        .args(["verify", "--exhaustive", "5"])
        .env("LATTICE_SPECTRA_JOBS", "1")
        .output()
        .unwrap();
    let many = bin()
        .args(["verify", "--exhaustive", "5"])
        .env("LATTICE_SPECTRA_JOBS", "4")
        .output()
        .unwrap();
    let seq = run(&["verify", "--exhaustive", "5", "--sequential"]);
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(one.stdout, seq.stdout);
    let bad = bin()
        .args(["verify", "--catalog"])
        .env("LATTICE_SPECTRA_JOBS", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn structured_output_is_json() {
    let o = run(&["--format", "structured", "verify", "catalog:N5"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["summary"]["lattices"], 1);
    assert_eq!(v["summary"]["fail"], 0);
    assert!(v["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .all(|x| x["status"] == "PASS"));
    let o = run(&["show", "catalog:M5", "--format", "structured"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["facts"]
        .as_array()
        .unwrap()
        .iter()
        .any(|f| f["key"] == "prime ideals" && f["value"] == "0"));
}

#[test]
fn hom_classification() {
    let inc = scratch("inc.hom", "hom inc from chain2 to M5\nmap 0 0\nmap 1 a\n");
    let o = run(&["hom", inc.to_str().unwrap(), "catalog:chain2", "catalog:M5"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(out.contains("proper: yes (vacuous)"), "{out}");
    assert!(out.contains("quasi-proper: no (comaximal pair"), "{out}");

    let id = scratch(
        "id.hom",
        "hom id from N5 to N5\nmap 0 0\nmap a a\nmap b b\nmap c c\nmap 1 1\n",
    );
    let o = run(&["hom", id.to_str().unwrap(), "catalog:N5", "catalog:N5"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0));
    assert!(out.contains("quasi-proper: yes"));
    assert!(
        !out.contains("FAIL") && out.contains("id Naturality: PASS"),
        "{out}"
    );

    let q = scratch(
        "q.hom",
        "hom q from diamond to chain2\nmap 0 0\nmap a 0\nmap b 1\nmap 1 1\n",
    );
    let out = stdout(&run(&[
        "hom",
        q.to_str().unwrap(),
        "catalog:diamond",
        "catalog:chain2",
    ]));
    assert!(
        out.contains("quasi-proper: yes") && out.contains("q Naturality: PASS"),
        "{out}"
    );
}

#[test]
fn input_errors_exit_2() {
    let bad = scratch(
        "bad.lat",
        "lattice v\nelements 0 a b\ncover 0 a\ncover 0 b\n",
    );
    let o = run(&["show", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("a and b") || err.contains("`a`"), "{err}");
    assert_eq!(run(&["show", "/nonexistent/x.lat"]).status.code(), Some(2));
    assert_eq!(run(&["verify"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--exhaustive", "7"]).status.code(), Some(2));
    assert_eq!(
        run(&["verify", "catalog:M5", "--mutate-meet", "a,zz,0"])
            .status
            .code(),
        Some(2)
    );
    let hom = scratch(
        "nothom.hom",
        "hom f from diamond to chain2\nmap 0 0\nmap a 1\nmap b 1\nmap 1 0\n",
    );
    assert_eq!(
        run(&[
            "hom",
            hom.to_str().unwrap(),
            "catalog:diamond",
            "catalog:chain2"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn mutation_fails_with_witness() {
    let o = run(&["verify", "catalog:N5", "--mutate-meet", "a,b,a"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(
        out.contains("N5* LatticeAxioms: FAIL (meet commutativity fails at (a, b))"),
        "{out}"
    );
}
