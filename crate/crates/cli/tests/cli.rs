use std::path::PathBuf;
use std::process::Command as Process;

use stringbv_cli::{run, Command, Format, RunConfig};

fn bin() -> Process {
    Process::new(env!("CARGO_BIN_EXE_stringbv"))
}

fn tmp(name: &str, body: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn examples() -> Vec<PathBuf> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models");
    let mut v: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "toml"))
        .collect();
    v.sort();
    v
}

#[test]
fn verify_su2_passes() {
    let out = bin()
        .args(["verify", "--model", "SU(2)", "--window", "6"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.trim_end().ends_with("result: PASS"), "{text}");
}

#[test]
fn circle_table() {
    let mut c = RunConfig::new(Command::Table, "S1");
    c.window = 3;
    let o = run(&c);
    assert_eq!(o.exit_code, 0);
    assert!(o.output.contains("B(x1^2*d1) = 2*x1^2"), "{}", o.output);
    assert!(o.output.contains("B(x1^-1) = 0"));
}

#[test]
fn apply_and_bracket() {
    let mut c = RunConfig::new(Command::ApplyB, "SU(2)");
    c.a = Some("sx1^2*d1".into());
    assert_eq!(run(&c).output.trim(), "B(sx1^2*d1) = 2*sx1");

    let mut c = RunConfig::new(Command::Bracket, "S1");
    c.a = Some("x1^3".into());
    c.b = Some("d1".into());
    c.format = Format::Json;
    let v: serde_json::Value = serde_json::from_str(&run(&c).output).unwrap();
    assert_eq!(v["value"], "3*x1^3");
}

#[test]
fn decompose_u2() {
    let out = bin()
        .args(["decompose", "--model", "U(2)", "--window", "6"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("Θ conjugation matches on"));
}

#[test]
fn seeded_json_is_reproducible() {
    let args = [
        "verify",
        "--model",
        "U(2)",
        "--window",
        "5",
        "--samples",
        "40",
        "--seed",
        "11",
        "--format",
        "json",
    ];
    let a = bin().args(args).output().unwrap();
    let b = bin().args(args).output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 11);

    let mut c = RunConfig::new(Command::Verify, "U(2)");
    c.window = 5;
    c.samples = Some(40);
    c.seed = 12;
    c.format = Format::Json;
    assert_ne!(run(&c).output.as_bytes(), a.stdout.as_slice());
}

#[test]
fn malformed_file_names_the_field() {
    let p = tmp(
        "bad_torsion.toml",
        "schema = 1\nname = \"bad\"\nkind = \"lie_group\"\n[lie_group]\nfree_rank = 0\ntorsion = [0]\nodd_degrees = [3]\n",
    );
    let out = bin().args(["verify", "--model"]).arg(&p).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("lie_group.torsion[0]"), "{err}");
}

#[test]
fn unknown_generator_is_an_input_error() {
    let mut c = RunConfig::new(Command::ApplyB, "S1");
    c.a = Some("zz*d1".into());
    let o = run(&c);
    assert_eq!(o.exit_code, 2);
    assert!(o.output.contains("zz"));

    let c = RunConfig::new(Command::Verify, "G2");
    assert_eq!(run(&c).exit_code, 2);
    let mut c = RunConfig::new(Command::Verify, "S1");
    c.window = 0;
    assert_eq!(run(&c).exit_code, 2);
}

#[test]
fn example_models_verify() {
    let files = examples();
    assert!(files.len() >= 3);
    for f in files {
        let mut c = RunConfig::new(Command::Verify, f.to_string_lossy());
        c.window = 6;
        let o = run(&c);
        assert_eq!(o.exit_code, 0, "{}: {}", f.display(), o.output);
    }
}

#[test]
fn catalog_lists_groups() {
    let out = bin().arg("catalog").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for g in ["S1", "SU(2)", "SO(3)", "U(2)", "SU(3)", "T2"] {
        assert!(text.contains(g), "{g}");
    }
}
