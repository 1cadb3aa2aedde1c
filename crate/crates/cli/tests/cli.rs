use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;
use voltage_cli::families::{generate, Family};
use voltage_cli::fuzz::{instance_rng, random_instance};
use voltage_cli::{parse, InstanceFile};

const PROJECTIVE_Z4: &str = "\
# the projective plane as one reversing loop
group cyclic 4
vertices 1
edge e 0 0 sign=- voltage=2
rotation 0: e+ e-
circle z: e base=0
";

fn voltage(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_voltage")).args(args).output().expect("binary runs")
}

fn file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn validate_reports_the_surface() {
    let f = file(PROJECTIVE_Z4);
    let o = voltage(&["validate", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("χ=1 nonorientable"), "{}", stdout(&o));
}

#[test]
fn exit_codes() {
    assert_eq!(voltage(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(voltage(&["validate"]).status.code(), Some(1));
    assert_eq!(voltage(&["validate", "/nonexistent/instance"]).status.code(), Some(1));
    let bad = file("group cyclic 2\nvertices 1\nedge e 0 0 sign=+ voltage=0\nrotation 0: e+ e+\n");
    let o = voltage(&["validate", bad.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));
    assert_eq!(voltage(&["example", "ex44", "1", "1"]).status.code(), Some(1));
}

#[test]
fn derived_double_cover_of_projective_plane_is_a_sphere() {
    let f = file(&PROJECTIVE_Z4.replace("voltage=2", "voltage=1").replace("cyclic 4", "cyclic 2"));
    let o = voltage(&["derive", f.path().to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["euler_characteristic"], 2);
    assert_eq!(v["orientable"], true);
    assert_eq!(v["components"], 1);
}

#[test]
fn zgraph_methods_agree_and_emit_dot() {
    let f = file(PROJECTIVE_Z4);
    let path = f.path().to_str().unwrap();
    let coset = voltage(&["zgraph", path, "--circle", "z", "--json"]);
    let brute = voltage(&["zgraph", path, "--circle", "z", "--method", "brute", "--json"]);
    assert_eq!(coset.status.code(), Some(0));
    let c: serde_json::Value = serde_json::from_str(&stdout(&coset)).unwrap();
    let b: serde_json::Value = serde_json::from_str(&stdout(&brute)).unwrap();
    assert_eq!(c["edges"].as_array().unwrap().len(), b["edges"].as_array().unwrap().len());
    assert_eq!(c["vertices"].as_array().unwrap().len(), b["vertices"].as_array().unwrap().len());
    let dot = stdout(&voltage(&["zgraph", path, "--circle", "z", "--dot"]));
    assert!(dot.starts_with("graph zgraph {"));
    assert_eq!(dot.matches(" -- ").count(), c["edges"].as_array().unwrap().len());
}

#[test]
fn analyze_and_medial_confirm() {
    let f = file(PROJECTIVE_Z4);
    let path = f.path().to_str().unwrap();
    let o = voltage(&["analyze", path, "--circle", "z", "--component", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAILED"));
    let o = voltage(&["medial", path, "--claw", "e"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("medial of derived: confirmed"));
}

#[test]
fn verify_file_and_fuzz() {
    let f = file(PROJECTIVE_Z4);
    let o = voltage(&["verify", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let empty = voltage(&["verify", "--count", "0"]);
    assert_eq!(empty.status.code(), Some(0));
    assert!(stdout(&empty).contains("result: ok"));
    let a = voltage(&["verify", "--seed", "1", "--count", "100"]);
    let b = voltage(&["verify", "--seed", "1", "--count", "100"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn example_prints_a_parseable_instance() {
    let o = voltage(&["example", "ex42", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let parsed = parse(&text).unwrap();
    assert_eq!(parsed.circles.len(), 1);
    let dot = stdout(&voltage(&["example", "ex42", "3", "--dot"]));
    assert_eq!(dot.matches(" -- ").count(), 3);
}

#[test]
fn round_trip_on_generated_instances() {
    let mut files: Vec<InstanceFile> = (0..50).map(|i| InstanceFile::from_embedding(random_instance(&mut instance_rng(9, i)))).collect();
    for f in [Family::Ex41 { a: 2, b: 3 }, Family::Ex42 { n: 4 }, Family::Ex44 { k: 2, d: 3 }] {
        files.push(generate(f).unwrap().instance);
    }
    for f in files {
        let text = f.print();
        let back = parse(&text).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.print(), text);
    }
}
