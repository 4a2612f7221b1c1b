//! End-to-end tests of the binary: golden outputs, determinism, exit codes,
//! and cross-checks against the library to keep the front end a thin
//! wrapper.

use std::io::Write;
use std::process::{Command, Output};

use abelkit::abelian::FpAbGroup;
use abelkit::matrix::IntMatrix;
use abelkit::monodromy::{component_groups, UniformizationDatum};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_abelkit"))
}

fn write_temp(content: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().expect("temp file");
    f.write_all(content.as_bytes()).expect("write temp");
    f
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

#[test]
fn snf_reports_chain_and_cokernel() {
    let f = write_temp("2 2\n2 0\n0 3\n");
    let out = run(&["snf", f.path().to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("diagonal: 1,6"), "{text}");
    assert!(text.contains("cokernel: Z/6"), "{text}");

    let id = write_temp("2 2\n1 0\n0 1\n");
    let out = run(&["snf", id.path().to_str().unwrap()]);
    let text = stdout(&out);
    assert!(text.contains("diagonal: 1,1"), "{text}");
    assert!(text.contains("cokernel: 0"), "{text}");
}

#[test]
fn snf_rejects_malformed_file_with_position() {
    let f = write_temp("2 2\n1 2\n3 x\n");
    let out = run(&["snf", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
    assert!(err.contains("column 3"), "{err}");
}

#[test]
fn compgroup_tate_curve() {
    let f = write_temp("1\n5\n");
    let out = run(&["compgroup", f.path().to_str().unwrap(), "--pairing"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("phi: Z/5"), "{text}");
    assert!(text.contains("<1,1> = 1/5"), "{text}");
}

#[test]
fn compgroup_trivial_and_singular() {
    let f = write_temp("2\n1 0\n0 1\n");
    let out = run(&["compgroup", f.path().to_str().unwrap()]);
    let text = stdout(&out);
    assert!(text.contains("phi: 0"), "{text}");
    assert!(text.contains("phi-prime: 0"), "{text}");

    let s = write_temp("2\n1 2\n2 4\n");
    let out = run(&["compgroup", s.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn compgroup_matches_library_directly() {
    // the front end must report exactly what the library computes
    let f = write_temp("2\n2 1\n1 3\n");
    let out = run(&[
        "compgroup",
        f.path().to_str().unwrap(),
        "--verify-perfect",
    ]);
    let text = stdout(&out);
    let datum =
        UniformizationDatum::new(IntMatrix::from_i64(2, 2, &[2, 1, 1, 3])).unwrap();
    let cg = component_groups(&datum);
    assert!(text.contains(&format!("phi: {}", cg.phi)), "{text}");
    assert!(text.contains("perfect: yes"), "{text}");
}

#[test]
fn graph_k4_report() {
    let f = write_temp("4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let out = run(&["graph", f.path().to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("critical-group: Z/4 x Z/4"), "{text}");
    assert!(text.contains("spanning-trees: 16"), "{text}");
    assert!(text.contains("orders-agree: yes"), "{text}");
}

#[test]
fn graph_path_and_disconnected() {
    let p = write_temp("3\n0 1\n1 2\n");
    let out = run(&["graph", p.path().to_str().unwrap()]);
    assert!(stdout(&out).contains("critical-group: 0"));

    let d = write_temp("4\n0 1\n2 3\n");
    let out = run(&["graph", d.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn duality_module_report() {
    let f = write_temp("0; 8\n3\n");
    let out = run(&["duality", f.path().to_str().unwrap()]);
    let text = stdout(&out);
    assert!(text.contains("h0: Z/2"), "{text}");
    assert!(text.contains("h1-dual: Z/2"), "{text}");
    assert!(text.contains("perfect: yes"), "{text}");
    // direct cross-check against the library
    let module = abelkit::group_cohomology::MonogenicModule::cyclic_with_unit(8, 3).unwrap();
    let (pairing, perfect) = abelkit::group_cohomology::tame_duality_pairing(&module);
    assert!(perfect);
    assert_eq!(pairing.left(), &FpAbGroup::cyclic(2));
}

#[test]
fn duality_rejects_non_automorphism() {
    let f = write_temp("0; 8\n2\n");
    let out = run(&["duality", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

const CIRCLE: &str = "\
indices 3
group 0 1;
group 1 1;
group 2 1;
group 0,1 1;
group 0,2 1;
group 1,2 1;
group 0,1,2 0;
res 0 0,1 1
res 0 0,2 1
res 1 0,1 1
res 1 1,2 1
res 2 0,2 1
res 2 1,2 1
res 0,1 0,1,2
res 0,2 0,1,2
res 1,2 0,1,2
";

#[test]
fn cech_circle_nerve() {
    let f = write_temp(CIRCLE);
    let out = run(&["cech", f.path().to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("H^0 = Z"), "{text}");
    assert!(text.contains("H^1 = Z"), "{text}");
}

#[test]
fn complex_cohomology_table() {
    let f = write_temp("term 0 1;\nterm 1 1;\ndiff 0 2\n");
    let out = run(&["complex", f.path().to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("H^0 = 0"), "{text}");
    assert!(text.contains("H^1 = Z/2"), "{text}");

    // a pair of maps that do not compose to zero is not a complex
    let bad = write_temp("term 0 1;\nterm 1 1;\nterm 2 1;\ndiff 0 1\ndiff 1 1\n");
    let out = run(&["complex", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn evaldiag_reports_all_cases() {
    let out = run(&["evaldiag", "--q", "8"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(
        text.contains("diagram commutes: yes (all 136 cases)"),
        "{text}"
    );
    let out = run(&["evaldiag", "--q", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let f = write_temp("2\n2 1\n1 3\n");
    let args = [
        "compgroup",
        f.path().to_str().unwrap(),
        "--pairing",
        "--verify-perfect",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout, "byte-identical reports expected");
}

#[test]
fn json_format_is_valid_and_deterministic() {
    let f = write_temp("1\n5\n");
    let args = [
        "compgroup",
        f.path().to_str().unwrap(),
        "--pairing",
        "--format",
        "json",
    ];
    let a = run(&args);
    assert!(a.status.success());
    let parsed: serde_json::Value = serde_json::from_slice(&a.stdout).expect("valid json");
    assert_eq!(parsed["status"], "ok");
    assert_eq!(parsed["results"]["phi"], "Z/5");
    assert_eq!(parsed["results"]["pairing"][0][0], "1/5");
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn missing_file_is_an_input_error() {
    let out = run(&["snf", "/nonexistent/path.mat"]);
    assert_eq!(out.status.code(), Some(2));
}
