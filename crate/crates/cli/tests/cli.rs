use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use curvlab_cli::{ClassificationReport, InstanceFile};
use curvlab_core::families::{hyperbolic_example_params, hyperbolic_example_real};
use curvlab_core::Instance;
use serde_json::{json, Value};
use tempfile::TempDir;

fn curvlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvlab")).args(args).env_remove("CURVLAB_TOL").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn zeros3(n: usize) -> Value {
    json!(vec![vec![vec![[0.0, 0.0]; n]; n]; n])
}

fn abelian(n: usize) -> String {
    json!({"format": "generic", "n": n, "C": zeros3(n), "D": zeros3(n)}).to_string()
}

fn example_file(n: usize) -> String {
    InstanceFile::from_instance(&Instance::AlmostAbelian(hyperbolic_example_params(n).unwrap())).to_json()
}

#[test]
fn validate_abelian_and_example() {
    let dir = TempDir::new().unwrap();
    for (name, text) in [("abelian.json", abelian(3)), ("example.json", example_file(3))] {
        let o = curvlab(&["validate", s(&write(&dir, name, &text))]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}{}", stdout(&o), stderr(&o));
        assert!(stdout(&o).contains("valid"));
    }
}

#[test]
fn broken_antisymmetry_names_the_component() {
    let dir = TempDir::new().unwrap();
    let mut v: Value = serde_json::from_str(&abelian(2)).unwrap();
    v["C"][1][0][1] = json!([1.0, 0.0]);
    let o = curvlab(&["validate", s(&write(&dir, "bad.json", &v.to_string()))]);
    assert_eq!(o.status.code(), Some(1));
    let all = stdout(&o) + &stderr(&o);
    assert!(all.contains("(j, i, k) = ("), "{all}");
}

#[test]
fn jacobi_failure_reports_residuals() {
    let dir = TempDir::new().unwrap();
    // the example algebra in generic form with one D entry nudged
    let loaded = InstanceFile::parse(&example_file(2)).unwrap().load(1e-9).unwrap();
    let mut v: Value = serde_json::from_str(&InstanceFile::from_algebra(&loaded.alg).to_json()).unwrap();
    v["D"][1][0][1] = json!([0.3, 0.2]);
    let o = curvlab(&["--json", "validate", s(&write(&dir, "jac.json", &v.to_string()))]);
    assert_eq!(o.status.code(), Some(1), "{}{}", stdout(&o), stderr(&o));
    let out: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(out["valid"], json!(false));
    assert!(out["jacobi"]["r1"].as_f64().unwrap() > 1e-3 || out["jacobi"]["r2"].as_f64().unwrap() > 1e-3, "{out}");
}

#[test]
fn parse_errors_exit_2_with_location() {
    let dir = TempDir::new().unwrap();
    let o = curvlab(&["validate", s(&write(&dir, "syntax.json", "{\n  \"format\": \"generic\",\n  \"n\": ,\n}"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let mut v: Value = serde_json::from_str(&example_file(2)).unwrap();
    v["A"][0][0] = json!("one");
    let o = curvlab(&["validate", s(&write(&dir, "type.json", &v.to_string()))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("A[0][0]"), "{}", stderr(&o));

    let o = curvlab(&["validate", s(&dir.path().join("missing.json"))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn example_report_by_connection() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "example.json", &example_file(2));
    let o = curvlab(&["report", s(&path), "--connection", "lc"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("lc H        constant(-2)"), "{out}");
    assert!(!out.contains("chern H"));

    let o = curvlab(&["classify", s(&path), "--connection", "chern"]);
    let out = stdout(&o);
    assert!(out.contains("chern H     not constant"), "{out}");
    assert!(out.contains("H = -2 at") && out.contains("H = 0 at"), "{out}");
}

#[test]
fn abelian_report_is_constant_zero() {
    let dir = TempDir::new().unwrap();
    let o = curvlab(&["report", s(&write(&dir, "abelian.json", &abelian(3)))]);
    let out = stdout(&o);
    assert!(out.contains("chern H     constant(0)") && out.contains("lc H        constant(0)"), "{out}");
    assert!(out.contains("kahler      true"));
}

#[test]
fn real_presentation_is_accepted() {
    let data = hyperbolic_example_real(2);
    let m = data.dim;
    let f: Vec<Vec<Vec<f64>>> =
        (0..m).map(|c| (0..m).map(|a| (0..m).map(|b| data.f[(c * m + a) * m + b]).collect()).collect()).collect();
    let rows = |flat: &[f64]| -> Vec<Vec<f64>> { flat.chunks(m).map(<[f64]>::to_vec).collect() };
    let text = json!({"format": "real", "dim": m, "f": f, "J": rows(&data.j), "G": rows(&data.g)}).to_string();
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "real.json", &text);
    assert_eq!(curvlab(&["validate", s(&path)]).status.code(), Some(0));
    let out = stdout(&curvlab(&["report", s(&path), "--connection", "lc"]));
    assert!(out.contains("lc H        constant(-2)"), "{out}");
}

#[test]
fn example_subcommand() {
    let o = curvlab(&["example", "1"]);
    assert_eq!(o.status.code(), Some(2));
    for n in ["2", "4"] {
        let o = curvlab(&["example", n]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(stdout(&o).contains("lc H        constant(-2)"));
        assert!(!stdout(&o).contains("FAIL"));
    }
}

#[test]
fn report_instance_reingests_identically() {
    let dir = TempDir::new().unwrap();
    let o = curvlab(&["--json", "report", s(&write(&dir, "example.json", &example_file(3)))]);
    let first: ClassificationReport = serde_json::from_str(&stdout(&o)).unwrap();
    let again = write(&dir, "again.json", &first.instance.to_json());
    let second: ClassificationReport =
        serde_json::from_str(&stdout(&curvlab(&["--json", "report", s(&again)]))).unwrap();
    assert_eq!(first.digest, second.digest);
    assert_eq!(first.jacobi, second.jacobi);
    assert_eq!(first.constraints, second.constraints);
    assert_eq!(first, second);
}

#[test]
fn fuzz_with_injected_example() {
    let o = curvlab(&["fuzz", "--family", "aa", "--count", "10", "--seed", "1", "--inject-example"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(
        stdout(&o).contains("sample 10 (injected): lc H constant(-2), non-unimodular, non-Kähler"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn fuzz_usage_errors() {
    assert_eq!(curvlab(&["fuzz", "--family", "aa", "--scheme", "B"]).status.code(), Some(2));
    assert_eq!(curvlab(&["fuzz", "--family", "codim2", "--dim", "1"]).status.code(), Some(2));
    assert_eq!(curvlab(&["fuzz"]).status.code(), Some(2));
}

#[test]
fn tolerance_from_environment() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "example.json", &example_file(2));
    let run = |tol: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_curvlab"))
            .args(["--json", "report", s(&path)])
            .env("CURVLAB_TOL", tol)
            .output()
            .unwrap();
        (o.status.code(), serde_json::from_str::<Value>(&stdout(&o)).ok())
    };
    let (code, v) = run("1e-6");
    assert_eq!(code, Some(0));
    assert_eq!(v.unwrap()["tol"], json!(1e-6));
    assert_eq!(run("-1").0, Some(2));
}
