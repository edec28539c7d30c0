use std::io::Write;
use std::process::{Command, Output, Stdio};

fn hyperspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperspec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn single_edge_charpoly_text() {
    let out = hyperspec(&["charpoly", "--family", "single-edge", "--k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "L^12 - 3*L^9 + 3*L^6 - L^3");
}

#[test]
fn determinant_methods_agree() {
    let base = hyperspec(&["charpoly", "--family", "tetra-minus-face"]);
    for method in ["interpolation", "modular"] {
        let out = hyperspec(&["charpoly", "--family", "tetra-minus-face", "--method", method]);
        assert_eq!(stdout(&out), stdout(&base), "{method}");
    }
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(hyperspec(&["charpoly", "--family", "petersen"]).status.code(), Some(1));
    assert_eq!(hyperspec(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(hyperspec(&["charpoly"]).status.code(), Some(1));
    assert_eq!(hyperspec(&["lambda-max", "--family", "complete:n=4,k=3", "--tol", "0"]).status.code(), Some(1));
}

#[test]
fn malformed_file_reports_position() {
    let dir = std::env::temp_dir().join(format!("hyperspec-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.hg");
    std::fs::write(&path, "4 3\n1 2 3\n1 2 x\n").unwrap();
    let out = hyperspec(&["charpoly", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
    assert!(err.contains("column 5"), "{err}");
}

#[test]
fn verify_mismatch_exits_two() {
    let ok = hyperspec(&["verify", "--family", "single-edge:k=3", "--lambda", "1", "--x", "1,1,1"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = hyperspec(&["verify", "--family", "single-edge:k=3", "--lambda", "2", "--x", "1,1,1"]);
    assert_eq!(bad.status.code(), Some(2));
    let complex = hyperspec(&[
        "verify",
        "--family",
        "single-edge:k=3",
        "--lambda",
        "-0.5+0.8660254037844386i",
        "--x",
        "1,1,-0.5+0.8660254037844386i",
    ]);
    assert_eq!(complex.status.code(), Some(0));
}

#[test]
fn bounds_json_fields() {
    let out = hyperspec(&["--format", "json", "bounds", "--family", "cylinder:parts=2,3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["Delta"], 3);
    assert!((v["lambda_max"].as_f64().unwrap() - 6f64.sqrt()).abs() < 1e-8);
    assert!((v["d"].as_f64().unwrap() - 2.4).abs() < 1e-12);
    assert_eq!(v["pass"], true);
}

#[test]
fn json_is_deterministic_across_thread_counts() {
    let args = ["--format", "json", "charpoly", "--family", "complete:n=5,k=3"];
    let one = hyperspec(&[&["--threads", "1"][..], &args[..]].concat());
    let four = hyperspec(&[&["--threads", "4"][..], &args[..]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(stdout(&one), stdout(&four));
    let again = hyperspec(&args);
    assert_eq!(stdout(&one), stdout(&again));
}

#[test]
fn generated_file_round_trips() {
    let out = hyperspec(&["gen", "--random", "6", "--k", "3", "--seed", "7"]);
    let text = stdout(&out);
    let mut child = Command::new(env!("CARGO_BIN_EXE_hyperspec"))
        .args(["gen", "--file", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    let back = child.wait_with_output().unwrap();
    assert_eq!(String::from_utf8(back.stdout).unwrap(), text);
}

#[test]
fn coefficient_routes_agree() {
    let routes: Vec<String> = ["traces", "resultant", "walks"]
        .iter()
        .map(|r| stdout(&hyperspec(&["coeffs", "--family", "complete:n=4,k=3", "--route", r])))
        .collect();
    assert_eq!(routes[0], routes[1]);
    assert_eq!(routes[1], routes[2]);
    assert!(routes[0].contains("codegree 4: -42"));
}

#[test]
fn trace_cap_is_enforced() {
    let out = hyperspec(&["coeffs", "--family", "complete:n=4,k=3", "--max-codegree", "5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn family_spectrum_residuals() {
    let out = hyperspec(&["--format", "json", "family", "complete:n=5,k=3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let values = v["values"].as_array().unwrap();
    assert!(!values.is_empty());
    assert!(values.iter().all(|e| e["residual"].as_f64().unwrap() < 1e-10));
    let cube = hyperspec(&["family", "ultracube:k=3,d=2"]);
    assert!(stdout(&cube).contains("1.259921049895"));
}

#[test]
fn lambda_max_and_color() {
    let out = hyperspec(&["lambda-max", "--family", "complete:n=6,k=3"]);
    assert!(stdout(&out).starts_with("lambda_max = 10.0000000"));
    let color = hyperspec(&["--format", "json", "color", "--family", "complete:n=6,k=3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&color)).unwrap();
    assert_eq!(v["proper"], true);
    assert_eq!(v["pass"], true);
}

#[test]
fn repro_subset_matches() {
    let out = hyperspec(&["repro", "--only", "single-edge"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("MATCH"));
}
