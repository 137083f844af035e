use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twovalued"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn construct(dir: &Path, name: &str, series: &[&str]) -> String {
    let path = dir.join(name).to_string_lossy().into_owned();
    let mut args = vec!["construct"];
    args.extend_from_slice(series);
    args.extend_from_slice(&["-o", &path]);
    let out = run(&args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    path
}

#[test]
fn classify_unipotent_two() {
    let dir = tempfile::tempdir().unwrap();
    let f = construct(dir.path(), "u2.json", &["--unipotent", "2"]);
    let out = run(&["classify", &f]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "Principal(4,4)");
}

#[test]
fn classify_with_boolean_factor() {
    let dir = tempfile::tempdir().unwrap();
    let f = construct(
        dir.path(),
        "y2.json",
        &["--special", "2", "--times-c2", "1"],
    );
    let out = run(&["classify", &f]);
    assert_eq!(stdout(&out).trim(), "Special(2,1)");
}

#[test]
fn verify_reports_broken_identity() {
    let dir = tempfile::tempdir().unwrap();
    let f = construct(dir.path(), "a3.json", &["--principal", "3"]);
    assert_eq!(run(&["verify", &f]).status.code(), Some(0));

    let text = fs::read_to_string(&f).unwrap();
    let mut json: serde_json::Value = serde_json::from_str(&text).unwrap();
    // e * x1 = [e, x1] breaks the strong identity
    let x1 = json["elements"][1].clone();
    json["table"][0][1] = serde_json::json!([json["identity"].clone(), x1]);
    let broken = dir.path().join("broken.json");
    fs::write(&broken, serde_json::to_string_pretty(&json).unwrap()).unwrap();

    let out = run(&["verify", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let listing = stdout(&out) + &String::from_utf8_lossy(&out.stderr);
    assert!(listing.to_lowercase().contains("identity"), "{listing}");
}

#[test]
fn iso_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let a = construct(dir.path(), "a44.json", &["--principal", "4,4"]);
    let u = construct(dir.path(), "u2.json", &["--unipotent", "2"]);
    let a8 = construct(dir.path(), "a8.json", &["--principal", "2,4"]);
    assert_eq!(run(&["iso", &a, &u]).status.code(), Some(0));
    assert_eq!(run(&["iso", &a, &u, "--witness"]).status.code(), Some(0));
    assert_eq!(run(&["iso", &a, &a8]).status.code(), Some(1));
}

#[test]
fn enumerate_three() {
    let out = run(&["enumerate", "3", "--involutive-commutative"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(
        text.contains("Principal(4)") && text.contains("Principal(5)"),
        "{text}"
    );
}

#[test]
fn elliptic_sweep_passes() {
    let out = run(&[
        "elliptic",
        "--params",
        "0.5,1-2i,0",
        "--samples",
        "50",
        "--tol",
        "1e-6",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["construct"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn unreadable_file_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{ not json").unwrap();
    assert_eq!(
        run(&["classify", bad.to_str().unwrap()]).status.code(),
        Some(1)
    );
}
