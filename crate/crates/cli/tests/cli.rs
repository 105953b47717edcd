use std::fs;

use cuspidal_cli::{read_points, render_svg, run_command, RenderSpec};
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let argv = std::iter::once("cuspidal").chain(args.iter().copied());
    let code = run_command(argv, &mut out).unwrap();
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn cycloid_invariants() {
    let (code, out) = run(&["invariants", "--curve", "cycloid", "--param", "a=1"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["class"], "PositiveCusp");
    assert!((v["mu_g"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((v["mu_A"].as_f64().unwrap() - 36.0).abs() < 1e-9);
    // inflection-only fields are absent
    assert!(v.get("mu_I").is_none());
    assert!(v.get("g0").is_none());
}

#[test]
fn inflection_invariants() {
    let (_, out) = run(&["invariants", "--curve", "skew_cycloid", "--param", "a=4"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["class"], "PositiveInflection");
    assert!((v["mu_I"].as_f64().unwrap() + 3.0).abs() < 1e-10);
    assert!((v["f0"].as_f64().unwrap() + 0.3125).abs() < 1e-12);
    assert!(v.get("mu_A").is_none());
    assert!(v.get("h0").is_none());
}

#[test]
fn regular_point_has_only_the_class() {
    let (_, out) = run(&["invariants", "--curve", "circle", "--param", "r=2"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["class"], "Regular");
    assert_eq!(v.as_object().unwrap().len(), 3);
}

#[test]
fn affine_profile_of_the_model_cusp() {
    let (code, out) = run(&[
        "profile", "--curve", "(t^2, t^3)", "--kind", "affine-cusp", "--grid", "-0.5:0.5:101",
    ]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("tau,f"));
    let rows: Vec<_> = lines.collect();
    assert_eq!(rows.len(), 101);
    for row in rows {
        let f: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
        assert!((f - 0.16).abs() < 1e-12, "{row}");
    }
}

#[test]
fn parse_errors_are_reported_with_positions() {
    let mut out = Vec::new();
    let err = run_command(["cuspidal", "classify", "--curve", "(t^2, t^3 * )"], &mut out)
        .unwrap_err()
        .to_string();
    assert!(err.contains("line 1, column"), "{err}");
}

#[test]
fn usage_errors_exit_nonzero() {
    let (code, _) = run(&["frobnicate"]);
    assert_ne!(code, 0);
    let (code, _) = run(&["profile", "--curve", "cycloid", "--bogus"]);
    assert_ne!(code, 0);
}

#[test]
fn synthesize_writes_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("sigma1.csv");
    let svg = dir.path().join("sigma1.svg");
    let (code, _) = run(&[
        "synthesize", "--kind", "affine-cusp", "--h", "1", "--tau-max", "1",
        "--samples", "201",
        "--out", csv.to_str().unwrap(),
        "--svg", svg.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("tau,x,y\n"));
    assert_eq!(text.lines().count(), 202);
    let svg_text = fs::read_to_string(&svg).unwrap();
    assert_eq!(svg_text.matches("<polyline").count(), 1);
    // re-rendering the CSV reproduces the figure
    let again = render_svg(&read_points(&text).unwrap(), &RenderSpec::default()).unwrap();
    assert_eq!(again, svg_text);
}

#[test]
fn profile_csv_round_trips_through_render() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("p.csv");
    run(&["profile", "--curve", "cycloid", "--param", "a=1", "--out", csv.to_str().unwrap()]);
    let a = run(&["render", "--input", csv.to_str().unwrap()]).1;
    // rewrite the CSV from what was read and render again
    let points = read_points(&fs::read_to_string(&csv).unwrap()).unwrap();
    let mut text = String::from("tau,f\n");
    for (t, f) in &points {
        text.push_str(&format!("{t},{f}\n"));
    }
    fs::write(&csv, text).unwrap();
    let b = run(&["render", "--input", csv.to_str().unwrap()]).1;
    assert_eq!(a, b);
}

#[test]
fn render_rejects_a_single_sample() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("one.csv");
    fs::write(&csv, "tau,x,y\n0,0,0\n").unwrap();
    let mut out = Vec::new();
    assert!(run_command(["cuspidal", "render", "--input", csv.to_str().unwrap()], &mut out).is_err());
}

#[test]
fn synthesis_input_errors() {
    let mut out = Vec::new();
    for args in [
        &["synthesize", "--kind", "euclid-cusp"][..],
        &["synthesize", "--kind", "euclid-cusp", "--f", "0"],
        &["synthesize", "--kind", "inflection", "--f", "1"],
        &["synthesize", "--kind", "euclid-cusp", "--h", "1"],
    ] {
        let argv = std::iter::once("cuspidal").chain(args.iter().copied());
        assert!(run_command(argv, &mut out).is_err(), "{args:?}");
    }
}

#[test]
fn verify_is_deterministic() {
    let (code, a) = run(&["verify", "--seed", "7"]);
    let (_, b) = run(&["verify", "--seed", "7"]);
    assert_eq!(code, 0, "{a}");
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["seed"], 7);
    let names: Vec<_> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap().to_string())
        .collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert_eq!(names.len(), 13);
}
