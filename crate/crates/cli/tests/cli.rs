use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn manifest_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

fn fixture(name: &str) -> String {
    manifest_dir().join("tests/fixtures").join(name).display().to_string()
}

fn weylgen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylgen"))
        .args(args)
        .env_remove("WEYLGEN_OUT_DIR")
        .output()
        .expect("spawn weylgen")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

/// Compares with `tests/golden/<name>`; set `WEYLGEN_UPDATE_GOLDEN=1` to rewrite.
fn golden(name: &str, actual: &str) {
    let path: PathBuf = manifest_dir().join("tests/golden").join(name);
    if std::env::var_os("WEYLGEN_UPDATE_GOLDEN").is_some() {
        fs::write(&path, actual).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "output differs from {}", path.display());
}

#[test]
fn reproduce_s3_golden() {
    let out = weylgen(&["reproduce-s3", "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    golden("reproduce_s3.json", &stdout(&out));
    let text = weylgen(&["reproduce-s3"]);
    assert_eq!(code(&text), 0);
    golden("reproduce_s3.txt", &stdout(&text));
}

#[test]
fn s3_generators_json() {
    let out = weylgen(&["weyl-generators", "--family", "Sn", "--rank", "3", "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    golden("weyl_generators_s3.json", &stdout(&out));
    let v = json(&out);
    assert_eq!(v["schema"], "weyl-report/1");
    assert_eq!(v["weyl_generators"]["generators"].as_array().unwrap().len(), 3);
    assert_eq!(v["weyl_generators"]["generators"][2]["terms"][0]["numerator"], "x2 - x3");
}

#[test]
fn verify_b2_text() {
    let out = weylgen(&["verify", "--family", "Bn", "--rank", "2"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    golden("verify_b2.txt", &stdout(&out));
}

#[test]
fn trivial_invariants() {
    let out = weylgen(&["invariants", "--family", "trivial", "--rank", "2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    golden("invariants_trivial2.json", &stdout(&out));
    let v = json(&out);
    assert_eq!(v["invariants"]["invariants"], serde_json::json!(["x1", "x2"]));
    assert_eq!(v["invariants"]["j"], "1");
    assert_eq!(v["invariants"]["reflection_count"], 0);
}

#[test]
fn perturbed_invariant_exits_1_with_witness() {
    let out = weylgen(&["verify", "--family", "Sn", "--rank", "3", "--perturb", "1", "--format", "json"]);
    assert_eq!(code(&out), 1);
    golden("verify_s3_perturbed.json", &stdout(&out));
    let v = json(&out);
    assert_eq!(v["status"], "fail");
    assert_eq!(v["verification"]["delta_relations"]["witness"], serde_json::json!([1, 1]));
    assert!(stderr(&out).contains("delta_relations: FAIL at (1, 1)"));
}

#[test]
fn list_families_golden() {
    let out = weylgen(&["list-families"]);
    assert_eq!(code(&out), 0);
    golden("list_families.txt", &stdout(&out));
}

#[test]
fn text_and_json_carry_the_same_content() {
    let args = ["decompose", "--family", "Bn", "--rank", "2", "--times", "Sn", "--times-rank", "2"];
    let text = stdout(&weylgen(&args));
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let v = json(&weylgen(&json_args));
    assert_eq!(text, weyl_invariants::report::render_text(&v));
}

#[test]
fn deterministic_bytes() {
    let args = ["weyl-generators", "--family", "G", "--rank", "2", "--m", "3", "--format", "json"];
    assert_eq!(weylgen(&args).stdout, weylgen(&args).stdout);
    let props = ["properties", "--cases", "5", "--seed", "7", "--format", "json"];
    let (a, b) = (weylgen(&props), weylgen(&props));
    assert_eq!(code(&a), 0, "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn spec_files() {
    let out = weylgen(&["reflections", "--spec", &fixture("s3.json"), "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["group"]["order"], 6);
    assert_eq!(v["group"]["spec"]["generators"][0], serde_json::json!(["0", "1", "0", "1", "0", "0", "0", "0", "1"]));
    assert_eq!(v["reflections"].as_array().unwrap().len(), 3);

    let out = weylgen(&["weyl-generators", "--spec", &fixture("zeta3.json"), "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["group"]["order"], 3);
    assert_eq!(v["weyl_generators"]["generators"][0]["display"], "[(1)*D1] / (3*x1^2)");

    let out = weylgen(&["decompose", "--spec", &fixture("s3_times_s2.json"), "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let orders: Vec<u64> =
        json(&out)["decomposition"]["factors"].as_array().unwrap().iter().map(|f| f["order"].as_u64().unwrap()).collect();
    assert_eq!(orders, vec![6, 2]);
}

#[test]
fn input_errors_exit_2() {
    let cases: Vec<(Vec<String>, &str)> = vec![
        (vec!["invariants".into(), "--spec".into(), fixture("singular.json")], "generator not invertible"),
        (vec!["invariants".into(), "--spec".into(), fixture("malformed.json")], "malformed JSON at line"),
        (vec!["invariants".into(), "--spec".into(), fixture("infinite.json")], "group closure exceeds"),
        (vec!["invariants".into(), "--spec".into(), fixture("missing.json")], "cannot read"),
        (vec!["invariants".into(), "--spec".into(), fixture("rotation.json")], "no built-in invariants"),
        (vec!["decompose".into(), "--spec".into(), fixture("rotation.json")], "not generated by its pseudo-reflections"),
        (vec!["invariants".into(), "--family".into(), "E".into(), "--rank".into(), "6".into()], "unsupported family"),
        (vec!["invariants".into(), "--family".into(), "Sn".into()], "needs a rank"),
        (vec!["invariants".into(), "--family".into(), "Bn".into(), "--rank".into(), "5".into()], "--allow-large"),
        (vec!["verify".into(), "--family".into(), "Sn".into(), "--rank".into(), "2".into(), "--perturb".into(), "3".into()], "--perturb"),
        (vec!["invariants".into(), "--format".into(), "yaml".into()], "invalid value"),
        (vec!["frobnicate".into()], "unrecognized subcommand"),
    ];
    for (args, needle) in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = weylgen(&args);
        assert_eq!(code(&out), 2, "{args:?}: {}", stderr(&out));
        assert!(stderr(&out).contains(needle), "{args:?}: {}", stderr(&out));
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn allow_large_overrides_bounds() {
    let args = ["invariants", "--family", "cyclic", "--rank", "1", "--m", "13", "--format", "json"];
    assert_eq!(code(&weylgen(&args)), 2);
    let mut large = args.to_vec();
    large.push("--allow-large");
    let out = weylgen(&large);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(json(&out)["group"]["order"], 13);
    assert_eq!(json(&out)["invariants"]["invariants"], serde_json::json!(["x1^13"]));
}

#[test]
fn flipped_convention_exits_1() {
    let out = weylgen(&["crossprod-check", "--flip", "--format", "json"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    for r in v["crossprod"].as_array().unwrap() {
        assert!(r["relations"].as_array().unwrap().iter().any(|x| x["passed"] == false));
    }
}

#[test]
fn output_destinations() {
    let dir = std::env::temp_dir().join(format!("weylgen-test-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let out_file = dir.join("nested/s2.json");
    let out = weylgen(&["invariants", "--family", "Sn", "--rank", "2", "--format", "json", "--out", out_file.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&out_file).unwrap()).unwrap();
    assert_eq!(v["invariants"]["invariants"], serde_json::json!(["x1 + x2", "x1*x2"]));

    let out = Command::new(env!("CARGO_BIN_EXE_weylgen"))
        .args(["list-families"])
        .env("WEYLGEN_OUT_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert!(fs::read_to_string(dir.join("list-families.txt")).unwrap().contains("command: list-families"));
    fs::remove_dir_all(&dir).unwrap();
}
