use std::process::{Command, Output};

use serde::Deserialize;
use serde_json::Value;

fn distcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_distcalc"))
        .args(args)
        .env_remove("DISTCALC_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json_of(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.push("--json");
    let o = distcalc(&full);
    assert!(o.status.success(), "{:?}: {}", args, stderr(&o));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn assert_schema(name: &str, instance: &Value) {
    let path = format!("{}/schemas/{name}", env!("CARGO_MANIFEST_DIR"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator
        .iter_errors(instance)
        .map(|e| e.to_string())
        .collect();
    assert!(errors.is_empty(), "{name}: {errors:?}\n{instance}");
}

/// Text value following `key` on its line.
fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key).filter(|rest| rest.starts_with(' ')))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
        .trim()
}

fn same_to_12_digits(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= 1e-12 * a.abs().max(b.abs())
}

#[test]
fn transform_golden() {
    let o = distcalc(&["transform", "rect", "--convention", "eng"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "sinc\n");
    let o = distcalc(&["transform", "comb", "--convention", "math"]);
    assert_eq!(
        stdout(&o),
        "0.3989422804014327*dilate(comb,0.15915494309189535)\n"
    );
    let o = distcalc(&["transform", "cos2pi(2)"]);
    assert_eq!(stdout(&o), "0.5*(delta(-2)+delta(2))\n");
}

#[test]
fn transform_explain_lists_rules() {
    let o = distcalc(&["transform", "shift(rect,1)", "--explain"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("cexp(-1)*sinc"));
    let rules: Vec<&str> = lines.collect();
    assert!(
        !rules.is_empty() && rules.iter().all(|l| l.starts_with("rule: ")),
        "{text}"
    );
}

#[test]
fn verify_golden() {
    let o = distcalc(&["verify", "comb", "--convention", "eng", "--tol", "1e-8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().last(), Some("PASS"));
    assert_eq!(field(&stdout(&o), "family_size"), "24");
}

#[test]
fn verify_random_family_is_seeded() {
    let args = [
        "verify",
        "gauss+delta(0.3)",
        "--family",
        "random",
        "--seed",
        "9",
        "--count",
        "6",
    ];
    let a = distcalc(&args);
    let b = distcalc(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(field(&stdout(&a), "family_size"), "6");
}

#[test]
fn exit_codes() {
    let o = distcalc(&["transform", "rect +"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(stderr(&o).contains("line 1, column 7"), "{}", stderr(&o));

    let o = distcalc(&["transform", "dilate(gauss, 0)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("column 15"), "{}", stderr(&o));

    assert_eq!(
        distcalc(&["verify", "rect", "--tol", "-1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        distcalc(&["table", "--convention", "physics"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(distcalc(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        distcalc(&["pair", "rect", "--testfn", "poly(1)"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        distcalc(&["kspace-demo", "--fraction", "0.5"])
            .status
            .code(),
        Some(2)
    );

    let o = distcalc(&["verify", "rect", "--tol", "1e-30"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).starts_with("error: "));
}

#[test]
fn tolerance_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_distcalc"))
        .args(["verify", "rect"])
        .env("DISTCALC_TOL", "1e-30")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_distcalc"))
        .args(["verify", "rect", "--tol", "1e-8"])
        .env("DISTCALC_TOL", "1e-30")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(dead_code)]
struct TransformJson {
    input: String,
    convention: String,
    result: String,
    rules: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(dead_code)]
struct VerifyJson {
    expr: String,
    convention: String,
    max_residual: f64,
    family_size: usize,
    pass: bool,
}

#[test]
fn json_outputs_match_schemas() {
    let t = json_of(&["transform", "comb", "--convention", "math"]);
    assert_schema("transform.json", &t);
    let t: TransformJson = serde_json::from_value(t).unwrap();
    assert_eq!(
        t.result,
        "0.3989422804014327*dilate(comb,0.15915494309189535)"
    );
    assert_eq!(t.convention, "math");

    let v = json_of(&["verify", "sinc"]);
    assert_schema("verify.json", &v);
    let v: VerifyJson = serde_json::from_value(v).unwrap();
    assert!(v.pass && v.family_size == 24 && v.max_residual < 1e-8);

    assert_schema(
        "pair.json",
        &json_of(&["pair", "comb", "--testfn", "gauss(3.141592653589793,0)"]),
    );
    assert_schema(
        "psf.json",
        &json_of(&["psf", "--testfn", "poly(0,1)*gauss(2,0.3)*mod(1)"]),
    );
    for conv in ["eng", "math"] {
        assert_schema("table.json", &json_of(&["table", "--convention", conv]));
    }
    let k = json_of(&["kspace-demo", "--M", "16", "--signals"]);
    assert_schema("kspace_demo.json", &k);
    assert_schema("signal.json", &k["signals"]["signal"]);
    assert_schema("kspace_demo.json", &json_of(&["kspace-demo"]));
}

#[test]
fn text_and_json_agree() {
    let text = stdout(&distcalc(&[
        "verify",
        "shift(gauss,0.3)",
        "--convention",
        "math",
    ]));
    let json = json_of(&["verify", "shift(gauss,0.3)", "--convention", "math"]);
    let t: f64 = field(&text, "max_residual").parse().unwrap();
    assert!(same_to_12_digits(t, json["max_residual"].as_f64().unwrap()));

    let args = ["pair", "rect", "--testfn", "gauss(3.141592653589793,0)"];
    let text = stdout(&distcalc(&args));
    let json = json_of(&args);
    let re: f64 = field(&text, "value").parse().unwrap();
    assert!(same_to_12_digits(re, json["value"][0].as_f64().unwrap()));
    assert!((re - 0.789908594556063).abs() < 1e-12);
    let e: f64 = field(&text, "err_bound").parse().unwrap();
    assert!(same_to_12_digits(e, json["err_bound"].as_f64().unwrap()));

    let args = [
        "kspace-demo",
        "--M",
        "256",
        "--fraction",
        "0.75",
        "--seed",
        "4",
    ];
    let text = stdout(&distcalc(&args));
    let json = json_of(&args);
    for key in [
        "clean_reconstruction_error",
        "corrupted_symmetry_residual",
        "corrupted_reconstruction_error",
    ] {
        let t: f64 = field(&text, key).parse().unwrap();
        assert!(same_to_12_digits(t, json[key].as_f64().unwrap()), "{key}");
    }
    assert!(json["clean_reconstruction_error"].as_f64().unwrap() < 1e-12);
    assert!(json["corrupted_reconstruction_error"].as_f64().unwrap() > 1e-3);
    assert_eq!(json["lines"], 192);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["kspace-demo", "--seed", "11", "--signals", "--json"][..],
        &["table", "--convention", "math"],
        &[
            "psf",
            "--testfn",
            "poly(1,0,1)*gauss(1.5,-0.2)",
            "--xs",
            "0.1,0.7",
        ],
    ] {
        assert_eq!(distcalc(args).stdout, distcalc(args).stdout, "{args:?}");
    }
}

#[test]
fn table_flags_the_sine_row() {
    let text = stdout(&distcalc(&["table", "--convention", "eng"]));
    let flagged: Vec<&str> = text.lines().filter(|l| l.ends_with("[1]")).collect();
    assert_eq!(flagged.len(), 1);
    assert!(flagged[0].starts_with("sin2pi(0.5)"));
    assert!(text.lines().last().unwrap().starts_with("[1] "));
    assert_eq!(text.lines().filter(|l| l.starts_with("delta")).count(), 2);

    let eng = json_of(&["table", "--convention", "eng"]);
    let mismatched: Vec<usize> = (0..9)
        .filter(|&i| eng["rows"][i]["matches_printed"] == false)
        .collect();
    assert_eq!(mismatched, vec![7]);
    assert!(eng["footnote"].is_string());
    let math = json_of(&["table", "--convention", "math"]);
    assert!(math["footnote"].is_null());
    assert_eq!(
        math["rows"][8]["result"],
        "0.3989422804014327*dilate(comb,0.15915494309189535)"
    );
}

#[test]
fn psf_reports_each_point() {
    let o = distcalc(&[
        "psf",
        "--testfn",
        "gauss(3.141592653589793,0)",
        "--xs",
        "0,0.25,1.5",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(
        text.lines()
            .next()
            .unwrap()
            .split_whitespace()
            .collect::<Vec<_>>(),
        ["x", "periodization", "fourier_series", "residual"]
    );
    assert!(
        text.lines()
            .nth(1)
            .unwrap()
            .starts_with("0     1.08643481121"),
        "{text}"
    );
    assert!(text.lines().nth(2).unwrap().starts_with("0.25  "), "{text}");
    assert!(text.lines().nth(3).unwrap().starts_with("0.5   "), "{text}");
    assert_eq!(text.lines().last(), Some("PASS"));
}
