use std::process::{Command, Output};

use df_cli::report::Report;

fn df(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_df"))
        .args(args)
        .env_remove("DF_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Report, i32) {
    let mut full = vec!["--format", "json", "--no-timing"];
    full.extend_from_slice(args);
    let out = df(&full);
    let text = String::from_utf8(out.stdout).unwrap();
    let report: Report = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (report, out.status.code().unwrap())
}

#[test]
fn binary_digit_of_pi_matches_reference() {
    let (r, code) = json(&["digit", "--target", "pi", "--n", "1000", "--base", "2", "--method", "bernoulli-basic"]);
    assert_eq!(code, 0);
    let d = &r.digits[0];
    assert!(d.stable);
    let reference = df_core::oracle::reference_pi(400).unwrap();
    let expected = df_core::oracle::reference_digit(&reference, 1000, 2).unwrap();
    assert_eq!(d.digit, expected.to_string());
}

#[test]
fn euler_basic_thousand_has_957_digits() {
    let (r, code) = json(&["approx", "--method", "euler-basic", "--n", "1000", "--report-error"]);
    assert_eq!(code, 0);
    assert_eq!(r.approximations[0].measured_error_log10, Some(-958));
}

#[test]
fn ratio_euler_slope_is_log_nine() {
    let (r, code) = json(&["sweep", "--method", "ratio-euler-sq", "--n", "50:200:50", "--fit-slope"]);
    assert_eq!(code, 0);
    assert_eq!(r.approximations.len(), 4);
    let slope: f64 = r.slopes[0].slope.parse().unwrap();
    let expected = -(9f64.log10());
    assert!((slope / expected - 1.0).abs() <= 0.05, "{slope}");
}

#[test]
fn sweep_orders_by_method_then_index() {
    let (r, _) = json(&[
        "sweep", "--method", "euler-basic", "--method", "bernoulli-basic", "--n", "10:30:10",
    ]);
    let keys: Vec<(String, u64)> = r.approximations.iter().map(|a| (a.method.clone(), a.index)).collect();
    let mut sorted = keys.clone();
    sorted.sort_by_key(|(m, n)| (m.starts_with("euler"), *n));
    assert_eq!(keys, sorted);
    assert_eq!(keys[0].0, "bernoulli-basic");
}

#[test]
fn sequential_and_parallel_sweeps_agree() {
    let args = ["sweep", "--method", "euler-corrected", "--n", "10:60:10"];
    let (a, _) = json(&args);
    let mut seq = args.to_vec();
    seq.push("--sequential");
    let (b, _) = json(&seq);
    assert_eq!(a.approximations, b.approximations);
}

#[test]
fn json_output_is_deterministic_and_round_trips() {
    let args = ["--format", "json", "--no-timing", "approx", "--method", "pi-binomial-series", "--n", "100"];
    let first = df(&args).stdout;
    let second = df(&args).stdout;
    assert_eq!(first, second);
    let text = String::from_utf8(first).unwrap();
    let report: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&report).unwrap(), text.trim_end());
    assert_eq!(report.schema, "df-report/1");
    assert!(report.elapsed_us.is_none());
}

#[test]
fn timing_is_reported_by_default() {
    let out = df(&["--format", "json", "numbers", "--kind", "euler", "--n", "4"]);
    let report: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report.elapsed_us.is_some());
    assert_eq!(report.numbers[0].value, "5");
}

#[test]
fn exit_codes() {
    // validation
    assert_eq!(json(&["approx", "--method", "bernoulli-basic", "--n", "7"]).1, 2);
    assert_eq!(df(&["digit", "--target", "tau", "--n", "3"]).status.code(), Some(2));
    assert_eq!(df(&["approx", "--method", "nope", "--n", "3"]).status.code(), Some(2));
    assert_eq!(df(&["digit", "--target", "pi", "--n", "3", "--base", "37"]).status.code(), Some(2));
    // uncertifiable output
    let (r, code) = json(&["approx", "--method", "pi-partition", "--n", "100", "--digits", "10"]);
    assert_eq!(code, 3);
    assert_eq!(r.error.unwrap().exit_code, 3);
    // caps
    assert_eq!(json(&["digit", "--target", "pi", "--n", "20001"]).1, 4);
    assert_eq!(json(&["--max-index", "50", "sweep", "--method", "euler-basic", "--n", "10:40:10"]).1, 4);
}

#[test]
fn numbers_print_exact_values() {
    let (r, _) = json(&["numbers", "--kind", "bernoulli", "--n", "12"]);
    assert_eq!(r.numbers[0].value, "-691/2730");
    let (r, _) = json(&["numbers", "--kind", "partition", "--n", "0:5"]);
    let v: Vec<&str> = r.numbers.iter().map(|n| n.value.as_str()).collect();
    assert_eq!(v, ["1", "1", "2", "3", "5", "7"]);
    let (r, _) = json(&["numbers", "--kind", "factorial", "--n", "20"]);
    assert_eq!(r.numbers[0].value, "2432902008176640000");
}

#[test]
fn cache_build_verify_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (r, code) = json(&["--cache-dir", d, "cache", "build", "--n", "200"]);
    assert_eq!(code, 0);
    assert_eq!(r.caches.len(), 3);
    let (r, code) = json(&["--cache-dir", d, "cache", "verify"]);
    assert_eq!(code, 0);
    assert!(r.caches.iter().all(|c| c.status == "valid"));

    // cached values are served and agree with recomputation
    let (cached, _) = json(&["--cache-dir", d, "numbers", "--kind", "bernoulli", "--n", "100"]);
    let (fresh, _) = json(&["numbers", "--kind", "bernoulli", "--n", "100"]);
    assert_eq!(cached.numbers, fresh.numbers);

    let path = dir.path().join("euler.dfcache");
    let text = std::fs::read_to_string(&path).unwrap().replacen("\n10 ", "\n10 1", 1);
    std::fs::write(&path, text).unwrap();
    let (r, code) = json(&["--cache-dir", d, "cache", "verify"]);
    assert_eq!(code, 5);
    let euler = r.caches.iter().find(|c| c.kind == "euler").unwrap();
    assert_eq!(euler.status, "invalid");

    // a corrupt file is skipped with a warning, not trusted
    let (r, code) = json(&["--cache-dir", d, "numbers", "--kind", "euler", "--n", "10"]);
    assert_eq!(code, 0);
    assert_eq!(r.numbers[0].value, "-50521");
    assert_eq!(r.warnings.len(), 1);

    let (r, code) = json(&["--cache-dir", d, "selftest", "--max-position", "30", "--sandwich-n", "30"]);
    assert_eq!(code, 0, "{:?}", r.checks);
    assert!(!r.warnings.is_empty());
}

#[test]
fn selftest_passes() {
    let (r, code) = json(&["selftest"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = r.checks.iter().map(|c| c.name.as_str()).collect();
    assert!(names.contains(&"embedded-constant"));
    assert!(names.contains(&"digit-agreement"));
    assert!(r.checks.iter().all(|c| c.passed));
}

#[test]
fn table_output_lists_columns() {
    let out = df(&["--no-timing", "digit", "--target", "pi", "--n", "0"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("target"));
    assert!(text.contains("pi      0"));
}
