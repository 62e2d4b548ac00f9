use fsol_cli::args::{parse_alpha, parse_point};
use fsol_cli::*;
use serde_json::Value;
use std::process::{Command, Output};

fn fsol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fsol")).args(args).output().expect("binary runs")
}

fn fsol_env(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fsol")).args(args).env("FSOL_THREADS", threads).output().expect("binary runs")
}

fn report_of(out: &Output) -> Report {
    parse_report(std::str::from_utf8(&out.stdout).unwrap()).expect("stdout is a report")
}

fn find<'a>(r: &'a Report, quantity: &str) -> &'a Record {
    r.results.iter().find(|x| x.quantity == quantity).unwrap_or_else(|| panic!("no {quantity} record"))
}

fn sample_record(i: usize) -> Record {
    Record::new("invert", "partial_sum", 1.0 / (i as f64 + 3.0), -0.1 * i as f64)
        .param("K", serde_json::json!(i))
        .err(1e-3 / (i as f64 + 1.0))
        .note(format!("row {i}, with a comma"))
}

#[test]
fn empty_result_list_is_an_empty_array() {
    let mut buf = Vec::new();
    write_report(&mut buf, None, &[], Format::Json).unwrap();
    let s = String::from_utf8(buf).unwrap();
    assert_eq!(s.trim(), "[]");
    assert_eq!(serde_json::from_str::<Value>(&s).unwrap(), Value::Array(vec![]));
}

#[test]
fn one_result_round_trips_byte_identically() {
    let out = fsol(&["constants", "--n", "2", "--alpha", "0.5,0.25", "--j", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rep = parse_report(&text).unwrap();
    assert_eq!(to_json_string(&rep), text);
    rep.results.truncate(1);
    let one = to_json_string(&rep);
    assert_eq!(to_json_string(&parse_report(&one).unwrap()), one);
    // untyped route: key order and number text survive as well
    let v: Value = serde_json::from_str(&one).unwrap();
    assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", one);
}

#[test]
fn floats_carry_seventeen_significant_digits() {
    let x = 0.1f64 + 0.2;
    let s = format_float(x);
    assert_eq!(s, "3.0000000000000004e-1");
    assert_eq!(s.parse::<f64>().unwrap(), x);
    assert_eq!(format_float(1.0), "1.0000000000000000e+0");
    assert_eq!(format_float(-2.5e-300), "-2.5000000000000000e-300");
}

#[test]
fn nan_is_null_and_survives_a_round_trip() {
    let rec = Record::new("pair-phi", "phi_literal", f64::NAN, 1.0);
    let mut buf = Vec::new();
    write_report(&mut buf, None, std::slice::from_ref(&rec), Format::Json).unwrap();
    let s = String::from_utf8(buf).unwrap();
    assert!(s.contains("\"value_re\": null"), "{s}");
    let back: Vec<Record> = serde_json::from_str(&s).unwrap();
    assert!(back[0].value_re.is_nan());
    assert_eq!(back[0].value_im, 1.0);
}

#[test]
fn csv_sweep_of_fifty_rows() {
    let rows: Vec<Record> = (0..50).map(sample_record).collect();
    let mut buf = Vec::new();
    write_report(&mut buf, None, &rows, Format::Csv).unwrap();
    let s = String::from_utf8(buf).unwrap();
    assert!(s.starts_with('#'));
    assert!(s.contains("# columns:"));
    let mut rd = csv::ReaderBuilder::new().comment(Some(b'#')).has_headers(false).from_reader(s.as_bytes());
    let all: Vec<csv::StringRecord> = rd.records().map(|r| r.unwrap()).collect();
    assert_eq!(all.len(), 51);
    assert_eq!(all[0].iter().collect::<Vec<_>>(), report::CSV_COLUMNS.to_vec());
    assert_eq!(all[7].get(5).unwrap().parse::<f64>().unwrap(), rows[6].value_re);
    assert_eq!(all[7].get(9).unwrap(), "row 6, with a comma");
}

#[test]
fn constants_example() {
    let out = fsol(&["constants", "--n", "2", "--alpha", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report_of(&out);
    let c = find(&r, "c_alpha");
    assert!((c.value_re - 1.0).abs() < 1e-12 && c.value_im == 0.0, "{c:?}");
    assert_eq!(r.manifest.command, "constants");
    assert_eq!(r.manifest.params["n"], serde_json::json!(2));
    assert!(r.results.iter().all(|x| x.passed.is_none()));
}

#[test]
fn verify_fsol_example_passes() {
    let out = fsol(&["verify-fsol", "--p", "1", "--q", "1", "--alpha", "0.7", "--tol", "1e-2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report_of(&out);
    let res = find(&r, "residual");
    assert!(res.value_re <= 1e-2);
    assert_eq!(res.passed, Some(true));
    // both Phi's are reported
    assert!(find(&r, "literal_pairing").value_re.is_finite());
    assert!(find(&r, "literal_residual").value_re > 0.1);
}

#[test]
fn invert_example_gives_partial_sums() {
    let out = fsol(&["invert", "--p", "1", "--q", "1", "--K", "12", "--Lambda", "12", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let s = String::from_utf8(out.stdout).unwrap();
    let mut rd = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(s.as_bytes());
    let rows: Vec<csv::StringRecord> = rd.records().map(|r| r.unwrap()).collect();
    let sums: Vec<f64> = rows.iter().filter(|r| &r[1] == "partial_sum").map(|r| r[5].parse().unwrap()).collect();
    assert_eq!(sums.len(), 12);
    for w in sums.windows(2) {
        assert!(w[1] > w[0] && w[1] < 1.0, "{sums:?}");
    }
    // the increments shrink, so the partial sums approach f(e) = 1 from below
    let d: Vec<f64> = sums.windows(2).map(|w| w[1] - w[0]).collect();
    assert!(d.windows(2).all(|w| w[1] < w[0]), "{d:?}");
}

#[test]
fn exit_status_matches_passed_field() {
    let out = fsol(&["constants", "--n", "2", "--tol", "1e-8"]);
    let r = report_of(&out);
    assert_eq!(find(&r, "abel_constant").passed, Some(false));
    assert_eq!(out.status.code(), Some(2));
    let out = fsol(&["constants", "--n", "2", "--tol", "1"]);
    let r = report_of(&out);
    assert!(r.results.iter().all(|x| x.passed != Some(false)));
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_with_one() {
    for args in [
        vec!["bogus"],
        vec!["constants", "--alpha", "1,2,3"],
        vec!["constants", "--n", "x"],
        vec!["invert", "--a", "-1"],
        vec!["invert", "--K", "0"],
        vec!["ntransform", "--t", "0,0"],
        vec!["constants", "--format", "xml"],
    ] {
        let out = fsol(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(fsol(&["--help"]).status.code(), Some(0));
    assert_eq!(fsol(&["--version"]).status.code(), Some(0));
    assert_eq!(fsol_env(&["constants"], "0").status.code(), Some(1));
    assert_eq!(fsol_env(&["constants"], "many").status.code(), Some(1));
}

#[test]
fn usage_error_names_the_flag() {
    let out = fsol(&["invert", "--Lambda", "-3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--Lambda"));
    let out = fsol(&["verify-fsol", "--alpha", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("DomainError"));
}

#[test]
fn results_do_not_depend_on_the_thread_count() {
    let args = ["invert", "--p", "2", "--q", "1", "--K", "6"];
    let a = report_of(&fsol_env(&args, "1"));
    let b = report_of(&fsol_env(&args, "3"));
    let c = report_of(&fsol_env(&args, "3"));
    assert_eq!(a.manifest.threads, 1);
    assert_eq!(b.manifest.threads, 3);
    let bytes = |r: &Report| serde_json::to_string(&r.results).unwrap();
    assert_eq!(bytes(&a), bytes(&b));
    assert_eq!(bytes(&b), bytes(&c));
    assert_eq!(a.manifest.params, b.manifest.params);
}

#[test]
fn out_flag_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let out = fsol(&["constants", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r = parse_report(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r.manifest.command, "constants");
    let bad = dir.path().join("missing").join("c.json");
    let out = fsol(&["constants", "--out", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn manifest_carries_the_full_parameter_set() {
    let r = report_of(&fsol(&["invert", "--K", "3", "--grid", "coarse", "--tol", "0.5"]));
    let keys: Vec<&str> = r.manifest.params.keys().map(|k| k.as_str()).collect();
    for k in ["p", "q", "field", "alpha_re", "alpha_im", "K", "Lambda", "grid", "tol"] {
        assert!(keys.contains(&k), "{k} missing from {keys:?}");
    }
    assert_eq!(r.manifest.params["grid"], serde_json::json!("coarse"));
    assert_eq!(r.manifest.version, env!("CARGO_PKG_VERSION"));
    assert_eq!(r.manifest.stage_errors.len(), r.results.len());
}

#[test]
fn resonant_alpha_runs_in_relative_mode() {
    let out = fsol(&["verify-fsol", "--alpha", "0", "--tol", "1e-2"]);
    assert_eq!(out.status.code(), Some(2));
    let r = report_of(&out);
    let res = find(&r, "residual");
    assert!((res.value_re - 0.282094791773878).abs() < 1e-9, "{res:?}");
    assert!(find(&r, "relative_residual").value_re < 1e-9);
    assert!(find(&r, "literal_pairing").value_re.is_nan());
}

#[test]
fn alpha_and_point_parsing() {
    assert_eq!(parse_alpha("0.7").unwrap(), num_complex::Complex64::new(0.7, 0.0));
    assert_eq!(parse_alpha("-0.5,0.3").unwrap(), num_complex::Complex64::new(-0.5, 0.3));
    assert_eq!(parse_alpha(" 1 , -2 ").unwrap(), num_complex::Complex64::new(1.0, -2.0));
    assert!(parse_alpha("").is_err());
    assert!(parse_alpha("nan").is_err());
    assert!(parse_alpha("1,2,3").is_err());
    assert_eq!(parse_point("0.1,-0.2,3").unwrap().0, vec![0.1, -0.2, 3.0]);
    let out = fsol(&["constants", "--n", "3", "--alpha", "-0.5,0.3", "--j", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report_of(&out);
    assert_eq!(r.manifest.params["alpha_re"].to_string(), "-5.0000000000000000e-1");
}
