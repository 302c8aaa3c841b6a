use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_specmoment"))
        .args(args)
        .env("SPECMOMENT_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn moment_sinc_plain() {
    let o = run(&["moment", "--model", "exponential", "--function", "sinc", "--band", "0.5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("value: 0.4636476"), "{out}");
    assert!(out.contains("plan: route=fast_path"), "{out}");
    assert!(out.contains("bound: "), "{out}");
}

#[test]
fn validate_strip_rejection_cites_bound() {
    let o = run(&["validate", "--model", "strip:tau0=1", "--function", "exp:t=2.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("2 tau0"), "{}", stderr(&o));
}

#[test]
fn validate_accepts_strip_band() {
    let o = run(&["validate", "--model", "strip:tau0=1", "--function", "exp:t=1.5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("strip_band_limited"));
}

#[test]
fn converge_csv_decreases() {
    let o = run(&[
        "converge", "--model", "exponential", "--function", "exp:t=0.5", "--tau", "0.75", "--n-list", "8,16,32,64",
        "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("n_nodes,value,abs_error,apriori_bound,route"));
    let errors: Vec<f64> = lines.map(|l| l.split(',').nth(2).unwrap().parse().unwrap()).collect();
    assert_eq!(errors.len(), 4);
    for w in errors.windows(2) {
        assert!(w[1] < w[0] || w[0] < 1e-13, "{errors:?}");
    }
    assert!(stderr(&o).contains("plan: route=fast_path"));
}

#[test]
fn output_is_byte_stable() {
    let args = ["spectrum", "--model", "gaussian", "--function", "sinc:band=0.5", "--grid", "-1:1:0.25", "--format", "csv"];
    let a = run(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_specmoment"))
        .args(args)
        .env("SPECMOMENT_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 10);
}

#[test]
fn csv_uses_seventeen_digits() {
    let o = run(&["moment", "--model", "exponential", "--function", "exp:t=0.5", "--format", "csv"]);
    let out = stdout(&o);
    let row = out.lines().nth(1).unwrap();
    let first = row.split(',').next().unwrap();
    let mantissa = first.split('e').next().unwrap().replace(['.', '-'], "");
    assert_eq!(mantissa.len(), 17, "{first}");
}

#[test]
fn reconstruct_free_particle() {
    let o = run(&["reconstruct", "--model", "free_particle:beta=2,hbar=1", "--times", "0,1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v.as_array().unwrap();
    let c0 = rows[0]["value_re"].as_f64().unwrap();
    let c1 = rows[1]["value_re"].as_f64().unwrap();
    assert!((c0 - 1.0 / (4.0 * std::f64::consts::PI)).abs() < 1e-12);
    assert!((c1 - 0.028_134_884_879_909_563).abs() < 1e-8);
    assert_eq!(rows[1]["route"], "branch_cut_analytic");
}

#[test]
fn spectrum_sigma_too_small() {
    let o = run(&["spectrum", "--model", "strip:tau0=1", "--function", "sinc:band=1", "--grid", "0:1:0.5", "--sigma", "0.4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("sigma > 0.5"), "{}", stderr(&o));
}

#[test]
fn config_file_supplies_fields() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, r#"{{"model": {{"name": "exponential"}}, "function": {{"name": "sinc", "band": 0.5}}, "format": "json"}}"#).unwrap();
    let o = run(&["moment", "--config", file.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["value_re"].as_f64().unwrap() - 0.5f64.atan()).abs() < 1e-10);
    assert_eq!(v["plan"]["route"], "fast_path");
}

#[test]
fn config_rejects_unknown_fields() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, r#"{{"model": "exponential", "colour": 3}}"#).unwrap();
    let o = run(&["validate", "--config", file.path().to_str().unwrap(), "--function", "exp:t=0.1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn parse_errors_exit_one() {
    assert_eq!(run(&["moment", "--model", "exponential", "--bogus", "1"]).status.code(), Some(1));
    assert_eq!(run(&["moment", "--model", "nope", "--function", "exp:t=1"]).status.code(), Some(1));
    assert_eq!(run(&["moment", "--model", "exponential", "--function", "sinc"]).status.code(), Some(1));
    assert_eq!(run(&["moment", "--model", "exponential"]).status.code(), Some(1));
}

#[test]
fn converge_needs_fast_path() {
    let o = run(&["converge", "--model", "strip:tau0=1", "--function", "exp:t=1.5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_thread_count() {
    let o = Command::new(env!("CARGO_BIN_EXE_specmoment"))
        .args(["validate", "--model", "exponential", "--function", "exp:t=0.1"])
        .env("SPECMOMENT_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}
