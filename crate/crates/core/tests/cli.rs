use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn repnorm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_repnorm"))
        .args(args)
        .env_remove("REPNORM_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field(out: &str, key: &str) -> f64 {
    out.lines()
        .find_map(|l| l.strip_prefix(key))
        .unwrap_or_else(|| panic!("no {key} in {out}"))
        .trim()
        .parse()
        .unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn json_field(o: &Output, key: &str) -> f64 {
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    v[key].as_f64().unwrap()
}

#[test]
fn coef_examples() {
    let o = repnorm(&["coef", "--rep", "principal:0:-0.5+1i", "--m", "0", "--n", "0", "--x", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(field(&stdout(&o), "re"), 1.0);
    assert_eq!(field(&stdout(&o), "im"), 0.0);

    let o = repnorm(&["coef", "--rep", "discrete:2", "--m", "1", "--n", "1", "--x", "0.3"]);
    assert!((field(&stdout(&o), "re") - 0.7).abs() < 1e-14);

    let o = repnorm(&["coef", "--rep", "principal:0.5:-0.5", "--m", "0", "--n", "2", "--x", "0"]);
    assert_eq!(field(&stdout(&o), "abs"), 0.0);
}

#[test]
fn coef_oracle_agrees_with_closed_form() {
    let args = ["coef", "--rep", "complementary:-0.25", "--m", "1", "--n", "-4", "--t", "0.7"];
    let closed = field(&stdout(&repnorm(&args)), "re");
    let mut with_oracle = args.to_vec();
    with_oracle.push("--oracle");
    let o = repnorm(&with_oracle);
    assert!(stdout(&o).contains("oracle"));
    assert!((field(&stdout(&o), "re") - closed).abs() < 1e-10 * closed.abs());
}

#[test]
fn coef_rejects_invalid_input() {
    assert_eq!(repnorm(&["coef", "--rep", "complementary:0.3", "--m", "0", "--n", "0", "--x", "0"]).status.code(), Some(2));
    assert_eq!(repnorm(&["coef", "--rep", "discrete:2", "--m", "0", "--n", "1", "--x", "0.5"]).status.code(), Some(2));
    assert_eq!(repnorm(&["coef", "--rep", "discrete:2", "--m", "1", "--n", "1", "--x", "1.5"]).status.code(), Some(2));
}

#[test]
fn norm_scan_empty_is_header_only() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("scan.csv");
    let cfg = write(&dir, "cfg.json", r#"{"rep": "discrete:2", "n_values": []}"#);
    let o = repnorm(&["norm-scan", "--config", &cfg, "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(out).unwrap(), "n,pmin,x_argmax,pmax_proxy,q_s_half,err_est\n");
}

#[test]
fn norm_scan_is_deterministic_and_sorted() {
    let dir = TempDir::new().unwrap();
    let text = r#"{"rep": "discrete:3", "n_values": [64.5, 1.5, 16.5], "threads": 2}"#;
    let cfg = write(&dir, "cfg.json", text);
    let run = |name: &str| {
        let p = dir.path().join(name);
        assert_eq!(repnorm(&["norm-scan", "--config", &cfg, "--output", p.to_str().unwrap()]).status.code(), Some(0));
        std::fs::read(p).unwrap()
    };
    let (a, b) = (run("a.csv"), run("b.csv"));
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    let ns: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(ns, ["1.5", "16.5", "64.5"]);
}

#[test]
fn norm_scan_and_fit_recover_the_principal_exponent() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("scan.csv");
    let cfg = format!(
        r#"{{"rep": "principal:0:-0.5+1i", "m": 0, "n_values": {{"min": 16, "max": 2048}}, "epsilon": 0.5,
            "scan": {{"c_grid": 0.1, "refine_iters": 40, "t_max_pad": 6.0}}, "tolerances": {{}},
            "output_path": {:?}, "threads": 1}}"#,
        csv.to_str().unwrap()
    );
    let cfg = write(&dir, "cfg.json", &cfg);
    assert_eq!(repnorm(&["norm-scan", "--config", &cfg]).status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 9);
    let o = repnorm(&["fit", "--csv", csv.to_str().unwrap(), "--column", "pmin"]);
    assert_eq!(o.status.code(), Some(0));
    let alpha = json_field(&o, "alpha");
    assert!((-0.57..=-0.43).contains(&alpha), "alpha = {alpha}");
}

#[test]
fn norm_scan_rejects_bad_configs() {
    let dir = TempDir::new().unwrap();
    let typo = write(&dir, "typo.json", r#"{"rep": "discrete:2", "n_vals": [2]}"#);
    assert_eq!(repnorm(&["norm-scan", "--config", &typo]).status.code(), Some(2));
    assert_eq!(repnorm(&["norm-scan", "--config", "/nonexistent/cfg.json"]).status.code(), Some(2));
    let ok = write(&dir, "ok.json", r#"{"rep": "discrete:2", "n_values": []}"#);
    let o = Command::new(env!("CARGO_BIN_EXE_repnorm"))
        .args(["norm-scan", "--config", &ok, "--output", dir.path().join("x.csv").to_str().unwrap()])
        .env("REPNORM_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

fn synthetic_csv(dir: &TempDir, f: impl Fn(f64) -> f64) -> String {
    let mut text = String::from("n,v\n");
    for k in 4..12 {
        let n = (1u64 << k) as f64;
        text += &format!("{n},{:.17e}\n", f(n));
    }
    write(dir, "synthetic.csv", &text)
}

#[test]
fn fit_examples() {
    let dir = TempDir::new().unwrap();
    let p = synthetic_csv(&dir, |n| (1.0 + n).powf(-0.5));
    let o = repnorm(&["fit", "--csv", &p, "--column", "v"]);
    assert_eq!(o.status.code(), Some(0));
    assert!((json_field(&o, "alpha") + 0.5).abs() < 1e-12);
    assert_eq!(json_field(&o, "n_min"), 16.0);
    assert_eq!(json_field(&o, "n_max"), 2048.0);

    let p = synthetic_csv(&dir, |_| 2.5);
    let o = repnorm(&["fit", "--csv", &p, "--column", "v", "--with-log"]);
    assert!(json_field(&o, "alpha").abs() < 1e-10);
    assert!((json_field(&o, "amplitude") - 2.5).abs() < 1e-10);
}

#[test]
fn fit_exit_codes() {
    let dir = TempDir::new().unwrap();
    let p = synthetic_csv(&dir, |n| n);
    assert_eq!(repnorm(&["fit", "--csv", &p, "--column", "w"]).status.code(), Some(2));
    let short = write(&dir, "short.csv", "n,v\n16,1\n32,2\n");
    assert_eq!(repnorm(&["fit", "--csv", &short, "--column", "v"]).status.code(), Some(4));
    let neg = synthetic_csv(&dir, |_| -1.0);
    assert_eq!(repnorm(&["fit", "--csv", &neg, "--column", "v"]).status.code(), Some(4));
}

fn integral_rows(o: &Output) -> Vec<Vec<String>> {
    stdout(o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(String::from).collect())
        .collect()
}

#[test]
fn integral_examples() {
    let o = repnorm(&["integral", "--rep", "principal:0.5:-0.5", "--epsilon", "0.5", "--n", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = integral_rows(&o);
    let quad: f64 = rows[0][1].parse().unwrap();
    let closed: f64 = rows[0][3].parse().unwrap();
    assert!((quad - 0.5).abs() < 1e-10 && (closed - 0.5).abs() < 1e-14);

    let o = repnorm(&["integral", "--rep", "principal:0:-0.5+1i", "--epsilon", "0.25", "--n", "0,8,16,32,64"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = integral_rows(&o);
    assert_eq!(rows.len(), 5);
    for r in rows {
        let dev: f64 = r[5].parse().unwrap();
        assert!(dev <= 1e-6, "{r:?}");
    }

    let o = repnorm(&["integral", "--rep", "discrete:2", "--epsilon", "0.5", "--n", ""]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "n,quad_re,quad_im,series_re,series_im,rel_dev\n");
    assert_eq!(repnorm(&["integral", "--rep", "discrete:2", "--epsilon", "0", "--n", "1"]).status.code(), Some(2));
}

#[test]
fn constants_examples() {
    let o = repnorm(&["constants", "--family", "so(1,2)", "--family", "sl(4,R)", "--family", "su(1,3)"]);
    assert_eq!(o.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    let header = rdr.headers().unwrap().clone();
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(&rows[0][0], "so(1,2)");
    assert_eq!(&rows[0][col("c_g")], "1/2");
    assert_eq!(&rows[1][col("c_g")], "5");
    assert_eq!(&rows[2][col("threshold_generalized_verma")], "3/2");
    assert_eq!(repnorm(&["constants", "--family", "e8"]).status.code(), Some(2));
}

fn acceptance(dir: &TempDir, extra: &[&str]) -> (Output, String) {
    let report = dir.path().join("report.json");
    let mut args = vec!["acceptance", "--output", report.to_str().unwrap(), "--criteria", "C9,C10"];
    args.extend_from_slice(extra);
    let o = repnorm(&args);
    let text = if Path::new(&report).exists() {
        std::fs::read_to_string(&report).unwrap()
    } else {
        String::new()
    };
    (o, text)
}

#[test]
fn acceptance_exit_codes() {
    let dir = TempDir::new().unwrap();
    let (o, report) = acceptance(&dir, &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let records: Vec<serde_json::Value> = serde_json::from_str(&report).unwrap();
    assert_eq!(records.len(), 2);
    assert!(records.iter().all(|r| r["pass"] == true));
    assert!(stdout(&o).contains("2 passed, 0 failed"));

    let strict = write(&dir, "strict.json", r#"{"tolerances": {"faulhaber": 0.0}}"#);
    let (o, report) = acceptance(&dir, &["--config", &strict]);
    assert_eq!(o.status.code(), Some(1));
    assert!(report.contains("\"pass\": false"));

    let (o, _) = acceptance(&dir, &["--config", "/nonexistent/acceptance.json"]);
    assert_eq!(o.status.code(), Some(2));
    let typo = write(&dir, "typo.json", r#"{"tolerance": {}}"#);
    assert_eq!(acceptance(&dir, &["--config", &typo]).0.status.code(), Some(2));
}
