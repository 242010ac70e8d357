//! Command-line front end. Every subcommand returns an exit code instead of
//! panicking: 0 success, 1 failing acceptance criterion, 2 invalid input or
//! configuration, 3 convergence or scan failure, 4 fit failure.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::acceptance::{format_record, load_config, summary, AcceptanceConfig, ReportRecord, Suite};
use crate::error::{Error, Result};
use crate::group::CartanCoord;
use crate::integrals::{
    beta_measure, i_discrete, i_limit_closed_form, i_principal_quadrature, i_principal_series, integral_quadrature, IntegralValue,
};
use crate::norms::{fit_points, geometric_labels, pmin_scan, sobolev_multiplier, NormSample, ScanConfig, SobolevOrder};
use crate::reps::{coef, coef_oracle, KIndex, RepSpec, Sigma};
use crate::structure::{domination_threshold, mps_gap_bound, mps_gap_offset, structural_constant, LieType, SeriesKind};

/// Environment variable overriding the `threads` field of a configuration.
pub const THREADS_ENV: &str = "REPNORM_THREADS";

pub const CSV_HEADER: &str = "n,pmin,x_argmax,pmax_proxy,q_s_half,err_est";
pub const INTEGRAL_HEADER: &str = "n,quad_re,quad_im,series_re,series_im,rel_dev";

pub mod exit {
    pub const OK: i32 = 0;
    pub const CRITERION_FAILED: i32 = 1;
    pub const INVALID: i32 = 2;
    pub const CONVERGENCE: i32 = 3;
    pub const FIT: i32 = 4;
}

/// Exit code for an error escaping a subcommand.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Convergence { .. } | Error::Scan(_) => exit::CONVERGENCE,
        Error::Fit(_) => exit::FIT,
        _ => exit::INVALID,
    }
}

#[derive(Debug, Parser)]
#[command(name = "repnorm", version, about = "Matrix coefficients and Sobolev norms of SL(2,R) representations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one matrix coefficient at a Cartan element.
    Coef(CoefArgs),
    /// Minimal-norm scan over the labels of an experiment configuration.
    NormScan(NormScanArgs),
    /// Power-log fit of one column of a CSV file.
    Fit(FitArgs),
    /// Weighted integrals of matrix coefficients by two routes.
    Integral(IntegralArgs),
    /// Structural constants and thresholds as exact fractions.
    Constants(ConstantsArgs),
    /// Run the acceptance criteria and write a JSON report.
    Acceptance(AcceptanceArgs),
}

#[derive(Debug, Args)]
pub struct CoefArgs {
    /// e.g. principal:0:-0.5+1i, complementary:-0.25, discrete:2
    #[arg(long)]
    pub rep: RepSpec,
    #[arg(long, allow_hyphen_values = true)]
    pub m: KIndex,
    #[arg(long, allow_hyphen_values = true)]
    pub n: KIndex,
    #[arg(long, conflicts_with = "t", required_unless_present = "t")]
    pub x: Option<f64>,
    #[arg(long)]
    pub t: Option<f64>,
    /// Evaluate by circle quadrature instead of the closed form.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Args)]
pub struct NormScanArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Overrides `output_path` of the configuration.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[arg(long)]
    pub csv: PathBuf,
    #[arg(long)]
    pub column: String,
    /// Column holding the labels.
    #[arg(long, default_value = "n")]
    pub n_column: String,
    /// Include the `ln ln(e + n)` term.
    #[arg(long)]
    pub with_log: bool,
}

#[derive(Debug, Args)]
pub struct IntegralArgs {
    #[arg(long)]
    pub rep: RepSpec,
    #[arg(long)]
    pub epsilon: f64,
    /// Comma-separated labels; may be empty.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub n: String,
    /// Generating label; defaults to the lowest K-type.
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<KIndex>,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConstantsArgs {
    /// Repeatable, e.g. --family 'so(1,2)' --family 'sl(4,R)'.
    #[arg(long = "family", required = true)]
    pub families: Vec<String>,
    /// Constant `c` of the gap bound; adds an `mps_bound` column with `--r`.
    #[arg(long, requires = "r")]
    pub c: Option<f64>,
    #[arg(long, requires = "c")]
    pub r: Option<f64>,
}

#[derive(Debug, Args)]
pub struct AcceptanceArgs {
    /// JSON configuration; defaults apply when omitted.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Overrides `output_path` of the configuration.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Comma-separated subset of criteria, e.g. C9,C10.
    #[arg(long, value_delimiter = ',')]
    pub criteria: Vec<String>,
}

/// Labels of an experiment: an explicit list or the geometric range
/// `min, 2 min, 4 min, ..., <= max`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NValues {
    List(Vec<KIndex>),
    Geometric(GeometricRange),
}

impl Default for NValues {
    fn default() -> Self {
        NValues::List(Vec::new())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometricRange {
    pub min: i64,
    pub max: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub rep: RepSpec,
    /// Generating label; defaults to the lowest K-type.
    #[serde(default)]
    pub m: Option<KIndex>,
    #[serde(default)]
    pub n_values: NValues,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    #[serde(default)]
    pub scan: ScanConfig,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    #[serde(default = "default_scan_output")]
    pub output_path: String,
    #[serde(default)]
    pub threads: Option<usize>,
}

fn default_epsilon() -> f64 {
    0.5
}

fn default_scan_output() -> String {
    "norm_scan.csv".into()
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn generator(&self) -> KIndex {
        self.m.unwrap_or_else(|| self.rep.lowest())
    }

    /// The labels in configuration order.
    pub fn labels(&self) -> Vec<KIndex> {
        match &self.n_values {
            NValues::List(v) => v.clone(),
            NValues::Geometric(g) => geometric_labels(&self.rep, g.min, g.max),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.rep.validate()?;
        self.scan.validate()?;
        beta_measure(self.epsilon)?;
        let m = self.generator();
        if !self.rep.contains(m) {
            return Err(Error::Config(format!("m = {m} is not a basis label of {}", self.rep)));
        }
        if let NValues::Geometric(g) = self.n_values {
            if g.min < 1 || g.max < g.min {
                return Err(Error::Config(format!("geometric range needs 1 <= min <= max, got {g:?}")));
            }
        }
        if let Some(n) = self.labels().into_iter().find(|n| !self.rep.contains(*n)) {
            return Err(Error::Config(format!("n = {n} is not a basis label of {}", self.rep)));
        }
        if let Some((k, v)) = self.tolerances.iter().find(|(_, v)| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::Config(format!("tolerance {k} must be finite and non-negative, got {v}")));
        }
        if self.threads == Some(0) {
            return Err(Error::Config("threads must be at least 1".into()));
        }
        Ok(())
    }
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

/// Worker pool sized by `REPNORM_THREADS`, then the configuration, then the
/// rayon default.
pub fn thread_pool(configured: Option<usize>) -> Result<rayon::ThreadPool> {
    let from_env = match std::env::var(THREADS_ENV) {
        Ok(s) => Some(
            s.trim()
                .parse::<usize>()
                .ok()
                .filter(|&t| t > 0)
                .ok_or_else(|| Error::Config(format!("{THREADS_ENV} must be a positive integer, got {s:?}")))?,
        ),
        Err(_) => None,
    };
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(t) = from_env.or(configured) {
        b = b.num_threads(t);
    }
    b.build().map_err(|e| Error::Config(e.to_string()))
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Parses the arguments and runs the subcommand, returning the exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { exit::INVALID } else { exit::OK };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn run(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Coef(a) => cmd_coef(&a),
        Command::NormScan(a) => cmd_norm_scan(&a),
        Command::Fit(a) => cmd_fit(&a),
        Command::Integral(a) => cmd_integral(&a),
        Command::Constants(a) => cmd_constants(&a),
        Command::Acceptance(a) => cmd_acceptance(&a),
    }
}

pub fn cmd_coef(a: &CoefArgs) -> Result<i32> {
    let c = match (a.x, a.t) {
        (Some(x), _) => CartanCoord::from_x(x)?,
        (None, Some(t)) => CartanCoord::from_t(t)?,
        (None, None) => return Err(Error::Config("one of --x or --t is required".into())),
    };
    let (value, method, err_est) = if a.oracle {
        let reach = KIndex::from_twice(a.n.twice().abs().max(a.m.twice().abs()));
        let col = coef_oracle(&a.rep, a.m, &c, reach)?;
        let o = col
            .get(&a.n)
            .ok_or_else(|| Error::domain(format!("{} is not a basis label of {}", a.n, a.rep)))?;
        (o.value, "oracle".to_string(), o.floor)
    } else {
        let v = coef(&a.rep, a.n, a.m, &c)?;
        (v.value, v.method.to_string(), v.err_est)
    };
    println!("re       {}", num(value.re));
    println!("im       {}", num(value.im));
    println!("abs      {}", num(value.norm()));
    println!("method   {method}");
    println!("err_est  {}", num(err_est));
    Ok(exit::OK)
}

/// One CSV row of a scan.
pub fn scan_row(rep: &RepSpec, s: &NormSample) -> Result<String> {
    let pmax = if rep.is_unitary() { 1.0 / s.value } else { f64::NAN };
    let q = sobolev_multiplier(s.n.value(), SobolevOrder::new(0.5)?);
    Ok(format!(
        "{},{},{},{},{},{}",
        s.n,
        num(s.value),
        num(s.x_argmax),
        num(pmax),
        num(q),
        num(s.err_est)
    ))
}

/// Runs the scans of `cfg` and renders the CSV; the flag reports whether
/// any label failed.
pub fn norm_scan_csv(cfg: &ExperimentConfig) -> Result<(String, bool)> {
    cfg.validate()?;
    let m = cfg.generator();
    let mut labels = cfg.labels();
    labels.sort();
    let pool = thread_pool(cfg.threads)?;
    let results: Vec<(KIndex, Result<NormSample>)> = pool.install(|| {
        labels
            .par_iter()
            .map(|&n| (n, pmin_scan(&cfg.rep, m, n, &cfg.scan)))
            .collect()
    });
    let mut out = String::new();
    let mut trailer = String::new();
    writeln!(out, "{CSV_HEADER}").expect("writing to a String");
    for (n, r) in &results {
        match r {
            Ok(s) => writeln!(out, "{}", scan_row(&cfg.rep, s)?),
            Err(e) => writeln!(trailer, "# ERROR {n} {e}"),
        }
        .expect("writing to a String");
    }
    let failed = !trailer.is_empty();
    out.push_str(&trailer);
    Ok((out, failed))
}

pub fn cmd_norm_scan(a: &NormScanArgs) -> Result<i32> {
    let cfg = ExperimentConfig::from_json(&read_text(&a.config)?)?;
    let path = a.output.clone().unwrap_or_else(|| PathBuf::from(&cfg.output_path));
    let (csv, failed) = norm_scan_csv(&cfg)?;
    write_text(&path, &csv)?;
    if failed {
        eprintln!("some labels failed; see the # ERROR lines in {}", path.display());
        return Ok(exit::CONVERGENCE);
    }
    Ok(exit::OK)
}

/// `(|n|, value)` pairs of a CSV column; `#` lines are comments.
pub fn read_column(text: &str, n_column: &str, column: &str) -> Result<Vec<(f64, f64)>> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let headers = rdr.headers().map_err(|e| Error::Config(e.to_string()))?.clone();
    let find = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Config(format!("no column named '{name}'")))
    };
    let (ni, vi) = (find(n_column)?, find(column)?);
    let mut out = Vec::new();
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Error::Config(e.to_string()))?;
        let parse = |i: usize| -> Result<f64> {
            let s = rec.get(i).unwrap_or("");
            s.trim()
                .parse()
                .map_err(|_| Error::Config(format!("row {}: cannot parse {s:?}", line + 1)))
        };
        out.push((parse(ni)?.abs(), parse(vi)?));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitReport {
    pub alpha: f64,
    pub beta: f64,
    pub amplitude: f64,
    pub residual_rms: f64,
    pub n_min: f64,
    pub n_max: f64,
}

pub fn fit_csv(text: &str, n_column: &str, column: &str, with_log: bool) -> Result<FitReport> {
    let points = read_column(text, n_column, column)?;
    let f = fit_points(&points, with_log).map_err(|e| match e {
        Error::Precondition(msg) => Error::Fit(msg),
        other => other,
    })?;
    Ok(FitReport {
        alpha: f.alpha,
        beta: f.beta,
        amplitude: f.amplitude,
        residual_rms: f.residual_rms,
        n_min: f.n_range.0,
        n_max: f.n_range.1,
    })
}

pub fn cmd_fit(a: &FitArgs) -> Result<i32> {
    let r = fit_csv(&read_text(&a.csv)?, &a.n_column, &a.column, a.with_log)?;
    println!("{}", serde_json::to_string(&r).expect("plain struct serializes"));
    Ok(exit::OK)
}

/// Quadrature plus, where one exists, an independent second route.
fn integral_pair(rep: &RepSpec, n: KIndex, m: KIndex, epsilon: f64, tol: f64) -> Result<(IntegralValue, Option<IntegralValue>)> {
    let beta = beta_measure(epsilon)?;
    match *rep {
        RepSpec::Principal { sigma, lambda } if m == KIndex::new(0) => {
            let ni = n
                .as_integer()
                .ok_or_else(|| Error::domain(format!("{n} is not a basis label of {rep}")))?;
            let quad = i_principal_quadrature(sigma, lambda, ni, &beta, tol)?;
            // At sigma = 1/2, lambda = -1/2 the series collapses to a Beta value.
            let series = if sigma == Sigma::Half && lambda == Complex64::new(-0.5, 0.0) {
                Some(i_limit_closed_form(ni, &beta)?)
            } else if ni >= 0 {
                Some(i_principal_series(sigma, lambda, ni, &beta, tol)?)
            } else {
                None
            };
            Ok((quad, series))
        }
        RepSpec::Discrete { ell } => {
            let quad = integral_quadrature(rep, n, m, &beta, tol)?;
            Ok((quad, Some(i_discrete(ell, m, n, &beta)?)))
        }
        _ => Ok((integral_quadrature(rep, n, m, &beta, tol)?, None)),
    }
}

/// Comma-separated labels; blank entries are skipped.
pub fn parse_labels(s: &str) -> Result<Vec<KIndex>> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(str::parse).collect()
}

fn rel_dev(a: Complex64, b: Complex64) -> f64 {
    let d = (a - b).norm();
    if d == 0.0 {
        0.0
    } else {
        d / a.norm().max(b.norm())
    }
}

/// Integral table for `labels`; the flag reports whether any label failed.
pub fn integral_csv(rep: &RepSpec, m: KIndex, labels: &[KIndex], epsilon: f64, tol: f64) -> Result<(String, bool)> {
    beta_measure(epsilon)?;
    rep.validate()?;
    if !rep.contains(m) {
        return Err(Error::domain(format!("m = {m} is not a basis label of {rep}")));
    }
    let mut labels = labels.to_vec();
    labels.sort();
    let rows: Vec<(KIndex, Result<(IntegralValue, Option<IntegralValue>)>)> = labels
        .par_iter()
        .map(|&n| (n, integral_pair(rep, n, m, epsilon, tol)))
        .collect();
    let mut out = format!("{INTEGRAL_HEADER}\n");
    let mut trailer = String::new();
    for (n, r) in rows {
        match r {
            Ok((q, Some(s))) => writeln!(
                out,
                "{n},{},{},{},{},{}",
                num(q.value.re),
                num(q.value.im),
                num(s.value.re),
                num(s.value.im),
                num(rel_dev(q.value, s.value))
            ),
            Ok((q, None)) => writeln!(out, "{n},{},{},,,", num(q.value.re), num(q.value.im)),
            Err(e) if exit_code(&e) == exit::INVALID => return Err(e),
            Err(e) => writeln!(trailer, "# ERROR {n} {e}"),
        }
        .expect("writing to a String");
    }
    let failed = !trailer.is_empty();
    out.push_str(&trailer);
    Ok((out, failed))
}

pub fn cmd_integral(a: &IntegralArgs) -> Result<i32> {
    let m = a.m.unwrap_or_else(|| a.rep.lowest());
    let pool = thread_pool(None)?;
    let labels = parse_labels(&a.n)?;
    let (csv, failed) = pool.install(|| integral_csv(&a.rep, m, &labels, a.epsilon, a.tol))?;
    match &a.output {
        Some(p) => write_text(p, &csv)?,
        None => print!("{csv}"),
    }
    Ok(if failed { exit::CONVERGENCE } else { exit::OK })
}

/// CSV table of the exact constants; family names are quoted since they
/// contain commas.
pub fn constants_table(families: &[String], c_r: Option<(f64, f64)>) -> Result<String> {
    let types: Vec<LieType> = families.iter().map(|f| f.parse()).collect::<Result<_>>()?;
    let kinds = [SeriesKind::PrincipalMps, SeriesKind::GeneralizedVerma, SeriesKind::OtherDiscrete];
    let mut header: Vec<String> = ["family", "rank_k", "c_g", "mps_offset"].map(String::from).to_vec();
    header.extend(kinds.iter().map(|k| format!("threshold_{k}")));
    if c_r.is_some() {
        header.push("mps_bound".into());
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(&header).map_err(csv_err)?;
    for t in &types {
        let mut row = vec![
            t.to_string(),
            t.rank_k().to_string(),
            structural_constant(t).to_string(),
            mps_gap_offset(t).to_string(),
        ];
        row.extend(kinds.iter().map(|&k| match domination_threshold(t, k) {
            Ok(v) => v.to_string(),
            Err(_) => "-".into(),
        }));
        if let Some((c, r)) = c_r {
            row.push(num(mps_gap_bound(t, c, r)?));
        }
        w.write_record(&row).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn cmd_constants(a: &ConstantsArgs) -> Result<i32> {
    print!("{}", constants_table(&a.families, a.c.zip(a.r))?);
    Ok(exit::OK)
}

fn load_acceptance(path: Option<&Path>) -> Result<AcceptanceConfig> {
    match path {
        Some(p) => load_config(&read_text(p)?),
        None => Ok(AcceptanceConfig::default()),
    }
}

pub fn cmd_acceptance(a: &AcceptanceArgs) -> Result<i32> {
    let cfg = load_acceptance(a.config.as_deref())?;
    let known: Vec<&str> = Suite::criteria().into_iter().map(|(id, _)| id).collect();
    if let Some(bad) = a.criteria.iter().find(|c| !known.contains(&c.as_str())) {
        return Err(Error::Config(format!("unknown criterion '{bad}'")));
    }
    let ids: Vec<&str> = if a.criteria.is_empty() {
        known
    } else {
        known.into_iter().filter(|id| a.criteria.iter().any(|c| c == id)).collect()
    };
    let path = a.output.clone().unwrap_or_else(|| PathBuf::from(&cfg.output_path));
    let pool = thread_pool(cfg.threads)?;
    let suite = Suite::new(cfg);
    let mut records: Vec<ReportRecord> = Vec::with_capacity(ids.len());
    for id in ids {
        let r = pool.install(|| suite.run(id))?;
        println!("{}", format_record(&r));
        let _ = std::io::stdout().flush();
        records.push(r);
    }
    let json = serde_json::to_string_pretty(&records).expect("records serialize");
    write_text(&path, &(json + "\n"))?;

    let counts = summary(&records);
    println!();
    println!("{:<6} {:<6} {:>10}", "id", "result", "ms");
    for r in &records {
        println!("{:<6} {:<6} {:>10}", r.criterion_id, if r.pass { "PASS" } else { "FAIL" }, r.runtime_ms);
    }
    println!("{} passed, {} failed; report written to {}", counts["pass"], counts["fail"], path.display());
    Ok(if counts["fail"] == 0 { exit::OK } else { exit::CRITERION_FAILED })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_rejects_unknown_fields_and_bad_labels() {
        let ok = ExperimentConfig::from_json(r#"{"rep": "principal:0:-0.5+1i", "n_values": {"min": 16, "max": 64}}"#)
            .unwrap();
        assert_eq!(ok.labels(), vec![KIndex::new(16), KIndex::new(32), KIndex::new(64)]);
        assert_eq!(ok.generator(), KIndex::new(0));
        for bad in [
            r#"{"rep": "discrete:2", "n_value": [1]}"#,
            r#"{"rep": "discrete:2", "n_values": [0]}"#,
            r#"{"rep": "discrete:2", "epsilon": 0}"#,
            r#"{"rep": "discrete:2", "scan": {"c_grid": 0.1, "pad": 1}}"#,
            r#"{"rep": "discrete:2", "threads": 0}"#,
            r#"{"rep": "complementary:0.3"}"#,
        ] {
            assert!(ExperimentConfig::from_json(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn exit_codes_follow_error_kind() {
        assert_eq!(exit_code(&Error::Fit("x".into())), exit::FIT);
        assert_eq!(exit_code(&Error::Scan("x".into())), exit::CONVERGENCE);
        assert_eq!(exit_code(&Error::convergence("x", 0.0, 1.0)), exit::CONVERGENCE);
        assert_eq!(exit_code(&Error::Config("x".into())), exit::INVALID);
    }

    #[test]
    fn empty_scan_is_header_only() {
        let cfg = ExperimentConfig::from_json(r#"{"rep": "discrete:2", "n_values": []}"#).unwrap();
        assert_eq!(norm_scan_csv(&cfg).unwrap(), (format!("{CSV_HEADER}\n"), false));
    }

    #[test]
    fn fit_reads_named_columns() {
        let mut text = String::from("n,v,c\n# comment\n");
        for n in [16.0_f64, 32.0, 64.0, 128.0, 256.0, 512.0] {
            text += &format!("{n},{},3\n", (1.0 + n).powf(-0.5));
        }
        let r = fit_csv(&text, "n", "v", false).unwrap();
        assert!((r.alpha + 0.5).abs() < 1e-12);
        assert_eq!((r.n_min, r.n_max), (16.0, 512.0));
        assert!(fit_csv(&text, "n", "c", false).unwrap().alpha.abs() < 1e-12);
        assert!(matches!(fit_csv(&text, "n", "missing", false), Err(Error::Config(_))));
        assert!(matches!(fit_csv("n,v\n16,1\n", "n", "v", false), Err(Error::Fit(_))));
    }

    #[test]
    fn label_lists_may_be_empty() {
        assert!(parse_labels("").unwrap().is_empty());
        assert_eq!(parse_labels("0, -3,2.5").unwrap(), vec![KIndex::new(0), KIndex::new(-3), KIndex::from_twice(5)]);
        assert!(parse_labels("x").is_err());
    }

    #[test]
    fn constants_table_uses_exact_fractions() {
        let t = constants_table(&["so(1,2)".into(), "sl(4,R)".into(), "su(1,3)".into()], None).unwrap();
        let rows: Vec<&str> = t.lines().collect();
        assert!(rows[1].starts_with("\"so(1,2)\",1,1/2,"));
        assert!(rows[2].contains(",5,"));
        assert!(rows[3].ends_with(",5/2,3/2,2"));
        assert!(constants_table(&["e8".into()], None).is_err());
    }
}
