//! Command implementations behind the `apd` binary.
//!
//! Each command returns an [`OutputRecord`] plus a human-readable rendering;
//! `main` decides which one to print. Nothing is written to stdout until a
//! command has fully succeeded.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use apd_score::apd::{self, ApdParams};
use apd_score::score::{fisher_blocks, run_test, LocationScale, NullSpec};
use apd_score::simulate::{replicate_rng, run_study_with_workers, StudyConfig, StudyReport};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

pub const SCHEMA_VERSION: &str = "1";

/// Column names of the `tables` output, in order.
pub const TABLE_HEADER: [&str; 9] = [
    "lambda",
    "j_theta1_theta1",
    "j_theta2_theta2",
    "j_theta1_mu",
    "j_theta2_sigma",
    "j_mu_mu",
    "j_sigma_sigma",
    "sigma_11",
    "sigma_22",
];

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Degenerate(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 64,
            CliError::Input(_) => 2,
            CliError::Degenerate(_) => 3,
            CliError::Internal(_) => 1,
        }
    }
}

impl From<apd_score::Error> for CliError {
    fn from(e: apd_score::Error) -> Self {
        use apd_score::Error as E;
        match e {
            E::DegenerateSample(_) => CliError::Degenerate(e.to_string()),
            E::Domain { .. } | E::Config(_) => CliError::Usage(e.to_string()),
            E::Accuracy { .. } | E::Numeric(_) => CliError::Internal(e.to_string()),
        }
    }
}

/// Machine-readable result of one invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema_version: String,
    pub command: String,
    pub inputs: Value,
    pub results: Value,
}

impl OutputRecord {
    fn new(command: &str, inputs: Value, results: Value) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            inputs,
            results,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("records hold plain data")
    }
}

/// A command's output in both renderings.
#[derive(Debug, Clone)]
pub struct Rendered {
    pub record: OutputRecord,
    pub human: String,
}

/// Parses a single-column data file: one decimal per line, blank lines and
/// lines starting with `#` ignored, CRLF accepted.
pub fn parse_data(text: &str) -> Result<Vec<f64>, CliError> {
    let mut values = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v: f64 = line
            .parse()
            .map_err(|_| CliError::Input(format!("line {}: cannot parse {line:?} as a number", i + 1)))?;
        if !v.is_finite() {
            return Err(CliError::Input(format!("line {}: value {line:?} is not finite", i + 1)));
        }
        values.push(v);
    }
    if values.len() < 2 {
        return Err(CliError::Input(format!(
            "need at least 2 values, found {}",
            values.len()
        )));
    }
    Ok(values)
}

pub fn read_data_file(path: &Path) -> Result<Vec<f64>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_data(&text)
}

fn check_alpha(alpha: f64) -> Result<(), CliError> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(CliError::Usage(format!("--alpha {alpha} must lie in (0, 1)")))
    }
}

fn null_spec(lambda: f64) -> Result<NullSpec, CliError> {
    NullSpec::new(lambda).map_err(|e| CliError::Usage(format!("--lambda: {e}")))
}

pub fn cmd_test(input: &Path, lambda: f64, alpha: f64) -> Result<Rendered, CliError> {
    let null = null_spec(lambda)?;
    check_alpha(alpha)?;
    let data = read_data_file(input)?;
    let report = run_test(&data, &null, alpha)?;

    let mut human = String::new();
    let verdict = if report.rejected { "reject" } else { "do not reject" };
    writeln!(human, "modified score test, null exponent lambda = {lambda}").unwrap();
    writeln!(human, "n          {}", report.n).unwrap();
    writeln!(human, "mu_hat     {}", report.kappa_hat.mu).unwrap();
    writeln!(human, "sigma_hat  {}", report.kappa_hat.sigma).unwrap();
    writeln!(human, "r_n        ({}, {})", report.r_n.c1, report.r_n.c2).unwrap();
    writeln!(human, "T_n        {}", report.t_stat).unwrap();
    writeln!(human, "p-value    {}", report.p_value).unwrap();
    writeln!(human, "alpha {alpha}: {verdict} H0").unwrap();

    let record = OutputRecord::new(
        "test",
        json!({ "input": input.display().to_string(), "lambda": lambda, "alpha": alpha }),
        serde_json::to_value(report).expect("report serialises"),
    );
    Ok(Rendered { record, human })
}

/// `size` runs under the null, `power` under a local alternative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StudyKind {
    Size,
    Power,
}

#[derive(Debug, Clone)]
pub struct SimulateArgs {
    pub kind: StudyKind,
    pub lambda: f64,
    pub n: usize,
    pub reps: usize,
    pub seed: u64,
    pub alphas: Vec<f64>,
    pub delta: Option<[f64; 2]>,
    pub mu: f64,
    pub sigma: f64,
    pub workers: Option<usize>,
}

pub fn cmd_simulate(args: &SimulateArgs) -> Result<Rendered, CliError> {
    match (args.kind, args.delta) {
        (StudyKind::Power, None) => {
            return Err(CliError::Usage("simulate power requires --delta d1,d2".into()))
        }
        (StudyKind::Size, Some(_)) => {
            return Err(CliError::Usage("simulate size does not take --delta".into()))
        }
        _ => {}
    }
    let kappa = LocationScale::new(args.mu, args.sigma).map_err(|e| CliError::Usage(e.to_string()))?;
    let cfg = StudyConfig {
        lambda: args.lambda,
        n: args.n,
        reps: args.reps,
        seed: args.seed,
        alpha_grid: args.alphas.clone(),
        delta: args.delta,
        kappa,
    };
    let report = run_study_with_workers(&cfg, args.workers)?;
    let human = render_study(args.kind, &report);
    let kind = match args.kind {
        StudyKind::Size => "size",
        StudyKind::Power => "power",
    };
    let record = OutputRecord::new(
        "simulate",
        json!({
            "kind": kind,
            "lambda": cfg.lambda,
            "n": cfg.n,
            "reps": cfg.reps,
            "seed": cfg.seed,
            "alpha": cfg.alpha_grid,
            "delta": cfg.delta,
            "mu": cfg.kappa.mu,
            "sigma": cfg.kappa.sigma,
        }),
        serde_json::to_value(&report).expect("report serialises"),
    );
    Ok(Rendered { record, human })
}

fn render_study(kind: StudyKind, report: &StudyReport) -> String {
    let cfg = &report.config;
    let mut out = String::new();
    let title = match kind {
        StudyKind::Size => "size study (null)".to_string(),
        StudyKind::Power => {
            let d = cfg.delta.unwrap_or_default();
            format!("power study, delta = ({}, {})", d[0], d[1])
        }
    };
    writeln!(out, "{title}: lambda = {}, n = {}, reps = {}, seed = {}", cfg.lambda, cfg.n, cfg.reps, cfg.seed)
        .unwrap();
    match &report.predicted_power {
        Some(pred) => {
            writeln!(out, "{:>8} {:>10} {:>10} {:>10}", "alpha", "empirical", "std_err", "predicted").unwrap();
            for (r, p) in report.rejection_rates.iter().zip(pred) {
                writeln!(out, "{:>8} {:>10.4} {:>10.4} {:>10.4}", r.alpha, r.rate, r.std_error, p).unwrap();
            }
        }
        None => {
            writeln!(out, "{:>8} {:>10} {:>10}", "alpha", "empirical", "std_err").unwrap();
            for r in &report.rejection_rates {
                writeln!(out, "{:>8} {:>10.4} {:>10.4}", r.alpha, r.rate, r.std_error).unwrap();
            }
        }
    }
    writeln!(out, "noncentrality {:.6}", report.ncp).unwrap();
    writeln!(out, "KS distance vs chi-square(2) law {:.5}", report.ks_stat).unwrap();
    writeln!(out, "replicate failures {}", report.replicate_failures).unwrap();
    out
}

/// Parses `start:stop:step` into the list of λ values it denotes.
pub fn parse_lambda_grid(grid: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = grid.split(':').collect();
    let bad = || CliError::Usage(format!("--lambda-grid {grid:?} must look like start:stop:step"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let nums = parts
        .iter()
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<Vec<_>, _>>()?;
    let (start, stop, step) = (nums[0], nums[1], nums[2]);
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
        return Err(bad());
    }
    if start < 1.0 || stop < start || step <= 0.0 {
        return Err(CliError::Usage(format!(
            "--lambda-grid {grid:?} needs 1 <= start <= stop and step > 0"
        )));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    if count > 100_000 {
        return Err(CliError::Usage(format!("--lambda-grid {grid:?} has too many points")));
    }
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}

pub fn table_rows(grid: &[f64]) -> Result<Vec<[f64; 9]>, CliError> {
    grid.iter()
        .map(|&lambda| {
            let f = fisher_blocks(&null_spec(lambda)?);
            Ok([
                lambda,
                f.j_tt[0][0],
                f.j_tt[1][1],
                f.j_tk[0][0],
                f.j_tk[1][1],
                f.j_kk[0][0],
                f.j_kk[1][1],
                f.sigma_mat[0][0],
                f.sigma_mat[1][1],
            ])
        })
        .collect()
}

pub fn cmd_tables(lambda_grid: &str) -> Result<Rendered, CliError> {
    let grid = parse_lambda_grid(lambda_grid)?;
    let rows = table_rows(&grid)?;
    let mut human = TABLE_HEADER.join(",");
    human.push('\n');
    for row in &rows {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        human.push_str(&cells.join(","));
        human.push('\n');
    }
    let json_rows: Vec<Value> = rows
        .iter()
        .map(|row| {
            let obj = TABLE_HEADER
                .iter()
                .zip(row)
                .map(|(k, v)| (k.to_string(), json!(v)))
                .collect::<serde_json::Map<_, _>>();
            Value::Object(obj)
        })
        .collect();
    let record = OutputRecord::new(
        "tables",
        json!({ "lambda_grid": lambda_grid }),
        json!({ "columns": TABLE_HEADER, "rows": json_rows }),
    );
    Ok(Rendered { record, human })
}

#[derive(Debug, Clone)]
pub struct SampleArgs {
    pub theta1: f64,
    pub theta2: f64,
    pub mu: f64,
    pub sigma: f64,
    pub n: usize,
    pub seed: u64,
    pub output: PathBuf,
}

/// Writes `n` draws, one per line with 17 significant digits.
pub fn cmd_sample(args: &SampleArgs) -> Result<Rendered, CliError> {
    if args.n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let params = ApdParams::new(args.theta1, args.theta2, args.mu, args.sigma)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let mut rng = replicate_rng(args.seed, 0);
    let draws = apd::sample(&params, args.n, &mut rng);

    let mut body = String::with_capacity(args.n * 24);
    for v in &draws {
        writeln!(body, "{v:.16e}").unwrap();
    }
    let mut file = fs::File::create(&args.output)
        .map_err(|e| CliError::Input(format!("cannot create {}: {e}", args.output.display())))?;
    file.write_all(body.as_bytes())
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", args.output.display())))?;

    let human = format!("wrote {} draws to {}\n", args.n, args.output.display());
    let record = OutputRecord::new(
        "sample",
        json!({
            "theta1": args.theta1,
            "theta2": args.theta2,
            "mu": args.mu,
            "sigma": args.sigma,
            "n": args.n,
            "seed": args.seed,
            "output": args.output.display().to_string(),
        }),
        json!({ "written": args.n }),
    );
    Ok(Rendered { record, human })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ingestion_rules() {
        let a = parse_data("1\n2\n4\n").unwrap();
        let b = parse_data("# header\r\n\r\n1\r\n  2  \n# mid\n4\n\n").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_data("1.5e3\n-2\n").unwrap(), vec![1500.0, -2.0]);
        assert!(matches!(parse_data("1\nabc\n3\n"), Err(CliError::Input(_))));
        assert!(matches!(parse_data("1\ninf\n"), Err(CliError::Input(_))));
        assert!(matches!(parse_data("1,5\n2\n"), Err(CliError::Input(_))));
        assert!(matches!(parse_data("# only\n7\n"), Err(CliError::Input(_))));
    }

    #[test]
    fn lambda_grids() {
        assert_eq!(parse_lambda_grid("1:1:1").unwrap(), vec![1.0]);
        assert_eq!(parse_lambda_grid("1:2:0.5").unwrap(), vec![1.0, 1.5, 2.0]);
        assert_eq!(parse_lambda_grid("1:1.3:0.1").unwrap().len(), 4);
        for bad in ["0.5:2:1", "2:1:1", "1:2:0", "1:2", "a:b:c"] {
            assert!(matches!(parse_lambda_grid(bad), Err(CliError::Usage(_))), "{bad}");
        }
    }

    #[test]
    fn table_values() {
        let rows = table_rows(&[1.0, 2.0]).unwrap();
        assert_eq!(rows[0][1], 8.0);
        assert!((rows[0][7] - 4.0).abs() < 1e-13);
        assert!((rows[1][7] - (12.0 - 32.0 / std::f64::consts::PI)).abs() < 1e-12);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Usage(String::new()).exit_code(), 64);
        assert_eq!(CliError::Input(String::new()).exit_code(), 2);
        assert_eq!(CliError::Degenerate(String::new()).exit_code(), 3);
        let e: CliError = apd_score::Error::DegenerateSample("x".into()).into();
        assert_eq!(e.exit_code(), 3);
    }
}
