mod config;
mod output;
mod params;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use extmeans::convexity::{self, HessianConfig, Region, ScanSpec, STANDARD_GRID};
use extmeans::suite::{self, Suite, SuiteConfig};
use extmeans::{CheckReport, Family, MeanPoint64, ParamPair64};
use serde_json::json;

use output::{CaseRecord, RunReport, Status, SCHEMA_VERSION};
use params::number;

#[derive(Parser)]
#[command(
    name = "extmeans",
    version,
    about = "Parametric bivariate means and their convexity checks"
)]
struct Cli {
    /// Print progress and summaries to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one mean and print {value, branch, est_rel_error}.
    Eval(EvalArgs),
    /// Finite-difference Hessian of (p, q) -> ln M at one point.
    Hessian(HessianArgs),
    /// Run a check suite and write a JSON report.
    Check(CheckArgs),
    /// Hessian verdicts over a (p, q) grid as CSV.
    Scan(ScanArgs),
    /// Merge JSON reports into one summary.
    Report(ReportArgs),
}

#[derive(Args)]
struct FamilyArgs {
    /// stolarsky, gini, identric2, heronian2, hd, or F (with --r and --s).
    #[arg(long)]
    family: String,
    #[arg(long, value_parser = number, allow_hyphen_values = true)]
    r: Option<f64>,
    #[arg(long, value_parser = number, allow_hyphen_values = true)]
    s: Option<f64>,
}

#[derive(Args)]
struct PointArgs {
    #[arg(long, value_parser = number, allow_hyphen_values = true)]
    p: f64,
    #[arg(long, value_parser = number, allow_hyphen_values = true)]
    q: f64,
    #[arg(long, value_parser = number, allow_hyphen_values = true)]
    a: f64,
    #[arg(long, value_parser = number, allow_hyphen_values = true)]
    b: f64,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[command(flatten)]
    point: PointArgs,
}

#[derive(Args)]
struct HessianFlags {
    /// Finite-difference base step (default scales with max(|p|, |q|)).
    #[arg(long, value_parser = number)]
    step: Option<f64>,
    /// Relative threshold below which Hessian entries count as zero.
    #[arg(long, value_parser = number)]
    sign_tol: Option<f64>,
}

impl HessianFlags {
    fn config(&self) -> HessianConfig {
        let mut cfg = HessianConfig::default();
        cfg.step = self.step.or(cfg.step);
        cfg.sign_tol = self.sign_tol.unwrap_or(cfg.sign_tol);
        cfg
    }
}

#[derive(Args)]
struct HessianArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[command(flatten)]
    point: PointArgs,
    #[command(flatten)]
    hessian: HessianFlags,
}

#[derive(Args)]
struct CheckArgs {
    /// all, convexity, inequalities or identities.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// pos, neg or both.
    #[arg(long)]
    region: Option<String>,
    /// Restrict the convexity suite to one family.
    #[arg(long)]
    family: Option<String>,
    #[arg(long, value_parser = number, allow_hyphen_values = true)]
    r: Option<f64>,
    #[arg(long, value_parser = number, allow_hyphen_values = true)]
    s: Option<f64>,
    /// Random samples per inequality case.
    #[arg(long)]
    samples: Option<usize>,
    /// File of `key = value` settings.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override one setting, e.g. `--set oracle_tol=1e-10`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// pos or neg.
    #[arg(long, default_value = "pos")]
    region: String,
    /// Grid values for both p and q, comma separated (default 0.25,0.5,1,2,4 signed by region).
    #[arg(long, value_parser = number, value_delimiter = ',', allow_hyphen_values = true)]
    grid: Option<Vec<f64>>,
    #[arg(long, value_parser = number, value_delimiter = ',', allow_hyphen_values = true)]
    p_grid: Option<Vec<f64>>,
    #[arg(long, value_parser = number, value_delimiter = ',', allow_hyphen_values = true)]
    q_grid: Option<Vec<f64>>,
    #[arg(long, value_parser = number, default_value = "1")]
    a: f64,
    #[arg(long, value_parser = number, default_value = "2")]
    b: f64,
    #[command(flatten)]
    hessian: HessianFlags,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    /// JSON reports written by `check`.
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// Write the merged JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failures mapped to exit codes.
enum Failure {
    BadArgs(anyhow::Error),
    Io(anyhow::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::BadArgs(_) => 2,
            Failure::Io(_) => 4,
        }
    }
}

fn bad<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::BadArgs(e.into())
}

fn io<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Io(e.into())
}

type Outcome = Result<Status, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Hessian(a) => cmd_hessian(a),
        Command::Check(a) => cmd_check(a, cli.verbose),
        Command::Scan(a) => cmd_scan(a),
        Command::Report(a) => cmd_report(a),
    };
    match result {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::Fail) => ExitCode::from(1),
        Ok(Status::InconclusiveHeavy) => ExitCode::from(3),
        Err(f) => {
            let (Failure::BadArgs(e) | Failure::Io(e)) = &f;
            eprintln!("error: {e:#}");
            ExitCode::from(f.code())
        }
    }
}

fn family_of(f: &FamilyArgs) -> Result<Family<f64>, Failure> {
    config::parse_family(&f.family, f.r, f.s).map_err(bad)
}

fn point_of(p: &PointArgs) -> Result<(ParamPair64, MeanPoint64), Failure> {
    Ok((
        ParamPair64::new(p.p, p.q).map_err(bad)?,
        MeanPoint64::new(p.a, p.b).map_err(bad)?,
    ))
}

fn print_json(value: &serde_json::Value) -> Result<(), Failure> {
    let mut stdout = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut stdout, value).map_err(io)?;
    writeln!(stdout).map_err(io)
}

fn cmd_eval(args: EvalArgs) -> Outcome {
    let family = family_of(&args.family)?;
    let (pp, pt) = point_of(&args.point)?;
    let r = family.evaluate(pp, pt).map_err(bad)?;
    print_json(&json!({
        "value": r.value,
        "branch": r.branch,
        "est_rel_error": r.est_rel_error,
    }))?;
    Ok(Status::Pass)
}

fn cmd_hessian(args: HessianArgs) -> Outcome {
    let family = family_of(&args.family)?;
    let (pp, pt) = point_of(&args.point)?;
    let h = convexity::hessian_log_family(&family, pp, pt, &args.hessian.config()).map_err(bad)?;
    print_json(&serde_json::to_value(h).map_err(io)?)?;
    Ok(Status::Pass)
}

fn suite_config(args: &CheckArgs) -> Result<SuiteConfig, Failure> {
    let mut cfg = SuiteConfig::default();
    if let Some(path) = &args.config {
        let text = config::read_file(path)
            .with_context(|| format!("reading {}", path.display()))
            .map_err(io)?;
        config::apply_text(&mut cfg, &text)
            .with_context(|| format!("in {}", path.display()))
            .map_err(bad)?;
    }
    for pair in &args.set {
        config::apply_pair(&mut cfg, pair).map_err(bad)?;
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(n) = args.samples {
        cfg.samples = n;
    }
    if let Some(region) = &args.region {
        cfg.region = config::parse_region(region).map_err(bad)?;
    }
    if let Some(name) = &args.family {
        cfg.family = Some(config::parse_family(name, args.r, args.s).map_err(bad)?);
    } else if args.r.is_some() || args.s.is_some() {
        return Err(bad(anyhow!("--r/--s need --family F")));
    }
    Ok(cfg)
}

fn timestamp() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

fn write_report(report: &RunReport, out: Option<&Path>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(report).map_err(io)? + "\n";
    match out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(io),
        None => std::io::stdout().lock().write_all(text.as_bytes()).map_err(io),
    }
}

fn cmd_check(args: CheckArgs, verbose: bool) -> Outcome {
    let suite: Suite = args.suite.parse().map_err(bad)?;
    let cfg = suite_config(&args)?;
    let started = std::time::Instant::now();
    let cases = suite::run(suite, &cfg);
    if verbose {
        eprint!("{}", output::summary_table(&cases));
        eprintln!("{} cases in {:.2?}", cases.len(), started.elapsed());
    }
    let report = RunReport {
        schema_version: SCHEMA_VERSION,
        config_echo: json!({ "suite": suite, "config": cfg }),
        seed: cfg.seed,
        cases: cases.iter().map(CaseRecord::from).collect(),
        timestamp: timestamp(),
    };
    write_report(&report, args.out.as_deref())?;
    Ok(output::status(&cases))
}

fn scan_spec(args: &ScanArgs) -> Result<ScanSpec, Failure> {
    let family = family_of(&args.family)?;
    let region = config::parse_region(&args.region)
        .map_err(bad)?
        .ok_or_else(|| bad(anyhow!("scan needs one quadrant: pos or neg")))?;
    let mut spec = ScanSpec::standard(family, region);
    let sign = if region == Region::PositiveQuadrant { 1.0 } else { -1.0 };
    let default: Vec<f64> = STANDARD_GRID.iter().map(|v| sign * v).collect();
    spec.p_grid = args
        .p_grid
        .clone()
        .or_else(|| args.grid.clone())
        .unwrap_or_else(|| default.clone());
    spec.q_grid = args.q_grid.clone().or_else(|| args.grid.clone()).unwrap_or(default);
    spec.mean_points = vec![MeanPoint64::new(args.a, args.b).map_err(bad)?];
    spec.hessian = args.hessian.config();
    spec.validate().map_err(bad)?;
    Ok(spec)
}

pub const SCAN_HEADER: [&str; 7] = ["p", "q", "d2_pp", "d2_qq", "d2_pq", "delta", "verdict"];

fn cmd_scan(args: ScanArgs) -> Outcome {
    let spec = scan_spec(&args)?;
    let sink: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(
            std::fs::File::create(path)
                .with_context(|| format!("creating {}", path.display()))
                .map_err(io)?,
        ),
        None => Box::new(std::io::stdout().lock()),
    };
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(SCAN_HEADER).map_err(io)?;
    for (pp, h) in convexity::scan_grid(&spec, spec.mean_points[0]) {
        let row = match h {
            Ok(h) => [
                output::sci(pp.p),
                output::sci(pp.q),
                output::sci(h.d2_pp),
                output::sci(h.d2_qq),
                output::sci(h.d2_pq),
                output::sci(h.delta),
                h.verdict.as_str().to_string(),
            ],
            Err(_) => {
                let nan = output::sci(f64::NAN);
                [
                    output::sci(pp.p),
                    output::sci(pp.q),
                    nan.clone(),
                    nan.clone(),
                    nan.clone(),
                    nan,
                    "error".into(),
                ]
            }
        };
        w.write_record(&row).map_err(io)?;
    }
    w.flush().map_err(io)?;
    Ok(Status::Pass)
}

fn cmd_report(args: ReportArgs) -> Outcome {
    let mut order: Vec<String> = Vec::new();
    let mut merged: BTreeMap<String, CheckReport> = BTreeMap::new();
    let mut sources = Vec::new();
    for path in &args.inputs {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))
            .map_err(io)?;
        let run: RunReport = serde_json::from_str(&text)
            .with_context(|| format!("{} is not a report", path.display()))
            .map_err(bad)?;
        if run.schema_version != SCHEMA_VERSION {
            return Err(bad(anyhow!(
                "{} has schema version {}, expected {SCHEMA_VERSION}",
                path.display(),
                run.schema_version
            )));
        }
        sources.push(json!({ "path": path.display().to_string(), "seed": run.seed }));
        for case in &run.cases {
            let r = CheckReport::from(case);
            match merged.remove(&case.id) {
                Some(prev) => {
                    merged.insert(case.id.clone(), prev.merge(r));
                }
                None => {
                    order.push(case.id.clone());
                    merged.insert(case.id.clone(), r);
                }
            }
        }
    }
    let cases: Vec<CheckReport> = order
        .iter()
        .map(|id| merged.remove(id).expect("every id was inserted"))
        .collect();
    print!("{}", output::summary_table(&cases));
    if let Some(out) = &args.out {
        let seed = sources.first().and_then(|s| s["seed"].as_u64()).unwrap_or(0);
        let report = RunReport {
            schema_version: SCHEMA_VERSION,
            config_echo: json!({ "merged": sources }),
            seed,
            cases: cases.iter().map(CaseRecord::from).collect(),
            timestamp: timestamp(),
        };
        write_report(&report, Some(out))?;
    }
    Ok(output::status(&cases))
}
