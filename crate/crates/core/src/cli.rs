//! Command-line front end.
//!
//! Exit codes: 0 success, 1 invalid input, 2 failed verification. JSON numbers
//! carry 15 significant digits, CSV fields 9.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::class_params::{
    ClassParams, NamedClass, DEFAULT_ALPHA, DEFAULT_BETA, DEFAULT_LAMBDA, DEFAULT_M, DEFAULT_ORDER,
};
use crate::closed_forms::{
    distortion, koebe_radius, radius_of_starlikeness, re_lower_bound, st_disk,
};
use crate::error::Error;
use crate::function_rep::{eval_extremal, QuadratureConfig};
use crate::oracles::{self, OracleReport, ScanConfig, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;

/// Environment variable that overrides `--seed`.
pub const SEED_ENV: &str = "STARLIKE_SEED";

/// Largest radius in `table` output.
const TABLE_TOP: f64 = 1.0 - 1e-6;

/// Radii at which `verify` samples members for containment.
const CONTAINMENT_RADII: [f64; 3] = [0.3, 0.6, 0.9];
const ENVELOPE_RADIUS: f64 = 0.5;
const ATTAINMENT_RADIUS: f64 = 0.5;
const WITNESS_ANGLES: usize = 64;

#[derive(Debug, Parser)]
#[command(
    name = "starlike",
    version,
    about = "Radius of starlikeness, growth bounds and Koebe radius for S*(A,B,b)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form quantities for one parameter triple.
    Compute {
        #[command(flatten)]
        params: ParamArgs,
        /// Radius for the distortion bounds and disks.
        #[arg(long, allow_negative_numbers = true)]
        r: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Growth bounds and real-part lower bound on a radius grid.
    Table {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 101)]
        grid: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the numerical certification suite.
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        /// Verify every named subclass with default parameters.
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Quadrature tolerance.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Angles per circle for the radius scans.
        #[arg(long, default_value_t = 2048)]
        angles: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Image of |z| = r under the extremal function.
    PlotData {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, allow_negative_numbers = true)]
        r: f64,
        #[arg(long, default_value_t = 360)]
        grid: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Clone, Default, Args)]
pub struct ParamArgs {
    #[arg(long = "A", allow_negative_numbers = true)]
    pub a: Option<f64>,
    #[arg(long = "B", allow_negative_numbers = true)]
    pub b: Option<f64>,
    #[arg(long = "b-re", allow_negative_numbers = true)]
    pub b_re: Option<f64>,
    #[arg(long = "b-im", allow_negative_numbers = true)]
    pub b_im: Option<f64>,
    /// starlike, starlike-complex, starlike-order, spirallike, spirallike-order, st6 .. st10
    #[arg(long)]
    pub named: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    #[arg(long = "M", allow_negative_numbers = true)]
    pub m: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Default, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn invalid(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INVALID,
            stdout: String::new(),
            stderr: format!("error: {}\n", message.into()),
        }
    }
}

#[derive(Debug)]
struct Invalid(String);

impl From<Error> for Invalid {
    fn from(e: Error) -> Self {
        Invalid(e.to_string())
    }
}

type CmdResult<T> = std::result::Result<T, Invalid>;

fn invalid<T>(msg: impl Into<String>) -> CmdResult<T> {
    Err(Invalid(msg.into()))
}

/// Rounds to `digits` significant decimal digits.
fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() {
        return x;
    }
    if x == 0.0 {
        // drops the sign of -0.0
        return 0.0;
    }
    format!("{:.*e}", digits - 1, x).parse().unwrap_or(x)
}

fn json_num(x: f64) -> Value {
    if x.is_finite() {
        json!(round_sig(x, 15))
    } else if x.is_nan() {
        json!("nan")
    } else if x > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

fn csv_num(x: f64) -> String {
    let y = round_sig(x, 9);
    if !y.is_finite() {
        return if y.is_nan() {
            "nan".into()
        } else if y > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if y != 0.0 && (y.abs() < 1e-4 || y.abs() >= 1e15) {
        format!("{y:e}")
    } else {
        format!("{y}")
    }
}

fn csv_text<I, S>(header: &[&str], rows: I, trailer: &[String]) -> CmdResult<String>
where
    I: IntoIterator<Item = Vec<S>>,
    S: AsRef<[u8]>,
{
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let io = |e: csv::Error| Invalid(format!("csv: {e}"));
    writer.write_record(header).map_err(io)?;
    for row in rows {
        writer.write_record(row).map_err(io)?;
    }
    let mut text = String::from_utf8(writer.into_inner().map_err(|e| Invalid(e.to_string()))?)
        .expect("csv output is utf-8");
    for line in trailer {
        text.push_str("# ");
        text.push_str(line);
        text.push('\n');
    }
    Ok(text)
}

fn json_text(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    text
}

fn parse_named(name: &str, args: &ParamArgs) -> CmdResult<NamedClass> {
    let order = match (args.b_re, args.b_im) {
        (None, None) => DEFAULT_ORDER,
        (re, im) => Complex64::new(re.unwrap_or(0.0), im.unwrap_or(0.0)),
    };
    let beta = args.beta.unwrap_or(DEFAULT_BETA);
    let alpha = args.alpha.unwrap_or(DEFAULT_ALPHA);
    let lambda = args.lambda.unwrap_or(DEFAULT_LAMBDA);
    Ok(match name {
        "starlike" => NamedClass::Starlike,
        "starlike-complex" => NamedClass::StarlikeComplexOrder { order },
        "starlike-order" => NamedClass::StarlikeOfOrder { beta },
        "spirallike" => NamedClass::Spirallike { lambda },
        "spirallike-order" => NamedClass::SpirallikeOfOrder { alpha, lambda },
        "st6" => NamedClass::St6 { order },
        "st7" => NamedClass::St7 { beta, order },
        "st8" => NamedClass::St8 { beta, order },
        "st9" => NamedClass::St9 {
            m: args.m.unwrap_or(DEFAULT_M),
            order,
        },
        "st10" => NamedClass::St10 { beta, order },
        other => return invalid(format!("unknown named class '{other}'")),
    })
}

fn resolve_params(args: &ParamArgs) -> CmdResult<ClassParams> {
    let explicit = args.a.is_some() || args.b.is_some();
    match (&args.named, explicit) {
        (Some(_), true) => invalid("give either --named or --A/--B, not both"),
        (Some(name), false) => Ok(parse_named(name, args)?.resolve()?),
        (None, _) => {
            let a = args.a.ok_or_else(|| Invalid("--A is required".into()))?;
            let b = args.b.ok_or_else(|| Invalid("--B is required".into()))?;
            let re = args
                .b_re
                .ok_or_else(|| Invalid("--b-re is required".into()))?;
            let order = Complex64::new(re, args.b_im.unwrap_or(0.0));
            Ok(ClassParams::new(a, b, order)?)
        }
    }
}

fn params_json(p: &ClassParams) -> Value {
    json!({
        "A": json_num(p.a()),
        "B": json_num(p.b()),
        "b_re": json_num(p.order().re),
        "b_im": json_num(p.order().im),
    })
}

fn compute_doc(p: &ClassParams, r: Option<f64>) -> CmdResult<Value> {
    let s = radius_of_starlikeness(p);
    let mut doc = Map::new();
    doc.insert("params".into(), params_json(p));
    doc.insert(
        "radius".into(),
        json!({
            "raw": json_num(s.raw),
            "effective": json_num(s.effective),
            "boundary_free": s.boundary_free,
        }),
    );
    doc.insert("koebe".into(), json_num(koebe_radius(p)));
    if let Some(r) = r {
        let d = distortion(p, r)?;
        let disk = st_disk(p, r)?;
        doc.insert(
            "distortion".into(),
            json!({"r": json_num(r), "lower": json_num(d.lower), "upper": json_num(d.upper)}),
        );
        doc.insert(
            "st_disk".into(),
            json!({
                "center_re": json_num(disk.center.re),
                "center_im": json_num(disk.center.im),
                "radius": json_num(disk.radius),
            }),
        );
        doc.insert("re_lower_bound".into(), json_num(re_lower_bound(p, r)?));
    }
    Ok(Value::Object(doc))
}

fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, v, out);
            }
        }
        Value::Number(n) => out.push((prefix.to_owned(), csv_num(n.as_f64().unwrap_or(f64::NAN)))),
        Value::String(s) => out.push((prefix.to_owned(), s.clone())),
        other => out.push((prefix.to_owned(), other.to_string())),
    }
}

fn cmd_compute(params: &ParamArgs, r: Option<f64>, format: Format) -> CmdResult<String> {
    let p = resolve_params(params)?;
    let doc = compute_doc(&p, r)?;
    match format {
        Format::Json => Ok(json_text(&doc)),
        Format::Csv => {
            let mut pairs = Vec::new();
            flatten("", &doc, &mut pairs);
            csv_text(
                &["key", "value"],
                pairs.into_iter().map(|(k, v)| vec![k, v]),
                &[],
            )
        }
    }
}

/// Radii `k/(grid-1)`, with the last point pulled in to `1 - 10^-6`.
fn table_radii(grid: usize) -> Vec<f64> {
    (0..grid)
        .map(|k| (k as f64 / (grid - 1) as f64).min(TABLE_TOP))
        .collect()
}

fn cmd_table(params: &ParamArgs, grid: usize, format: Format) -> CmdResult<String> {
    if grid < 2 {
        return invalid("--grid must be at least 2");
    }
    let p = resolve_params(params)?;
    let mut rows = Vec::with_capacity(grid);
    for r in table_radii(grid) {
        let d = distortion(&p, r)?;
        rows.push([r, d.lower, d.upper, re_lower_bound(&p, r)?]);
    }
    let header = ["r", "lower", "upper", "re_lower_bound"];
    match format {
        Format::Csv => csv_text(
            &header,
            rows.iter()
                .map(|row| row.iter().map(|&x| csv_num(x)).collect()),
            &[],
        ),
        Format::Json => Ok(json_text(&Value::Array(
            rows.iter()
                .map(|row| {
                    let obj: Map<String, Value> = header
                        .iter()
                        .zip(row)
                        .map(|(k, &v)| ((*k).to_owned(), json_num(v)))
                        .collect();
                    Value::Object(obj)
                })
                .collect(),
        ))),
    }
}

fn cmd_plot_data(params: &ParamArgs, r: f64, grid: usize, format: Format) -> CmdResult<String> {
    if grid < 2 {
        return invalid("--grid must be at least 2");
    }
    let p = resolve_params(params)?;
    let bounds = distortion(&p, r)?;
    let mut rows = Vec::with_capacity(grid);
    for k in 0..grid {
        let theta = std::f64::consts::TAU * k as f64 / grid as f64;
        let f = eval_extremal(&p, Complex64::from_polar(r, theta))?;
        rows.push([theta, f.re, f.im, f.norm()]);
    }
    let header = ["theta", "f_re", "f_im", "abs_f"];
    match format {
        Format::Csv => csv_text(
            &header,
            rows.iter()
                .map(|row| row.iter().map(|&x| csv_num(x)).collect()),
            &[
                format!("r={}", csv_num(r)),
                format!("distortion_lower={}", csv_num(bounds.lower)),
                format!("distortion_upper={}", csv_num(bounds.upper)),
            ],
        ),
        Format::Json => Ok(json_text(&json!({
            "r": json_num(r),
            "distortion": {"lower": json_num(bounds.lower), "upper": json_num(bounds.upper)},
            "rows": rows.iter().map(|row| json!({
                "theta": json_num(row[0]),
                "f_re": json_num(row[1]),
                "f_im": json_num(row[2]),
                "abs_f": json_num(row[3]),
            })).collect::<Vec<_>>(),
        }))),
    }
}

fn failed_report(quantity: &str, err: Error) -> OracleReport {
    OracleReport {
        quantity: quantity.to_owned(),
        closed_form: f64::NAN,
        numeric: f64::NAN,
        abs_err: f64::NAN,
        tolerance: 0.0,
        samples: 0,
        verdict: Verdict::Fail,
        note: err.to_string(),
    }
}

/// All checks for one parameter triple.
pub fn verify_reports(
    p: &ClassParams,
    scan: &ScanConfig,
    quad: &QuadratureConfig,
) -> Vec<OracleReport> {
    let witness = ScanConfig {
        angle_count: WITNESS_ANGLES,
        ..*scan
    };
    let mut reports = Vec::new();
    let mut push = |name: &str, r: crate::Result<OracleReport>| {
        reports.push(r.unwrap_or_else(|e| failed_report(name, e)));
    };
    push(
        "radius_of_starlikeness",
        oracles::check_radius_agreement(p, scan),
    );
    push("radius_sampled", oracles::check_sampled_radius(p, scan));
    push(
        "re_lower_bound_attainment",
        oracles::check_attainment(p, ATTAINMENT_RADIUS, scan),
    );
    for r in CONTAINMENT_RADII {
        push(
            "p_disk_containment",
            oracles::check_p_disk_containment(p, r, &witness),
        );
        push(
            "logderiv_disk_containment",
            oracles::check_disk_containment(p, r, &witness),
        );
    }
    push(
        "distortion_envelope",
        oracles::distortion_envelope(p, ENVELOPE_RADIUS, &witness, quad),
    );
    push("koebe_limit", Ok(oracles::koebe_limit_numeric(p)));
    push(
        "integral_representation",
        oracles::check_representation(p, quad),
    );
    reports
}

fn report_json(r: &OracleReport) -> Value {
    json!({
        "quantity": r.quantity,
        "closed_form": json_num(r.closed_form),
        "numeric": json_num(r.numeric),
        "abs_err": json_num(r.abs_err),
        "tolerance": json_num(r.tolerance),
        "samples": r.samples,
        "verdict": r.verdict,
        "note": r.note,
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    params: &ParamArgs,
    all: bool,
    samples: usize,
    seed: u64,
    tol: f64,
    angles: usize,
    format: Format,
) -> CmdResult<(String, bool)> {
    let targets: Vec<(String, ClassParams)> = if all {
        if params.a.is_some() || params.b.is_some() || params.named.is_some() {
            return invalid("--all takes no parameter flags");
        }
        NamedClass::defaults()
            .iter()
            .map(|n| Ok((n.name().to_owned(), n.resolve()?)))
            .collect::<CmdResult<_>>()?
    } else {
        let p = resolve_params(params)?;
        vec![(params.named.clone().unwrap_or_else(|| "custom".into()), p)]
    };
    let scan = ScanConfig {
        angle_count: angles,
        sample_count: samples,
        seed,
        ..ScanConfig::default()
    };
    scan.validate()?;
    if !(tol > 0.0) {
        return invalid("--tol must be > 0");
    }
    let quad = QuadratureConfig {
        tol,
        ..QuadratureConfig::default()
    };

    let results: Vec<(String, ClassParams, Vec<OracleReport>)> = targets
        .into_iter()
        .map(|(label, p)| {
            let reports = verify_reports(&p, &scan, &quad);
            (label, p, reports)
        })
        .collect();
    let passed = results
        .iter()
        .all(|(_, _, reps)| reps.iter().all(OracleReport::passed));
    let notes: Vec<String> = oracles::subcase_checks()
        .iter()
        .filter(|c| !c.agrees)
        .map(|c| c.note())
        .collect();

    let text = match format {
        Format::Json => json_text(&json!({
            "seed": seed,
            "samples": samples,
            "targets": results.iter().map(|(label, p, reps)| json!({
                "label": label,
                "params": params_json(p),
                "reports": reps.iter().map(report_json).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "notes": notes,
            "passed": passed,
        })),
        Format::Csv => csv_text(
            &[
                "target",
                "quantity",
                "closed_form",
                "numeric",
                "abs_err",
                "tolerance",
                "samples",
                "verdict",
                "note",
            ],
            results.iter().flat_map(|(label, _, reps)| {
                reps.iter().map(move |r| {
                    vec![
                        label.clone(),
                        r.quantity.clone(),
                        csv_num(r.closed_form),
                        csv_num(r.numeric),
                        csv_num(r.abs_err),
                        csv_num(r.tolerance),
                        r.samples.to_string(),
                        match r.verdict {
                            Verdict::Pass => "pass".into(),
                            Verdict::Fail => "fail".into(),
                        },
                        r.note.clone(),
                    ]
                })
            }),
            &notes,
        )?,
    };
    Ok((text, passed))
}

/// Runs the CLI on `args` (program name first). `seed_override` plays the
/// role of the seed environment variable.
pub fn run_with<I, T>(args: I, seed_override: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::invalid(text.trim_start_matches("error: ").trim_end())
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };

    let (result, out) = match cli.command {
        Command::Compute { params, r, output } => (
            cmd_compute(&params, r, output.format.unwrap_or(Format::Json)).map(|t| (t, true)),
            output.out,
        ),
        Command::Table {
            params,
            grid,
            output,
        } => (
            cmd_table(&params, grid, output.format.unwrap_or(Format::Csv)).map(|t| (t, true)),
            output.out,
        ),
        Command::PlotData {
            params,
            r,
            grid,
            output,
        } => (
            cmd_plot_data(&params, r, grid, output.format.unwrap_or(Format::Csv))
                .map(|t| (t, true)),
            output.out,
        ),
        Command::Verify {
            params,
            all,
            samples,
            seed,
            tol,
            angles,
            output,
        } => {
            let seed = match seed_override.map(str::parse::<u64>) {
                None => Ok(seed),
                Some(Ok(s)) => Ok(s),
                Some(Err(_)) => invalid(format!("{SEED_ENV} must be an unsigned integer")),
            };
            (
                seed.and_then(|seed| {
                    cmd_verify(
                        &params,
                        all,
                        samples,
                        seed,
                        tol,
                        angles,
                        output.format.unwrap_or(Format::Json),
                    )
                }),
                output.out,
            )
        }
    };

    match result {
        Err(Invalid(msg)) => Outcome::invalid(msg),
        Ok((text, passed)) => {
            let code = if passed { EXIT_OK } else { EXIT_VERIFY_FAILED };
            match out {
                Some(path) => match std::fs::write(&path, &text) {
                    Ok(()) => Outcome {
                        code,
                        stdout: String::new(),
                        stderr: String::new(),
                    },
                    Err(e) => Outcome::invalid(format!("cannot write {}: {e}", path.display())),
                },
                None => Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                },
            }
        }
    }
}

/// Runs the CLI with the process environment.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let seed = std::env::var(SEED_ENV).ok();
    run_with(args, seed.as_deref())
}
