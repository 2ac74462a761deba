//! Command-line front end: compute gaps, run parameter sweeps, verify
//! theorems, and emit machine-readable tables.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parse/usage error,
//! 3 numeric failure, 4 unwritable output.

use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand};

use poincare_gap::closed_form::{self, GapValue, TheoremValue};
use poincare_gap::intertwining::{self, CandidateFamily};
use poincare_gap::models::{self, DiffusionModel, FamilyTag, GapEstimate};
use poincare_gap::rayleigh;
use poincare_gap::spectral::{self, Quality};
use poincare_gap::verify::{self, Suite};
use poincare_gap::QuadratureSpec;

#[derive(Parser)]
#[command(
    name = "poincare-gap",
    version,
    about = "Spectral gaps of one-dimensional weighted diffusions: closed forms, variational and intertwining bounds, and a finite-difference eigenvalue oracle"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute all available gap estimates for one model
    /// (e.g. `gap cauchy:beta=2`).
    Gap {
        /// Model string: exp-power:alpha=A | gauss-weighted:b=B |
        /// cauchy:beta=B | cauchy-bl:beta=B
        model: String,
        /// fast | standard | high (default from POINCARE_GAP_QUALITY,
        /// then standard)
        #[arg(long)]
        quality: Option<String>,
        /// text | json
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Sweep a family parameter and write a table of all estimates.
    Sweep {
        /// Family: exp-power | gauss-weighted | cauchy | cauchy-bl
        family: String,
        /// MIN,MAX,STEP for the family parameter
        #[arg(long, value_delimiter = ',')]
        range: Vec<f64>,
        #[arg(long)]
        quality: Option<String>,
        /// csv | json
        #[arg(long, default_value = "csv")]
        format: String,
        /// Output path (stdout when omitted)
        #[arg(long)]
        output: Option<PathBuf>,
        /// Worker threads for the sweep rows (0 = rayon default)
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Run a verification suite and exit 0 iff every case passes.
    Verify {
        /// thm-exp-power | thm-gauss-weighted | thm-cauchy | bl-limit |
        /// gamma-ineqs | weight-optimality | all
        suite: String,
        #[arg(long)]
        quality: Option<String>,
    },
}

const EXIT_VERIFY_FAILED: i32 = 1;
const EXIT_PARSE: i32 = 2;
const EXIT_NUMERIC: i32 = 3;
const EXIT_UNWRITABLE: i32 = 4;

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }
    fn numeric(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_NUMERIC,
            message: message.into(),
        }
    }
    fn unwritable(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_UNWRITABLE,
            message: message.into(),
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32, Failure> {
    match cli.command {
        Command::Gap {
            model,
            quality,
            format,
        } => cmd_gap(&model, resolve_quality(quality)?, &format),
        Command::Sweep {
            family,
            range,
            quality,
            format,
            output,
            jobs,
        } => cmd_sweep(
            &family,
            &range,
            resolve_quality(quality)?,
            &format,
            output.as_deref(),
            jobs,
        ),
        Command::Verify { suite, quality } => cmd_verify(&suite, resolve_quality(quality)?),
    }
}

/// Quality precedence: --quality flag > POINCARE_GAP_QUALITY > standard.
fn resolve_quality(flag: Option<String>) -> Result<Quality, Failure> {
    let source = match flag {
        Some(s) => s,
        None => match std::env::var("POINCARE_GAP_QUALITY") {
            Ok(s) if !s.is_empty() => s,
            _ => return Ok(Quality::Standard),
        },
    };
    Quality::from_str(&source).map_err(Failure::parse)
}

/// `family:key=value` → model. The CLI's model address syntax.
fn parse_model(s: &str) -> Result<DiffusionModel, Failure> {
    let (family, params) = s
        .split_once(':')
        .ok_or_else(|| Failure::parse(format!("model '{s}' is not of the form family:key=value")))?;
    let (key, value) = params
        .split_once('=')
        .ok_or_else(|| Failure::parse(format!("model '{s}' is missing key=value")))?;
    let value: f64 = value
        .parse()
        .map_err(|_| Failure::parse(format!("'{value}' is not a number in '{s}'")))?;
    let model = match (family, key) {
        ("exp-power", "alpha") => models::make_exp_power(value),
        ("gauss-weighted", "b") => models::make_gaussian_weighted(value),
        ("cauchy", "beta") => models::make_cauchy(value),
        ("cauchy-bl", "beta") => models::make_cauchy_bl(value),
        _ => {
            return Err(Failure::parse(format!(
                "unknown model '{family}:{key}=…' (exp-power:alpha, gauss-weighted:b, cauchy:beta, cauchy-bl:beta)"
            )))
        }
    };
    model.map_err(|e| Failure::parse(e.to_string()))
}

/// Fixed 17-significant-digit decimal serialization; round-trips f64
/// bit-exactly and keeps data files diffable.
fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

/// Best intertwining lower bound for the family: the ε-family optimum,
/// or the Poisson solution for exponential power with α ≥ 2.
fn lower_bound(model: &DiffusionModel) -> poincare_gap::Result<(Option<f64>, GapEstimate)> {
    match model.family_tag() {
        FamilyTag::ExpPower { alpha } if alpha >= 2.0 => {
            Ok((None, intertwining::poisson_lower_bound(model)?))
        }
        _ => {
            let range = intertwining::default_epsilon_range(model);
            let family = CandidateFamily::ExpOfPotential {
                epsilon_range: range,
            };
            let (eps, est) = intertwining::optimize_epsilon(model, &family, range)?;
            Ok((Some(eps), est))
        }
    }
}

/// Best Rayleigh upper bound for the family: the test function that is
/// sharp in each regime.
fn upper_bound(model: &DiffusionModel) -> poincare_gap::Result<GapEstimate> {
    match model.family_tag() {
        FamilyTag::ExpPower { alpha } => {
            let (_, hi) = closed_form::exp_power_gap_bounds(alpha)?;
            let linear = closed_form::rayleigh_linear_exp_power(alpha)?;
            GapEstimate::new(
                hi.min(linear),
                models::EstimateKind::UpperBound,
                "rayleigh f(x)=x with Gamma-ratio refinement",
            )
        }
        FamilyTag::GaussianWeighted { b } => {
            if b < 0.5 {
                let bump = 0.5 * b;
                let f = rayleigh::TestFunction::new(
                    format!("x·exp(bx²/2), b={b}"),
                    move |x| x * (bump * x * x).exp(),
                    move |x| (1.0 + 2.0 * bump * x * x) * (bump * x * x).exp(),
                );
                let spec = QuadratureSpec::for_model(model);
                rayleigh::rayleigh_quotient(model, &f, &spec)
            } else {
                let grid = rayleigh::default_gaussian_eps_grid();
                Ok(rayleigh::gaussian_upper_family(b, &grid)?.best)
            }
        }
        FamilyTag::Cauchy { beta } => {
            if beta > 1.5 {
                let spec = QuadratureSpec::for_model_with_radius(model, 45f64.sinh());
                rayleigh::rayleigh_quotient(model, &rayleigh::TestFunction::linear(), &spec)
            } else {
                let grid = rayleigh::default_cauchy_eps_grid(beta);
                Ok(rayleigh::cauchy_upper_family(beta, &grid)?.best)
            }
        }
        FamilyTag::CauchyBl { .. } | FamilyTag::Custom => {
            let spec = QuadratureSpec::for_model_with_radius(model, 45f64.sinh());
            rayleigh::rayleigh_quotient(model, &rayleigh::TestFunction::linear(), &spec)
        }
    }
}

fn cmd_gap(model_str: &str, quality: Quality, format: &str) -> Result<i32, Failure> {
    let model = parse_model(model_str)?;
    let theorem = closed_form::theorem_value(model.family_tag());

    let (best_eps, lower) = lower_bound(&model).map_err(|e| Failure::numeric(e.to_string()))?;
    let upper = upper_bound(&model).map_err(|e| Failure::numeric(e.to_string()))?;
    let numeric = spectral::spectral_gap_numeric(&model, quality)
        .map_err(|e| Failure::numeric(e.to_string()))?;

    match format {
        "text" => {
            println!("model      {model_str}");
            if let Some(t) = &theorem {
                match t.value {
                    GapValue::Exact(v) => println!("closed     {v:.12}  [{}]", t.regime),
                    GapValue::Bounds { lower, upper } => {
                        println!("closed     [{lower:.12}, {upper:.12}]  [{}]", t.regime)
                    }
                }
            }
            match best_eps {
                Some(eps) => println!(
                    "lower      {:.12}  (intertwining, best ε = {eps:.6})",
                    lower.value()
                ),
                None => println!("lower      {:.12}  ({})", lower.value(), lower.method()),
            }
            println!("upper      {:.12}  ({})", upper.value(), upper.method());
            println!(
                "numeric    {:.12} ± {:.2e}  ({}, quality {quality})",
                numeric.value(),
                numeric.error().unwrap_or(0.0),
                numeric.method(),
            );
        }
        "json" => {
            let mut out = String::from("{");
            out.push_str(&format!("\"model\":\"{model_str}\""));
            if let Some(t) = &theorem {
                match t.value {
                    GapValue::Exact(v) => {
                        out.push_str(&format!(
                            ",\"closed_form\":{{\"value\":{},\"regime\":\"{}\"}}",
                            fmt17(v),
                            t.regime
                        ));
                    }
                    GapValue::Bounds { lower, upper } => {
                        out.push_str(&format!(
                            ",\"closed_form\":{{\"lower\":{},\"upper\":{},\"regime\":\"{}\"}}",
                            fmt17(lower),
                            fmt17(upper),
                            t.regime
                        ));
                    }
                }
            } else {
                out.push_str(",\"closed_form\":null");
            }
            out.push_str(&format!(
                ",\"lower\":{{\"value\":{},\"method\":\"{}\"}}",
                fmt17(lower.value()),
                lower.method().replace('"', "'"),
            ));
            out.push_str(&format!(
                ",\"upper\":{{\"value\":{},\"method\":\"{}\"}}",
                fmt17(upper.value()),
                upper.method().replace('"', "'"),
            ));
            out.push_str(&format!(
                ",\"numeric\":{{\"value\":{},\"error\":{},\"method\":\"{}\",\"quality\":\"{quality}\"}}",
                fmt17(numeric.value()),
                fmt17(numeric.error().unwrap_or(0.0)),
                numeric.method().replace('"', "'"),
            ));
            out.push('}');
            println!("{out}");
        }
        other => {
            return Err(Failure::parse(format!(
                "unknown format '{other}' (text|json)"
            )))
        }
    }
    Ok(0)
}

/// One sweep row: every estimate plus the cross-validation flags.
struct SweepRow {
    model: String,
    param: f64,
    closed_form: Option<f64>,
    lower: f64,
    upper: f64,
    numeric: f64,
    numeric_err: f64,
    inside_bounds: bool,
    matches_closed_form: Option<bool>,
}

/// Per-regime tolerance for the `matches_closed_form` flag: 1e−3 in the
/// eigenvalue regimes, 2e−2 in the essential-spectrum regimes.
fn match_tolerance(tag: FamilyTag) -> f64 {
    match tag {
        FamilyTag::ExpPower { alpha } => {
            if alpha == 1.0 {
                2e-2
            } else {
                1e-3
            }
        }
        FamilyTag::GaussianWeighted { b } => {
            if b < 0.5 {
                1e-3
            } else {
                2e-2
            }
        }
        FamilyTag::Cauchy { beta } => {
            if beta > 1.5 {
                1e-3
            } else {
                2e-2
            }
        }
        _ => 1e-3,
    }
}

fn sweep_row(family: &str, param: f64, quality: Quality) -> poincare_gap::Result<SweepRow> {
    let model = match family {
        "exp-power" => models::make_exp_power(param)?,
        "gauss-weighted" => models::make_gaussian_weighted(param)?,
        "cauchy" => models::make_cauchy(param)?,
        "cauchy-bl" => models::make_cauchy_bl(param)?,
        _ => unreachable!("family validated by the caller"),
    };
    let theorem: Option<TheoremValue> = closed_form::theorem_value(model.family_tag());
    let closed = theorem.as_ref().and_then(|t| t.value.exact());

    let (lo, hi) = match model.family_tag() {
        FamilyTag::ExpPower { alpha } => closed_form::exp_power_gap_bounds(alpha)?,
        _ => {
            let (_, l) = lower_bound(&model)?;
            let u = upper_bound(&model)?;
            (l.value(), u.value())
        }
    };
    let numeric = spectral::spectral_gap_numeric(&model, quality)?;
    let inside = numeric.value() >= lo - 1e-6 && numeric.value() <= hi + 1e-6;
    let matches = closed.map(|cf| {
        ((numeric.value() - cf) / cf.abs().max(1e-300)).abs() <= match_tolerance(model.family_tag())
    });
    Ok(SweepRow {
        model: model.family_tag().label(),
        param,
        closed_form: closed,
        lower: lo,
        upper: hi,
        numeric: numeric.value(),
        numeric_err: numeric.error().unwrap_or(0.0),
        inside_bounds: inside,
        matches_closed_form: matches,
    })
}

const CSV_HEADER: &str =
    "model,param,closed_form,lower,upper,numeric,numeric_err,inside_bounds,matches_closed_form";

fn render_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.model,
            fmt17(r.param),
            r.closed_form.map(fmt17).unwrap_or_default(),
            fmt17(r.lower),
            fmt17(r.upper),
            fmt17(r.numeric),
            fmt17(r.numeric_err),
            r.inside_bounds,
            r.matches_closed_form
                .map(|b| b.to_string())
                .unwrap_or_default(),
        ));
    }
    out
}

fn render_json(rows: &[SweepRow]) -> String {
    let mut out = String::from("{\"rows\":[");
    for (i, r) in rows.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format!(
            "{{\"model\":\"{}\",\"param\":{},\"closed_form\":{},\"lower\":{},\"upper\":{},\"numeric\":{},\"numeric_err\":{},\"inside_bounds\":{},\"matches_closed_form\":{}}}",
            r.model,
            fmt17(r.param),
            r.closed_form.map(fmt17).unwrap_or_else(|| "null".into()),
            fmt17(r.lower),
            fmt17(r.upper),
            fmt17(r.numeric),
            fmt17(r.numeric_err),
            r.inside_bounds,
            r.matches_closed_form
                .map(|b| b.to_string())
                .unwrap_or_else(|| "null".into()),
        ));
    }
    out.push_str("]}\n");
    out
}

fn cmd_sweep(
    family: &str,
    range: &[f64],
    quality: Quality,
    format: &str,
    output: Option<&std::path::Path>,
    jobs: usize,
) -> Result<i32, Failure> {
    if !matches!(
        family,
        "exp-power" | "gauss-weighted" | "cauchy" | "cauchy-bl"
    ) {
        return Err(Failure::parse(format!(
            "unknown family '{family}' (exp-power|gauss-weighted|cauchy|cauchy-bl)"
        )));
    }
    let [min, max, step] = range else {
        return Err(Failure::parse("--range needs MIN,MAX,STEP"));
    };
    if !(step > &0.0) || !(max >= min) {
        return Err(Failure::parse("--range needs MIN ≤ MAX and STEP > 0"));
    }
    if !matches!(format, "csv" | "json") {
        return Err(Failure::parse(format!(
            "unknown format '{format}' (csv|json)"
        )));
    }

    let mut params = Vec::new();
    let mut p = *min;
    while p <= max + 1e-12 {
        params.push(p);
        p += step;
    }

    let compute = || -> Vec<poincare_gap::Result<SweepRow>> {
        use rayon::prelude::*;
        params
            .par_iter()
            .map(|&p| sweep_row(family, p, quality))
            .collect()
    };
    let results = if jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Failure::numeric(e.to_string()))?
            .install(compute)
    } else {
        compute()
    };
    let rows: Vec<SweepRow> = results
        .into_iter()
        .collect::<poincare_gap::Result<_>>()
        .map_err(|e| Failure::numeric(e.to_string()))?;

    let body = match format {
        "csv" => render_csv(&rows),
        _ => render_json(&rows),
    };
    match output {
        Some(path) => {
            let mut file = std::fs::File::create(path).map_err(|e| {
                Failure::unwritable(format!("cannot write {}: {e}", path.display()))
            })?;
            file.write_all(body.as_bytes()).map_err(|e| {
                Failure::unwritable(format!("cannot write {}: {e}", path.display()))
            })?;
        }
        None => print!("{body}"),
    }
    Ok(0)
}

fn cmd_verify(suite: &str, quality: Quality) -> Result<i32, Failure> {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::all().to_vec()
    } else {
        vec![Suite::from_str(suite).map_err(Failure::parse)?]
    };

    let mut all_passed = true;
    for s in suites {
        let report = verify::run_suite(s, quality).map_err(|e| Failure::numeric(e.to_string()))?;
        println!("== suite {} ==", report.name);
        for case in &report.cases {
            println!("{}", case.line());
        }
        let ok = report.passed();
        println!(
            "suite {}: {}/{} cases pass\n",
            report.name,
            report.cases.iter().filter(|c| c.passed).count(),
            report.cases.len()
        );
        all_passed &= ok;
    }
    if suite == "all" {
        for case in verify::sandwich_check(quality).map_err(|e| Failure::numeric(e.to_string()))? {
            println!("{}", case.line());
            all_passed &= case.passed;
        }
    }
    Ok(if all_passed { 0 } else { EXIT_VERIFY_FAILED })
}
