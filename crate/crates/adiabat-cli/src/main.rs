//! Command-line surface: entropies, transform decisions, catalyst tools,
//! rate scans, and the randomized axiom suites. JSON in, JSON/CSV out.
//!
//! Exit codes encode decisions so shell pipelines can branch on them:
//! 0 = possible / all passed, 1 = impossible / failures found, 2 = error.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use adiabat::catalysis::{base_from_lambda, build_embezzler, Catalyst};
use adiabat::io::{self, float17_value};
use adiabat::meters::{battery_entropies, run_meter_axiom_suite};
use adiabat::scalar::{parse_ratio_literal, Scalar};
use adiabat::smoothing::{smooth_max_entropy, smooth_min_entropy};
use adiabat::spectrum::Spectrum;
use adiabat::transforms::{
    self, probabilistic_possible, run_adiabatic_axiom_suite, run_necsuff_suite, smooth_possible,
    Certificate, SuiteConfig, SuiteReport, TransformMode,
};
use adiabat::{asymptotics, Error};

#[derive(Parser)]
#[command(
    name = "adiabat",
    version,
    about = "Transformability decisions and entropies for finite spectra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Numeric {
    F64,
    Rational,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct CommonArgs {
    /// Numeric mode: f64 with tolerance, or exact rationals.
    #[arg(long, value_enum, default_value = "f64")]
    numeric: Numeric,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Entropies of one spectrum: exact, smoothed, and battery variants.
    Entropy {
        /// Spectrum: a JSON file path, inline JSON, or a comma list like "3/4,1/4".
        #[arg(long)]
        spectrum: String,
        /// Error tolerance in [0, 1).
        #[arg(long, default_value = "0")]
        eps: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Decide a transformation between two spectra.
    Transform {
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        #[arg(long, default_value = "0")]
        eps: String,
        /// Relation to decide.
        #[arg(long, value_enum, default_value = "smooth")]
        mode: CliTransformMode,
        /// Where the smoothing budget goes in smooth mode.
        #[arg(long, value_enum, default_value = "input")]
        smoothing: SmoothingKind,
        /// Grid points for split smoothing.
        #[arg(long, default_value_t = transforms::DEFAULT_SPLIT_GRID)]
        split_grid: usize,
        /// Catalyst JSON (file or inline) for catalytic mode.
        #[arg(long)]
        catalyst: Option<String>,
        /// Build an embezzler catalyst for this meter label instead.
        #[arg(long)]
        cat_lambda: Option<f64>,
        /// Tolerance the built catalyst is designed for (defaults to --eps).
        #[arg(long)]
        cat_eps: Option<String>,
        /// Zero-pad the smaller spectrum to the common dimension.
        #[arg(long)]
        pad: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Catalyst tools.
    Catalyst {
        #[command(subcommand)]
        command: CatalystCommand,
    },
    /// Entropy-rate scan of tensor powers, with optional equilibrium sandwich.
    Scan {
        #[arg(long)]
        spectrum: String,
        #[arg(long, default_value = "1/10")]
        eps: String,
        /// Copy counts, comma separated.
        #[arg(long, default_value = "50,100,200,500,1000,2000")]
        n_values: String,
        #[arg(long, value_enum, default_value = "smooth")]
        mode: ScanMode,
        /// Also check the meter sandwich at this rate margin.
        #[arg(long)]
        equilibrium_delta: Option<f64>,
        /// Smallest copy count the sandwich check considers.
        #[arg(long, default_value_t = 1)]
        n0: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Randomized axiom suites with a fixed seed.
    Axioms {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 5)]
        max_dim: usize,
        /// Harness self-test: corrupt the transitivity check and expect
        /// reported counterexamples.
        #[arg(long, value_enum)]
        inject_bug: Option<InjectBug>,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Subcommand)]
enum CatalystCommand {
    /// Build an embezzling catalyst for the meter step `lambda -> 0`.
    Build {
        /// Meter label; 2^lambda must be an integer >= 2.
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        eps: String,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CliTransformMode {
    Exact,
    Smooth,
    Probabilistic,
    Catalytic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SmoothingKind {
    Input,
    Output,
    Split,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScanMode {
    Smooth,
    Probabilistic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InjectBug {
    A3Sign,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            let obj = json!({"error": {"kind": error_kind(&err), "message": err.to_string()}});
            eprintln!("{obj}");
            ExitCode::from(2)
        }
    }
}

fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::NotNormalized { .. } => "not_normalized",
        Error::NegativeEigenvalue { .. } => "negative_eigenvalue",
        Error::AmbientTooSmall { .. } => "ambient_too_small",
        Error::AmbientMismatch { .. } => "ambient_mismatch",
        Error::EpsilonOutOfRange { .. } => "epsilon_out_of_range",
        Error::Overflow { .. } => "overflow",
        Error::DimensionTooLarge { .. } => "dimension_too_large",
        Error::CapTooSmall { .. } => "cap_too_small",
        Error::Domain(_) => "domain",
        Error::Parse(_) => "parse",
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Entropy { spectrum, eps, common } => {
            let value = match common.numeric {
                Numeric::F64 => {
                    let s = load_spectrum_f64(&spectrum)?;
                    entropy_report(&s, &parse_eps_f64(&eps)?)?
                }
                Numeric::Rational => {
                    let s = load_spectrum_exact(&spectrum)?;
                    entropy_report(&s, &parse_ratio_literal(&eps)?)?
                }
            };
            emit(&common.out, &pretty(&value))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Transform {
            source,
            target,
            eps,
            mode,
            smoothing,
            split_grid,
            catalyst,
            cat_lambda,
            cat_eps,
            pad,
            common,
        } => {
            let opts = TransformOptions {
                mode,
                smoothing,
                split_grid,
                catalyst,
                cat_lambda,
                cat_eps,
                pad,
            };
            let (value, possible) = match common.numeric {
                Numeric::F64 => run_transform(
                    load_spectrum_f64(&source)?,
                    load_spectrum_f64(&target)?,
                    parse_eps_f64(&eps)?,
                    &opts,
                )?,
                Numeric::Rational => run_transform(
                    load_spectrum_exact(&source)?,
                    load_spectrum_exact(&target)?,
                    parse_ratio_literal(&eps)?,
                    &opts,
                )?,
            };
            emit(&common.out, &pretty(&value))?;
            Ok(if possible { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Catalyst { command } => match command {
            CatalystCommand::Build { lambda, eps, common } => {
                let base = base_from_lambda(lambda)?;
                let text = match common.numeric {
                    Numeric::F64 => {
                        let c = build_embezzler::<f64>(base, &parse_eps_f64(&eps)?)?;
                        io::catalyst_to_json_f64(&c)
                    }
                    Numeric::Rational => {
                        let c =
                            build_embezzler::<BigRational>(base, &parse_ratio_literal(&eps)?)?;
                        io::catalyst_to_json_exact(&c)
                    }
                };
                emit(&common.out, &text)?;
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Scan {
            spectrum,
            eps,
            n_values,
            mode,
            equilibrium_delta,
            n0,
            format,
            common,
        } => {
            let ns = parse_n_values(&n_values)?;
            let rate_mode = match mode {
                ScanMode::Smooth => asymptotics::RateMode::Smooth,
                ScanMode::Probabilistic => asymptotics::RateMode::Probabilistic,
            };
            let (points, equilibrium) = match common.numeric {
                Numeric::F64 => {
                    let s = load_spectrum_f64(&spectrum)?;
                    let e = parse_eps_f64(&eps)?;
                    let points = asymptotics::rate_scan(&s, &e, &ns, rate_mode)?;
                    let eq = equilibrium_delta
                        .map(|d| asymptotics::equilibrium_check(&s, &e, d, n0, &ns, rate_mode))
                        .transpose()?;
                    (points, eq)
                }
                Numeric::Rational => {
                    let s = load_spectrum_exact(&spectrum)?;
                    let e = parse_ratio_literal(&eps)?;
                    let points = asymptotics::rate_scan(&s, &e, &ns, rate_mode)?;
                    let eq = equilibrium_delta
                        .map(|d| asymptotics::equilibrium_check(&s, &e, d, n0, &ns, rate_mode))
                        .transpose()?;
                    (points, eq)
                }
            };
            let text = match format {
                OutputFormat::Csv => io::rate_points_to_csv(&points),
                OutputFormat::Json => {
                    let rows: Vec<Value> = points
                        .iter()
                        .map(|p| {
                            json!({
                                "n": p.n,
                                "s_minus_rate": float17_value(p.s_minus_rate),
                                "s_plus_rate": float17_value(p.s_plus_rate),
                                "target": float17_value(p.target),
                            })
                        })
                        .collect();
                    let mut doc = json!({"points": rows});
                    if let Some(eq) = equilibrium {
                        doc["equilibrium"] = json!({
                            "holds_for_all": eq.holds_for_all(),
                            "first_failure": eq.first_failure,
                            "points": eq.points.iter().map(|p| json!({
                                "n": p.n,
                                "lower_ok": p.lower_ok,
                                "upper_ok": p.upper_ok,
                            })).collect::<Vec<_>>(),
                        });
                    }
                    pretty(&doc)
                }
            };
            emit(&common.out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Axioms { seed, trials, max_dim, inject_bug, common } => {
            let config = SuiteConfig {
                seed,
                trials,
                max_dim: max_dim.max(2),
                inject_a3_sign_bug: matches!(inject_bug, Some(InjectBug::A3Sign)),
                ..SuiteConfig::default()
            };
            let (adiabatic, meter, necsuff) = match common.numeric {
                Numeric::F64 => (
                    run_adiabatic_axiom_suite::<f64>(&config)?,
                    run_meter_axiom_suite::<f64>(&config)?,
                    run_necsuff_suite::<f64>(&config)?,
                ),
                Numeric::Rational => (
                    run_adiabatic_axiom_suite::<BigRational>(&config)?,
                    run_meter_axiom_suite::<BigRational>(&config)?,
                    run_necsuff_suite::<BigRational>(&config)?,
                ),
            };
            let all_pass = adiabatic.all_pass() && meter.all_pass() && necsuff.all_pass();
            let doc = json!({
                "seed": seed,
                "trials": trials,
                "suites": {
                    "adiabatic": suite_json(&adiabatic),
                    "meter": suite_json(&meter),
                    "entropy_conditions": suite_json(&necsuff),
                },
                "all_pass": all_pass,
            });
            emit(&common.out, &pretty(&doc))?;
            Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

struct TransformOptions {
    mode: CliTransformMode,
    smoothing: SmoothingKind,
    split_grid: usize,
    catalyst: Option<String>,
    cat_lambda: Option<f64>,
    cat_eps: Option<String>,
    pad: bool,
}

trait CliScalar: Scalar {
    fn parse_eps(text: &str) -> Result<Self, Error>;
    fn load_catalyst(input: &str) -> Result<Catalyst<Self>, Error>;
    fn spectrum_value(s: &Spectrum<Self>) -> Value;
}

impl CliScalar for f64 {
    fn parse_eps(text: &str) -> Result<f64, Error> {
        parse_eps_f64(text)
    }
    fn load_catalyst(input: &str) -> Result<Catalyst<f64>, Error> {
        io::parse_catalyst_json_f64(&read_maybe_file(input)?)
    }
    fn spectrum_value(s: &Spectrum<f64>) -> Value {
        serde_json::to_value(io::spectrum_doc_f64(s)).expect("spectrum docs serialize")
    }
}

impl CliScalar for BigRational {
    fn parse_eps(text: &str) -> Result<BigRational, Error> {
        parse_ratio_literal(text)
    }
    fn load_catalyst(input: &str) -> Result<Catalyst<BigRational>, Error> {
        io::parse_catalyst_json_exact(&read_maybe_file(input)?)
    }
    fn spectrum_value(s: &Spectrum<BigRational>) -> Value {
        serde_json::to_value(io::spectrum_doc_exact(s)).expect("spectrum docs serialize")
    }
}

fn run_transform<T: CliScalar>(
    source: Spectrum<T>,
    target: Spectrum<T>,
    eps: T,
    opts: &TransformOptions,
) -> Result<(Value, bool), Error> {
    let (source, target) = if opts.pad {
        Spectrum::pad_pair(&source, &target)
    } else {
        (source, target)
    };
    let report = match opts.mode {
        CliTransformMode::Exact => {
            let violation = source.majorization_violation(&target)?;
            return Ok((
                json!({
                    "mode": "exact",
                    "possible": violation.is_none(),
                    "violated_prefix": violation.clone().map(|v| v.to_string()),
                }),
                violation.is_none(),
            ));
        }
        CliTransformMode::Smooth => {
            let mode = match opts.smoothing {
                SmoothingKind::Input => TransformMode::SmoothInput,
                SmoothingKind::Output => TransformMode::SmoothOutput,
                SmoothingKind::Split => {
                    TransformMode::SmoothSplit { grid_points: opts.split_grid.max(1) }
                }
            };
            smooth_possible(&source, &target, &eps, mode)?
        }
        CliTransformMode::Probabilistic => probabilistic_possible(&source, &target, &eps)?,
        CliTransformMode::Catalytic => {
            let catalyst: Catalyst<T> = match (&opts.catalyst, opts.cat_lambda) {
                (Some(input), _) => T::load_catalyst(input)?,
                (None, Some(lambda)) => {
                    let cat_eps = match &opts.cat_eps {
                        Some(text) => T::parse_eps(text)?,
                        None => eps.clone(),
                    };
                    build_embezzler(base_from_lambda(lambda)?, &cat_eps)?
                }
                (None, None) => {
                    return Err(Error::Domain(
                        "catalytic mode needs --catalyst or --cat-lambda".into(),
                    ))
                }
            };
            adiabat::catalysis::catalytic_possible(&source, &target, &eps, &catalyst)?
        }
    };
    let certificate = report.certificate.as_ref().map(|c| match c {
        Certificate::Smoothed { source, target } => json!({
            "kind": "smoothed",
            "source": T::spectrum_value(source),
            "target": T::spectrum_value(target),
        }),
        Certificate::Mixing { xi } => json!({
            "kind": "mixing",
            "xi": xi.as_ref().map(T::spectrum_value),
        }),
    });
    let value = json!({
        "mode": mode_name(opts.mode),
        "possible": report.possible,
        "certificate": certificate,
        "violated_prefix": report.violated_prefix.map(|v| v.to_string()),
    });
    Ok((value, report.possible))
}

fn mode_name(mode: CliTransformMode) -> &'static str {
    match mode {
        CliTransformMode::Exact => "exact",
        CliTransformMode::Smooth => "smooth",
        CliTransformMode::Probabilistic => "probabilistic",
        CliTransformMode::Catalytic => "catalytic",
    }
}

fn entropy_report<T: Scalar>(s: &Spectrum<T>, eps: &T) -> Result<Value, Error> {
    let exact = s.entropies();
    let h_min_eps = smooth_min_entropy(s, eps)?;
    let s_plus_eps = smooth_max_entropy(s, eps)?;
    let battery = battery_entropies(s, eps)?;
    let probabilistic = transforms::probabilistic_entropies(s, eps)?;
    Ok(json!({
        "h_min": float17_value(exact.h_min),
        "h_zero": float17_value(exact.h_zero),
        "von_neumann": float17_value(exact.von_neumann),
        "h_min_eps": float17_value(h_min_eps),
        "s_plus_eps": float17_value(s_plus_eps),
        "battery": {"s_minus": battery.s_minus, "s_plus": battery.s_plus},
        "probabilistic": {
            "s_minus": float17_value(probabilistic.s_minus),
            "s_plus": float17_value(probabilistic.s_plus),
        },
    }))
}

fn suite_json(report: &SuiteReport) -> Value {
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "trials": c.trials,
                "effective_trials": c.effective_trials,
                "pass": c.pass(),
                "counterexamples": c.counterexamples,
            })
        })
        .collect();
    json!({"checks": checks, "all_pass": report.all_pass()})
}

fn parse_eps_f64(text: &str) -> Result<f64, Error> {
    let r = parse_ratio_literal(text)?;
    Ok(Scalar::to_f64(&r))
}

fn parse_n_values(text: &str) -> Result<Vec<u64>, Error> {
    text.split(',')
        .map(|p| {
            p.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad copy count {p:?}")))
        })
        .collect()
}

fn read_maybe_file(input: &str) -> Result<String, Error> {
    let trimmed = input.trim();
    if trimmed.starts_with('{') {
        return Ok(trimmed.to_string());
    }
    if std::path::Path::new(trimmed).exists() {
        return fs::read_to_string(trimmed).map_err(|e| Error::Parse(format!("{trimmed}: {e}")));
    }
    Ok(trimmed.to_string())
}

fn load_spectrum_f64(input: &str) -> Result<Spectrum<f64>, Error> {
    io::parse_inline_spectrum_f64(&read_maybe_file(input)?)
}

fn load_spectrum_exact(input: &str) -> Result<Spectrum<BigRational>, Error> {
    io::parse_inline_spectrum_exact(&read_maybe_file(input)?)
}

fn pretty(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn emit(out: &Option<String>, text: &str) -> Result<(), Error> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Error::Parse(format!("{path}: {e}"))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
