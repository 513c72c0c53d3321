use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use altpoly::families::{FamilyKind, FamilyParams};
use altpoly::io::{parse_document, polys_to_json, to_canonical_string};
use altpoly::pipeline::{run_pipeline, verify_document, PipelineConfig, PEARSON_ORDER};
use altpoly::{parse_rational, Rational};

mod plot;
mod search;

#[derive(Parser, Debug)]
#[command(name = "altpoly", version, about = "Exact alternating orthogonal polynomial families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate a family from its closed form.
    Generate(GenerateArgs),
    /// Build the alternating family from moments and check every identity.
    Pipeline(PipelineArgs),
    /// Replay the checks recorded in a pipeline document.
    Verify(InputArgs),
    /// Search a functional for a Pearson pair.
    Pearson(PearsonArgs),
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// One of shifted-jacobi, big-m1-jacobi, comp-bannai-ito, bannai-ito,
    /// shifted-laguerre, m1-meixner-pollaczek.
    #[arg(long)]
    family: String,
    /// Family parameter as key=value with a rational value, e.g. lambda=1/2.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
    /// Highest index produced.
    #[arg(long)]
    depth: usize,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Write here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Sample grid for CSV output: first abscissa.
    #[arg(long, default_value = "-1", allow_hyphen_values = true)]
    x_min: String,
    /// Sample grid for CSV output: last abscissa.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    x_max: String,
    /// Sample grid for CSV output: number of points.
    #[arg(long, default_value_t = 21)]
    samples: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct PipelineArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Annihilation point; fixed by the family for big-m1-jacobi and m1-meixner-pollaczek.
    #[arg(long, allow_hyphen_values = true)]
    tau: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// JSON document to read.
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct PearsonArgs {
    /// JSON document with `u_moments`, or a functional with `moments`.
    #[arg(long)]
    input: PathBuf,
    /// Highest moment condition imposed and checked.
    #[arg(long, default_value_t = PEARSON_ORDER)]
    depth: usize,
    #[command(flatten)]
    output: OutputArgs,
}

/// Whether the command's own checks all held.
pub(crate) enum Outcome {
    Clean,
    Violations(usize),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::Violations(n)) => {
            eprintln!("{n} violation(s) recorded");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Generate(args) => generate(args),
        Command::Pipeline(args) => pipeline(args),
        Command::Verify(args) => verify(args),
        Command::Pearson(args) => search::pearson(&args.input, args.depth, args.output.out.as_ref()),
    }
}

fn family_params(args: &FamilyArgs) -> Result<FamilyParams> {
    let kind: FamilyKind = args.family.parse()?;
    let mut map = BTreeMap::new();
    for item in &args.params {
        let (key, value) = item
            .split_once('=')
            .with_context(|| format!("parameter {item:?} is not of the form key=value"))?;
        if map.insert(key.trim().to_string(), value.trim().to_string()).is_some() {
            bail!("parameter {key:?} given twice");
        }
    }
    Ok(FamilyParams::from_map(kind, &map)?)
}

fn rational_arg(text: &str, name: &str) -> Result<Rational> {
    parse_rational(text).with_context(|| format!("reading --{name}"))
}

pub(crate) fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(stdout.flush()?)
        }
    }
}

pub(crate) fn read_document(path: &PathBuf) -> Result<serde_json::Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_document(&text).with_context(|| format!("parsing {}", path.display()))
}

fn generate(args: GenerateArgs) -> Result<Outcome> {
    let params = family_params(&args.family)?;
    let depth = args.family.depth;
    let family = params
        .generate(depth)
        .with_context(|| format!("generating {} to depth {depth}", params.kind()))?;
    let text = match args.format {
        Format::Json => {
            let variable = match params.kind() {
                FamilyKind::ShiftedJacobi | FamilyKind::ShiftedLaguerre => "t",
                _ => "x",
            };
            let doc = serde_json::json!({
                "family": params.kind().id(),
                "params": params.to_map(),
                "depth": depth,
                "variable": variable,
                "rows": polys_to_json(&family),
            });
            to_canonical_string(&doc)
        }
        Format::Csv => {
            let lo = rational_arg(&args.x_min, "x-min")?;
            let hi = rational_arg(&args.x_max, "x-max")?;
            plot::sample_table(&family, &lo, &hi, args.samples)?
        }
    };
    emit(args.output.out.as_ref(), &text)?;
    Ok(Outcome::Clean)
}

fn pipeline(args: PipelineArgs) -> Result<Outcome> {
    if args.format != Format::Json {
        bail!("pipeline documents are JSON only; use generate --format csv for plot data");
    }
    let family = family_params(&args.family)?;
    let tau = args.tau.as_deref().map(|t| rational_arg(t, "tau")).transpose()?;
    let config = PipelineConfig {
        family,
        tau,
        depth: args.family.depth,
    };
    let run = run_pipeline(&config)
        .with_context(|| format!("running the pipeline for {} at depth {}", config.family.kind(), config.depth))?;
    emit(args.output.out.as_ref(), &to_canonical_string(&run.to_json()?))?;
    Ok(outcome(run.checks.violations()))
}

fn verify(args: InputArgs) -> Result<Outcome> {
    let doc = read_document(&args.input)?;
    let checks = verify_document(&doc).with_context(|| format!("verifying {}", args.input.display()))?;
    let report = serde_json::json!({
        "checks": checks.to_json(),
        "violations": checks.violations(),
    });
    emit(args.output.out.as_ref(), &to_canonical_string(&report))?;
    Ok(outcome(checks.violations()))
}

pub(crate) fn outcome(violations: usize) -> Outcome {
    if violations == 0 {
        Outcome::Clean
    } else {
        Outcome::Violations(violations)
    }
}
