use std::fs::{self, File};
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use cww_core::codebook::{build_codebook, read_person_csv, read_survey_csv, Codebook};
use cww_core::encoder::{EncoderConfig, EncoderMethod};
use cww_core::scenario::{CompareRow, Outcome, RowStatus, RunReport, Scenario};
use cww_core::Error;

const SEED_ENV: &str = "CWW_SEED";

/// Computing-with-words toolkit: build codebooks from survey intervals and
/// run linguistic decision scenarios.
#[derive(Parser)]
#[command(name = "cww", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a codebook from survey intervals.
    Encode(EncodeArgs),
    /// Run a scenario under its own methodology.
    Run(RunArgs),
    /// Run a scenario under every methodology and tabulate the results.
    Compare(RunArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Ia,
    Eia,
    Hma,
}

#[derive(Args)]
struct EncodeArgs {
    /// Survey CSV (`word,subject,left,right`, or the person format with `--person`).
    survey: PathBuf,
    /// Output codebook path; stdout when omitted.
    #[arg(short, long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    method: Option<Method>,
    /// Input rows are `word,left_min,left_max,right_min,right_max` person ranges.
    #[arg(long)]
    person: bool,
    /// Encoder settings as JSON; explicit flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    scale_max: Option<f64>,
    #[arg(long)]
    person_samples: Option<usize>,
}

#[derive(Args)]
struct RunArgs {
    scenario: PathBuf,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
    /// Also print intermediate artifacts.
    #[arg(short, long)]
    verbose: bool,
}

/// Failures are either domain errors (exit 1) or input problems (exit 2).
enum Failure {
    Domain(anyhow::Error),
    Input(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        let input = e.chain().any(|c| {
            c.is::<io::Error>()
                || c.is::<serde_json::Error>()
                || matches!(
                    c.downcast_ref::<Error>(),
                    Some(Error::Validation { .. } | Error::InvalidCodebook(_) | Error::InvalidConfig(_) | Error::InvalidTermSet(_))
                )
        });
        if input {
            Failure::Input(e)
        } else {
            Failure::Domain(e)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Encode(a) => encode(a),
        Command::Run(a) => run(a),
        Command::Compare(a) => compare(a),
    };
    match res {
        Ok(code) => code,
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn encoder_config(a: &EncodeArgs) -> Result<EncoderConfig> {
    let mut cfg = match &a.config {
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))?
        }
        None => EncoderConfig::default(),
    };
    if let Ok(s) = std::env::var(SEED_ENV) {
        cfg.rng_seed = s
            .parse()
            .map_err(|_| Error::InvalidConfig(format!("{SEED_ENV}=`{s}` is not an unsigned integer")))?;
    }
    if let Some(m) = a.method {
        cfg.method = match m {
            Method::Ia => EncoderMethod::Ia,
            Method::Eia => EncoderMethod::Eia,
            Method::Hma => EncoderMethod::Hma,
        };
    }
    cfg.rng_seed = a.seed.unwrap_or(cfg.rng_seed);
    cfg.tolerance_gamma = a.gamma.unwrap_or(cfg.tolerance_gamma);
    cfg.tolerance_alpha = a.alpha.unwrap_or(cfg.tolerance_alpha);
    cfg.scale_max = a.scale_max.unwrap_or(cfg.scale_max);
    cfg.person_samples = a.person_samples.unwrap_or(cfg.person_samples);
    cfg.validate()?;
    Ok(cfg)
}

fn encode(a: EncodeArgs) -> Result<ExitCode, Failure> {
    let cfg = encoder_config(&a)?;
    let file = File::open(&a.survey)
        .with_context(|| format!("opening {}", a.survey.display()))?;
    let reader = BufReader::new(file);
    let survey = if a.person {
        read_person_csv(reader, &cfg)
    } else {
        read_survey_csv(reader)
    }
    .with_context(|| format!("reading {}", a.survey.display()))?;
    let cb = build_codebook(&survey, &cfg).map_err(anyhow::Error::from)?;

    let mut json = cb.to_json();
    json.push('\n');
    match &a.out {
        Some(p) => fs::write(p, &json).with_context(|| format!("writing {}", p.display()))?,
        None => io::stdout().write_all(json.as_bytes()).context("writing stdout")?,
    }
    for e in cb.entries() {
        if let Some(t) = e.trace {
            eprintln!("{}: encoded ({} class), survivors {:?}", e.word, e.fou.class(), t.counts());
        }
    }
    for f in cb.failures() {
        eprintln!("{}: failed: {}", f.word, f.error);
    }
    Ok(if cb.failures().is_empty() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn load_scenario(path: &Path) -> Result<(Scenario, Option<Codebook>)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let scenario = Scenario::from_json(&text).with_context(|| format!("in {}", path.display()))?;
    let codebook = match &scenario.perc {
        Some(p) => {
            let cb_path = path.parent().unwrap_or(Path::new(".")).join(&p.codebook);
            let text = fs::read_to_string(&cb_path).with_context(|| format!("reading codebook {}", cb_path.display()))?;
            Some(Codebook::from_json(&text).with_context(|| format!("in {}", cb_path.display()))?)
        }
        None => None,
    };
    Ok((scenario, codebook))
}

fn run(a: RunArgs) -> Result<ExitCode, Failure> {
    let (scenario, cb) = load_scenario(&a.scenario)?;
    let report = scenario.run(cb.as_ref()).map_err(anyhow::Error::from)?;
    if a.json {
        println!("{}", serde_json::to_string_pretty(&report).context("serialising report")?);
    } else {
        print_report(&report, a.verbose);
    }
    Ok(ExitCode::SUCCESS)
}

fn print_report(r: &RunReport, verbose: bool) {
    println!("methodology: {}", r.methodology);
    println!("recommendation: {}", r.outcome.recommendation());
    for w in &r.warnings {
        println!("warning: {w}");
    }
    if !verbose {
        return;
    }
    println!("{}", r.outcome.summary());
    match &r.outcome {
        Outcome::Term { tuples, .. } => {
            for (i, t) in tuples.iter().enumerate() {
                println!("  tuple[{i}] = ({}, {}, {})", t.l, t.m, t.r);
            }
        }
        Outcome::TwoTuple { beta, .. } => println!("  beta = {beta}"),
        Outcome::Word { scores, aggregate, .. } => {
            for (w, s) in scores {
                println!("  similarity({w}) = {s:.6}");
            }
            if let Ok(fou) = aggregate.to_fou() {
                println!("  umf = {:?}", fou.umf_params());
                println!("  lmf = {:?}", fou.lmf_params());
            }
        }
        _ => {}
    }
}

fn compare(a: RunArgs) -> Result<ExitCode, Failure> {
    let (scenario, cb) = load_scenario(&a.scenario)?;
    let rows = scenario.compare(cb.as_ref());
    if a.json {
        println!("{}", serde_json::to_string_pretty(&rows).context("serialising report")?);
    } else {
        print_table(&rows, a.verbose);
    }
    let ok = rows.iter().filter(|r| r.status == RowStatus::Ok).count();
    Ok(if ok >= 1 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn print_table(rows: &[CompareRow], verbose: bool) {
    let header = ["methodology", "recommendation", "summary", "time (ms)"];
    let cells: Vec<[String; 4]> = rows
        .iter()
        .map(|r| {
            [
                r.methodology.to_string(),
                r.recommendation.clone(),
                r.summary.clone(),
                format!("{:.3}", r.wall_time_ms),
            ]
        })
        .collect();
    let mut width = header.map(str::len);
    for row in &cells {
        for (w, c) in width.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |c: [&str; 4]| {
        format!("{:<w0$}  {:<w1$}  {:<w2$}  {:>w3$}", c[0], c[1], c[2], c[3], w0 = width[0], w1 = width[1], w2 = width[2], w3 = width[3])
    };
    println!("{}", line(header));
    for row in &cells {
        println!("{}", line([&row[0], &row[1], &row[2], &row[3]]).trim_end());
    }
    if verbose {
        for r in rows {
            for w in r.report.iter().flat_map(|rep| &rep.warnings) {
                println!("warning ({}): {w}", r.methodology);
            }
        }
    }
}
