//! `fracbound`: verify, sweep and probe subcommands.
//!
//! Exit codes: 0 success, 1 inequality violation, 2 input error.

mod args;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::Parser;
use fracbound_core::bounds::ids;
use fracbound_core::report;
use fracbound_core::verifier::{sharpness_probe, sweep_curves, ProbeFamily, ProbeSetup};
use fracbound_core::{run_corpus, Family, FunctionSpec, QuadratureSettings, ReportFormat, RunConfig};

use args::{Cli, Command, FormatArg, ProbeArgs, SweepArgs, VerifyArgs};

const EXIT_VIOLATION: u8 = 1;
const EXIT_INPUT: u8 = 2;

/// Failure classes mapped onto exit codes.
enum Failure {
    Input(anyhow::Error),
    Violation,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(EXIT_INPUT);
    }
    let outcome = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Sweep(a) => sweep(a),
        Command::Probe(a) => probe(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation) => ExitCode::from(EXIT_VIOLATION),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

/// `FRACBOUND_THREADS` caps the worker pool; 0 or unset means automatic.
fn configure_threads() -> anyhow::Result<()> {
    let Ok(raw) = std::env::var("FRACBOUND_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .with_context(|| format!("FRACBOUND_THREADS must be a nonnegative integer, got `{raw}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .context("cannot configure thread pool")
}

fn write_output(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verify(args: VerifyArgs) -> Result<(), Failure> {
    let text = fs::read_to_string(&args.config)
        .with_context(|| format!("cannot read config {}", args.config.display()))?;
    let mut config = RunConfig::from_json(&text).map_err(|e| anyhow!(e))?;
    if let Some(f) = args.format {
        config.format = match f {
            FormatArg::Json => ReportFormat::Json,
            FormatArg::Csv => ReportFormat::Csv,
        };
    }
    let out: PathBuf = args
        .out
        .or_else(|| config.output_path.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("report.json"));

    let report = run_corpus(&config).map_err(|e| anyhow!(e))?;
    let body = match config.format {
        ReportFormat::Json => report::to_json(&report),
        ReportFormat::Csv => report::to_csv(&report),
    }
    .map_err(|e| anyhow!(e))?;
    write_output(Some(&out), &body)?;

    let s = &report.summary;
    let worst = s
        .worst_margin
        .iter()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(id, m)| format!("worst margin {m:.3e} ({id})"))
        .unwrap_or_else(|| "no margins".into());
    let residual = s
        .worst_residual
        .iter()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(id, r)| format!("worst residual {r:.3e} ({id})"))
        .unwrap_or_else(|| "no residuals".into());
    println!(
        "{} cases: {} pass, {} violation, {} error; {worst}; {residual}; {:.2} s -> {}",
        report.records.len(),
        s.counts.pass,
        s.counts.violation,
        s.counts.error,
        report.timing.runtime_seconds,
        out.display()
    );
    if report.has_violations() {
        return Err(Failure::Violation);
    }
    Ok(())
}

fn parse_interval(s: &str) -> anyhow::Result<(f64, f64)> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b] = parts.as_slice() else {
        bail!("--interval expects `a,b`, got `{s}`");
    };
    let a: f64 = a.parse().with_context(|| format!("bad interval start `{a}`"))?;
    let b: f64 = b.parse().with_context(|| format!("bad interval end `{b}`"))?;
    if !(a.is_finite() && b.is_finite() && a < b) {
        bail!("--interval must satisfy a < b, got [{a}, {b}]");
    }
    Ok((a, b))
}

/// `start:stop:step` (inclusive) or `a,b,c`.
fn parse_alphas(s: &str) -> anyhow::Result<Vec<f64>> {
    let alphas: Vec<f64> = if s.contains(':') {
        let nums = s
            .split(':')
            .map(|p| p.trim().parse::<f64>().with_context(|| format!("bad --alpha `{s}`")))
            .collect::<anyhow::Result<Vec<_>>>()?;
        let [start, stop, step] = nums.as_slice() else {
            bail!("--alpha range expects start:stop:step, got `{s}`");
        };
        if !(*step > 0.0) || stop < start {
            bail!("--alpha range needs step > 0 and stop >= start, got `{s}`");
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
        (0..count).map(|i| start + step * i as f64).collect()
    } else {
        s.split(',')
            .map(|p| p.trim().parse::<f64>().with_context(|| format!("bad --alpha `{s}`")))
            .collect::<anyhow::Result<_>>()?
    };
    if alphas.is_empty() {
        bail!("--alpha is empty");
    }
    if let Some(a) = alphas.iter().find(|a| !(a.is_finite() && **a >= 1.0)) {
        bail!("alphas must be ≥ 1, got {a}");
    }
    Ok(alphas)
}

fn sweep(args: SweepArgs) -> Result<(), Failure> {
    let family: Family = args.function.parse().map_err(|e| anyhow!("--function: {e}"))?;
    let f = FunctionSpec::new("sweep", family);
    let (a, b) = parse_interval(&args.interval)?;
    let alphas = parse_alphas(&args.alpha)?;
    if args.x_grid == 0 {
        return Err(anyhow!("--x-grid must be at least 1").into());
    }
    let rows = sweep_curves(&f, a, b, &alphas, args.x_grid, &QuadratureSettings::default())
        .map_err(|e| anyhow!(e))?;
    let csv = report::sweep_to_csv(&rows).map_err(|e| anyhow!(e))?;
    write_output(args.out.as_deref(), &csv)?;
    Ok(())
}

fn probe(args: ProbeArgs) -> Result<(), Failure> {
    if !ids::ALL_LEVELS.contains(&args.bound.as_str()) {
        return Err(anyhow!(
            "unknown bound id `{}`; valid ids: {}",
            args.bound,
            ids::ALL_LEVELS.join(", ")
        )
        .into());
    }
    let family: ProbeFamily = args.family.parse().map_err(|e| anyhow!("--family: {e}"))?;
    let (a, b) = parse_interval(&args.interval)?;
    let setup = ProbeSetup {
        a,
        b,
        x: args.x.unwrap_or(a),
        alpha: args.alpha,
    };
    let outcome = sharpness_probe(&args.bound, family, args.budget, &setup, &QuadratureSettings::default())
        .map_err(|e| anyhow!(e))?;

    let witness = outcome
        .witness
        .iter()
        .map(|(n, v)| format!("{n}={v}"))
        .collect::<Vec<_>>()
        .join(", ");
    match outcome.best_ratio {
        Some(r) => println!(
            "{} / {}: best ratio {r:.10} at {witness} ({} evaluations, {} skipped)",
            outcome.bound_id, outcome.family, outcome.evaluations, outcome.skipped
        ),
        None => println!(
            "{} / {}: no ratio, all {} evaluations skipped (rhs = 0)",
            outcome.bound_id, outcome.family, outcome.evaluations
        ),
    }
    if let Some(path) = &args.out {
        let line = serde_json::to_string(&outcome).context("cannot serialise probe record")?;
        let mut file = fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .with_context(|| format!("cannot open {}", path.display()))?;
        writeln!(file, "{line}").with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(())
}
