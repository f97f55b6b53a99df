use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use phihh::bounds::{Instance, Status};
use phihh::harness::report::{canonical_json, csv_from_value, DrawParams, InstanceRecord};
use phihh::harness::{explain, falsify, run_suite, SuiteConfig, SuiteReport, Target};
use phihh::{HolderParams, PhiSegment, ScalarFn, TheoremId};

#[derive(Parser)]
#[command(name = "phihh", version, about = "Check Hermite-Hadamard type bounds on rotated segments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one theorem on one segment.
    Check {
        #[arg(long)]
        expr: String,
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
        #[arg(long, default_value_t = 0.0)]
        phi: f64,
        #[arg(long)]
        theorem: TheoremId,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        q: Option<f64>,
        #[arg(long, default_value_t = phihh::convexity::DEFAULT_GRID)]
        grid: usize,
        #[arg(long, default_value_t = phihh::quadrature::DEFAULT_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
    },
    /// Run a seeded suite described by a JSON config.
    Suite {
        #[arg(long)]
        config: PathBuf,
    },
    /// Random search for instances of the given kind.
    Falsify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        target: Target,
    },
    /// Print the formula and hypothesis of a theorem id.
    Explain { id: String },
}

fn check(
    expr: &str,
    segment: PhiSegment,
    theorem: TheoremId,
    params: HolderParams,
    grid: usize,
    tol: f64,
    format: Format,
) -> Result<u8> {
    let f = ScalarFn::parse(expr).with_context(|| format!("cannot parse `{expr}`"))?;
    let result = Instance::new(&f, segment, tol, grid)
        .and_then(|inst| inst.evaluate(theorem, &params))
        .with_context(|| format!("cannot evaluate {theorem}"))?;
    let code = u8::from(result.status == Status::ViolatedWithHypothesis) * 2;
    let record = InstanceRecord {
        corpus_id: expr.to_string(),
        draw: 0,
        theorem,
        segment,
        params: DrawParams { p: params.p.unwrap_or(f64::NAN), q: params.q.unwrap_or(f64::NAN) },
        result: Some(result.clone()),
        error: None,
    };
    let value = serde_json::to_value(&record)?;
    match format {
        Format::Json => print!("{}", canonical_json(&value)),
        Format::Csv => print!("{}", csv_from_value(&serde_json::json!({ "results": [value] }))),
        Format::Pretty => {
            println!("theorem     {theorem}");
            println!("f           {}", f.expr());
            println!("f'          {}", f.deriv());
            println!("segment     a={} b={} phi={}", segment.a(), segment.b(), segment.phi());
            println!("lhs         {:.12}", result.lhs);
            println!("rhs         {:.12}", result.rhs);
            println!("margin      {:.6e}", result.margin);
            match result.sharpness {
                Some(s) => println!("sharpness   {s:.6}"),
                None => println!("sharpness   undefined"),
            }
            let h = &result.hypothesis;
            println!("hypothesis  {:?} of {}: {:?} (grid {})", h.kind, h.target, h.verdict, h.grid);
            if let Some(w) = &h.witness {
                println!("witness     t1={} t2={} lambda={} violation={:.3e}", w.t1, w.t2, w.lambda, w.violation);
            }
            if let Some(aux) = result.aux_rhs {
                println!("aux rhs     {aux:.12}");
            }
            if let Some(c) = &result.chain {
                println!(
                    "chain       {:.9} <= {:.9} <= {:.9} <= {:.9}",
                    c.midpoint_value, c.mean, c.trapezoid, c.generator_average
                );
            }
            for flag in &result.flags {
                println!("flag        {}", serde_json::to_value(flag)?.as_str().unwrap_or_default());
            }
            println!("status      {}", result.status.name());
        }
    }
    Ok(code)
}

fn emit(report: &SuiteReport, cfg: &SuiteConfig) -> Result<()> {
    let json = report.canonical_json();
    match &cfg.output.json {
        Some(path) => std::fs::write(path, &json).with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{json}"),
    }
    if let Some(path) = &cfg.output.csv {
        std::fs::write(path, report.csv()).with_context(|| format!("cannot write {}", path.display()))?;
    }
    let counts: Vec<String> = report.summary.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
    eprintln!(
        "{} evaluations, {} reported, {} violations [{}]",
        report.metadata.evaluated,
        report.results.len(),
        report.metadata.violations,
        counts.join(" ")
    );
    Ok(())
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Check { expr, a, b, phi, theorem, p, q, grid, tol, format } => {
            let segment = PhiSegment::new(a, b, phi)?;
            check(&expr, segment, theorem, HolderParams { p, q }, grid, tol, format)
        }
        Command::Suite { config } => {
            let cfg = SuiteConfig::load(&config)?;
            let report = run_suite(&cfg)?;
            emit(&report, &cfg)?;
            Ok(report.exit_code() as u8)
        }
        Command::Falsify { config, target } => {
            let cfg = SuiteConfig::load(&config)?;
            let report = falsify(&cfg, target)?;
            emit(&report, &cfg)?;
            Ok(report.exit_code() as u8)
        }
        Command::Explain { id } => {
            print!("{}", explain(&id)?);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
