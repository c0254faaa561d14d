//! `permcheck` command-line front end.
//!
//! Exit codes: 0 when every report passes, 2 on any failure, 3 when the
//! worst verdict is inconclusive, 1 for usage and configuration errors.

mod args;
mod bench;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::time::Instant;

use clap::Parser;
use permcheck_core::frobcheck::ScanOptions;
use permcheck_core::report::{LemmaReport, Verdict};
use permcheck_core::shapes::MatrixShape;
use permcheck_core::witnesses::*;
use rayon::prelude::*;
use serde::Serialize;

pub use args::{BenchId, Cli, Format, RunConfig, ScanTarget, Task, VerifyCheck};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAIL: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] permcheck_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    /// Two implementations benchmarked side by side returned different results.
    #[error("benchmark mismatch: {0}")]
    Mismatch(String),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

#[derive(Debug, Serialize)]
pub struct RunSummary {
    pub version: &'static str,
    pub config: RunConfig,
    pub verdict: Verdict,
    pub reports: Vec<LemmaReport>,
    pub ms: u64,
}

pub fn exit_code(v: Verdict) -> i32 {
    match v {
        Verdict::Pass => EXIT_PASS,
        Verdict::Fail => EXIT_FAIL,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

/// Parses `argv`, runs the task and writes its output; returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(cli: Cli) -> Result<i32, CliError> {
    let config = RunConfig::from_cli(cli)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = config.threads {
        builder = builder.num_threads(t);
    }
    let pool = builder.build()?;
    if let Task::Bench(id) = config.task {
        let csv = pool.install(|| bench::run(id, &config))?;
        emit(&config, &csv)?;
        return Ok(EXIT_PASS);
    }
    let started = Instant::now();
    let reports = pool.install(|| run_reports(&config))?;
    let verdict = reports.iter().fold(Verdict::Pass, |acc, r| acc.combine(r.verdict));
    let summary = RunSummary {
        version: env!("CARGO_PKG_VERSION"),
        config: config.clone(),
        verdict,
        reports,
        ms: started.elapsed().as_millis() as u64,
    };
    let text = match config.format {
        Format::Json => serde_json::to_string_pretty(&summary)? + "\n",
        Format::Text => render_text(&summary),
    };
    emit(&config, &text)?;
    if config.out.is_some() {
        println!("{verdict}");
    }
    Ok(exit_code(verdict))
}

fn emit(config: &RunConfig, text: &str) -> Result<(), CliError> {
    match &config.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

type Job = Box<dyn Fn() -> permcheck_core::Result<LemmaReport> + Send + Sync>;

fn per_prime(config: &RunConfig, f: impl Fn(u32) -> permcheck_core::Result<LemmaReport> + Send + Sync + Clone + 'static) -> Result<Vec<Job>, CliError> {
    Ok(config
        .primes()?
        .iter()
        .map(|&p| {
            let f = f.clone();
            Box::new(move || f(p)) as Job
        })
        .collect())
}

fn jobs(config: &RunConfig) -> Result<Vec<Job>, CliError> {
    let check = match config.task {
        Task::Verify(check) => check,
        Task::Scan(ScanTarget::Conjecture45) => {
            config.require_e1()?;
            let p = config.primes()?.to_vec();
            let method = config.method;
            let opts = ScanOptions { checkpoint: config.checkpoint.clone(), checkpoint_every: None };
            return Ok(vec![Box::new(move || scan_conjecture_4_5(&p, method, &opts))]);
        }
        Task::Bench(_) => unreachable!("benchmarks do not produce reports"),
    };
    if check != VerifyCheck::Fpure {
        config.require_e1()?;
    }
    Ok(match check {
        VerifyCheck::Lemma31 => {
            let n = config.size()?;
            vec![Box::new(move || verify_lemma_3_1(n))]
        }
        VerifyCheck::Lemma32 => {
            let n = config.size()?;
            vec![Box::new(move || verify_lemma_3_2(n))]
        }
        VerifyCheck::Thm36 => {
            let n = config.size()?;
            vec![Box::new(move || verify_theorem_3_6(n))]
        }
        VerifyCheck::Lemma34 => {
            let n = config.size()?;
            per_prime(config, move |p| verify_lemma_3_4(n, p))?
        }
        VerifyCheck::Thm35 => {
            let n = config.size()?;
            per_prime(config, move |p| verify_theorem_3_5(n, p))?
        }
        VerifyCheck::WitnessGeneric => {
            let (m, n) = config.dims()?;
            per_prime(config, move |p| verify_witness_membership(MatrixShape::generic(m, n), p))?
        }
        VerifyCheck::WitnessSymmetric => {
            if let Some(s) = config.shape.filter(|s| !matches!(s, MatrixShape::Symmetric { .. })) {
                return Err(CliError::Usage(format!("--shape {s}: a symmetric shape is required")));
            }
            let n = config.size()?;
            per_prime(config, move |p| verify_witness_membership(MatrixShape::symmetric(n), p))?
        }
        VerifyCheck::Monomials28 => {
            let (m, n) = config.dims()?;
            per_prime(config, move |p| verify_monomials_2_8(m, n, p))?
        }
        VerifyCheck::Monomials29 => {
            let (m, n) = config.dims()?;
            per_prime(config, move |p| verify_monomials_2_9(m, n, p))?
        }
        VerifyCheck::Fpure => {
            let shape = match (config.shape, config.m, config.n) {
                (Some(s), _, _) => s,
                (None, Some(m), Some(n)) => MatrixShape::generic(m, n),
                _ => return Err(CliError::Usage("--shape is required".into())),
            };
            let t = match (config.t, shape) {
                (Some(t), _) => t,
                (None, MatrixShape::Hankel { n }) => n,
                _ => return Err(CliError::Usage("--t is required".into())),
            };
            let e = config.e;
            per_prime(config, move |p| verify_fpure(shape, t, p, e))?
        }
    })
}

/// Runs every job on the current pool; results keep parameter order.
pub fn run_reports(config: &RunConfig) -> Result<Vec<LemmaReport>, CliError> {
    let jobs = jobs(config)?;
    let reports: permcheck_core::Result<Vec<LemmaReport>> = jobs.par_iter().map(|job| job()).collect();
    Ok(reports?)
}

pub fn render_text(summary: &RunSummary) -> String {
    let mut out = String::new();
    for rep in &summary.reports {
        let _ = writeln!(out, "{}", rep.summary_line());
        for c in &rep.evidence.checks {
            let tag = if c.required { c.verdict.to_string() } else { format!("{} (info)", c.verdict) };
            if c.detail.is_empty() {
                let _ = writeln!(out, "  [{tag}] {}", c.name);
            } else {
                let _ = writeln!(out, "  [{tag}] {}: {}", c.name, c.detail);
            }
        }
        let ev = &rep.evidence;
        if let Some(s) = &ev.survivor {
            let _ = writeln!(out, "  survivor: {s}");
        }
        if let Some(r) = &ev.residue {
            let _ = writeln!(out, "  residue: {r}");
        }
        if let Some(c) = ev.coefficient {
            let _ = writeln!(out, "  coefficient: {c}");
        }
        for (k, v) in &ev.counts {
            let _ = writeln!(out, "  {k} = {v}");
        }
        for note in &ev.notes {
            let _ = writeln!(out, "  note: {note}");
        }
    }
    let _ = writeln!(out, "verdict: {} ({} reports, {} ms)", summary.verdict, summary.reports.len(), summary.ms);
    out
}
