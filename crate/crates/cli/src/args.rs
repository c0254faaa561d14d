use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use permcheck_core::frobcheck::FedderMethod;
use permcheck_core::fppoly::is_prime;
use permcheck_core::shapes::MatrixShape;
use serde::Serialize;

use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "permcheck", version, about = "Exact F_p checks for F-singularities of permanental ideals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one claim-level verification over the given parameters.
    Verify {
        check: VerifyCheck,
        #[command(flatten)]
        args: RunArgs,
    },
    /// Scan a prime list.
    Scan {
        target: ScanTarget,
        #[command(flatten)]
        args: RunArgs,
    },
    /// Print CSV timings.
    Bench {
        id: BenchId,
        #[command(flatten)]
        args: RunArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyCheck {
    Lemma31,
    Lemma32,
    Lemma34,
    Thm35,
    Thm36,
    WitnessGeneric,
    WitnessSymmetric,
    Monomials28,
    Monomials29,
    Fpure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanTarget {
    Conjecture45,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BenchId {
    PermanentEval,
    TruncatedPow,
    Pointcount,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// generic:MxN, symmetric:N or hankel:N
    #[arg(long)]
    pub shape: Option<String>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    /// Prime or comma-separated prime list.
    #[arg(long, value_delimiter = ',')]
    pub p: Vec<u32>,
    #[arg(long, default_value_t = 1)]
    pub e: u32,
    #[arg(long, default_value = "truncated", value_parser = parse_method)]
    pub method: FedderMethod,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
}

fn parse_method(s: &str) -> Result<FedderMethod, String> {
    s.parse::<FedderMethod>().map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "command", content = "target", rename_all = "lowercase")]
pub enum Task {
    Verify(VerifyCheck),
    Scan(ScanTarget),
    Bench(BenchId),
}

/// Validated invocation, echoed into every JSON summary.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    #[serde(flatten)]
    pub task: Task,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "shape_text")]
    pub shape: Option<MatrixShape>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    pub p: Vec<u32>,
    pub e: u32,
    pub method: FedderMethod,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    pub format: Format,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checkpoint: Option<PathBuf>,
}

fn shape_text<S: serde::Serializer>(shape: &Option<MatrixShape>, s: S) -> Result<S::Ok, S::Error> {
    match shape {
        Some(shape) => s.collect_str(shape),
        None => s.serialize_none(),
    }
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let (task, a) = match cli.command {
            Command::Verify { check, args } => (Task::Verify(check), args),
            Command::Scan { target, args } => (Task::Scan(target), args),
            Command::Bench { id, args } => (Task::Bench(id), args),
        };
        let shape = a.shape.as_deref().map(str::parse::<MatrixShape>).transpose()?;
        for &p in &a.p {
            if p < 3 || !is_prime(p as u64) {
                return Err(CliError::Usage(format!("--p {p}: expected an odd prime")));
            }
        }
        if a.e == 0 {
            return Err(CliError::Usage("--e must be at least 1".into()));
        }
        if a.threads == Some(0) {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        let mut p = a.p;
        let mut seen = std::collections::HashSet::new();
        p.retain(|x| seen.insert(*x));
        Ok(RunConfig {
            task,
            shape,
            m: a.m,
            n: a.n,
            t: a.t,
            p,
            e: a.e,
            method: a.method,
            threads: a.threads,
            format: a.format,
            out: a.out,
            checkpoint: a.checkpoint,
        })
    }

    pub fn primes(&self) -> Result<&[u32], CliError> {
        if self.p.is_empty() {
            return Err(CliError::Usage("--p is required".into()));
        }
        Ok(&self.p)
    }

    /// `n` from `--n` or from a square `--shape`.
    pub fn size(&self) -> Result<usize, CliError> {
        match (self.n, self.shape) {
            (Some(n), _) => Ok(n),
            (None, Some(MatrixShape::Hankel { n } | MatrixShape::Symmetric { n })) => Ok(n),
            _ => Err(CliError::Usage("--n is required".into())),
        }
    }

    /// `(m, n)` for generic-matrix checks.
    pub fn dims(&self) -> Result<(usize, usize), CliError> {
        match (self.shape, self.m, self.n) {
            (Some(MatrixShape::Generic { rows, cols }), None, None) => Ok((rows, cols)),
            (Some(s), _, _) if !matches!(s, MatrixShape::Generic { .. }) => {
                Err(CliError::Usage(format!("--shape {s}: a generic shape is required")))
            }
            (Some(_), _, _) => Err(CliError::Usage("give either --shape or --m/--n".into())),
            (None, Some(m), Some(n)) => Ok((m, n)),
            _ => Err(CliError::Usage("--shape generic:MxN or --m and --n are required".into())),
        }
    }

    pub fn require_e1(&self) -> Result<(), CliError> {
        if self.e != 1 {
            return Err(CliError::Usage(format!("--e {}: this check is defined for e = 1 only", self.e)));
        }
        Ok(())
    }
}
