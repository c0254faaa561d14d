//! CSV timing harness. Inputs come from a fixed-seed generator so rows are
//! comparable across runs.

use std::fmt::Write as _;
use std::hint::black_box;
use std::time::Instant;

use permcheck_core::fppoly::{PrimeModulus, TruncationContext};
use permcheck_core::frobcheck::{fedder_coefficient_fullsupport, FedderMethod, ScanOptions};
use permcheck_core::shapes::{
    build_matrix, permanent_eval, permanent_eval_dp, permanent_eval_naive, permanental_generators, MatrixShape,
};
use permcheck_core::witnesses::hankel_permanent;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{BenchId, CliError, RunConfig};

pub const CSV_HEADER: &str = "bench,method,size,p,ns_per_op,ops";
const SEED: u64 = 0x5eed;

struct Table(String);

impl Table {
    fn new() -> Self {
        Table(format!("{CSV_HEADER}\n"))
    }

    fn row(&mut self, bench: &str, method: &str, size: usize, p: u32, ns: u128, ops: u64) {
        let per = ns as f64 / ops.max(1) as f64;
        let _ = writeln!(self.0, "{bench},{method},{size},{p},{per:.1},{ops}");
    }
}

pub fn run(id: BenchId, config: &RunConfig) -> Result<String, CliError> {
    let mut table = Table::new();
    match id {
        BenchId::PermanentEval => permanent_eval_rows(config, &mut table)?,
        BenchId::TruncatedPow => truncated_pow_rows(config, &mut table)?,
        BenchId::Pointcount => pointcount_rows(config, &mut table)?,
    }
    Ok(table.0)
}

fn primes_or(config: &RunConfig, default: &[u32]) -> Vec<u32> {
    if config.p.is_empty() {
        default.to_vec()
    } else {
        config.p.clone()
    }
}

type Eval = fn(&[Vec<u32>], u32) -> permcheck_core::Result<u32>;

fn permanent_eval_rows(config: &RunConfig, table: &mut Table) -> Result<(), CliError> {
    let max = config.n.unwrap_or(8);
    if !(3..=12).contains(&max) {
        return Err(CliError::Usage(format!("--n {max}: permanent-eval sizes run from 3 up to at most 12")));
    }
    let methods: [(&str, Eval); 3] = [("ryser", permanent_eval), ("dp", permanent_eval_dp), ("naive", permanent_eval_naive)];
    for p in primes_or(config, &[32749]) {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for size in 3..=max {
            let inputs: Vec<Vec<Vec<u32>>> =
                (0..16).map(|_| (0..size).map(|_| (0..size).map(|_| rng.gen_range(0..p)).collect()).collect()).collect();
            let mut expected = Vec::new();
            for (name, f) in methods {
                if name == "naive" && size > 9 {
                    continue;
                }
                let ops = (1u64 << 16 >> size).max(16);
                let started = Instant::now();
                let mut results = Vec::with_capacity(inputs.len());
                for i in 0..ops {
                    let v = f(black_box(&inputs[i as usize % inputs.len()]), p)?;
                    if i < inputs.len() as u64 {
                        results.push(v);
                    }
                }
                let ns = started.elapsed().as_nanos();
                if expected.is_empty() {
                    expected = results;
                } else if results != expected {
                    return Err(CliError::Mismatch(format!("{name} disagrees with ryser at size {size}")));
                }
                table.row("permanent-eval", name, size, p, ns, ops);
            }
        }
    }
    Ok(())
}

fn truncated_pow_rows(config: &RunConfig, table: &mut Table) -> Result<(), CliError> {
    let n = config.n.unwrap_or(3);
    let (mat, space) = build_matrix(MatrixShape::hankel(n))?;
    for p in primes_or(config, &[3, 5, 7]) {
        let ring = permcheck_core::fppoly::PolyRing::new(space.clone(), p)?;
        let ctx = TruncationContext::new(&ring, PrimeModulus::prime(p as u64)?)?;
        let f = ctx.truncate(&hankel_permanent(&mat, &ring, n)?)?;
        let ops = 20u64;
        let mut outputs = Vec::new();
        for (name, binary) in [("binary", true), ("repeated", false)] {
            let started = Instant::now();
            let mut last = None;
            for _ in 0..ops {
                let r = if binary { ctx.pow(black_box(&f), (p - 1) as u64)? } else { ctx.pow_repeated(black_box(&f), (p - 1) as u64)? };
                last = Some(r);
            }
            table.row("truncated-pow", name, n, p, started.elapsed().as_nanos(), ops);
            outputs.extend(last);
        }
        if outputs.windows(2).any(|w| w[0] != w[1]) {
            return Err(CliError::Mismatch(format!("binary and repeated powering disagree at p={p}")));
        }
    }
    Ok(())
}

fn pointcount_rows(config: &RunConfig, table: &mut Table) -> Result<(), CliError> {
    let (mat, space) = build_matrix(MatrixShape::generic(3, 4))?;
    for p in primes_or(config, &[5]) {
        let ring = permcheck_core::fppoly::PolyRing::new(space.clone(), p)?;
        let gens = permanental_generators(&mat, &ring, 3)?;
        let opts = ScanOptions::default();
        for (method, ops) in [(FedderMethod::Pointcount, (p as u64).pow(12)), (FedderMethod::Fiber, (p as u64).pow(9))] {
            let started = Instant::now();
            fedder_coefficient_fullsupport(&gens, p, method, &opts)?;
            table.row("pointcount", &method.to_string(), 12, p, started.elapsed().as_nanos(), ops);
        }
    }
    Ok(())
}
