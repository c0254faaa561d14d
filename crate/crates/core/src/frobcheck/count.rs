//! The coefficient of `∏ x_i^{p-1}` in `ω^{p-1}` when `deg ω` equals the
//! number of variables.
//!
//! Summing `ω(a)^{p-1}` over `F_p^v` kills every monomial except
//! `∏ x_i^{p-1}`, so the coefficient is `(-1)^v · #{a : ω(a) != 0} mod p`.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use super::{require_ci, truncated_omega_power, FedderMethod};
use crate::error::{Error, Result};
use crate::fppoly::{sign_mod, PrimeModulus, TruncationContext};
use crate::shapes::{IdealPresentation, MatrixShape};

/// Largest number of points the plain point count will enumerate.
pub const POINTCOUNT_LIMIT: u64 = 1 << 40;

/// Default spacing of fiber checkpoints, in blocks.
pub const DEFAULT_CHECKPOINT_EVERY: u64 = 10_000_000;

/// Largest prime accepted by the counting methods.
const COUNT_P_LIMIT: u32 = 1 << 15;

/// Reduction modulo a fixed `d` by one wide multiplication (Lemire's fastmod).
#[derive(Debug, Clone, Copy)]
pub struct FastMod {
    d: u32,
    m: u64,
}

impl FastMod {
    pub fn new(d: u32) -> Self {
        assert!(d > 1, "modulus must exceed 1");
        FastMod { d, m: u64::MAX / d as u64 + 1 }
    }

    #[inline(always)]
    pub fn reduce(&self, a: u32) -> u32 {
        let low = self.m.wrapping_mul(a as u64);
        ((low as u128 * self.d as u128) >> 64) as u32
    }
}

#[derive(Debug, Clone, Default)]
pub struct ScanOptions {
    /// Resume from and periodically rewrite this file (fiber method only).
    pub checkpoint: Option<PathBuf>,
    /// Blocks between checkpoints; rounded up to whole outer fibers.
    pub checkpoint_every: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FedderCoefficient {
    pub method: FedderMethod,
    pub p: u32,
    pub coefficient: u32,
    /// `#{a : ω(a) != 0}` for the counting methods.
    pub nonvanishing_points: Option<u64>,
    /// Fiber blocks enumerated by this call.
    pub blocks: Option<u64>,
    pub resumed_from: Option<u64>,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Saved progress of a fiber scan: `block_index count_so_far p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Checkpoint {
    pub block_index: u64,
    pub count: u64,
    pub p: u32,
}

pub fn read_checkpoint(path: &Path) -> Result<Option<Checkpoint>> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let fields: Vec<&str> = text.split_whitespace().collect();
    let bad = |msg: &str| Error::Parse { pos: 0, msg: format!("checkpoint {}: {msg}", path.display()) };
    if fields.len() != 3 {
        return Err(bad("expected `block_index count_so_far p`"));
    }
    let num = |s: &str| s.parse::<u64>().map_err(|_| bad("not a number"));
    Ok(Some(Checkpoint { block_index: num(fields[0])?, count: num(fields[1])?, p: num(fields[2])? as u32 }))
}

fn write_checkpoint(path: &Path, cp: Checkpoint) -> Result<()> {
    let tmp = path.with_extension("tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        writeln!(f, "{} {} {}", cp.block_index, cp.count, cp.p)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Fedder coefficient of a complete intersection with `deg ω = v`.
pub fn fedder_coefficient_fullsupport(
    gens: &IdealPresentation,
    p: u32,
    method: FedderMethod,
    opts: &ScanOptions,
) -> Result<FedderCoefficient> {
    let started = Instant::now();
    let ring = require_ci(gens)?;
    if ring.p() != p {
        return Err(Error::RingMismatch(format!("generators over F_{}, requested p = {p}", ring.p())));
    }
    let modulus = PrimeModulus::prime(p as u64)?;
    let v = ring.nvars();
    let deg: u32 = gens.generators.iter().map(|g| g.degree().unwrap_or(0)).sum();
    if deg as usize != v {
        return Err(Error::Refused(format!("deg ω = {deg} but there are {v} variables")));
    }
    let mut out = FedderCoefficient {
        method,
        p,
        coefficient: 0,
        nonvanishing_points: None,
        blocks: None,
        resumed_from: None,
        elapsed: Duration::ZERO,
    };
    match method {
        FedderMethod::Truncated => {
            let ctx = TruncationContext::new(ring, modulus)?;
            let top = truncated_omega_power(gens, &ctx, p as u64 - 1)?;
            out.coefficient = top.coefficient_of(&ctx.socle_monomial());
        }
        FedderMethod::Pointcount => {
            let count = pointcount(gens, p)?;
            out.nonvanishing_points = Some(count);
            out.coefficient = signed_count(count, v, p);
        }
        FedderMethod::Fiber => {
            if gens.origin != Some((MatrixShape::generic(3, 4), 3)) {
                return Err(Error::Refused("the fiber method only handles the 3x3 permanents of a generic 3x4 matrix".into()));
            }
            let scan = fiber_scan(p, opts)?;
            out.nonvanishing_points = Some(scan.count);
            out.blocks = Some(scan.blocks);
            out.resumed_from = scan.resumed_from;
            out.coefficient = signed_count(scan.count, v, p);
        }
    }
    out.elapsed = started.elapsed();
    Ok(out)
}

fn signed_count(count: u64, v: usize, p: u32) -> u32 {
    let c = (count % p as u64) as u32;
    crate::fppoly::mul_mod(c, sign_mod(v as u64, p), p)
}

fn check_count_prime(p: u32) -> Result<()> {
    if p >= COUNT_P_LIMIT {
        return Err(Error::ResourceLimit(format!("counting methods need p < {COUNT_P_LIMIT}")));
    }
    Ok(())
}

/// A generator as a polynomial in the last variable, coefficients kept as
/// sparse `(coef, [(var, exp)])` terms in the other variables.
struct Compiled {
    by_power: Vec<Vec<SparseTerm>>,
}

type SparseTerm = (u32, Vec<(usize, usize)>);

fn pointcount(gens: &IdealPresentation, p: u32) -> Result<u64> {
    check_count_prime(p)?;
    let ring = gens.ring().expect("checked by require_ci");
    let v = ring.nvars();
    let total = (p as u64).checked_pow(v as u32).filter(|&t| t <= POINTCOUNT_LIMIT);
    if total.is_none() {
        return Err(Error::ResourceLimit(format!("{p}^{v} points exceed the point-count limit {POINTCOUNT_LIMIT}")));
    }
    if v == 0 {
        let c = gens.generators.iter().all(|g| g.constant_term() != 0);
        return Ok(c as u64);
    }
    let last = v - 1;
    let mut max_exp = 1usize;
    let compiled: Vec<Compiled> = gens
        .generators
        .iter()
        .map(|g| {
            let deg_last = g.terms().iter().map(|(m, _)| m.exponents()[last] as usize).max().unwrap_or(0);
            let mut by_power = vec![Vec::new(); deg_last + 1];
            for (m, c) in g.terms() {
                let e = m.exponents();
                let factors: Vec<(usize, usize)> = (0..last).filter(|&i| e[i] > 0).map(|i| (i, e[i] as usize)).collect();
                max_exp = max_exp.max(e.iter().copied().max().unwrap_or(0) as usize);
                by_power[e[last] as usize].push((*c, factors));
            }
            Compiled { by_power }
        })
        .collect();
    let fm = FastMod::new(p);
    // pow_table[a * (max_exp + 1) + e] = a^e
    let stride = max_exp + 1;
    let mut pow_table = vec![0u32; p as usize * stride];
    for a in 0..p {
        let mut acc = 1u32;
        for e in 0..stride {
            pow_table[a as usize * stride + e] = acc;
            acc = fm.reduce(acc * a);
        }
    }
    let prefix_vars = last;
    let split = prefix_vars.min(2);
    let outer_count = (p as u64).pow(split as u32);
    let count_outer = |o: u64| -> u64 {
        let mut point = vec![0u32; prefix_vars];
        let mut rest = o;
        for i in (0..split).rev() {
            point[i] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        let mut coeffs: Vec<Vec<u32>> = compiled.iter().map(|c| vec![0; c.by_power.len()]).collect();
        let mut hits = 0u64;
        loop {
            for (cg, out) in compiled.iter().zip(coeffs.iter_mut()) {
                for (k, terms) in cg.by_power.iter().enumerate() {
                    let mut s = 0u32;
                    for (c, factors) in terms {
                        let mut t = *c;
                        for &(var, e) in factors {
                            t = fm.reduce(t * pow_table[point[var] as usize * stride + e]);
                        }
                        s += t;
                        if s >= p {
                            s -= p;
                        }
                    }
                    out[k] = s;
                }
            }
            'values: for t in 0..p {
                for cs in &coeffs {
                    let mut acc = 0u32;
                    for &c in cs.iter().rev() {
                        acc = fm.reduce(acc * t + c);
                    }
                    if acc == 0 {
                        continue 'values;
                    }
                }
                hits += 1;
            }
            // odometer over the non-split prefix variables
            let mut i = prefix_vars;
            loop {
                if i == split {
                    return hits;
                }
                i -= 1;
                point[i] += 1;
                if point[i] < p {
                    break;
                }
                point[i] = 0;
            }
        }
    };
    Ok((0..outer_count).into_par_iter().map(count_outer).sum())
}

#[inline(always)]
fn minors(fm: &FastMod, a: &[u32; 3], b: &[u32; 3]) -> [u32; 3] {
    [
        fm.reduce(a[1] * b[2] + a[2] * b[1]),
        fm.reduce(a[0] * b[2] + a[2] * b[0]),
        fm.reduce(a[0] * b[1] + a[1] * b[0]),
    ]
}

#[inline(always)]
fn cross(fm: &FastMod, pp: u32, s: &[u32; 3], t: &[u32; 3]) -> [u32; 3] {
    [
        fm.reduce(s[1] * t[2] + pp - s[2] * t[1]),
        fm.reduce(s[2] * t[0] + pp - s[0] * t[2]),
        fm.reduce(s[0] * t[1] + pp - s[1] * t[0]),
    ]
}

#[inline(always)]
fn nonzero(s: &[u32; 3]) -> bool {
    (s[0] | s[1] | s[2]) != 0
}

/// Number of `c ∈ F_p^3` with `u·c`, `v·c`, `w·c` all nonzero, for `u != 0`.
#[inline(always)]
fn avoid_count(fm: &FastMod, pw: &[i64; 4], u: &[u32; 3], v: &[u32; 3], w: &[u32; 3]) -> u64 {
    let pp = fm.d * fm.d;
    let rank2 = |s: &[u32; 3], t: &[u32; 3], c: &[u32; 3]| -> usize {
        if nonzero(c) {
            2
        } else {
            (nonzero(s) || nonzero(t)) as usize
        }
    };
    let uv = cross(fm, pp, u, v);
    let uw = cross(fm, pp, u, w);
    let vw = cross(fm, pp, v, w);
    let r_uv = rank2(u, v, &uv);
    let r_uw = rank2(u, w, &uw);
    let r_vw = rank2(v, w, &vw);
    let det = fm.reduce(u[0] * vw[0] + u[1] * vw[1] + u[2] * vw[2]);
    let r_uvw = if det != 0 { 3 } else { r_uv.max(r_uw).max(r_vw) };
    let total = pw[0] - pw[1] - pw[nonzero(v) as usize] - pw[nonzero(w) as usize] + pw[r_uv] + pw[r_uw] + pw[r_vw] - pw[r_uvw];
    total as u64
}

fn powers(p: u32) -> [i64; 4] {
    let p = p as i64;
    [p * p * p, p * p, p, 1]
}

/// Nonvanishing fourth columns over one block `[a | b | y]` of the generic
/// 3x4 matrix (0 when the block's own permanent vanishes).
pub fn fiber_block_count(p: u32, a: [u32; 3], b: [u32; 3], y: [u32; 3]) -> Result<u64> {
    check_count_prime(p)?;
    let fm = FastMod::new(p);
    let red = |c: [u32; 3]| c.map(|x| x % p);
    let (a, b, y) = (red(a), red(b), red(y));
    let u = minors(&fm, &a, &b);
    let perm = fm.reduce(y[0] * u[0] + y[1] * u[1] + y[2] * u[2]);
    if perm == 0 {
        return Ok(0);
    }
    Ok(avoid_count(&fm, &powers(p), &u, &minors(&fm, &a, &y), &minors(&fm, &b, &y)))
}

struct FiberScan {
    count: u64,
    blocks: u64,
    resumed_from: Option<u64>,
}

fn column(index: u64, p: u64) -> [u32; 3] {
    [(index / (p * p)) as u32, ((index / p) % p) as u32, (index % p) as u32]
}

/// Sum over all blocks with fixed first two columns `o = (a, b)`.
fn fiber_outer(fm: &FastMod, pw: &[i64; 4], o: u64) -> u64 {
    let p = fm.d as u64;
    let p3 = p * p * p;
    let a = column(o / p3, p);
    let b = column(o % p3, p);
    let u = minors(fm, &a, &b);
    if !nonzero(&u) {
        return 0;
    }
    let mut sum = 0u64;
    for yi in 0..p3 {
        let y = column(yi, p);
        let perm = fm.reduce(y[0] * u[0] + y[1] * u[1] + y[2] * u[2]);
        if perm == 0 {
            continue;
        }
        sum += avoid_count(fm, pw, &u, &minors(fm, &a, &y), &minors(fm, &b, &y));
    }
    sum
}

/// Full fiber enumeration. Block index = `outer · p^3 + inner`, where
/// `outer` runs over the first two columns and `inner` over the third, each
/// column read top to bottom as base-`p` digits.
fn fiber_scan(p: u32, opts: &ScanOptions) -> Result<FiberScan> {
    check_count_prime(p)?;
    let fm = FastMod::new(p);
    let pw = powers(p);
    let p64 = p as u64;
    let per_outer = p64.pow(3);
    let outers = p64.pow(6);
    let mut start = 0u64;
    let mut count = 0u64;
    let mut resumed_from = None;
    if let Some(path) = &opts.checkpoint {
        if let Some(cp) = read_checkpoint(path)? {
            if cp.p != p {
                return Err(Error::InvalidArgument(format!("checkpoint {} is for p = {}, not {p}", path.display(), cp.p)));
            }
            if cp.block_index % per_outer != 0 || cp.block_index > outers * per_outer {
                return Err(Error::InvalidArgument(format!("checkpoint {} has a misaligned block index", path.display())));
            }
            start = cp.block_index / per_outer;
            count = cp.count;
            resumed_from = Some(cp.block_index);
        }
    }
    let chunk = match &opts.checkpoint {
        Some(_) => opts.checkpoint_every.unwrap_or(DEFAULT_CHECKPOINT_EVERY).div_ceil(per_outer).max(1),
        None => outers,
    };
    let first = start;
    while start < outers {
        let end = (start + chunk).min(outers);
        count += (start..end).into_par_iter().map(|o| fiber_outer(&fm, &pw, o)).sum::<u64>();
        start = end;
        if let Some(path) = &opts.checkpoint {
            write_checkpoint(path, Checkpoint { block_index: start * per_outer, count, p })?;
        }
    }
    Ok(FiberScan { count, blocks: (outers - first) * per_outer, resumed_from })
}

/// The fiber count with each of the first three columns normalised to
/// leading entry 1. Scaling a column by a unit scales whole permanents, so
/// every orbit of `(F_p^*)^3` has the same count and blocks with a zero
/// column contribute nothing.
pub fn fiber_count_projective(p: u32) -> Result<u64> {
    check_count_prime(p)?;
    let fm = FastMod::new(p);
    let pw = powers(p);
    let p64 = p as u64;
    let reps: Vec<[u32; 3]> = (1..p64.pow(3))
        .map(|i| column(i, p64))
        .filter(|c| c.iter().find(|&&x| x != 0) == Some(&1))
        .collect();
    let orbit = (p64 - 1).pow(3);
    let sum: u64 = (0..reps.len() * reps.len())
        .into_par_iter()
        .map(|k| {
            let (a, b) = (&reps[k / reps.len()], &reps[k % reps.len()]);
            let u = minors(&fm, a, b);
            if !nonzero(&u) {
                return 0;
            }
            let mut s = 0u64;
            for y in &reps {
                let perm = fm.reduce(y[0] * u[0] + y[1] * u[1] + y[2] * u[2]);
                if perm != 0 {
                    s += avoid_count(&fm, &pw, &u, &minors(&fm, a, y), &minors(&fm, b, y));
                }
            }
            s
        })
        .sum();
    Ok(sum * orbit)
}
