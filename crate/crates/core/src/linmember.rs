//! Degree-bounded ideal membership by linear algebra over `F_p`.
//!
//! `target ∈ (g_1, .., g_k)` up to degree `d` iff the target's coefficient
//! vector lies in the span of all products `μ·g_i` with `deg μ <= d - deg g_i`.
//! No Gröbner bases: the system is assembled column by column and solved by
//! sparse Gaussian elimination.

use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::fppoly::{add_mod, inv_mod, mul_mod, neg_mod, sub_mod, Monomial, PolyRing, Polynomial};

/// Largest number of nonzero matrix entries [`member_bounded`] will assemble.
pub const MAX_MATRIX_ENTRIES: usize = 10_000_000;

#[derive(Debug, Clone)]
pub struct MembershipInstance {
    pub target: Polynomial,
    pub generators: Vec<Polynomial>,
    pub degree_bound: u32,
}

/// Sparse linear system `A x = b` over `F_p`, stored by rows.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    p: u32,
    ncols: usize,
    rows: Vec<Vec<(usize, u32)>>,
    rhs: Vec<u32>,
}

impl LinearSystem {
    pub fn new(p: u32, ncols: usize) -> Self {
        Self { p, ncols, rows: Vec::new(), rhs: Vec::new() }
    }

    /// Appends the equation `sum entries = rhs`; duplicate columns are summed.
    pub fn push_row(&mut self, entries: impl IntoIterator<Item = (usize, u32)>, rhs: u32) -> Result<()> {
        let mut row: Vec<(usize, u32)> = Vec::new();
        for (c, v) in entries {
            if c >= self.ncols {
                return Err(Error::InvalidArgument(format!("column {c} out of range {}", self.ncols)));
            }
            row.push((c, v % self.p));
        }
        row.sort_unstable_by_key(|e| e.0);
        let mut merged: Vec<(usize, u32)> = Vec::with_capacity(row.len());
        for (c, v) in row {
            match merged.last_mut() {
                Some(last) if last.0 == c => last.1 = add_mod(last.1, v, self.p),
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|e| e.1 != 0);
        self.rows.push(merged);
        self.rhs.push(rhs % self.p);
        Ok(())
    }

    pub fn from_dense(p: u32, matrix: &[Vec<u32>], rhs: &[u32]) -> Result<Self> {
        if matrix.len() != rhs.len() {
            return Err(Error::LengthMismatch { expected: matrix.len(), got: rhs.len() });
        }
        let ncols = matrix.first().map_or(0, Vec::len);
        let mut sys = Self::new(p, ncols);
        for (row, &b) in matrix.iter().zip(rhs) {
            if row.len() != ncols {
                return Err(Error::LengthMismatch { expected: ncols, got: row.len() });
            }
            sys.push_row(row.iter().copied().enumerate(), b)?;
        }
        Ok(sys)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// `A x`.
    pub fn apply(&self, x: &[u32]) -> Vec<u32> {
        self.rows
            .iter()
            .map(|row| row.iter().fold(0, |acc, &(c, v)| add_mod(acc, mul_mod(v, x[c], self.p), self.p)))
            .collect()
    }

    pub fn rhs(&self) -> &[u32] {
        &self.rhs
    }
}

/// `a - k*b` for sparse rows sorted by column.
fn axpy(a: &[(usize, u32)], k: u32, b: &[(usize, u32)], p: u32) -> Vec<(usize, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            out.push((b[j].0, neg_mod(mul_mod(k, b[j].1, p), p)));
            j += 1;
        } else {
            let v = sub_mod(a[i].1, mul_mod(k, b[j].1, p), p);
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Any solution of `A x = b`, or `None` when the system is inconsistent.
///
/// Rows are inserted in order into an echelon basis keyed by leading column
/// (the smallest column index with a nonzero entry); free variables are 0.
pub fn gaussian_solve(sys: &LinearSystem) -> Option<Vec<u32>> {
    let p = sys.p;
    let mut pivot_of: FxHashMap<usize, usize> = FxHashMap::default();
    let mut pivots: Vec<(Vec<(usize, u32)>, u32)> = Vec::new();
    for (row, &b) in sys.rows.iter().zip(&sys.rhs) {
        let mut r = row.clone();
        let mut rb = b;
        loop {
            let Some(&(lead, coef)) = r.first() else {
                if rb != 0 {
                    return None;
                }
                break;
            };
            match pivot_of.get(&lead) {
                Some(&k) => {
                    let (prow, pb) = &pivots[k];
                    r = axpy(&r, coef, prow, p);
                    rb = sub_mod(rb, mul_mod(coef, *pb, p), p);
                }
                None => {
                    let inv = inv_mod(coef, p);
                    let normalized: Vec<(usize, u32)> = r.iter().map(|&(c, v)| (c, mul_mod(v, inv, p))).collect();
                    pivot_of.insert(lead, pivots.len());
                    pivots.push((normalized, mul_mod(rb, inv, p)));
                    break;
                }
            }
        }
    }
    let mut x = vec![0u32; sys.ncols];
    let mut order: Vec<usize> = (0..pivots.len()).collect();
    order.sort_unstable_by_key(|&k| std::cmp::Reverse(pivots[k].0[0].0));
    for k in order {
        let (row, b) = &pivots[k];
        let lead = row[0].0;
        let mut v = *b;
        for &(c, a) in &row[1..] {
            v = sub_mod(v, mul_mod(a, x[c], p), p);
        }
        x[lead] = v;
    }
    Some(x)
}

/// Rank of a dense matrix over `F_p`.
pub fn rank_dense(matrix: &[Vec<u32>], p: u32) -> usize {
    let mut m: Vec<Vec<u32>> = matrix.iter().map(|r| r.iter().map(|v| v % p).collect()).collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = inv_mod(m[rank][col], p);
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let k = mul_mod(row[col], inv, p);
                for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x = sub_mod(*x, mul_mod(k, y, p), p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// All monomials of total degree exactly `k` in `nvars` variables.
pub fn monomials_of_degree(nvars: usize, k: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left as u16;
            out.push(Monomial::from_exponents(cur));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u16;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if k == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(0, k, &mut vec![0; nvars], &mut out);
    out
}

/// Result of a bounded membership query.
#[derive(Debug, Clone)]
pub struct MembershipOutcome {
    /// Multipliers `h_i` with `sum h_i g_i = target`, verified by re-multiplication.
    pub combination: Option<Vec<Polynomial>>,
    /// Degree bound the answer is valid for.
    pub degree_bound: u32,
    pub rows: usize,
    pub cols: usize,
    pub nnz: usize,
}

impl MembershipOutcome {
    pub fn is_member(&self) -> bool {
        self.combination.is_some()
    }
}

/// Decides `target ∈ (generators)` using multipliers of degree `<= d - deg g`.
///
/// When the target and all generators are homogeneous only the stratum of
/// degree `deg target` is assembled; this is an equivalent system.
pub fn member_bounded(inst: &MembershipInstance) -> Result<MembershipOutcome> {
    let ring: &Arc<PolyRing> = inst.target.ring();
    for g in &inst.generators {
        if g.ring() != ring {
            return Err(Error::RingMismatch("generator and target live in different rings".into()));
        }
    }
    let d = inst.degree_bound;
    if let Some(td) = inst.target.degree() {
        if td > d {
            return Err(Error::InvalidArgument(format!("target degree {td} exceeds the bound {d}")));
        }
    }
    let nvars = ring.nvars();
    let gens: Vec<&Polynomial> = inst.generators.iter().filter(|g| !g.is_zero()).collect();
    let homogeneous = inst.target.is_homogeneous() && gens.iter().all(|g| g.is_homogeneous());
    let target_degree = inst.target.degree().unwrap_or(0);

    // multiplier degrees per generator
    let degree_ranges: Vec<Vec<u32>> = gens
        .iter()
        .map(|g| {
            let gd = g.degree().unwrap_or(0);
            if gd > d {
                Vec::new()
            } else if homogeneous {
                if gd <= target_degree { vec![target_degree - gd] } else { Vec::new() }
            } else {
                (0..=d - gd).collect()
            }
        })
        .collect();

    let count_of = |k: u32| binomial(nvars as u64 + k as u64 - 1, k as u64);
    let mut ncols: u64 = 0;
    let mut nnz: u64 = 0;
    for (g, degs) in gens.iter().zip(&degree_ranges) {
        for &k in degs {
            let c = if nvars == 0 { 1 } else { count_of(k) };
            ncols += c;
            nnz = nnz.saturating_add(c.saturating_mul(g.len() as u64));
        }
    }
    if nnz > MAX_MATRIX_ENTRIES as u64 {
        return Err(Error::ResourceLimit(format!(
            "membership system would have {ncols} columns and {nnz} nonzero entries (limit {MAX_MATRIX_ENTRIES}); \
             {nvars} variables, degree bound {d}"
        )));
    }

    let p = ring.p();
    let mut row_of: FxHashMap<Monomial, usize> = FxHashMap::default();
    let mut rows: Vec<Vec<(usize, u32)>> = Vec::new();
    let mut columns: Vec<(usize, Monomial)> = Vec::new();
    for (gi, (g, degs)) in gens.iter().zip(&degree_ranges).enumerate() {
        for &k in degs {
            for mu in monomials_of_degree(nvars, k) {
                let col = columns.len();
                for (m, c) in g.terms() {
                    let prod = m.mul(&mu);
                    let r = *row_of.entry(prod).or_insert_with(|| {
                        rows.push(Vec::new());
                        rows.len() - 1
                    });
                    rows[r].push((col, *c));
                }
                columns.push((gi, mu));
            }
        }
    }
    let mut rhs = vec![0u32; rows.len()];
    for (m, c) in inst.target.terms() {
        match row_of.get(m) {
            Some(&r) => rhs[r] = *c,
            None => {
                // a target monomial no column can reach
                return Ok(MembershipOutcome {
                    combination: None,
                    degree_bound: d,
                    rows: rows.len() + 1,
                    cols: columns.len(),
                    nnz: nnz as usize,
                });
            }
        }
    }
    let sys = LinearSystem { p, ncols: columns.len(), rows, rhs };
    let (nrows, ncols, nnz) = (sys.nrows(), sys.ncols(), sys.nnz());
    let combination = match gaussian_solve(&sys) {
        None => None,
        Some(x) => {
            let mut multipliers = vec![Vec::<(Monomial, u64)>::new(); gens.len()];
            for (col, &v) in x.iter().enumerate() {
                if v != 0 {
                    let (gi, mu) = &columns[col];
                    multipliers[*gi].push((mu.clone(), v as u64));
                }
            }
            let hs = multipliers
                .into_iter()
                .map(|terms| Polynomial::from_terms(ring, terms))
                .collect::<Result<Vec<_>>>()?;
            let mut check = Polynomial::zero(ring);
            for (h, g) in hs.iter().zip(&gens) {
                check = check.add(&h.mul(g)?)?;
            }
            if check != inst.target {
                return Err(Error::InvalidArgument("internal: membership combination failed re-multiplication".into()));
            }
            // report multipliers against the caller's generator list, zeros included
            let mut full = Vec::with_capacity(inst.generators.len());
            let mut it = hs.into_iter();
            for g in &inst.generators {
                full.push(if g.is_zero() { Polynomial::zero(ring) } else { it.next().expect("one multiplier per generator") });
            }
            Some(full)
        }
    };
    Ok(MembershipOutcome { combination, degree_bound: d, rows: nrows, cols: ncols, nnz })
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n.saturating_sub(k));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}
