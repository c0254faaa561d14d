//! Minimal primes of 2x2 permanental ideals, kept in structural form.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fppoly::{PolyRing, Polynomial};
use crate::shapes::{build_matrix, subsets, MatrixShape, SymbolicMatrix};

/// `x_a x_b + x_c x_d` on variable indices; `c == d` for the symmetric
/// binomial `y_uu y_vv + y_uv^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Binomial {
    pub first: (usize, usize),
    pub second: (usize, usize),
}

impl Binomial {
    pub fn to_poly(&self, ring: &Arc<PolyRing>) -> Result<Polynomial> {
        let prod = |(a, b): (usize, usize)| Polynomial::var(ring, a).mul(&Polynomial::var(ring, b));
        prod(self.first)?.add(&prod(self.second)?)
    }

    /// Variables of the binomial, sorted and deduplicated.
    pub fn support(&self) -> Vec<usize> {
        let mut v = vec![self.first.0, self.first.1, self.second.0, self.second.1];
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// Shape of a prime's generating set. Positions are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PrimeKind {
    /// Permanent of the submatrix on `rows x cols` plus every entry outside it.
    BinomialPlusVariables { rows: [usize; 2], cols: [usize; 2] },
    /// All entries of the listed rows.
    RowVariables { rows: Vec<usize> },
    /// All entries of the listed columns.
    ColumnVariables { cols: Vec<usize> },
    /// `y_uu y_vv + y_uv^2` plus every entry outside the `{u, v}` block.
    SymmetricPair { u: usize, v: usize },
    /// Arbitrary generators; only bounded-degree methods apply.
    Unstructured,
}

#[derive(Debug, Clone)]
pub struct MinimalPrime {
    kind: PrimeKind,
    nvars: usize,
    generator_vars: Vec<usize>,
    binomial: Option<Binomial>,
    extra: Vec<Polynomial>,
}

impl MinimalPrime {
    fn structured(kind: PrimeKind, nvars: usize, mut generator_vars: Vec<usize>, binomial: Option<Binomial>) -> Self {
        generator_vars.sort_unstable();
        generator_vars.dedup();
        Self { kind, nvars, generator_vars, binomial, extra: Vec::new() }
    }

    /// A prime given only by generators.
    pub fn unstructured(generators: Vec<Polynomial>) -> Result<Self> {
        let ring = generators.first().ok_or(Error::EmptyInput("prime without generators"))?.ring().clone();
        Ok(Self { kind: PrimeKind::Unstructured, nvars: ring.nvars(), generator_vars: Vec::new(), binomial: None, extra: generators })
    }

    pub fn kind(&self) -> &PrimeKind {
        &self.kind
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Variables that are themselves generators.
    pub fn generator_vars(&self) -> &[usize] {
        &self.generator_vars
    }

    pub fn binomial(&self) -> Option<Binomial> {
        self.binomial
    }

    pub fn is_structured(&self) -> bool {
        self.kind != PrimeKind::Unstructured
    }

    pub fn is_pure_variable(&self) -> bool {
        matches!(self.kind, PrimeKind::RowVariables { .. } | PrimeKind::ColumnVariables { .. })
    }

    /// Stable 1-based identifier, e.g. `omega(1,2;1,3)`, `rows(1,2)`, `pair(1,3)`.
    pub fn id(&self) -> String {
        self.to_string()
    }

    /// Flattened generator list: the binomial first, then variables in index order.
    pub fn generators(&self, ring: &Arc<PolyRing>) -> Result<Vec<Polynomial>> {
        if ring.nvars() != self.nvars {
            return Err(Error::RingMismatch(format!("prime on {} variables, ring has {}", self.nvars, ring.nvars())));
        }
        if !self.is_structured() {
            return Ok(self.extra.clone());
        }
        let mut gens = Vec::with_capacity(self.generator_vars.len() + 1);
        if let Some(b) = self.binomial {
            gens.push(b.to_poly(ring)?);
        }
        gens.extend(self.generator_vars.iter().map(|&v| Polynomial::var(ring, v)));
        Ok(gens)
    }

    /// Product of the regular-sequence generators.
    pub fn omega(&self, ring: &Arc<PolyRing>) -> Result<Polynomial> {
        self.generators(ring)?.iter().try_fold(Polynomial::one(ring), |acc, g| acc.mul(g))
    }

    /// Membership of `g` in the prime: set every generator variable to zero
    /// and test what is left for divisibility by the binomial.
    pub fn contains(&self, g: &Polynomial) -> Result<bool> {
        if !self.is_structured() {
            return Err(Error::Refused("membership in an unstructured prime needs bounded-degree linear algebra".into()));
        }
        let ring = g.ring();
        let rest = Polynomial::from_terms(
            ring,
            g.terms()
                .iter()
                .filter(|(m, _)| self.generator_vars.iter().all(|&v| m.exponents()[v] == 0))
                .map(|(m, c)| (m.clone(), *c as u64)),
        )?;
        if rest.is_zero() {
            return Ok(true);
        }
        match self.binomial {
            None => Ok(false),
            Some(b) => Ok(rest.exact_divide(&b.to_poly(ring)?, &crate::fppoly::MonomialOrder::grlex(ring.nvars()))?.is_some()),
        }
    }
}

impl fmt::Display for MinimalPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| v.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
        match &self.kind {
            PrimeKind::BinomialPlusVariables { rows, cols } => write!(f, "omega({};{})", list(rows), list(cols)),
            PrimeKind::RowVariables { rows } => write!(f, "rows({})", list(rows)),
            PrimeKind::ColumnVariables { cols } => write!(f, "cols({})", list(cols)),
            PrimeKind::SymmetricPair { u, v } => write!(f, "pair({},{})", u + 1, v + 1),
            PrimeKind::Unstructured => write!(f, "unstructured[{}]", self.extra.len()),
        }
    }
}

fn all_vars_except(mat: &SymbolicMatrix, keep: impl Fn(usize, usize) -> bool) -> Vec<usize> {
    let mut out = Vec::new();
    for i in 0..mat.rows() {
        for j in 0..mat.cols() {
            if !keep(i, j) {
                out.push(mat.entry(i, j));
            }
        }
    }
    out
}

/// Minimal primes of `P_2` of the generic `m x n` matrix: one per 2x2
/// submatrix, then row primes (`n >= 3`), then column primes (`m >= 3`).
pub fn minimal_primes_generic(m: usize, n: usize) -> Result<Vec<MinimalPrime>> {
    if m < 2 || n < 2 {
        return Err(Error::InvalidArgument(format!("generic {m}x{n}: both dimensions must be at least 2")));
    }
    let (mat, space) = build_matrix(MatrixShape::generic(m, n))?;
    let nvars = space.count();
    let mut primes = Vec::new();
    for rows in subsets(m, 2) {
        for cols in subsets(n, 2) {
            let (r, c) = ([rows[0], rows[1]], [cols[0], cols[1]]);
            let b = Binomial {
                first: (mat.entry(r[0], c[0]), mat.entry(r[1], c[1])),
                second: (mat.entry(r[0], c[1]), mat.entry(r[1], c[0])),
            };
            let outside = all_vars_except(&mat, |i, j| r.contains(&i) && c.contains(&j));
            primes.push(MinimalPrime::structured(PrimeKind::BinomialPlusVariables { rows: r, cols: c }, nvars, outside, Some(b)));
        }
    }
    if n >= 3 {
        for rows in subsets(m, m - 1) {
            let vars = all_vars_except(&mat, |i, _| !rows.contains(&i));
            primes.push(MinimalPrime::structured(PrimeKind::RowVariables { rows }, nvars, vars, None));
        }
    }
    if m >= 3 {
        for cols in subsets(n, n - 1) {
            let vars = all_vars_except(&mat, |_, j| !cols.contains(&j));
            primes.push(MinimalPrime::structured(PrimeKind::ColumnVariables { cols }, nvars, vars, None));
        }
    }
    Ok(primes)
}

/// Minimal primes of `P_2` of the symmetric `n x n` matrix, one per pair `u < v`.
pub fn minimal_primes_symmetric(n: usize) -> Result<Vec<MinimalPrime>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("symmetric {n}: size must be at least 2")));
    }
    let (mat, space) = build_matrix(MatrixShape::symmetric(n))?;
    let nvars = space.count();
    let mut primes = Vec::new();
    for pair in subsets(n, 2) {
        let (u, v) = (pair[0], pair[1]);
        let b = Binomial { first: (mat.entry(u, u), mat.entry(v, v)), second: (mat.entry(u, v), mat.entry(u, v)) };
        let inner = b.support();
        let outside = (0..nvars).filter(|x| !inner.contains(x)).collect();
        primes.push(MinimalPrime::structured(PrimeKind::SymmetricPair { u, v }, nvars, outside, Some(b)));
    }
    Ok(primes)
}

/// Closed-form number of minimal primes for the generic `m x n` case.
pub fn expected_generic_prime_count(m: usize, n: usize) -> usize {
    let c2 = |k: usize| k * (k - 1) / 2;
    c2(m) * c2(n) + if n >= 3 { m } else { 0 } + if m >= 3 { n } else { 0 }
}
