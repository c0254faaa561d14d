//! Matrices of indeterminates, permanents and permanental ideals.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fppoly::{add_mod, mul_mod, sub_mod, Monomial, PolyRing, Polynomial, VariableSpace};

/// Largest square size accepted by [`permanent`].
pub const PERMANENT_SIZE_LIMIT: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MatrixShape {
    Generic { rows: usize, cols: usize },
    Symmetric { n: usize },
    Hankel { n: usize },
}

impl MatrixShape {
    pub fn generic(rows: usize, cols: usize) -> Self {
        MatrixShape::Generic { rows, cols }
    }

    pub fn symmetric(n: usize) -> Self {
        MatrixShape::Symmetric { n }
    }

    pub fn hankel(n: usize) -> Self {
        MatrixShape::Hankel { n }
    }

    pub fn dims(&self) -> (usize, usize) {
        match *self {
            MatrixShape::Generic { rows, cols } => (rows, cols),
            MatrixShape::Symmetric { n } | MatrixShape::Hankel { n } => (n, n),
        }
    }

    pub fn variable_count(&self) -> usize {
        match *self {
            MatrixShape::Generic { rows, cols } => rows * cols,
            MatrixShape::Symmetric { n } => n * (n + 1) / 2,
            MatrixShape::Hankel { n } => (2 * n).saturating_sub(1),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (m, n) = self.dims();
        if m == 0 || n == 0 {
            return Err(Error::InvalidArgument(format!("shape {self} has a zero dimension")));
        }
        Ok(())
    }
}

impl fmt::Display for MatrixShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MatrixShape::Generic { rows, cols } => write!(f, "generic:{rows}x{cols}"),
            MatrixShape::Symmetric { n } => write!(f, "symmetric:{n}"),
            MatrixShape::Hankel { n } => write!(f, "hankel:{n}"),
        }
    }
}

impl FromStr for MatrixShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("invalid shape `{s}` (expected generic:MxN, symmetric:N or hankel:N)"));
        let (kind, dims) = s.trim().split_once(':').ok_or_else(bad)?;
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let shape = match kind.trim().to_ascii_lowercase().as_str() {
            "generic" => {
                let (m, n) = dims.split_once(['x', 'X']).ok_or_else(bad)?;
                MatrixShape::Generic { rows: num(m)?, cols: num(n)? }
            }
            "symmetric" => MatrixShape::Symmetric { n: num(dims)? },
            "hankel" => MatrixShape::Hankel { n: num(dims)? },
            _ => return Err(bad()),
        };
        shape.validate()?;
        Ok(shape)
    }
}

/// A matrix whose entries are variable indices of a [`VariableSpace`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicMatrix {
    shape: MatrixShape,
    rows: usize,
    cols: usize,
    entries: Vec<usize>,
    space: VariableSpace,
}

impl SymbolicMatrix {
    pub fn shape(&self) -> MatrixShape {
        self.shape
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Variable index at 0-based position `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> usize {
        self.entries[i * self.cols + j]
    }

    pub fn space(&self) -> &VariableSpace {
        &self.space
    }

    /// The polynomial ring `F_p[entries]`.
    pub fn ring(&self, p: u32) -> Result<Arc<PolyRing>> {
        PolyRing::new(self.space.clone(), p)
    }

    pub fn transpose(&self) -> SymbolicMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.entry(i, j));
            }
        }
        let shape = match self.shape {
            MatrixShape::Generic { rows, cols } => MatrixShape::Generic { rows: cols, cols: rows },
            other => other,
        };
        SymbolicMatrix { shape, rows: self.cols, cols: self.rows, entries, space: self.space.clone() }
    }
}

/// Builds the matrix of indeterminates for `shape` and its variable space.
///
/// Naming: `x<i>_<j>` (generic, row-major), `y<i>_<j>` with `i <= j`
/// (symmetric), `z<k>` with `1 <= k <= 2n-1` (Hankel); indices are 1-based.
pub fn build_matrix(shape: MatrixShape) -> Result<(SymbolicMatrix, VariableSpace)> {
    shape.validate()?;
    let (rows, cols) = shape.dims();
    let (names, entries): (Vec<String>, Vec<usize>) = match shape {
        MatrixShape::Generic { .. } => {
            let names = (0..rows).flat_map(|i| (0..cols).map(move |j| format!("x{}_{}", i + 1, j + 1))).collect();
            (names, (0..rows * cols).collect())
        }
        MatrixShape::Symmetric { n } => {
            let names = (0..n).flat_map(|i| (i..n).map(move |j| format!("y{}_{}", i + 1, j + 1))).collect();
            // row-major position of (i, j), i <= j, in the upper triangle
            let index = move |i: usize, j: usize| {
                let (i, j) = (i.min(j), i.max(j));
                i * n - i * i.saturating_sub(1) / 2 + (j - i)
            };
            let entries = (0..n).flat_map(|i| (0..n).map(move |j| index(i, j))).collect();
            (names, entries)
        }
        MatrixShape::Hankel { n } => {
            let names = (1..2 * n).map(|k| format!("z{k}")).collect();
            let entries = (0..n).flat_map(|i| (0..n).map(move |j| i + j)).collect();
            (names, entries)
        }
    };
    let space = VariableSpace::new(names)?;
    let mat = SymbolicMatrix { shape, rows, cols, entries, space: space.clone() };
    Ok((mat, space))
}

/// The size-`k` subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Symbolic permanent of the submatrix on `rows` x `cols`.
///
/// Column-subset dynamic programming: `dp[S]` is the permanent of the first
/// `|S|` selected rows against the columns in `S`.
pub fn permanent(mat: &SymbolicMatrix, ring: &Arc<PolyRing>, rows: &[usize], cols: &[usize]) -> Result<Polynomial> {
    permanent_with_limit(mat, ring, rows, cols, PERMANENT_SIZE_LIMIT)
}

pub fn permanent_with_limit(
    mat: &SymbolicMatrix,
    ring: &Arc<PolyRing>,
    rows: &[usize],
    cols: &[usize],
    limit: usize,
) -> Result<Polynomial> {
    if rows.len() != cols.len() {
        return Err(Error::InvalidArgument(format!(
            "permanent needs a square selection, got {}x{}",
            rows.len(),
            cols.len()
        )));
    }
    let s = rows.len();
    if s > limit {
        return Err(Error::ResourceLimit(format!("symbolic permanent of size {s} exceeds the limit {limit}")));
    }
    if ring.space() != mat.space() {
        return Err(Error::RingMismatch("ring is not over the matrix variables".into()));
    }
    if rows.iter().any(|&r| r >= mat.rows) || cols.iter().any(|&c| c >= mat.cols) {
        return Err(Error::InvalidArgument("row or column index out of range".into()));
    }
    let nvars = ring.nvars();
    let mut dp: Vec<Polynomial> = Vec::with_capacity(1 << s);
    dp.push(Polynomial::one(ring));
    for mask in 1usize..(1 << s) {
        let row = rows[mask.count_ones() as usize - 1];
        let mut acc = Polynomial::zero(ring);
        for (bit, &col) in cols.iter().enumerate() {
            if mask & (1 << bit) == 0 {
                continue;
            }
            let var = Monomial::var(nvars, mat.entry(row, col), 1);
            acc = acc.add(&dp[mask ^ (1 << bit)].mul_term(&var, 1)?)?;
        }
        dp.push(acc);
    }
    Ok(dp.pop().expect("dp is non-empty"))
}

/// Permanent of the whole (square) matrix.
pub fn full_permanent(mat: &SymbolicMatrix, ring: &Arc<PolyRing>) -> Result<Polynomial> {
    let rows: Vec<usize> = (0..mat.rows).collect();
    let cols: Vec<usize> = (0..mat.cols).collect();
    permanent(mat, ring, &rows, &cols)
}

fn check_square(values: &[Vec<u32>]) -> Result<usize> {
    let n = values.len();
    if values.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidArgument("numeric permanent needs a square matrix".into()));
    }
    Ok(n)
}

/// Numeric permanent over `F_p` by Ryser's inclusion-exclusion formula,
/// enumerating column subsets in Gray-code order (`O(2^s * s)`).
pub fn permanent_eval(values: &[Vec<u32>], p: u32) -> Result<u32> {
    let n = check_square(values)?;
    if n == 0 {
        return Ok(1 % p);
    }
    let a: Vec<Vec<u32>> = values.iter().map(|r| r.iter().map(|v| v % p).collect()).collect();
    let mut row_sums = vec![0u32; n];
    let mut total = 0u32;
    let mut gray = 0usize;
    for k in 1usize..(1 << n) {
        let bit = k.trailing_zeros() as usize;
        gray ^= 1 << bit;
        let adding = gray & (1 << bit) != 0;
        for (i, sum) in row_sums.iter_mut().enumerate() {
            *sum = if adding { add_mod(*sum, a[i][bit], p) } else { sub_mod(*sum, a[i][bit], p) };
        }
        let prod = row_sums.iter().fold(1u32, |acc, &s| mul_mod(acc, s, p));
        // sign (-1)^(n - |S|)
        if (n - gray.count_ones() as usize).is_multiple_of(2) {
            total = add_mod(total, prod, p);
        } else {
            total = sub_mod(total, prod, p);
        }
    }
    Ok(total)
}

/// Numeric permanent by column-subset dynamic programming (`O(2^s * s)`).
pub fn permanent_eval_dp(values: &[Vec<u32>], p: u32) -> Result<u32> {
    let n = check_square(values)?;
    let mut dp = vec![0u32; 1 << n];
    dp[0] = 1 % p;
    for mask in 1usize..(1 << n) {
        let row = mask.count_ones() as usize - 1;
        let mut acc = 0u32;
        let mut rest = mask;
        while rest != 0 {
            let bit = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            acc = add_mod(acc, mul_mod(values[row][bit] % p, dp[mask ^ (1 << bit)], p), p);
        }
        dp[mask] = acc;
    }
    Ok(dp[(1 << n) - 1])
}

/// Numeric permanent as the sum over all `s!` permutations.
pub fn permanent_eval_naive(values: &[Vec<u32>], p: u32) -> Result<u32> {
    let n = check_square(values)?;
    fn rec(values: &[Vec<u32>], p: u32, row: usize, used: &mut Vec<bool>, acc: u32, total: &mut u32) {
        if row == values.len() {
            *total = add_mod(*total, acc, p);
            return;
        }
        for col in 0..values.len() {
            if !used[col] {
                used[col] = true;
                rec(values, p, row + 1, used, mul_mod(acc, values[row][col] % p, p), total);
                used[col] = false;
            }
        }
    }
    let mut total = 0;
    rec(values, p, 0, &mut vec![false; n], 1 % p, &mut total);
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdealStructure {
    CompleteIntersection,
    MonomialOnly,
    BinomialPlusVariables,
    Unstructured,
}

/// Generators of an ideal plus an asserted structure tag.
#[derive(Debug, Clone)]
pub struct IdealPresentation {
    pub generators: Vec<Polynomial>,
    pub structure: IdealStructure,
    /// Submatrices whose permanent repeated an earlier generator.
    pub duplicates: usize,
    /// Submatrices whose permanent vanished mod p.
    pub vanished: usize,
    /// Shape and minor size when built by [`permanental_generators`].
    pub origin: Option<(MatrixShape, usize)>,
}

impl IdealPresentation {
    pub fn new(generators: Vec<Polynomial>, structure: IdealStructure) -> Result<Self> {
        if generators.iter().any(Polynomial::is_zero) {
            return Err(Error::InvalidArgument("ideal generators must be nonzero".into()));
        }
        Ok(Self { generators, structure, duplicates: 0, vanished: 0, origin: None })
    }

    pub fn ring(&self) -> Option<&Arc<PolyRing>> {
        self.generators.first().map(Polynomial::ring)
    }

    /// Product of the generators.
    pub fn omega(&self) -> Result<Polynomial> {
        let ring = self.ring().ok_or(Error::EmptyInput("ideal without generators"))?;
        self.generators.iter().try_fold(Polynomial::one(ring), |acc, g| acc.mul(g))
    }
}

/// Whitelist of permanental ideals known to be complete intersections:
/// maximal permanents of a square matrix (a hypersurface) and of a generic
/// `t x (t+1)` matrix for `t` in 2..=4 (and its transpose).
pub fn is_known_complete_intersection(shape: MatrixShape, t: usize) -> bool {
    let (m, n) = shape.dims();
    if m == n && t == n {
        return true;
    }
    matches!(shape, MatrixShape::Generic { .. }) && (2..=4).contains(&t) && m.min(n) == t && m.max(n) == t + 1
}

/// All `t x t` permanents of `mat`, deduplicated as polynomials.
pub fn permanental_generators(mat: &SymbolicMatrix, ring: &Arc<PolyRing>, t: usize) -> Result<IdealPresentation> {
    let (m, n) = (mat.rows, mat.cols);
    if t == 0 || t > m.min(n) {
        return Err(Error::InvalidArgument(format!("t = {t} out of range 1..={}", m.min(n))));
    }
    let mut generators: Vec<Polynomial> = Vec::new();
    let mut duplicates = 0;
    let mut vanished = 0;
    let col_sets = subsets(n, t);
    for rows in subsets(m, t) {
        for cols in &col_sets {
            let g = permanent(mat, ring, &rows, cols)?;
            if g.is_zero() {
                vanished += 1;
            } else if generators.contains(&g) {
                duplicates += 1;
            } else {
                generators.push(g);
            }
        }
    }
    let structure = if t == 1 {
        IdealStructure::MonomialOnly
    } else if is_known_complete_intersection(mat.shape, t) {
        IdealStructure::CompleteIntersection
    } else {
        IdealStructure::Unstructured
    };
    Ok(IdealPresentation { generators, structure, duplicates, vanished, origin: Some((mat.shape, t)) })
}

/// A linear specialization of a square matrix onto the Hankel matrix `Z_n`,
/// sending the entry at `(i, j)` to `z_{i+j-1}`.
#[derive(Debug, Clone)]
pub struct Specialization {
    pub source: SymbolicMatrix,
    pub target: SymbolicMatrix,
    /// Target variable index for every source variable.
    pub images: Vec<usize>,
    /// Independent identifications `x_a = x_b` realised by the map.
    pub identifications: Vec<(usize, usize)>,
}

impl Specialization {
    pub fn identification_count(&self) -> usize {
        self.identifications.len()
    }

    /// The substitution as polynomials of the target ring.
    pub fn image_polys(&self, target: &Arc<PolyRing>) -> Vec<Polynomial> {
        self.images.iter().map(|&k| Polynomial::var(target, k)).collect()
    }
}

fn specialize(source: SymbolicMatrix, n: usize) -> Result<Specialization> {
    let (target, _) = build_matrix(MatrixShape::Hankel { n })?;
    let mut images = vec![usize::MAX; source.space.count()];
    for i in 0..n {
        for j in 0..n {
            let v = source.entry(i, j);
            let z = target.entry(i, j);
            if images[v] != usize::MAX && images[v] != z {
                return Err(Error::InvalidArgument("source matrix is not compatible with the Hankel pattern".into()));
            }
            images[v] = z;
        }
    }
    let mut first_with_image: Vec<Option<usize>> = vec![None; target.space.count()];
    let mut identifications = Vec::new();
    for (v, &z) in images.iter().enumerate() {
        match first_with_image[z] {
            None => first_with_image[z] = Some(v),
            Some(rep) => identifications.push((rep, v)),
        }
    }
    Ok(Specialization { source, target, images, identifications })
}

/// Generic `n x n` onto Hankel `Z_n`; `(n-1)^2` identifications.
pub fn hankel_specialization(n: usize) -> Result<Specialization> {
    let (source, _) = build_matrix(MatrixShape::Generic { rows: n, cols: n })?;
    specialize(source, n)
}

/// Symmetric `n x n` onto Hankel `Z_n` by equating each antidiagonal.
pub fn symmetric_specialization(n: usize) -> Result<Specialization> {
    let (source, _) = build_matrix(MatrixShape::Symmetric { n })?;
    specialize(source, n)
}

/// The linear forms `x_{1k} - x_{1+l,k-l}` (`1 <= l < k <= n`) and
/// `x_{k,n} - x_{l,n+k-l}` (`2 <= k < l <= n`) on the generic `n x n` matrix,
/// as pairs of 0-based variable indices of [`build_matrix`].
pub fn hankel_linear_forms(n: usize) -> Vec<(usize, usize)> {
    let idx = |i: usize, j: usize| (i - 1) * n + (j - 1);
    let mut forms = Vec::new();
    for k in 1..=n {
        for l in 1..k {
            forms.push((idx(1, k), idx(1 + l, k - l)));
        }
    }
    for k in 2..=n {
        for l in (k + 1)..=n {
            forms.push((idx(k, n), idx(l, n + k - l)));
        }
    }
    forms
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(mat: &SymbolicMatrix) -> Vec<Vec<String>> {
        (0..mat.rows())
            .map(|i| (0..mat.cols()).map(|j| mat.space().name(mat.entry(i, j)).to_string()).collect())
            .collect()
    }

    #[test]
    fn build_examples() {
        let (h, _) = build_matrix(MatrixShape::hankel(2)).unwrap();
        assert_eq!(names(&h), vec![vec!["z1", "z2"], vec!["z2", "z3"]]);
        let (s, _) = build_matrix(MatrixShape::symmetric(2)).unwrap();
        assert_eq!(names(&s), vec![vec!["y1_1", "y1_2"], vec!["y1_2", "y2_2"]]);
        let (g, space) = build_matrix(MatrixShape::generic(2, 3)).unwrap();
        assert_eq!(space.count(), 6);
        assert_eq!(names(&g)[1][2], "x2_3");
        assert!(build_matrix(MatrixShape::generic(0, 3)).is_err());
    }

    #[test]
    fn symmetric_indexing() {
        for n in 1..=5 {
            let (s, space) = build_matrix(MatrixShape::symmetric(n)).unwrap();
            assert_eq!(space.count(), n * (n + 1) / 2);
            for i in 0..n {
                for j in 0..n {
                    let (a, b) = (i.min(j) + 1, i.max(j) + 1);
                    assert_eq!(space.name(s.entry(i, j)), format!("y{a}_{b}"));
                }
            }
        }
    }

    #[test]
    fn shape_strings() {
        assert_eq!("generic:3x4".parse::<MatrixShape>().unwrap(), MatrixShape::generic(3, 4));
        assert_eq!("symmetric:3".parse::<MatrixShape>().unwrap(), MatrixShape::symmetric(3));
        assert_eq!("hankel:5".parse::<MatrixShape>().unwrap().to_string(), "hankel:5");
        for bad in ["generic:3", "hankel:x", "toeplitz:3", "hankel:0", "generic3x4"] {
            assert!(bad.parse::<MatrixShape>().is_err(), "{bad}");
        }
    }

    #[test]
    fn permanent_examples() {
        let (h, _) = build_matrix(MatrixShape::hankel(2)).unwrap();
        let r = h.ring(7).unwrap();
        assert_eq!(full_permanent(&h, &r).unwrap(), Polynomial::parse(&r, "z2^2 + z1*z3").unwrap());
        let (h1, _) = build_matrix(MatrixShape::hankel(1)).unwrap();
        let r1 = h1.ring(7).unwrap();
        assert_eq!(full_permanent(&h1, &r1).unwrap(), Polynomial::parse(&r1, "z1").unwrap());
        assert!(permanent(&h, &r, &[0, 1], &[0]).is_err());
    }

    #[test]
    fn permanent_of_constant_matrix() {
        // every entry is the same variable x
        let space = VariableSpace::new(["x"]).unwrap();
        for s in 1..=5usize {
            let mat = SymbolicMatrix {
                shape: MatrixShape::Hankel { n: s },
                rows: s,
                cols: s,
                entries: vec![0; s * s],
                space: space.clone(),
            };
            let r = PolyRing::new(space.clone(), 101).unwrap();
            let fact: u64 = (1..=s as u64).product();
            let expected = Polynomial::monomial(&r, Monomial::var(1, 0, s as u16), fact).unwrap();
            assert_eq!(full_permanent(&mat, &r).unwrap(), expected);
        }
    }

    #[test]
    fn permanent_size_limit() {
        let (g, _) = build_matrix(MatrixShape::generic(9, 9)).unwrap();
        let r = g.ring(5).unwrap();
        assert!(matches!(full_permanent(&g, &r), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn numeric_permanent_examples() {
        assert_eq!(permanent_eval(&[vec![1, 1], vec![1, 1]], 3).unwrap(), 2);
        let id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(permanent_eval(&id, 5).unwrap(), 1);
        assert_eq!(permanent_eval_dp(&id, 5).unwrap(), 1);
        assert_eq!(permanent_eval_naive(&id, 5).unwrap(), 1);
        assert!(permanent_eval(&[vec![1, 2]], 5).is_err());
        let m = vec![vec![3, 5, 1], vec![6, 2, 4], vec![0, 6, 6]];
        // 3*2*6 + 3*4*6 + 5*6*6 + 5*4*0 + 1*6*6 + 1*2*0 = 36 + 72 + 180 + 36 = 324
        assert_eq!(permanent_eval(&m, 7).unwrap(), 324 % 7);
        assert_eq!(permanent_eval_naive(&m, 7).unwrap(), 324 % 7);
        assert_eq!(permanent_eval_dp(&m, 7).unwrap(), 324 % 7);
    }

    #[test]
    fn generator_examples() {
        let (g22, _) = build_matrix(MatrixShape::generic(2, 2)).unwrap();
        let r = g22.ring(5).unwrap();
        let ideal = permanental_generators(&g22, &r, 2).unwrap();
        assert_eq!(ideal.generators, vec![Polynomial::parse(&r, "x1_1*x2_2 + x1_2*x2_1").unwrap()]);
        assert_eq!(ideal.structure, IdealStructure::CompleteIntersection);

        let (g23, _) = build_matrix(MatrixShape::generic(2, 3)).unwrap();
        let r = g23.ring(5).unwrap();
        assert_eq!(permanental_generators(&g23, &r, 2).unwrap().generators.len(), 3);

        let (g34, _) = build_matrix(MatrixShape::generic(3, 4)).unwrap();
        let r = g34.ring(5).unwrap();
        let ideal = permanental_generators(&g34, &r, 3).unwrap();
        assert_eq!(ideal.generators.len(), 4);
        assert_eq!(ideal.structure, IdealStructure::CompleteIntersection);
        assert_eq!(permanental_generators(&g34, &r, 2).unwrap().structure, IdealStructure::Unstructured);
        assert_eq!(permanental_generators(&g34, &r, 1).unwrap().structure, IdealStructure::MonomialOnly);
        assert!(permanental_generators(&g34, &r, 4).is_err());
        assert!(permanental_generators(&g34, &r, 0).is_err());
    }

    #[test]
    fn symmetric_generators_deduplicate() {
        let (s, _) = build_matrix(MatrixShape::symmetric(3)).unwrap();
        let r = s.ring(7).unwrap();
        let ideal = permanental_generators(&s, &r, 2).unwrap();
        assert_eq!(ideal.generators.len() + ideal.duplicates + ideal.vanished, 9);
        assert!(ideal.duplicates > 0);
        for (i, a) in ideal.generators.iter().enumerate() {
            for b in &ideal.generators[i + 1..] {
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn specialization_examples() {
        let spec = hankel_specialization(2).unwrap();
        let rz = spec.target.ring(5).unwrap();
        let rx = spec.source.ring(5).unwrap();
        let perm_x = full_permanent(&spec.source, &rx).unwrap();
        let sub = perm_x.substitute(&spec.image_polys(&rz), &rz).unwrap();
        assert_eq!(sub, Polynomial::parse(&rz, "z1*z3 + z2^2").unwrap());
        assert_eq!(sub, full_permanent(&spec.target, &rz).unwrap());
        assert_eq!(hankel_specialization(3).unwrap().identification_count(), 4);
        assert_eq!(hankel_specialization(1).unwrap().identification_count(), 0);
        assert_eq!(symmetric_specialization(3).unwrap().identification_count(), 1);
    }

    #[test]
    fn linear_forms_vanish_under_specialization() {
        for n in 1..=6 {
            let spec = hankel_specialization(n).unwrap();
            let forms = hankel_linear_forms(n);
            assert_eq!(forms.len(), (n - 1) * (n - 1));
            for (a, b) in forms {
                assert_eq!(spec.images[a], spec.images[b]);
            }
        }
    }
}
