//! Minimal primes, witness polynomials and the claim-by-claim checks.

mod checks;
mod primes;

use std::sync::Arc;

pub use checks::{
    hankel_permanent, lemma34_product, monomials_2_8, monomials_2_9, scan_conjecture_4_5, verify_fpure,
    verify_lemma_3_1, verify_lemma_3_2, verify_lemma_3_4, verify_monomials_2_8, verify_monomials_2_9,
    verify_theorem_3_5, verify_theorem_3_6, verify_witness_membership, SUPPORT_PRIME,
};
pub use primes::{
    expected_generic_prime_count, minimal_primes_generic, minimal_primes_symmetric, Binomial, MinimalPrime, PrimeKind,
};

use crate::error::{Error, Result};
use crate::fppoly::{sign_mod, Monomial, PolyRing, Polynomial, PrimeModulus};
use crate::shapes::{build_matrix, subsets, MatrixShape};

fn odd_prime(p: u32) -> Result<PrimeModulus> {
    PrimeModulus::prime(p as u64)
}

/// Ring of the generic `m x n` matrix over `F_p`.
pub fn generic_ring(m: usize, n: usize, p: u32) -> Result<Arc<PolyRing>> {
    build_matrix(MatrixShape::generic(m, n))?.0.ring(p)
}

/// Ring of the symmetric `n x n` matrix over `F_p`.
pub fn symmetric_ring(n: usize, p: u32) -> Result<Arc<PolyRing>> {
    build_matrix(MatrixShape::symmetric(n))?.0.ring(p)
}

/// `g + Σ_ω f_ω` on the generic `m x n` matrix: `g` is the product of all
/// entries to the `p-1`, and for the submatrix `ω = [a b; c d]`
/// `f_ω = (∏_{x ∉ ω} x^{p-1}) Σ_{k=0}^{p-2} (-1)^k (ad)^{2p-2-k} (bc)^k`.
pub fn witness_generic(m: usize, n: usize, p: u32) -> Result<Polynomial> {
    if m < 2 || n < 2 {
        return Err(Error::InvalidArgument(format!("generic {m}x{n}: both dimensions must be at least 2")));
    }
    odd_prime(p)?;
    let (mat, space) = build_matrix(MatrixShape::generic(m, n))?;
    let ring = PolyRing::new(space, p)?;
    let nv = ring.nvars();
    let e = (p - 1) as u16;
    let mut terms: Vec<(Monomial, u64)> = vec![(Monomial::from_exponents(&vec![e; nv]), 1)];
    for rows in subsets(m, 2) {
        for cols in subsets(n, 2) {
            let a = mat.entry(rows[0], cols[0]);
            let b = mat.entry(rows[0], cols[1]);
            let c = mat.entry(rows[1], cols[0]);
            let d = mat.entry(rows[1], cols[1]);
            for k in 0..=(p - 2) {
                let mut exps = vec![e; nv];
                exps[a] = (2 * p - 2 - k) as u16;
                exps[d] = (2 * p - 2 - k) as u16;
                exps[b] = k as u16;
                exps[c] = k as u16;
                terms.push((Monomial::from_exponents(&exps), sign_mod(k as u64, p) as u64));
            }
        }
    }
    Polynomial::from_terms(&ring, terms)
}

/// The symmetric witness: `(-1)^{(p-1)/2} ∏_{i<=j} y_ij^{p-1}` plus, per pair
/// `i < j`, `(∏_{y ∉ ω_ij} y^{p-1}) Σ_k (-1)^k (y_ii y_jj)^{3(p-1)/2-k} y_ij^{2k}`
/// over `k ∈ [0, (p-3)/2] ∪ [(p+1)/2, p-1]`.
pub fn witness_symmetric(n: usize, p: u32) -> Result<Polynomial> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("symmetric {n}: size must be at least 2")));
    }
    odd_prime(p)?;
    let (mat, space) = build_matrix(MatrixShape::symmetric(n))?;
    let ring = PolyRing::new(space, p)?;
    let nv = ring.nvars();
    let e = (p - 1) as u16;
    let half = (p - 1) / 2;
    let mut terms: Vec<(Monomial, u64)> = vec![(Monomial::from_exponents(&vec![e; nv]), sign_mod(half as u64, p) as u64)];
    for pair in subsets(n, 2) {
        let (i, j) = (pair[0], pair[1]);
        let (yii, yjj, yij) = (mat.entry(i, i), mat.entry(j, j), mat.entry(i, j));
        for k in (0..half).chain(half + 1..p) {
            let mut exps = vec![e; nv];
            let diag = (3 * half - k) as u16;
            exps[yii] = diag;
            exps[yjj] = diag;
            exps[yij] = (2 * k) as u16;
            terms.push((Monomial::from_exponents(&exps), sign_mod(k as u64, p) as u64));
        }
    }
    Polynomial::from_terms(&ring, terms)
}
