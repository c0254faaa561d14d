//! Membership in `(P^[q] : P) = (ω_P^{q-1}) + P^[q]` for the structured
//! minimal primes.
//!
//! Every variable is either a generator of `P` (outer) or belongs to the
//! binomial / free part (inner). Modulo the outer `x^q` the ring is free over
//! the inner polynomial ring with basis the outer monomials `μ` of exponents
//! below `q`, which makes the test a per-`μ` divisibility question.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fppoly::{Monomial, MonomialOrder, PolyRing, Polynomial, PrimeModulus};
use crate::witnesses::MinimalPrime;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupRule {
    /// `μ = ∏ x^{q-1}` over the generator variables, pure-variable prime.
    MonomialColon,
    /// `μ = ∏ x^{q-1}`, cofactor divisible by `b^{q-1}`.
    ColonBinomial,
    /// any other `μ`, cofactor divisible by `b^q`.
    FrobeniusBinomial,
}

/// One outer-monomial group: `outer · quotient · b^k` with `k` fixed by the rule.
#[derive(Debug, Clone)]
pub struct GroupWitness {
    pub outer: Monomial,
    pub rule: GroupRule,
    pub quotient: Polynomial,
}

#[derive(Debug, Clone)]
pub struct ColonMembershipCertificate {
    pub prime_id: String,
    pub q: u64,
    /// Terms with some generator-variable exponent `>= q`.
    pub frobenius_part: Polynomial,
    pub groups: Vec<GroupWitness>,
}

struct Split {
    frobenius: Vec<(Monomial, u64)>,
    /// outer exponents over all variables -> inner terms
    groups: BTreeMap<Vec<u16>, Vec<(Monomial, u64)>>,
}

fn split(f: &Polynomial, prime: &MinimalPrime, q: u64) -> Split {
    let gv = prime.generator_vars();
    let mut frobenius = Vec::new();
    let mut groups: BTreeMap<Vec<u16>, Vec<(Monomial, u64)>> = BTreeMap::new();
    for (m, c) in f.terms() {
        let e = m.exponents();
        if gv.iter().any(|&v| e[v] as u64 >= q) {
            frobenius.push((m.clone(), *c as u64));
            continue;
        }
        let mut outer = vec![0u16; e.len()];
        let mut inner = e.to_vec();
        for &v in gv {
            outer[v] = e[v];
            inner[v] = 0;
        }
        groups.entry(outer).or_default().push((Monomial::from_exponents(&inner), *c as u64));
    }
    Split { frobenius, groups }
}

fn full_outer(prime: &MinimalPrime, q: u64) -> Vec<u16> {
    let mut e = vec![0u16; prime.nvars()];
    for &v in prime.generator_vars() {
        e[v] = (q - 1) as u16;
    }
    e
}

fn check_inputs(f: &Polynomial, prime: &MinimalPrime, q: u64) -> Result<()> {
    if !prime.is_structured() {
        return Err(Error::Refused(format!(
            "prime {prime} has no structural description; use bounded-degree membership instead"
        )));
    }
    if f.ring().nvars() != prime.nvars() {
        return Err(Error::RingMismatch(format!("polynomial has {} variables, prime {}", f.ring().nvars(), prime.nvars())));
    }
    if 2 * q > f.ring().degree_cap() as u64 {
        return Err(Error::DegreeOverflow { degree: 2 * q, cap: f.ring().degree_cap() });
    }
    Ok(())
}

/// Decides `f ∈ (P^[q] : P)` for a structured minimal prime `P`, with
/// `q = p^e` from `modulus`. Returns a replayable certificate on success.
pub fn colon_membership(f: &Polynomial, prime: &MinimalPrime, modulus: PrimeModulus) -> Result<Option<ColonMembershipCertificate>> {
    let q = modulus.q();
    check_inputs(f, prime, q)?;
    if f.p() != modulus.p() {
        return Err(Error::RingMismatch(format!("polynomial over F_{}, modulus p = {}", f.p(), modulus.p())));
    }
    let ring = f.ring();
    let ord = MonomialOrder::grlex(ring.nvars());
    let parts = split(f, prime, q);
    let top = full_outer(prime, q);
    let powers = match prime.binomial() {
        Some(b) => {
            let b = b.to_poly(ring)?;
            Some((b.pow((q - 1) as u32)?, b.pow(q as u32)?))
        }
        None => None,
    };
    let mut groups = Vec::with_capacity(parts.groups.len());
    for (outer, inner) in parts.groups {
        let cofactor = Polynomial::from_terms(ring, inner)?;
        let is_top = outer == top;
        let (rule, quotient) = match &powers {
            None if is_top => (GroupRule::MonomialColon, Some(cofactor)),
            None => (GroupRule::MonomialColon, None),
            Some((b_low, _)) if is_top => (GroupRule::ColonBinomial, cofactor.exact_divide(b_low, &ord)?),
            Some((_, b_high)) => (GroupRule::FrobeniusBinomial, cofactor.exact_divide(b_high, &ord)?),
        };
        let Some(quotient) = quotient else {
            return Ok(None);
        };
        groups.push(GroupWitness { outer: Monomial::from_exponents(&outer), rule, quotient });
    }
    Ok(Some(ColonMembershipCertificate {
        prime_id: prime.id(),
        q,
        frobenius_part: Polynomial::from_terms(ring, parts.frobenius)?,
        groups,
    }))
}

/// Structural test for `h ∈ P^[q]`.
pub fn in_frobenius_power(h: &Polynomial, prime: &MinimalPrime, q: u64) -> Result<bool> {
    check_inputs(h, prime, q)?;
    let ring = h.ring();
    let parts = split(h, prime, q);
    let Some(b) = prime.binomial() else {
        return Ok(parts.groups.is_empty());
    };
    let bq = b.to_poly(ring)?.pow(q as u32)?;
    let ord = MonomialOrder::grlex(ring.nvars());
    for inner in parts.groups.into_values() {
        if Polynomial::from_terms(ring, inner)?.exact_divide(&bq, &ord)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

impl ColonMembershipCertificate {
    /// Rebuilds `f` from the certificate and checks that every piece lies in
    /// the colon ideal by construction.
    pub fn replay(&self, f: &Polynomial, prime: &MinimalPrime) -> Result<bool> {
        let q = self.q;
        check_inputs(f, prime, q)?;
        let ring: &Arc<PolyRing> = f.ring();
        if self.prime_id != prime.id() {
            return Ok(false);
        }
        let gv = prime.generator_vars();
        let frob_ok = self
            .frobenius_part
            .terms()
            .iter()
            .all(|(m, _)| gv.iter().any(|&v| m.exponents()[v] as u64 >= q));
        if !frob_ok {
            return Ok(false);
        }
        let top = full_outer(prime, q);
        let b = prime.binomial().map(|b| b.to_poly(ring)).transpose()?;
        let mut total = self.frobenius_part.clone();
        for g in &self.groups {
            let e = g.outer.exponents();
            let outer_ok = (0..e.len()).all(|v| if gv.contains(&v) { (e[v] as u64) < q } else { e[v] == 0 });
            let inner_ok = g.quotient.support_vars().iter().all(|v| !gv.contains(v));
            let is_top = e == top.as_slice();
            let factor = match (g.rule, &b) {
                (GroupRule::MonomialColon, None) if is_top => Polynomial::one(ring),
                (GroupRule::ColonBinomial, Some(b)) if is_top => b.pow((q - 1) as u32)?,
                (GroupRule::FrobeniusBinomial, Some(b)) => b.pow(q as u32)?,
                _ => return Ok(false),
            };
            if !outer_ok || !inner_ok {
                return Ok(false);
            }
            total = total.add(&g.quotient.mul(&factor)?.mul_term(&g.outer, 1)?)?;
        }
        Ok(&total == f)
    }
}
