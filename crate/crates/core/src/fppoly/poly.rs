use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

use super::modulus::{add_mod, inv_mod, mul_mod, neg_mod, pow_mod, sub_mod};
use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::ring::{same_ring, PolyRing};

/// Sparse polynomial over `F_p`.
///
/// Terms are stored in descending graded-lex order (variable 0 largest) with
/// no zero coefficients, so structural equality is polynomial equality.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, u32)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring).is_ok() && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Self { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: u64) -> Self {
        let c = (c % ring.p() as u64) as u32;
        let terms = if c == 0 { Vec::new() } else { vec![(Monomial::one(ring.nvars()), c)] };
        Self { ring: ring.clone(), terms }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, 1)
    }

    pub fn var(ring: &Arc<PolyRing>, index: usize) -> Self {
        assert!(index < ring.nvars(), "variable index {index} out of range");
        Self { ring: ring.clone(), terms: vec![(Monomial::var(ring.nvars(), index, 1), 1)] }
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: u64) -> Result<Self> {
        Self::from_terms(ring, [(m, c)])
    }

    /// Builds a canonical polynomial, merging repeated monomials.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: impl IntoIterator<Item = (Monomial, u64)>) -> Result<Self> {
        let p = ring.p() as u64;
        let mut acc: FxHashMap<Monomial, u32> = FxHashMap::default();
        for (m, c) in terms {
            if m.nvars() != ring.nvars() {
                return Err(Error::LengthMismatch { expected: ring.nvars(), got: m.nvars() });
            }
            check_cap(m.degree() as u64, ring)?;
            let c = (c % p) as u32;
            if c != 0 {
                let slot = acc.entry(m).or_insert(0);
                *slot = add_mod(*slot, c, ring.p());
            }
        }
        Ok(Self::from_map(ring, acc))
    }

    pub(crate) fn from_map(ring: &Arc<PolyRing>, acc: FxHashMap<Monomial, u32>) -> Self {
        let mut terms: Vec<(Monomial, u32)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp_grlex(&a.0));
        Self { ring: ring.clone(), terms }
    }

    /// Trusts the caller: `terms` must already be canonical.
    pub(crate) fn from_sorted(ring: &Arc<PolyRing>, terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0.cmp_grlex(&w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Self { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn p(&self) -> u32 {
        self.ring.p()
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => {
                let d = m.degree();
                self.terms.iter().all(|(m, _)| m.degree() == d)
            }
        }
    }

    pub fn coefficient_of(&self, m: &Monomial) -> u32 {
        self.terms
            .binary_search_by(|(t, _)| m.cmp_grlex(t))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    pub fn constant_term(&self) -> u32 {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => *c,
            _ => 0,
        }
    }

    /// Variables that occur with positive exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.nvars()];
        for (m, _) in &self.terms {
            for (i, &e) in m.exponents().iter().enumerate() {
                used[i] |= e > 0;
            }
        }
        used.iter().enumerate().filter(|(_, u)| **u).map(|(i, _)| i).collect()
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        same_ring(&self.ring, &other.ring)?;
        Ok(self.merge(other, false))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        same_ring(&self.ring, &other.ring)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let p = self.p();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let rhs = |c: u32| if negate { neg_mod(c, p) } else { c };
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp_grlex(mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), *ca));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), rhs(*cb)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = add_mod(*ca, rhs(*cb), p);
                    if c != 0 {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, c)| (m.clone(), rhs(*c))));
        Polynomial::from_sorted(&self.ring, out)
    }

    pub fn neg(&self) -> Polynomial {
        let p = self.p();
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), neg_mod(*c, p))).collect();
        Polynomial::from_sorted(&self.ring, terms)
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let p = self.p();
        let c = c % p;
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), mul_mod(*a, c, p))).collect();
        Polynomial::from_sorted(&self.ring, terms)
    }

    /// Multiplication by a single term; order is preserved so no re-sort is needed.
    pub fn mul_term(&self, m: &Monomial, c: u32) -> Result<Polynomial> {
        if let Some(d) = self.degree() {
            check_cap(d as u64 + m.degree() as u64, &self.ring)?;
        }
        let p = self.p();
        let c = c % p;
        if c == 0 {
            return Ok(Polynomial::zero(&self.ring));
        }
        let terms = self.terms.iter().map(|(t, a)| (t.mul(m), mul_mod(*a, c, p))).collect();
        Ok(Polynomial::from_sorted(&self.ring, terms))
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        same_ring(&self.ring, &other.ring)?;
        match (self.degree(), other.degree()) {
            (Some(a), Some(b)) => check_cap(a as u64 + b as u64, &self.ring)?,
            _ => return Ok(Polynomial::zero(&self.ring)),
        }
        Ok(self.mul_impl(other, u64::MAX))
    }

    /// Schoolbook product, discarding any monomial with an exponent `>= bound`.
    pub(crate) fn mul_impl(&self, other: &Polynomial, bound: u64) -> Polynomial {
        let p = self.p();
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            let terms: Vec<(Monomial, u32)> = large
                .terms
                .iter()
                .filter_map(|(t, a)| t.mul_bounded(m, bound).map(|prod| (prod, mul_mod(*a, *c, p))))
                .collect();
            return Polynomial::from_sorted(&self.ring, terms);
        }
        let mut acc: FxHashMap<Monomial, u32> = FxHashMap::default();
        acc.reserve(large.len().saturating_mul(2));
        for (ms, cs) in &small.terms {
            for (ml, cl) in &large.terms {
                if let Some(m) = ms.mul_bounded(ml, bound) {
                    let slot = acc.entry(m).or_insert(0);
                    *slot = ((*slot as u64 + *cs as u64 * *cl as u64) % p as u64) as u32;
                }
            }
        }
        Polynomial::from_map(&self.ring, acc)
    }

    /// Untruncated power by repeated squaring.
    pub fn pow(&self, k: u32) -> Result<Polynomial> {
        if let Some(d) = self.degree() {
            check_cap(d as u64 * k as u64, &self.ring)?;
        }
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Maximal term under `ord`.
    pub fn leading_term(&self, ord: &MonomialOrder) -> Result<(Monomial, u32)> {
        if ord.nvars() != self.ring.nvars() {
            return Err(Error::LengthMismatch { expected: self.ring.nvars(), got: ord.nvars() });
        }
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp(&a.0, &b.0))
            .cloned()
            .ok_or(Error::EmptyInput("leading term of the zero polynomial"))
    }

    /// Returns `q` with `self = q * g` when `g` divides `self`, else `None`.
    ///
    /// Leading-term elimination against a single divisor; any remainder means
    /// `g` does not divide, independently of the order chosen.
    pub fn exact_divide(&self, g: &Polynomial, ord: &MonomialOrder) -> Result<Option<Polynomial>> {
        same_ring(&self.ring, &g.ring)?;
        if g.is_zero() {
            return Err(Error::InvalidArgument("division by the zero polynomial".into()));
        }
        if ord.nvars() != self.ring.nvars() {
            return Err(Error::LengthMismatch { expected: self.ring.nvars(), got: ord.nvars() });
        }
        let p = self.p();
        let (lm, lc) = g.leading_term(ord)?;
        let lc_inv = inv_mod(lc, p);
        let mut rem: BTreeMap<OrderKey, u32> =
            self.terms.iter().map(|(m, c)| (OrderKey::new(ord, m), *c)).collect();
        let mut quotient: Vec<(Monomial, u32)> = Vec::new();
        while let Some((key, c)) = rem.pop_last() {
            let m = key.monomial(ord);
            let Some(shift) = lm.div(&m) else {
                return Ok(None);
            };
            let qc = mul_mod(c, lc_inv, p);
            // subtract qc * shift * g, skipping the leading term which cancels exactly
            for (gm, gc) in &g.terms {
                if *gm == lm {
                    continue;
                }
                let k = OrderKey::new(ord, &gm.mul(&shift));
                let delta = mul_mod(qc, *gc, p);
                match rem.entry(k) {
                    Entry::Occupied(mut slot) => {
                        let v = sub_mod(*slot.get(), delta, p);
                        if v == 0 {
                            slot.remove();
                        } else {
                            *slot.get_mut() = v;
                        }
                    }
                    Entry::Vacant(slot) => {
                        slot.insert(neg_mod(delta, p));
                    }
                }
            }
            quotient.push((shift, qc));
        }
        let q = Polynomial::from_terms(&self.ring, quotient.into_iter().map(|(m, c)| (m, c as u64)))?;
        Ok(Some(q))
    }

    /// Simultaneous substitution `x_i -> images[i]`, expanded in `target`.
    pub fn substitute(&self, images: &[Polynomial], target: &Arc<PolyRing>) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::LengthMismatch { expected: self.ring.nvars(), got: images.len() });
        }
        if target.p() != self.p() {
            return Err(Error::RingMismatch(format!("moduli differ ({} vs {})", self.p(), target.p())));
        }
        for img in images {
            same_ring(img.ring(), target)?;
        }
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|img| vec![Polynomial::one(target), img.clone()]).collect();
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, *c as u64);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i])?;
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][e as usize])?;
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    pub fn evaluate(&self, point: &[u32]) -> Result<u32> {
        if point.len() != self.ring.nvars() {
            return Err(Error::LengthMismatch { expected: self.ring.nvars(), got: point.len() });
        }
        let p = self.p();
        let mut acc = 0u32;
        for (m, c) in &self.terms {
            let mut t = *c;
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = mul_mod(t, pow_mod(point[i], e as u64, p), p);
                }
            }
            acc = add_mod(acc, t, p);
        }
        Ok(acc)
    }

    /// Re-expresses the polynomial in a ring over the same space with another modulus.
    pub fn reduce_into(&self, target: &Arc<PolyRing>) -> Result<Polynomial> {
        if target.space() != self.ring.space() {
            return Err(Error::RingMismatch("variable spaces differ".into()));
        }
        Polynomial::from_terms(target, self.terms.iter().map(|(m, c)| (m.clone(), *c as u64)))
    }
}

fn check_cap(degree: u64, ring: &PolyRing) -> Result<()> {
    if degree > ring.degree_cap() as u64 {
        return Err(Error::DegreeOverflow { degree, cap: ring.degree_cap() });
    }
    Ok(())
}

/// Sort key whose natural `Ord` agrees with a `MonomialOrder`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct OrderKey(u32, smallvec::SmallVec<[u16; 16]>);

impl OrderKey {
    fn new(ord: &MonomialOrder, m: &Monomial) -> Self {
        let deg = match ord.kind() {
            super::order::OrderKind::GradedLex => m.degree(),
            super::order::OrderKind::Lex => 0,
        };
        let e = m.exponents();
        OrderKey(deg, ord.priority().iter().map(|&i| e[i]).collect())
    }

    fn monomial(&self, ord: &MonomialOrder) -> Monomial {
        let mut m = Monomial::one(self.1.len());
        let e = m.exponents_mut();
        for (slot, &i) in ord.priority().iter().enumerate() {
            e[i] = self.1[slot];
        }
        m
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let space = self.ring.space();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let mut first = true;
            if *c != 1 || m.is_one() {
                write!(f, "{c}")?;
                first = false;
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                f.write_str(space.name(i))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}
