use std::sync::Arc;

use crate::error::{Error, Result};

use super::modulus::PrimeModulus;
use super::monomial::Monomial;
use super::poly::Polynomial;
use super::ring::{same_ring, PolyRing};

/// Arithmetic in `S / (x_1^q, .., x_v^q)`: any monomial with an exponent `>= q` is annihilated.
#[derive(Debug, Clone)]
pub struct TruncationContext {
    ring: Arc<PolyRing>,
    modulus: PrimeModulus,
}

impl TruncationContext {
    pub fn new(ring: &Arc<PolyRing>, modulus: PrimeModulus) -> Result<Self> {
        if ring.p() != modulus.p() {
            return Err(Error::RingMismatch(format!(
                "ring is over F_{} but the truncation modulus has p = {}",
                ring.p(),
                modulus.p()
            )));
        }
        Ok(Self { ring: ring.clone(), modulus })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    /// The exponent cap `q = p^e`.
    pub fn bound(&self) -> u64 {
        self.modulus.q()
    }

    /// `prod_i x_i^(q-1)`, the unique socle monomial of the quotient.
    pub fn socle_monomial(&self) -> Monomial {
        let e = (self.bound() - 1).min(u16::MAX as u64) as u16;
        Monomial::from_exponents(&vec![e; self.ring.nvars()])
    }

    fn check(&self, a: &Polynomial) -> Result<()> {
        same_ring(&self.ring, a.ring())
    }

    pub fn truncate(&self, a: &Polynomial) -> Result<Polynomial> {
        self.check(a)?;
        let bound = self.bound();
        let terms = a
            .terms()
            .iter()
            .filter(|(m, _)| (m.max_exponent() as u64) < bound)
            .cloned()
            .collect();
        Ok(Polynomial::from_sorted(&self.ring, terms))
    }

    pub fn is_truncated(&self, a: &Polynomial) -> bool {
        a.terms().iter().all(|(m, _)| (m.max_exponent() as u64) < self.bound())
    }

    /// Product in the quotient; both operands must already be truncated.
    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
        self.check(a)?;
        self.check(b)?;
        if !self.is_truncated(a) || !self.is_truncated(b) {
            return Err(Error::InvalidArgument("operands of a truncated product must be truncated".into()));
        }
        self.mul_unchecked(a, b)
    }

    fn mul_unchecked(&self, a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
        let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
            return Ok(Polynomial::zero(&self.ring));
        };
        let out = a.mul_impl(b, self.bound());
        // degrees of a truncated product are bounded by v(q-1), so only check the result
        if da + db > self.ring.degree_cap() {
            if let Some(d) = out.degree() {
                if d > self.ring.degree_cap() {
                    return Err(Error::DegreeOverflow { degree: d as u64, cap: self.ring.degree_cap() });
                }
            }
        }
        Ok(out)
    }

    /// `a^k` in the quotient by binary exponentiation, truncating after every product.
    pub fn pow(&self, a: &Polynomial, k: u64) -> Result<Polynomial> {
        let mut base = self.truncate(a)?;
        let mut result = self.truncate(&Polynomial::one(&self.ring))?;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul_unchecked(&result, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.mul_unchecked(&base, &base)?;
                if base.is_zero() {
                    return Ok(base);
                }
            }
        }
        Ok(result)
    }

    /// `a^k` by `k` successive multiplications by `a`.
    pub fn pow_repeated(&self, a: &Polynomial, k: u64) -> Result<Polynomial> {
        let base = self.truncate(a)?;
        let mut result = self.truncate(&Polynomial::one(&self.ring))?;
        for _ in 0..k {
            result = self.mul_unchecked(&result, &base)?;
            if result.is_zero() {
                break;
            }
        }
        Ok(result)
    }

    /// Truncated product of many factors, taken left to right.
    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a Polynomial>) -> Result<Polynomial> {
        let mut acc = self.truncate(&Polynomial::one(&self.ring))?;
        for f in factors {
            let f = self.truncate(f)?;
            acc = self.mul_unchecked(&acc, &f)?;
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }
}

/// Convenience wrappers mirroring the polynomial API.
impl Polynomial {
    pub fn truncate(&self, ctx: &TruncationContext) -> Result<Polynomial> {
        ctx.truncate(self)
    }

    pub fn truncated_mul(&self, other: &Polynomial, ctx: &TruncationContext) -> Result<Polynomial> {
        ctx.mul(self, other)
    }

    pub fn truncated_pow(&self, k: u64, ctx: &TruncationContext) -> Result<Polynomial> {
        ctx.pow(self, k)
    }
}
