use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An odd prime `p < 2^31` together with a Frobenius exponent `e`; `q = p^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeModulus {
    p: u32,
    e: u32,
    q: u64,
}

impl PrimeModulus {
    /// Largest supported Frobenius exponent unless a caller opts into more.
    pub const DEFAULT_MAX_E: u32 = 3;

    pub fn new(p: u64, e: u32) -> Result<Self> {
        Self::with_max_e(p, e, Self::DEFAULT_MAX_E)
    }

    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    pub fn with_max_e(p: u64, e: u32, max_e: u32) -> Result<Self> {
        if p == 2 {
            return Err(Error::Refused("characteristic 2 is not supported (p must be odd)".into()));
        }
        if !(3..(1u64 << 31)).contains(&p) {
            return Err(Error::InvalidArgument(format!("p = {p} must satisfy 3 <= p < 2^31")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("p = {p} is not prime")));
        }
        if e == 0 {
            return Err(Error::InvalidArgument("Frobenius exponent e must be positive".into()));
        }
        if e > max_e {
            return Err(Error::Refused(format!("e = {e} exceeds the configured cap {max_e}")));
        }
        let q = (p as u128)
            .checked_pow(e)
            .filter(|q| *q <= u64::MAX as u128)
            .ok_or_else(|| Error::InvalidArgument(format!("{p}^{e} does not fit in a machine word")))?;
        Ok(Self { p: p as u32, e, q: q as u64 })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn e(&self) -> u32 {
        self.e
    }

    #[inline]
    pub fn q(&self) -> u64 {
        self.q
    }
}

/// Trial division; `n < 2^31` keeps this under 50k steps.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[inline]
pub fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a as u64 + b as u64;
    let p = p as u64;
    (if s >= p { s - p } else { s }) as u32
}

#[inline]
pub fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        (a as u64 + p as u64 - b as u64) as u32
    }
}

#[inline]
pub fn neg_mod(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn pow_mod(mut base: u32, mut exp: u64, p: u32) -> u32 {
    let mut acc = 1u32 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse by Fermat; `a` must be nonzero mod `p`.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p as u64 - 2, p)
}

/// Reduce a signed integer into `[0, p)`.
pub fn reduce_i64(a: i64, p: u32) -> u32 {
    a.rem_euclid(p as i64) as u32
}

/// `(-1)^k` as a residue.
pub fn sign_mod(k: u64, p: u32) -> u32 {
    if k.is_multiple_of(2) {
        1
    } else {
        p - 1
    }
}
