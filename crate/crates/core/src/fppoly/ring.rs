use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::modulus::{is_prime, PrimeModulus};

/// Named indeterminates with a stable index assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableSpace {
    names: Vec<String>,
    lookup: HashMap<String, usize>,
}

impl VariableSpace {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut lookup = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::InvalidArgument(format!("bad variable name `{name}`")));
            }
            if !name.starts_with(|c: char| c.is_ascii_alphabetic()) {
                return Err(Error::InvalidArgument(format!("variable name `{name}` must start with a letter")));
            }
            if lookup.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidArgument(format!("duplicate variable name `{name}`")));
            }
        }
        Ok(Self { names, lookup })
    }

    pub fn count(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.lookup.get(name).copied()
    }

    /// Same names plus one fresh variable appended at the end.
    pub fn extended(&self, name: &str) -> Result<Self> {
        Self::new(self.names.iter().cloned().chain(std::iter::once(name.to_string())))
    }
}

/// `F_p[x_1, .., x_v]` with a hard total-degree cap.
#[derive(Debug, PartialEq, Eq)]
pub struct PolyRing {
    space: VariableSpace,
    p: u32,
    degree_cap: u32,
}

impl PolyRing {
    pub const DEFAULT_DEGREE_CAP: u32 = 4096;

    pub fn new(space: VariableSpace, p: u32) -> Result<Arc<Self>> {
        Self::with_degree_cap(space, p, Self::DEFAULT_DEGREE_CAP)
    }

    pub fn with_degree_cap(space: VariableSpace, p: u32, degree_cap: u32) -> Result<Arc<Self>> {
        if p < 3 || !is_prime(p as u64) || p as u64 >= 1 << 31 {
            return Err(Error::InvalidArgument(format!("coefficient field needs an odd prime p < 2^31, got {p}")));
        }
        if degree_cap == 0 || degree_cap > u16::MAX as u32 {
            return Err(Error::InvalidArgument(format!("degree cap {degree_cap} out of range")));
        }
        Ok(Arc::new(Self { space, p, degree_cap }))
    }

    pub fn for_modulus(space: VariableSpace, modulus: PrimeModulus) -> Result<Arc<Self>> {
        Self::new(space, modulus.p())
    }

    pub fn space(&self) -> &VariableSpace {
        &self.space
    }

    pub fn nvars(&self) -> usize {
        self.space.count()
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }
}

pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        return Ok(());
    }
    if a.p != b.p {
        return Err(Error::RingMismatch(format!("moduli differ ({} vs {})", a.p, b.p)));
    }
    if a.space != b.space {
        return Err(Error::RingMismatch("variable spaces differ".into()));
    }
    Err(Error::RingMismatch(format!(
        "degree caps differ ({} vs {})",
        a.degree_cap, b.degree_cap
    )))
}
