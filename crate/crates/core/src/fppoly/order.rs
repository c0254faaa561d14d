use std::cmp::Ordering;

use crate::error::{Error, Result};

use super::monomial::Monomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    Lex,
    GradedLex,
}

/// A monomial order; `priority[0]` is the largest variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, priority: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; priority.len()];
        for &i in &priority {
            if i >= priority.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidArgument(format!(
                    "variable priority {priority:?} is not a permutation"
                )));
            }
        }
        Ok(Self { kind, priority })
    }

    /// Lex with `x_0 > x_1 > ...`.
    pub fn lex(nvars: usize) -> Self {
        Self { kind: OrderKind::Lex, priority: (0..nvars).collect() }
    }

    pub fn grlex(nvars: usize) -> Self {
        Self { kind: OrderKind::GradedLex, priority: (0..nvars).collect() }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn nvars(&self) -> usize {
        self.priority.len()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        if self.kind == OrderKind::GradedLex {
            match a.degree().cmp(&b.degree()) {
                Ordering::Equal => {}
                other => return other,
            }
        }
        let (ea, eb) = (a.exponents(), b.exponents());
        for &i in &self.priority {
            match ea[i].cmp(&eb[i]) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    }
}
