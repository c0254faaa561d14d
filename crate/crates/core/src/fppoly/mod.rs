//! Sparse multivariate polynomials over a prime field.
//!
//! The core carrier for every check in this crate: exact arithmetic in
//! `F_p[x_1, .., x_v]`, arithmetic modulo the Frobenius power
//! `(x_1^q, .., x_v^q)`, monomial orders, single-divisor exact division,
//! substitution and evaluation.

mod modulus;
mod monomial;
mod order;
mod parse;
mod poly;
mod ring;
mod trunc;

pub use modulus::{add_mod, inv_mod, is_prime, mul_mod, neg_mod, pow_mod, reduce_i64, sign_mod, sub_mod, PrimeModulus};
pub use monomial::Monomial;
pub use order::{MonomialOrder, OrderKind};
pub use parse::parse_poly;
pub use poly::Polynomial;
pub use ring::{PolyRing, VariableSpace};
pub use trunc::TruncationContext;
