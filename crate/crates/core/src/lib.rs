//! Exact verification of F-purity and F-regularity claims for permanental
//! ideals over prime fields.
//!
//! Modules, bottom up: [`fppoly`] (polynomials over `F_p`), [`shapes`]
//! (matrices and permanents), [`linmember`] (bounded-degree membership),
//! [`frobcheck`] (Fedder / Glassbrenner criteria and point counts),
//! [`witnesses`] (minimal primes, witness polynomials, claim checks) and
//! [`report`].

pub mod error;
pub mod fppoly;
pub mod frobcheck;
pub mod linmember;
pub mod report;
pub mod shapes;
pub mod witnesses;

pub use error::{Error, Result};
