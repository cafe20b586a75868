//! Polynomials over `GF(p)` and the rational canonical form.

mod poly;
mod rcf;

pub use poly::FieldPoly;
pub use rcf::{companion, rcf, verify_rcf, CompanionBlock, RcfResult};
