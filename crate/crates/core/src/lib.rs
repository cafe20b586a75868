//! Constructive decompositions of matrices over residue rings into a sum of
//! two idempotents and a nilpotent.
//!
//! The crate is organised bottom-up:
//!
//! - [`residue`]: arithmetic in `Z_m` and `Z_m[x]/(x^d)`, element-level
//!   structure (units, idempotents, nilpotents, idempotent lifting).
//! - [`matrix`]: dense square matrices over any [`Ring`], nilpotency and
//!   invertibility tests, CRT splitting.
//! - [`frobenius`]: polynomials over `GF(p)` and the rational canonical form
//!   with an explicit similarity transform.
//! - [`decompose`]: the companion-block constructions over `GF(2)` and
//!   `GF(3)`, lifting to prime powers and CRT assembly over `Z_{2^a 3^b}`,
//!   triangular and truncated-polynomial variants.
//! - [`certificate`]: the `(E, F, W)` certificate and its independent checker.
//! - [`classifier`]: brute-force decision procedures over small finite rings.

pub mod certificate;
pub mod classifier;
pub mod decompose;
mod error;
pub mod frobenius;
pub mod matrix;
pub mod residue;
mod ring;

pub use certificate::{verify_certificate, CertCheck, DecompositionCertificate};
pub use error::{Error, Result};
pub use matrix::{Matrix, RingMatrix};
pub use residue::{factorize, Modulus, TruncPolyElem, TruncPolyRing, ZmodElem};
pub use ring::Ring;
