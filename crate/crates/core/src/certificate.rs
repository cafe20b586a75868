//! Decomposition certificates `A = E + F + W` and their checker.

use std::fmt;

use crate::decompose::BlockTag;
use crate::matrix::Matrix;
use crate::ring::Ring;

/// One of the conditions a certificate must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CertCheck {
    /// All four matrices share dimension and ring.
    Shape,
    EIdempotent,
    FIdempotent,
    Sum,
    WNilpotent,
    /// The recorded exponent is the minimal `k` with `W^k = 0` and lies
    /// within the bound `n * (ring nil index)`.
    Exponent,
}

impl CertCheck {
    pub fn name(self) -> &'static str {
        match self {
            CertCheck::Shape => "shape",
            CertCheck::EIdempotent => "E idempotency",
            CertCheck::FIdempotent => "F idempotency",
            CertCheck::Sum => "sum E + F + W = A",
            CertCheck::WNilpotent => "W nilpotency",
            CertCheck::Exponent => "nilpotency exponent",
        }
    }
}

impl fmt::Display for CertCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionCertificate<R: Ring> {
    pub a: Matrix<R>,
    pub e: Matrix<R>,
    pub f: Matrix<R>,
    pub w: Matrix<R>,
    pub nilpotency_exponent: u32,
    /// Companion-block case per residue field, in block order.
    pub tags: Vec<BlockTag>,
    verified: bool,
}

impl<R: Ring> DecompositionCertificate<R> {
    /// An unverified certificate with the given data.
    pub fn new(
        a: Matrix<R>,
        e: Matrix<R>,
        f: Matrix<R>,
        w: Matrix<R>,
        nilpotency_exponent: u32,
        tags: Vec<BlockTag>,
    ) -> Self {
        DecompositionCertificate {
            a,
            e,
            f,
            w,
            nilpotency_exponent,
            tags,
            verified: false,
        }
    }

    /// Build from `(A, E, F)` with `W = A - E - F` and its computed exponent.
    /// Falls back to exponent 0 when `W` is not nilpotent, which the checker
    /// rejects.
    pub(crate) fn assemble(a: Matrix<R>, e: Matrix<R>, f: Matrix<R>, tags: Vec<BlockTag>) -> Self {
        let w = &(&a - &e) - &f;
        let k = w.nilpotency_exponent().unwrap_or(0);
        Self::new(a, e, f, w, k, tags)
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    /// Every violated condition, in check order. Empty means valid.
    pub fn failed_checks(&self) -> Vec<CertCheck> {
        let (a, e, f, w) = (&self.a, &self.e, &self.f, &self.w);
        let same = |x: &Matrix<R>| x.dim() == a.dim() && x.ring() == a.ring();
        if !(same(e) && same(f) && same(w)) {
            return vec![CertCheck::Shape];
        }
        let mut failed = Vec::new();
        if !e.is_idempotent() {
            failed.push(CertCheck::EIdempotent);
        }
        if !f.is_idempotent() {
            failed.push(CertCheck::FIdempotent);
        }
        if &(&(e + f) + w) != a {
            failed.push(CertCheck::Sum);
        }
        match w.nilpotency_exponent() {
            None => failed.push(CertCheck::WNilpotent),
            Some(k) if k != self.nilpotency_exponent || k > w.nilpotency_bound() => {
                failed.push(CertCheck::Exponent)
            }
            Some(_) => {}
        }
        failed
    }

    /// Recompute all conditions; sets the verified flag accordingly.
    pub fn verify(&mut self) -> Result<(), Vec<CertCheck>> {
        let failed = self.failed_checks();
        self.verified = failed.is_empty();
        if self.verified {
            Ok(())
        } else {
            Err(failed)
        }
    }
}

/// Re-check a certificate from its matrices alone.
pub fn verify_certificate<R: Ring>(c: &mut DecompositionCertificate<R>) -> bool {
    c.verify().is_ok()
}
