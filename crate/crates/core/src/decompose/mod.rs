//! Constructive `E + F + W` decompositions.
//!
//! Over `GF(2)` and `GF(3)` a matrix is brought to rational canonical form
//! and each companion block is decomposed by an explicit case analysis.
//! Over `Z_{p^e}` the residue-field idempotents are lifted by the cubic
//! Newton step `X <- 3X^2 - 2X^3`, and the remainder is nilpotent because the
//! kernel of reduction is nil. Over `Z_{2^a 3^b}` the prime-power pieces are
//! joined by CRT. Every result is checked before it is returned.

mod cases;
mod lift;

pub use cases::{
    decompose_companion_gf2, decompose_companion_gf3, BlockDecomposition, BlockTag, CaseTag,
};
pub use lift::lift_idempotent_matrix;

use crate::certificate::DecompositionCertificate;
use crate::error::{Error, Result};
use crate::frobenius::rcf;
use crate::matrix::{Matrix, RingMatrix};
use crate::residue::{strong_decompose_element, Modulus, TruncPolyRing, ZmodElem};
use crate::ring::Ring;

fn finish<R: Ring>(
    mut cert: DecompositionCertificate<R>,
    what: &str,
) -> Result<DecompositionCertificate<R>> {
    cert.verify().map_err(|failed| {
        let names: Vec<&str> = failed.iter().map(|c| c.name()).collect();
        Error::Internal(format!("{what}: certificate failed {}", names.join(", ")))
    })?;
    Ok(cert)
}

/// Decompose a matrix over `GF(2)` or `GF(3)` through its canonical form:
/// `A = P^{-1} C P`, `C = E~ + F~ + W~` blockwise, so
/// `A = P^{-1} E~ P + P^{-1} F~ P + P^{-1} W~ P`.
pub fn decompose_field_matrix(a: &RingMatrix) -> Result<DecompositionCertificate<Modulus>> {
    let field = a.modulus().clone();
    let p = field.value();
    if !field.is_prime() {
        return Err(Error::input(format!("modulus {p} is not a prime field")));
    }
    if p != 2 && p != 3 {
        return Err(Error::UnsupportedField(p));
    }
    let form = rcf(a)?;
    let mut es = Vec::with_capacity(form.blocks.len());
    let mut fs = Vec::with_capacity(form.blocks.len());
    let mut tags = Vec::with_capacity(form.blocks.len());
    for block in &form.blocks {
        let d = if p == 3 {
            decompose_companion_gf3(block)?
        } else {
            decompose_companion_gf2(block)?
        };
        es.push(d.e);
        fs.push(d.f);
        tags.push(BlockTag {
            tag: d.tag,
            size: block.dim(),
        });
    }
    let conj = |m: &RingMatrix| &(&form.transform_inv * m) * &form.transform;
    let e = conj(&Matrix::block_diagonal(&field, &es));
    let f = conj(&Matrix::block_diagonal(&field, &fs));
    finish(
        DecompositionCertificate::assemble(a.clone(), e, f, tags),
        "field decomposition",
    )
}

/// Decompose over `Z_{p^e}`, `p in {2, 3}`: decompose mod `p`, lift both
/// idempotents, and take `W = A - E - F`.
pub fn decompose_prime_power(a: &RingMatrix) -> Result<DecompositionCertificate<Modulus>> {
    let md = a.modulus().clone();
    let (p, e) = md
        .prime_power()
        .ok_or_else(|| Error::input(format!("{} is not a prime power", md.value())))?;
    if p != 2 && p != 3 {
        return Err(Error::UnsupportedModulus {
            modulus: md.value(),
            prime: p,
        });
    }
    if e == 1 {
        return decompose_field_matrix(a);
    }
    let base = decompose_field_matrix(&a.reduce_mod_prime(p)?)?;
    let e_lift = lift_idempotent_matrix(&base.e.lift_to(&md))?;
    let f_lift = lift_idempotent_matrix(&base.f.lift_to(&md))?;
    finish(
        DecompositionCertificate::assemble(a.clone(), e_lift, f_lift, base.tags),
        "prime-power decomposition",
    )
}

/// Decompose over `Z_m` with `m = 2^a 3^b`.
pub fn decompose_zm(a: &RingMatrix) -> Result<DecompositionCertificate<Modulus>> {
    let md = a.modulus().clone();
    md.require_two_three_smooth()?;
    let parts = a
        .split_prime_powers()
        .iter()
        .map(decompose_prime_power)
        .collect::<Result<Vec<_>>>()?;
    if parts.len() == 1 {
        return Ok(parts.into_iter().next().expect("one part"));
    }
    let join = |pick: fn(&DecompositionCertificate<Modulus>) -> &RingMatrix| {
        RingMatrix::crt_recombine(&parts.iter().map(|c| pick(c).clone()).collect::<Vec<_>>())
    };
    let e = join(|c| &c.e)?;
    let f = join(|c| &c.f)?;
    let tags = parts.iter().flat_map(|c| c.tags.iter().copied()).collect();
    finish(
        DecompositionCertificate::assemble(a.clone(), e, f, tags),
        "CRT decomposition",
    )
}

/// Decompose an upper-triangular matrix over `Z_{2^a 3^b}` staying inside
/// the triangular ring: diagonal entries are split elementwise and the
/// strict upper part goes to `W`.
pub fn decompose_triangular(t: &RingMatrix) -> Result<DecompositionCertificate<Modulus>> {
    if !t.is_upper_triangular() {
        return Err(Error::input("matrix is not upper triangular"));
    }
    let md = t.modulus().clone();
    md.require_two_three_smooth()?;
    let n = t.dim();
    let mut e = Matrix::zeros(&md, n);
    let mut f = Matrix::zeros(&md, n);
    for i in 0..n {
        let (ei, fi, _) = strong_decompose_element(&ZmodElem::new(*t.get(i, i) as i64, &md))?;
        e.set(i, i, ei.residue());
        f.set(i, i, fi.residue());
    }
    let cert = finish(
        DecompositionCertificate::assemble(t.clone(), e, f, vec![]),
        "triangular decomposition",
    )?;
    debug_assert!(cert.e.is_upper_triangular() && cert.w.is_upper_triangular());
    Ok(cert)
}

/// Decompose over `Z_m[x]/(x^d)`: decompose the constant-term matrix over
/// `Z_m`, lift the idempotents through the nil ideal `(x)`, and put the rest
/// in `W`.
pub fn decompose_trunc_poly_matrix(
    a: &Matrix<TruncPolyRing>,
) -> Result<DecompositionCertificate<TruncPolyRing>> {
    let ring = a.ring().clone();
    let base = ring.base().clone();
    base.require_two_three_smooth()?;
    let constant = a.map(&base, |c| c[0]);
    let inner = decompose_zm(&constant)?;
    let embed = |m: &RingMatrix| m.map(&ring, |&c| ring.constant(c));
    let rounds = lift::lift_rounds(ring.degree() as u32);
    let e = lift::newton_idempotent(&embed(&inner.e), rounds)
        .ok_or_else(|| Error::Internal("idempotent lift through (x) did not converge".into()))?;
    let f = lift::newton_idempotent(&embed(&inner.f), rounds)
        .ok_or_else(|| Error::Internal("idempotent lift through (x) did not converge".into()))?;
    finish(
        DecompositionCertificate::assemble(a.clone(), e, f, inner.tags),
        "truncated-polynomial decomposition",
    )
}

#[cfg(test)]
mod tests;
