//! Dense square matrices over a [`Ring`].

mod linalg;

use std::fmt;

use crate::error::{Error, Result};
use crate::residue::{crt_combine, factorize, Modulus};
use crate::ring::Ring;

pub use linalg::{determinant, inverse};

/// Largest supported dimension.
pub const MAX_DIM: usize = 64;

/// An `n x n` matrix, row-major, entries in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<R: Ring> {
    ring: R,
    n: usize,
    entries: Vec<R::Elem>,
}

/// Matrices over `Z_m`.
pub type RingMatrix = Matrix<Modulus>;

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matrix")
            .field("ring", &self.ring)
            .field("rows", &self.rows())
            .finish()
    }
}

fn check_dim(n: usize) -> Result<()> {
    if !(1..=MAX_DIM).contains(&n) {
        return Err(Error::input(format!(
            "dimension {n} outside [1, {MAX_DIM}]"
        )));
    }
    Ok(())
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(ring: &R, n: usize) -> Self {
        Matrix {
            ring: ring.clone(),
            n,
            entries: vec![ring.zero(); n * n],
        }
    }

    pub fn identity(ring: &R, n: usize) -> Self {
        let mut out = Self::zeros(ring, n);
        for i in 0..n {
            out.entries[i * n + i] = ring.one();
        }
        out
    }

    /// Build from rows of already-canonical ring elements.
    pub fn from_rows(ring: &R, rows: Vec<Vec<R::Elem>>) -> Result<Self> {
        let n = rows.len();
        check_dim(n)?;
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::input("matrix rows must all have length n"));
        }
        Ok(Matrix {
            ring: ring.clone(),
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(ring: &R, n: usize, mut f: impl FnMut(usize, usize) -> R::Elem) -> Self {
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Matrix {
            ring: ring.clone(),
            n,
            entries,
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &R::Elem {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R::Elem) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[R::Elem] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<R::Elem>> {
        self.entries
            .chunks(self.n.max(1))
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn map<S: Ring>(&self, ring: &S, f: impl Fn(&R::Elem) -> S::Elem) -> Matrix<S> {
        Matrix {
            ring: ring.clone(),
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| self.ring.is_zero(x))
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.ring != other.ring {
            return Err(Error::input(format!(
                "matrix mismatch: {}x{} over {:?} vs {}x{} over {:?}",
                self.n, self.n, self.ring, other.n, other.n, other.ring
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(self.zip(other, |a, b| self.ring.add(a, b)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(self.zip(other, |a, b| self.ring.sub(a, b)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let n = self.n;
        let r = &self.ring;
        let mut out = Self::zeros(r, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if r.is_zero(a) {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    out.entries[idx] = r.add(&out.entries[idx], &r.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    fn zip(&self, other: &Self, f: impl Fn(&R::Elem, &R::Elem) -> R::Elem) -> Self {
        Matrix {
            ring: self.ring.clone(),
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(&self.ring, |a| self.ring.neg(a))
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        self.map(&self.ring, |a| self.ring.mul(c, a))
    }

    /// `self^k` by repeated squaring; `self^0 = I`.
    pub fn pow(&self, mut k: u64) -> Self {
        let mut acc = Self::identity(&self.ring, self.n);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn is_idempotent(&self) -> bool {
        &(self * self) == self
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.ring.is_zero(self.get(i, j))))
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        (self * other) == (other * self)
    }

    /// Image of the matrix over `GF(p)` for a residue prime of the ring.
    pub fn residue_matrix(&self, p: u64) -> RingMatrix {
        let field = factorize(p).expect("residue primes are valid moduli");
        self.map(&field, |a| self.ring.residue(a, p))
    }

    /// Upper bound on the nilpotency index of any nilpotent `n x n` matrix:
    /// `M^n` lies in the matrices over the nilradical, whose index is the
    /// ring's element bound.
    pub fn nilpotency_bound(&self) -> u32 {
        self.n as u32 * self.ring.nil_index_bound()
    }

    /// Minimal `k` with `A^k = 0`, if any.
    ///
    /// Nilpotency is decided on the residue fields (the kernel of reduction is
    /// nil); the minimal exponent is then found by binary search below
    /// [`Matrix::nilpotency_bound`].
    pub fn nilpotency_exponent(&self) -> Option<u32> {
        let nil_everywhere = self
            .ring
            .residue_primes()
            .into_iter()
            .all(|p| self.residue_matrix(p).pow(self.n as u64).is_zero());
        if !nil_everywhere {
            return None;
        }
        let (mut lo, mut hi) = (1u32, self.nilpotency_bound());
        debug_assert!(self.pow(hi as u64).is_zero());
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.pow(mid as u64).is_zero() {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Some(lo)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_exponent().is_some()
    }

    /// Invertible iff every residue-field image is invertible.
    pub fn is_invertible(&self) -> bool {
        self.ring
            .residue_primes()
            .into_iter()
            .all(|p| linalg::field_rank(&self.residue_matrix(p)) == self.n)
    }

    /// Block-diagonal matrix with the given square blocks.
    pub fn block_diagonal(ring: &R, blocks: &[Matrix<R>]) -> Self {
        let n = blocks.iter().map(|b| b.n).sum();
        let mut out = Self::zeros(ring, n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    out.set(off + i, off + j, b.get(i, j).clone());
                }
            }
            off += b.n;
        }
        out
    }
}

macro_rules! forward_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<R: Ring> std::ops::$tr for &Matrix<R> {
            type Output = Matrix<R>;
            fn $method(self, rhs: &Matrix<R>) -> Matrix<R> {
                self.$checked(rhs).expect("matrix operands must agree")
            }
        }
    };
}

forward_op!(Add, add, try_add);
forward_op!(Sub, sub, try_sub);
forward_op!(Mul, mul, try_mul);

impl<R: Ring> std::ops::Neg for &Matrix<R> {
    type Output = Matrix<R>;
    fn neg(self) -> Matrix<R> {
        Matrix::neg(self)
    }
}

impl RingMatrix {
    /// Build a `Z_m` matrix from integer rows, reducing each entry.
    pub fn from_ints(modulus: &Modulus, rows: &[Vec<i64>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| modulus.reduce(v)).collect())
            .collect();
        Self::from_rows(modulus, rows)
    }

    pub fn modulus(&self) -> &Modulus {
        &self.ring
    }

    /// Entrywise reduction modulo a divisor `d` of `m`.
    pub fn reduce_mod(&self, d: u64) -> Result<RingMatrix> {
        if !self.ring.divides(d) || d < 2 {
            return Err(Error::input(format!(
                "{d} does not divide the modulus {}",
                self.ring.value()
            )));
        }
        let target = factorize(d)?;
        Ok(self.map(&target, |&a| a % d))
    }

    /// Entrywise reduction to `GF(p)` for a prime `p | m`.
    pub fn reduce_mod_prime(&self, p: u64) -> Result<RingMatrix> {
        if !self.ring.primes().any(|q| q == p) {
            return Err(Error::input(format!(
                "{p} is not a prime divisor of {}",
                self.ring.value()
            )));
        }
        self.reduce_mod(p)
    }

    /// Reinterpret the entries over a multiple modulus (a lift of
    /// representatives, not a ring map).
    pub fn lift_to(&self, target: &Modulus) -> RingMatrix {
        self.map(target, |&a| a % target.value())
    }

    /// `(A mod m1, A mod m2)` for a coprime splitting `m = m1 m2`.
    pub fn crt_split(&self, m1: &Modulus, m2: &Modulus) -> Result<(RingMatrix, RingMatrix)> {
        if num_integer::gcd(m1.value(), m2.value()) != 1
            || m1.value() * m2.value() != self.ring.value()
        {
            return Err(Error::input(format!(
                "{} x {} is not a coprime splitting of {}",
                m1.value(),
                m2.value(),
                self.ring.value()
            )));
        }
        Ok((self.reduce_mod(m1.value())?, self.reduce_mod(m2.value())?))
    }

    /// Inverse of [`RingMatrix::crt_split`], for any number of pairwise
    /// coprime components.
    pub fn crt_recombine(parts: &[RingMatrix]) -> Result<RingMatrix> {
        let first = parts
            .first()
            .ok_or_else(|| Error::input("nothing to recombine"))?;
        let n = first.n;
        if parts.iter().any(|p| p.n != n) {
            return Err(Error::input("CRT components differ in dimension"));
        }
        let (_, m) = crt_combine(
            &parts
                .iter()
                .map(|p| (0, p.ring.value()))
                .collect::<Vec<_>>(),
        )?;
        let modulus = factorize(m)?;
        let mut entries = Vec::with_capacity(n * n);
        for idx in 0..n * n {
            let residues: Vec<(u64, u64)> = parts
                .iter()
                .map(|p| (p.entries[idx], p.ring.value()))
                .collect();
            entries.push(crt_combine(&residues)?.0);
        }
        Ok(Matrix {
            ring: modulus,
            n,
            entries,
        })
    }

    /// Components modulo each prime power of `m`.
    pub fn split_prime_powers(&self) -> Vec<RingMatrix> {
        self.ring
            .prime_power_parts()
            .iter()
            .map(|q| self.reduce_mod(q.value()).expect("prime power divides m"))
            .collect()
    }

    pub fn to_ints(&self) -> Vec<Vec<u64>> {
        self.rows()
    }
}

impl fmt::Display for RingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.ring.value().saturating_sub(1).to_string().len();
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}
