use super::modulus::{mul_mod, Modulus};
use super::zmod::ElementClassification;
use crate::error::{Error, Result};
use crate::ring::Ring;

/// The ring `Z_m[x]/(x^d)`. Elements are coefficient vectors of length `d`,
/// lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncPolyRing {
    base: Modulus,
    degree: usize,
}

impl TruncPolyRing {
    pub fn new(base: Modulus, degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::input("truncation degree must be at least 1"));
        }
        Ok(TruncPolyRing { base, degree })
    }

    pub fn base(&self) -> &Modulus {
        &self.base
    }

    /// The `d` in `x^d = 0`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Reduce integer coefficients; shorter inputs are zero-padded.
    pub fn elem(&self, coeffs: &[i64]) -> Result<Vec<u64>> {
        if coeffs.len() > self.degree {
            return Err(Error::input(format!(
                "{} coefficients given for truncation degree {}",
                coeffs.len(),
                self.degree
            )));
        }
        let mut out = vec![0; self.degree];
        for (slot, &c) in out.iter_mut().zip(coeffs) {
            *slot = self.base.reduce(c);
        }
        Ok(out)
    }

    pub fn constant(&self, c: u64) -> Vec<u64> {
        let mut out = vec![0; self.degree];
        out[0] = c % self.base.value();
        out
    }

    pub fn size(&self) -> u128 {
        (self.base.value() as u128).saturating_pow(self.degree as u32)
    }
}

impl std::fmt::Display for TruncPolyRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Z{}[x]/(x^{})", self.base.value(), self.degree)
    }
}

impl Ring for TruncPolyRing {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.degree]
    }

    fn one(&self) -> Vec<u64> {
        self.constant(1)
    }

    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }

    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }

    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let m = self.base.value();
        let mut out = vec![0u64; self.degree];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate().take(self.degree - i) {
                out[i + j] = (out[i + j] + mul_mod(x, y, m)) % m;
            }
        }
        out
    }

    fn from_int(&self, k: i64) -> Vec<u64> {
        self.constant(self.base.reduce(k))
    }

    fn residue_primes(&self) -> Vec<u64> {
        self.base.primes().collect()
    }

    fn residue(&self, a: &Vec<u64>, p: u64) -> u64 {
        a[0] % p
    }

    fn nil_index_bound(&self) -> u32 {
        // The nilradical is (rad m, x); its index is e_max + d - 1 <= d * e_max.
        self.degree as u32 * self.base.max_exponent()
    }
}

/// A truncated polynomial carrying its ring, for checked element arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncPolyElem {
    ring: TruncPolyRing,
    coeffs: Vec<u64>,
}

impl TruncPolyElem {
    pub fn new(ring: &TruncPolyRing, coeffs: &[i64]) -> Result<Self> {
        Ok(TruncPolyElem {
            coeffs: ring.elem(coeffs)?,
            ring: ring.clone(),
        })
    }

    pub fn ring(&self) -> &TruncPolyRing {
        &self.ring
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::input(format!(
                "mixed rings {} and {}",
                self.ring, other.ring
            )));
        }
        Ok(())
    }

    fn with(&self, coeffs: Vec<u64>) -> Self {
        TruncPolyElem {
            ring: self.ring.clone(),
            coeffs,
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(self.ring.add(&self.coeffs, &other.coeffs)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(self.ring.sub(&self.coeffs, &other.coeffs)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(self.ring.mul(&self.coeffs, &other.coeffs)))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = self.ring.one();
        for _ in 0..k {
            acc = self.ring.mul(&acc, &self.coeffs);
        }
        self.with(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn classify(&self) -> ElementClassification {
        let base = self.ring.base();
        let c0 = self.coeffs[0];
        let nilpotency_exponent = if base.is_nilpotent(c0) {
            let mut power = self.clone();
            (1..=self.ring.nil_index_bound()).find(|_| {
                let hit = power.is_zero();
                power = power.try_mul(self).expect("same ring");
                hit
            })
        } else {
            None
        };
        ElementClassification {
            is_idempotent: self.try_mul(self).expect("same ring") == *self,
            is_unit: base.is_unit(c0),
            nilpotency_exponent,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residue::factorize;

    fn ring(m: u64, d: usize) -> TruncPolyRing {
        TruncPolyRing::new(factorize(m).unwrap(), d).unwrap()
    }

    #[test]
    fn truncated_product() {
        let r = ring(3, 2);
        let a = TruncPolyElem::new(&r, &[1, 1]).unwrap();
        let b = TruncPolyElem::new(&r, &[1, -1]).unwrap();
        assert_eq!(a.try_mul(&b).unwrap().coeffs(), &[1, 0]);
    }

    #[test]
    fn classify_examples() {
        let x = TruncPolyElem::new(&ring(2, 3), &[0, 1]).unwrap();
        assert_eq!(x.classify().nilpotency_exponent, Some(3));
        let u = TruncPolyElem::new(&ring(2, 2), &[1, 1]).unwrap();
        let c = u.classify();
        assert!(c.is_unit && c.nilpotency_exponent.is_none());
        assert_eq!(u.pow(2).coeffs(), &[1, 0]);
        let two_plus_x = TruncPolyElem::new(&ring(4, 3), &[2, 1]).unwrap();
        // (2 + x)^k: the x-part dies at k = 3, the 2-part at k = 2; mixed terms last to k = 4.
        assert_eq!(two_plus_x.classify().nilpotency_exponent, Some(4));
    }

    #[test]
    fn mismatched_rings_rejected() {
        let a = TruncPolyElem::new(&ring(3, 2), &[1]).unwrap();
        let b = TruncPolyElem::new(&ring(3, 3), &[1]).unwrap();
        let c = TruncPolyElem::new(&ring(2, 2), &[1]).unwrap();
        assert!(a.try_add(&b).is_err());
        assert!(a.try_mul(&c).is_err());
        assert!(TruncPolyRing::new(factorize(3).unwrap(), 0).is_err());
        assert!(TruncPolyElem::new(&ring(3, 2), &[1, 2, 3]).is_err());
    }

    #[test]
    fn classification_matches_constant_term() {
        let r = ring(12, 2);
        for c0 in 0..12 {
            for c1 in 0..12 {
                let a = TruncPolyElem::new(&r, &[c0, c1]).unwrap();
                let c = a.classify();
                let brute_nil = a.pow(r.nil_index_bound()).is_zero();
                assert_eq!(c.nilpotency_exponent.is_some(), brute_nil);
                assert_eq!(c.is_unit, num_integer::gcd(c0, 12) == 1);
            }
        }
    }
}
