use std::fmt;

use crate::error::{Error, Result};
use crate::residue::{inv_mod, mul_mod};

/// A polynomial over `GF(p)`, coefficients lowest degree first, with no
/// trailing zeros. The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FieldPoly {
    pub fn new(p: u64, coeffs: &[i64]) -> Self {
        let coeffs = coeffs
            .iter()
            .map(|&c| c.rem_euclid(p as i64) as u64)
            .collect();
        Self::from_residues(p, coeffs)
    }

    pub(crate) fn from_residues(p: u64, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FieldPoly { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        FieldPoly { p, coeffs: vec![] }
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::from_residues(p, vec![c % p])
    }

    /// `x^k`.
    pub fn monomial(p: u64, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = 1 % p;
        Self::from_residues(p, coeffs)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.leading(), self.p).expect("field");
        self.scale(inv)
    }

    pub fn scale(&self, c: u64) -> Self {
        let p = self.p;
        Self::from_residues(
            p,
            self.coeffs.iter().map(|&a| mul_mod(a, c % p, p)).collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.p;
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::from_residues(
            p,
            (0..len)
                .map(|k| (self.coeff(k) + other.coeff(k)) % p)
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        let p = self.p;
        Self::from_residues(p, self.coeffs.iter().map(|&a| (p - a) % p).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        Self::from_residues(p, out)
    }

    /// `(q, r)` with `self = q * divisor + r` and `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        if self.p != divisor.p {
            return Err(Error::input(format!(
                "polynomials over GF({}) and GF({})",
                self.p, divisor.p
            )));
        }
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::input("division by the zero polynomial"))?;
        let p = self.p;
        let inv = inv_mod(divisor.leading(), p).expect("field");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; self.coeffs.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let c = mul_mod(*rem.last().expect("nonempty"), inv, p);
            quot[shift] = c;
            for (k, &b) in divisor.coeffs.iter().enumerate() {
                let sub = mul_mod(c, b, p);
                rem[shift + k] = (rem[shift + k] + p - sub) % p;
            }
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        Ok((Self::from_residues(p, quot), Self::from_residues(p, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Whether `self` divides `other`.
    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).expect("nonzero divisor").is_zero()
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("b nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mul_mod(acc, x % p, p) + c) % p)
    }
}

impl fmt::Display for FieldPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut terms = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && k > 0 {
                String::new()
            } else {
                c.to_string()
            };
            terms.push(match k {
                0 => coef,
                1 => format!("{coef}x"),
                _ => format!("{coef}x^{k}"),
            });
        }
        write!(f, "{}", terms.join(" + "))
    }
}
