use num_integer::Integer;

use crate::error::{Error, Result};
use crate::ring::Ring;

/// Largest modulus accepted by [`factorize`].
pub const MAX_MODULUS: u64 = 1 << 31;

/// A modulus `m >= 2` together with its prime factorization.
///
/// Doubles as the ring context for `Z_m`: residues are `u64` values in
/// `[0, m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Modulus {
    m: u64,
    factors: Vec<(u64, u32)>,
}

/// Factor `m` by trial division.
pub fn factorize(m: u64) -> Result<Modulus> {
    if !(2..=MAX_MODULUS).contains(&m) {
        return Err(Error::input(format!(
            "modulus {m} outside the supported range [2, 2^31]"
        )));
    }
    let mut factors = Vec::new();
    let mut rest = m;
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Modulus { m, factors })
}

impl Modulus {
    pub fn new(m: u64) -> Result<Self> {
        factorize(m)
    }

    pub fn value(&self) -> u64 {
        self.m
    }

    /// `(prime, exponent)` pairs in ascending prime order.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_prime(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// `Some((p, e))` when `m = p^e`.
    pub fn prime_power(&self) -> Option<(u64, u32)> {
        match self.factors.as_slice() {
            [single] => Some(*single),
            _ => None,
        }
    }

    pub fn max_exponent(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).max().unwrap_or(1)
    }

    /// Product of the distinct primes; the nilradical of `Z_m` is `rad(m) Z_m`.
    pub fn radical(&self) -> u64 {
        self.primes().product()
    }

    /// True iff every prime factor is 2 or 3.
    pub fn is_two_three_smooth(&self) -> bool {
        self.primes().all(|p| p == 2 || p == 3)
    }

    /// Fails with [`Error::UnsupportedModulus`] naming the first prime >= 5.
    pub fn require_two_three_smooth(&self) -> Result<()> {
        match self.primes().find(|&p| p >= 5) {
            Some(prime) => Err(Error::UnsupportedModulus {
                modulus: self.m,
                prime,
            }),
            None => Ok(()),
        }
    }

    /// The moduli `p^e` of the CRT decomposition, ascending in `p`.
    pub fn prime_power_parts(&self) -> Vec<Modulus> {
        self.factors
            .iter()
            .map(|&(p, e)| Modulus {
                m: p.pow(e),
                factors: vec![(p, e)],
            })
            .collect()
    }

    pub fn divides(&self, d: u64) -> bool {
        d >= 1 && self.m.is_multiple_of(d)
    }

    pub fn reduce(&self, k: i64) -> u64 {
        k.rem_euclid(self.m as i64) as u64
    }

    pub fn is_unit(&self, a: u64) -> bool {
        a.gcd(&self.m) == 1
    }

    pub fn is_nilpotent(&self, a: u64) -> bool {
        a.is_multiple_of(self.radical())
    }

    pub fn inverse(&self, a: u64) -> Option<u64> {
        inv_mod(a, self.m)
    }

    pub fn pow(&self, a: u64, k: u64) -> u64 {
        pow_mod(a, k, self.m)
    }
}

impl std::fmt::Display for Modulus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Z{}", self.m)
    }
}

impl Ring for Modulus {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.m
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.m {
            s - self.m
        } else {
            s
        }
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.m - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.m)
    }

    fn from_int(&self, k: i64) -> u64 {
        self.reduce(k)
    }

    fn residue_primes(&self) -> Vec<u64> {
        self.primes().collect()
    }

    fn residue(&self, a: &u64, p: u64) -> u64 {
        a % p
    }

    fn nil_index_bound(&self) -> u32 {
        self.max_exponent()
    }
}

// Residues are below 2^31, so products fit in u64.
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a * b) % m
}

pub(crate) fn pow_mod(mut a: u64, mut k: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while k > 0 {
        if k & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        k >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let g = (a as i64).extended_gcd(&(m as i64));
    (g.gcd == 1).then(|| g.x.rem_euclid(m as i64) as u64)
}

/// Combine residues `(r_i mod m_i)` with pairwise coprime moduli.
pub fn crt_combine(parts: &[(u64, u64)]) -> Result<(u64, u64)> {
    let mut acc = (0u64, 1u64);
    for &(r, m) in parts {
        let (r0, m0) = acc;
        if m0.gcd(&m) != 1 {
            return Err(Error::input(format!(
                "CRT moduli {m0} and {m} are not coprime"
            )));
        }
        let inv = inv_mod(m0 % m, m).unwrap_or(0);
        let diff = (r % m + m - r0 % m) % m;
        let t = (diff as u128 * inv as u128 % m as u128) as u64;
        let combined = m0
            .checked_mul(m)
            .ok_or_else(|| Error::input("CRT product exceeds 64 bits".to_string()))?;
        acc = (
            ((r0 as u128 + m0 as u128 * t as u128) % combined as u128) as u64,
            combined,
        );
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_small() {
        assert_eq!(factorize(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(2).unwrap().factors(), &[(2, 1)]);
        assert_eq!(factorize(36).unwrap().factors(), &[(2, 2), (3, 2)]);
        assert_eq!(factorize(2147483647).unwrap().factors(), &[(2147483647, 1)]);
        assert_eq!(factorize(1 << 31).unwrap().factors(), &[(2, 31)]);
    }

    #[test]
    fn factorize_rejects_out_of_range() {
        assert!(matches!(factorize(0), Err(Error::InvalidInput(_))));
        assert!(matches!(factorize(1), Err(Error::InvalidInput(_))));
        assert!(factorize((1 << 31) + 1).is_err());
    }

    #[test]
    fn factorization_multiplies_back() {
        for m in 2..3000u64 {
            let md = factorize(m).unwrap();
            let prod: u64 = md.factors().iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(prod, m);
            assert!(md.factors().windows(2).all(|w| w[0].0 < w[1].0));
        }
    }

    #[test]
    fn smoothness() {
        assert!(factorize(36).unwrap().is_two_three_smooth());
        assert!(!factorize(5).unwrap().is_two_three_smooth());
        assert!(factorize(6).unwrap().is_two_three_smooth());
        assert!(!factorize(30).unwrap().is_two_three_smooth());
        assert!(matches!(
            factorize(10).unwrap().require_two_three_smooth(),
            Err(Error::UnsupportedModulus {
                modulus: 10,
                prime: 5
            })
        ));
    }

    #[test]
    fn crt_combine_matches_reduction() {
        assert_eq!(crt_combine(&[(3, 4), (1, 3)]).unwrap(), (7, 12));
        assert!(crt_combine(&[(1, 4), (1, 6)]).is_err());
    }
}
