use num_integer::Integer;

use super::modulus::{crt_combine, factorize, mul_mod, Modulus};
use crate::error::{Error, Result};

/// A residue in `[0, m)` carrying its modulus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZmodElem {
    residue: u64,
    modulus: Modulus,
}

impl ZmodElem {
    pub fn new(value: i64, modulus: &Modulus) -> Self {
        ZmodElem {
            residue: modulus.reduce(value),
            modulus: modulus.clone(),
        }
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    fn with(&self, residue: u64) -> Self {
        ZmodElem {
            residue,
            modulus: self.modulus.clone(),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::input(format!(
                "mixed moduli {} and {}",
                self.modulus, other.modulus
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with((self.residue + other.residue) % self.modulus.value()))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let m = self.modulus.value();
        Ok(self.with((self.residue + m - other.residue) % m))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(mul_mod(self.residue, other.residue, self.modulus.value())))
    }

    pub fn pow(&self, k: u64) -> Self {
        self.with(self.modulus.pow(self.residue, k))
    }

    pub fn is_idempotent(&self) -> bool {
        self.pow(2) == *self
    }

    pub fn is_nilpotent(&self) -> bool {
        self.modulus.is_nilpotent(self.residue)
    }
}

impl std::fmt::Display for ZmodElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (mod {})", self.residue, self.modulus.value())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ElementClassification {
    pub is_idempotent: bool,
    pub is_unit: bool,
    /// Smallest `k >= 1` with `a^k = 0`, when `a` is nilpotent.
    pub nilpotency_exponent: Option<u32>,
}

pub fn classify_element(a: &ZmodElem) -> ElementClassification {
    let md = a.modulus();
    let nilpotency_exponent = if md.is_nilpotent(a.residue()) {
        // a = rad(m) * t, so a^{e_max} = 0.
        (1..=md.max_exponent()).find(|&k| a.pow(k as u64).residue() == 0)
    } else {
        None
    };
    ElementClassification {
        is_idempotent: a.is_idempotent(),
        is_unit: md.is_unit(a.residue()),
        nilpotency_exponent,
    }
}

/// Iteration cap for `x <- 3x^2 - 2x^3` in `Z_m`: each round squares the
/// error ideal, so `ceil(log2 e_max)` rounds reach the fixed point and one
/// more observes it.
pub(crate) fn lift_rounds(nil_index: u32) -> u32 {
    let mut rounds = 0;
    while (1u64 << rounds) < nil_index as u64 {
        rounds += 1;
    }
    rounds + 1
}

/// Lift `x` (with `x^2 - x` nilpotent) to the idempotent `e` congruent to it
/// modulo the nilradical.
pub fn lift_idempotent_elem(x: &ZmodElem) -> Result<ZmodElem> {
    let md = x.modulus();
    let m = md.value();
    let defect = (mul_mod(x.residue(), x.residue(), m) + m - x.residue()) % m;
    if !md.is_nilpotent(defect) {
        return Err(Error::Domain(format!(
            "{x}: x^2 - x = {defect} is not nilpotent"
        )));
    }
    let mut cur = x.residue();
    for _ in 0..=lift_rounds(md.max_exponent()) {
        let sq = mul_mod(cur, cur, m);
        if sq == cur {
            return Ok(ZmodElem::new(cur as i64, md));
        }
        let cube = mul_mod(sq, cur, m);
        cur = (mul_mod(3, sq, m) + m - mul_mod(2, cube, m)) % m;
    }
    Err(Error::Internal(format!(
        "idempotent lift of {x} did not converge"
    )))
}

/// `a = e + f + w` with `e, f` idempotent and `w` nilpotent, built per prime
/// power and recombined by CRT.
///
/// Over `GF(2)`: `0 = 0 + 0 + 0`, `1 = 1 + 0 + 0`. Over `GF(3)`: `2 = 1 + 1 + 0`.
/// The residue idempotents are lifted to `Z_{p^k}` and the nilpotent part is
/// whatever remains.
pub fn strong_decompose_element(a: &ZmodElem) -> Result<(ZmodElem, ZmodElem, ZmodElem)> {
    let md = a.modulus();
    md.require_two_three_smooth()?;
    let mut es = Vec::new();
    let mut fs = Vec::new();
    let mut ws = Vec::new();
    for part in md.prime_power_parts() {
        let (p, _) = part.prime_power().expect("prime power part");
        let q = part.value();
        let r = a.residue() % q;
        let (e0, f0) = match r % p {
            0 => (0, 0),
            1 => (1, 0),
            _ => (1, 1),
        };
        let e = lift_idempotent_elem(&ZmodElem::new(e0, &part))?.residue();
        let f = lift_idempotent_elem(&ZmodElem::new(f0, &part))?.residue();
        let w = (r + 2 * q - e - f) % q;
        es.push((e, q));
        fs.push((f, q));
        ws.push((w, q));
    }
    let join = |parts: &[(u64, u64)]| -> Result<ZmodElem> {
        let (r, _) = crt_combine(parts)?;
        Ok(ZmodElem::new(r as i64, md))
    };
    let (e, f, w) = (join(&es)?, join(&fs)?, join(&ws)?);
    debug_assert!(e.is_idempotent() && f.is_idempotent() && w.is_nilpotent());
    Ok((e, f, w))
}

fn check_split(m: &Modulus, m1: &Modulus, m2: &Modulus) -> Result<()> {
    if m1.value().gcd(&m2.value()) != 1 || m1.value() * m2.value() != m.value() {
        return Err(Error::input(format!(
            "{} x {} is not a coprime splitting of {}",
            m1.value(),
            m2.value(),
            m.value()
        )));
    }
    Ok(())
}

pub fn crt_split(a: &ZmodElem, m1: &Modulus, m2: &Modulus) -> Result<(ZmodElem, ZmodElem)> {
    check_split(a.modulus(), m1, m2)?;
    Ok((
        ZmodElem::new((a.residue() % m1.value()) as i64, m1),
        ZmodElem::new((a.residue() % m2.value()) as i64, m2),
    ))
}

pub fn crt_recombine(a1: &ZmodElem, a2: &ZmodElem) -> Result<ZmodElem> {
    let (m1, m2) = (a1.modulus().value(), a2.modulus().value());
    if m1.gcd(&m2) != 1 {
        return Err(Error::input(format!(
            "moduli {m1} and {m2} are not coprime"
        )));
    }
    let (r, m) = crt_combine(&[(a1.residue(), m1), (a2.residue(), m2)])?;
    Ok(ZmodElem::new(r as i64, &factorize(m)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: i64, m: u64) -> ZmodElem {
        ZmodElem::new(v, &factorize(m).unwrap())
    }

    #[test]
    fn crt_examples() {
        let (m4, m3) = (factorize(4).unwrap(), factorize(3).unwrap());
        let (a, b) = crt_split(&z(7, 12), &m4, &m3).unwrap();
        assert_eq!((a.residue(), b.residue()), (3, 1));
        let (a, b) = crt_split(&z(0, 6), &factorize(2).unwrap(), &m3).unwrap();
        assert_eq!((a.residue(), b.residue()), (0, 0));
        assert_eq!(crt_recombine(&z(3, 4), &z(1, 3)).unwrap(), z(7, 12));
    }

    #[test]
    fn crt_split_rejects_bad_splits() {
        let (m2, m6) = (factorize(2).unwrap(), factorize(6).unwrap());
        assert!(crt_split(&z(5, 12), &m2, &m6).is_err());
        assert!(crt_split(&z(5, 12), &m2, &factorize(3).unwrap()).is_err());
        assert!(crt_recombine(&z(1, 2), &z(1, 4)).is_err());
    }

    #[test]
    fn crt_round_trip_exhaustive() {
        for m in 2..=1000u64 {
            let md = factorize(m).unwrap();
            let parts = md.prime_power_parts();
            if parts.len() < 2 {
                continue;
            }
            let m1 = parts[0].clone();
            let m2 = factorize(m / m1.value()).unwrap();
            for r in 0..m {
                let a = ZmodElem::new(r as i64, &md);
                let (x, y) = crt_split(&a, &m1, &m2).unwrap();
                assert_eq!(crt_recombine(&x, &y).unwrap(), a);
            }
        }
    }

    #[test]
    fn classify_examples() {
        let c = classify_element(&z(4, 12));
        assert!(c.is_idempotent && !c.is_unit && c.nilpotency_exponent.is_none());
        let c = classify_element(&z(6, 12));
        assert_eq!(c.nilpotency_exponent, Some(2));
        assert!(!c.is_idempotent);
        for m in [2, 7, 12, 36] {
            let c = classify_element(&z(1, m));
            assert!(c.is_idempotent && c.is_unit && c.nilpotency_exponent.is_none());
        }
        assert_eq!(classify_element(&z(0, 8)).nilpotency_exponent, Some(1));
    }

    #[test]
    fn nilpotency_matches_naive_powering() {
        for m in 2..=1000u64 {
            let md = factorize(m).unwrap();
            for r in 0..m {
                let a = ZmodElem::new(r as i64, &md);
                let c = classify_element(&a);
                assert_eq!(c.nilpotency_exponent.is_some(), a.pow(m).residue() == 0);
                if let Some(k) = c.nilpotency_exponent {
                    assert_eq!(a.pow(k as u64).residue(), 0);
                    if k > 1 {
                        assert_ne!(a.pow(k as u64 - 1).residue(), 0);
                    }
                    assert!(!c.is_unit || m == 1);
                }
            }
        }
    }

    #[test]
    fn lift_examples() {
        assert_eq!(lift_idempotent_elem(&z(3, 4)).unwrap(), z(1, 4));
        assert_eq!(lift_idempotent_elem(&z(0, 36)).unwrap(), z(0, 36));
        assert_eq!(lift_idempotent_elem(&z(4, 12)).unwrap(), z(4, 12));
        assert!(matches!(
            lift_idempotent_elem(&z(2, 5)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn lift_is_fixed_point_and_congruent() {
        for m in [4u64, 8, 12, 36, 64, 72, 81, 200, 1000] {
            let md = factorize(m).unwrap();
            for r in 0..m {
                let x = ZmodElem::new(r as i64, &md);
                let Ok(e) = lift_idempotent_elem(&x) else {
                    continue;
                };
                assert!(e.is_idempotent());
                assert_eq!(lift_idempotent_elem(&e).unwrap(), e);
                for p in md.primes() {
                    assert_eq!(e.residue() % p, r % p);
                }
            }
        }
    }

    #[test]
    fn strong_decompose_examples() {
        let (e, f, w) = strong_decompose_element(&z(5, 6)).unwrap();
        assert_eq!((e.residue(), f.residue(), w.residue()), (1, 4, 0));
        let (e, f, w) = strong_decompose_element(&z(0, 36)).unwrap();
        assert_eq!((e.residue(), f.residue(), w.residue()), (0, 0, 0));
        let (e, f, w) = strong_decompose_element(&z(2, 9)).unwrap();
        assert_eq!((e.residue(), f.residue(), w.residue()), (1, 1, 0));
        assert!(matches!(
            strong_decompose_element(&z(3, 5)),
            Err(Error::UnsupportedModulus { .. })
        ));
    }

    // Brute force: does a = e + f + w exist with e, f idempotent, w nilpotent?
    fn brute_decomposable(a: u64, m: u64) -> bool {
        let md = factorize(m).unwrap();
        let idem: Vec<u64> = (0..m).filter(|&x| mul_mod(x, x, m) == x).collect();
        idem.iter().any(|&e| {
            idem.iter()
                .any(|&f| md.pow((a + 2 * m - e - f) % m, m) == 0)
        })
    }

    #[test]
    fn strong_decompose_total_iff_smooth() {
        for m in 2..=200u64 {
            let md = factorize(m).unwrap();
            let all_brute = (0..m).all(|a| brute_decomposable(a, m));
            assert_eq!(all_brute, md.is_two_three_smooth(), "m = {m}");
            for a in 0..m {
                let a = ZmodElem::new(a as i64, &md);
                match strong_decompose_element(&a) {
                    Ok((e, f, w)) => {
                        assert!(e.is_idempotent() && f.is_idempotent() && w.is_nilpotent());
                        let sum = e.try_add(&f).unwrap().try_add(&w).unwrap();
                        assert_eq!(sum, a);
                    }
                    Err(_) => assert!(!md.is_two_three_smooth()),
                }
            }
        }
    }
}
