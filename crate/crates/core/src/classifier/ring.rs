use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::residue::{factorize, mul_mod};

/// One factor of a finite product ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Factor {
    /// `Z_m`.
    Zm(u64),
    /// `M_n(Z_m)`.
    MatZm { n: usize, m: u64 },
    /// `Z_m[x]/(x^d)`.
    TruncPoly { m: u64, d: usize },
}

impl Factor {
    fn modulus(self) -> u64 {
        match self {
            Factor::Zm(m) | Factor::MatZm { m, .. } | Factor::TruncPoly { m, .. } => m,
        }
    }

    /// Number of base digits an element of this factor occupies.
    fn digits(self) -> usize {
        match self {
            Factor::Zm(_) => 1,
            Factor::MatZm { n, .. } => n * n,
            Factor::TruncPoly { d, .. } => d,
        }
    }

    fn size(self) -> u128 {
        (self.modulus() as u128).saturating_pow(self.digits() as u32)
    }

    fn one_into(self, out: &mut [u64]) {
        let m = self.modulus();
        out.fill(0);
        match self {
            Factor::MatZm { n, .. } => (0..n).for_each(|i| out[i * n + i] = 1 % m),
            _ => out[0] = 1 % m,
        }
    }

    fn mul_into(self, a: &[u64], b: &[u64], out: &mut [u64]) {
        let m = self.modulus();
        out.fill(0);
        match self {
            Factor::Zm(_) => out[0] = mul_mod(a[0], b[0], m),
            Factor::MatZm { n, .. } => {
                for i in 0..n {
                    for k in 0..n {
                        let x = a[i * n + k];
                        if x == 0 {
                            continue;
                        }
                        for j in 0..n {
                            out[i * n + j] = (out[i * n + j] + mul_mod(x, b[k * n + j], m)) % m;
                        }
                    }
                }
            }
            Factor::TruncPoly { d, .. } => {
                for i in 0..d {
                    if a[i] == 0 {
                        continue;
                    }
                    for j in 0..d - i {
                        out[i + j] = (out[i + j] + mul_mod(a[i], b[j], m)) % m;
                    }
                }
            }
        }
    }

    fn fmt_elem(self, digits: &[u64], out: &mut String) {
        use std::fmt::Write;
        match self {
            Factor::Zm(_) => write!(out, "{}", digits[0]).expect("string write"),
            Factor::MatZm { n, .. } => {
                let rows: Vec<String> = digits
                    .chunks(n)
                    .map(|r| {
                        let v: Vec<String> = r.iter().map(u64::to_string).collect();
                        format!("[{}]", v.join(","))
                    })
                    .collect();
                write!(out, "[{}]", rows.join(",")).expect("string write");
            }
            Factor::TruncPoly { .. } => {
                let v: Vec<String> = digits.iter().map(u64::to_string).collect();
                write!(out, "poly[{}]", v.join(",")).expect("string write");
            }
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Factor::Zm(m) => write!(f, "Z{m}"),
            Factor::MatZm { n, m } => write!(f, "M{n}(Z{m})"),
            Factor::TruncPoly { m, d } => write!(f, "Z{m}[x]/(x^{d})"),
        }
    }
}

fn parse_int<T: FromStr>(s: &str, what: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::input(format!("expected {what}, found {s:?}")))
}

impl FromStr for Factor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::input(format!("cannot parse ring factor {s:?}"));
        let factor = if let Some(rest) = s.strip_prefix('M') {
            let (n, inner) = rest.split_once('(').ok_or_else(bad)?;
            let inner = inner.strip_suffix(')').ok_or_else(bad)?;
            let m = inner.strip_prefix('Z').ok_or_else(bad)?;
            Factor::MatZm {
                n: parse_int(n, "matrix dimension")?,
                m: parse_int(m, "modulus")?,
            }
        } else if let Some(rest) = s.strip_prefix('Z') {
            match rest.split_once("[x]/(x^") {
                Some((m, d)) => Factor::TruncPoly {
                    m: parse_int(m, "modulus")?,
                    d: parse_int(d.strip_suffix(')').ok_or_else(bad)?, "truncation degree")?,
                },
                None => Factor::Zm(parse_int(rest, "modulus")?),
            }
        } else {
            return Err(bad());
        };
        factorize(factor.modulus())?;
        if factor.digits() == 0 {
            return Err(Error::input(format!("{s:?} has no entries")));
        }
        Ok(factor)
    }
}

/// A finite product of factors, e.g. `Z3xZ3`, `M2(Z2)`, `Z2xZ4xZ8`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingDescriptor {
    factors: Vec<Factor>,
    offsets: Vec<usize>,
}

impl RingDescriptor {
    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::input("a ring needs at least one factor"));
        }
        let mut offsets = Vec::with_capacity(factors.len() + 1);
        let mut acc = 0;
        for f in &factors {
            offsets.push(acc);
            acc += f.digits();
        }
        offsets.push(acc);
        Ok(RingDescriptor { factors, offsets })
    }

    pub fn zm(m: u64) -> Self {
        Self::new(vec![Factor::Zm(m)]).expect("one factor")
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn size(&self) -> u128 {
        self.factors
            .iter()
            .fold(1u128, |acc, f| acc.saturating_mul(f.size()))
    }

    pub fn require_size(&self, cap: u128) -> Result<()> {
        let size = self.size();
        if size > cap {
            return Err(Error::ResourceCap { size, cap });
        }
        Ok(())
    }

    fn digit_count(&self) -> usize {
        *self.offsets.last().expect("offsets")
    }

    fn radices(&self) -> Vec<u64> {
        self.factors
            .iter()
            .flat_map(|f| std::iter::repeat_n(f.modulus(), f.digits()))
            .collect()
    }

    fn parts<'a>(&'a self, a: &'a [u64]) -> impl Iterator<Item = (Factor, &'a [u64])> + 'a {
        self.factors
            .iter()
            .enumerate()
            .map(move |(i, &f)| (f, &a[self.offsets[i]..self.offsets[i + 1]]))
    }

    /// All elements in mixed-radix order, last digit fastest.
    pub fn elements(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        let radices = self.radices();
        let mut next = Some(vec![0u64; radices.len()]);
        std::iter::from_fn(move || {
            let cur = next.take()?;
            let mut succ = cur.clone();
            for k in (0..succ.len()).rev() {
                succ[k] += 1;
                if succ[k] < radices[k] {
                    next = Some(succ);
                    break;
                }
                succ[k] = 0;
            }
            Some(cur)
        })
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.digit_count()]
    }

    pub fn one(&self) -> Vec<u64> {
        let mut out = self.zero();
        for (i, f) in self.factors.iter().enumerate() {
            f.one_into(&mut out[self.offsets[i]..self.offsets[i + 1]]);
        }
        out
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let radices = self.radices();
        a.iter()
            .zip(b)
            .zip(radices)
            .map(|((x, y), m)| (x + y) % m)
            .collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(self.radices())
            .map(|(x, m)| (m - x) % m)
            .collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = self.zero();
        for (i, f) in self.factors.iter().enumerate() {
            let r = self.offsets[i]..self.offsets[i + 1];
            f.mul_into(&a[r.clone()], &b[r.clone()], &mut out[r]);
        }
        out
    }

    pub fn pow(&self, a: &[u64], mut k: u128) -> Vec<u64> {
        let mut acc = self.one();
        let mut base = a.to_vec();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    pub fn commute(&self, a: &[u64], b: &[u64]) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Element built from one integer per `Z_m` factor (other factors get
    /// the constant / scalar image of the integer).
    pub fn from_ints(&self, values: &[i64]) -> Result<Vec<u64>> {
        if values.len() != self.factors.len() {
            return Err(Error::input(format!(
                "{} components given for {} factors",
                values.len(),
                self.factors.len()
            )));
        }
        let mut out = self.zero();
        for (i, (f, &v)) in self.factors.iter().zip(values).enumerate() {
            let slot = &mut out[self.offsets[i]..self.offsets[i + 1]];
            f.one_into(slot);
            let r = v.rem_euclid(f.modulus() as i64) as u64;
            for x in slot.iter_mut() {
                *x = mul_mod(*x, r, f.modulus());
            }
        }
        Ok(out)
    }

    pub fn format_elem(&self, a: &[u64]) -> String {
        let mut parts = Vec::new();
        for (f, digits) in self.parts(a) {
            let mut s = String::new();
            f.fmt_elem(digits, &mut s);
            parts.push(s);
        }
        if parts.len() == 1 {
            parts.pop().expect("one part")
        } else {
            format!("({})", parts.join(", "))
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.factors.iter().map(Factor::to_string).collect();
        f.write_str(&names.join("x"))
    }
}

impl FromStr for RingDescriptor {
    type Err = Error;

    /// Factors separated by `x` outside brackets: `Z3xZ3`, `M2(Z2)`,
    /// `Z6xZ2[x]/(x^3)`.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut factors = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        for (i, ch) in s.char_indices() {
            match ch {
                '(' | '[' => depth += 1,
                ')' | ']' => depth -= 1,
                'x' if depth == 0 && !s[..i].ends_with('/') => {
                    factors.push(s[start..i].parse()?);
                    start = i + 1;
                }
                _ => {}
            }
        }
        factors.push(s[start..].parse()?);
        Self::new(factors)
    }
}
