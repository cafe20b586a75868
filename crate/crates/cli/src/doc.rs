//! Line-oriented `key: value` documents with JSON values.

use std::fmt;
use std::str::FromStr;

use nilclean::classifier::Factor;
use nilclean::decompose::BlockTag;
use nilclean::{DecompositionCertificate, Matrix, Modulus, Ring, TruncPolyRing};
use serde_json::Value;

use crate::error::{CliError, CliResult};

pub const CERT_SCHEMA: &str = "nilclean-cert/1";
pub const RCF_SCHEMA: &str = "nilclean-rcf/1";
pub const REPORT_SCHEMA: &str = "nilclean-report/1";

/// Separator line between documents in a stream.
pub const SEPARATOR: &str = "---";

/// Coefficient ring of a matrix document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseRing {
    Zm(Modulus),
    Trunc(TruncPolyRing),
}

impl BaseRing {
    pub fn modulus(&self) -> &Modulus {
        match self {
            BaseRing::Zm(m) => m,
            BaseRing::Trunc(r) => r.base(),
        }
    }

    /// Coefficients per matrix entry.
    pub fn width(&self) -> usize {
        match self {
            BaseRing::Zm(_) => 1,
            BaseRing::Trunc(r) => r.degree(),
        }
    }
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseRing::Zm(m) => write!(f, "{m}"),
            BaseRing::Trunc(r) => write!(f, "{r}"),
        }
    }
}

impl FromStr for BaseRing {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        let s = s.trim();
        let factor: Factor = match s.parse() {
            Ok(f) => f,
            Err(_) if s.chars().all(|c| c.is_ascii_digit()) && !s.is_empty() => Factor::Zm(
                s.parse()
                    .map_err(|_| CliError::parse(format!("bad modulus {s:?}")))?,
            ),
            Err(e) => return Err(CliError::parse(e.to_string())),
        };
        match factor {
            Factor::Zm(m) => Ok(BaseRing::Zm(Modulus::new(m)?)),
            Factor::TruncPoly { m, d } => {
                Ok(BaseRing::Trunc(TruncPolyRing::new(Modulus::new(m)?, d)?))
            }
            Factor::MatZm { .. } => Err(CliError::parse(format!(
                "{s:?} is a matrix ring; give its coefficient ring instead"
            ))),
        }
    }
}

/// Rings whose elements round-trip through coefficient lists.
pub trait DocRing: Ring {
    fn base_ring(&self) -> BaseRing;
    fn coefficients(&self, a: &Self::Elem) -> Vec<u64>;
    fn elem_of(&self, c: &[u64]) -> Self::Elem;
}

impl DocRing for Modulus {
    fn base_ring(&self) -> BaseRing {
        BaseRing::Zm(self.clone())
    }

    fn coefficients(&self, a: &u64) -> Vec<u64> {
        vec![*a]
    }

    fn elem_of(&self, c: &[u64]) -> u64 {
        c[0]
    }
}

impl DocRing for TruncPolyRing {
    fn base_ring(&self) -> BaseRing {
        BaseRing::Trunc(self.clone())
    }

    fn coefficients(&self, a: &Vec<u64>) -> Vec<u64> {
        a.clone()
    }

    fn elem_of(&self, c: &[u64]) -> Vec<u64> {
        c.to_vec()
    }
}

/// Matrix entries as coefficient lists: `grid[i][j][k]`.
pub type Grid = Vec<Vec<Vec<u64>>>;

pub fn grid_of<R: DocRing>(m: &Matrix<R>) -> Grid {
    m.rows()
        .iter()
        .map(|row| row.iter().map(|x| m.ring().coefficients(x)).collect())
        .collect()
}

pub fn matrix_of<R: DocRing>(ring: &R, grid: &Grid) -> CliResult<Matrix<R>> {
    let rows = grid
        .iter()
        .map(|row| row.iter().map(|c| ring.elem_of(c)).collect())
        .collect();
    Ok(Matrix::from_rows(ring, rows)?)
}

fn grid_json(ring: &BaseRing, g: &Grid) -> Value {
    Value::Array(
        g.iter()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .map(|c| match ring {
                            BaseRing::Zm(_) => Value::from(c[0]),
                            BaseRing::Trunc(_) => Value::from(c.clone()),
                        })
                        .collect(),
                )
            })
            .collect(),
    )
}

fn json_int(v: &Value) -> CliResult<i64> {
    v.as_i64()
        .ok_or_else(|| CliError::parse(format!("expected an integer, found {v}")))
}

/// Reads one entry. `strict` rejects anything but canonical residues of the
/// full width; otherwise integers are reduced and short coefficient lists
/// are zero-padded.
fn entry_from_json(ring: &BaseRing, v: &Value, strict: bool) -> CliResult<Vec<u64>> {
    let m = ring.modulus().value();
    let width = ring.width();
    let raw: Vec<i64> = match (ring, v) {
        (_, Value::Number(_)) if !(strict && matches!(ring, BaseRing::Trunc(_))) => {
            vec![json_int(v)?]
        }
        (BaseRing::Trunc(_), Value::Array(items)) => {
            items.iter().map(json_int).collect::<CliResult<_>>()?
        }
        _ => {
            return Err(CliError::parse(format!(
                "bad matrix entry {v} for ring {ring}"
            )))
        }
    };
    if raw.len() > width || (strict && raw.len() != width) {
        return Err(CliError::parse(format!(
            "entry {v} needs {width} coefficient(s) for ring {ring}"
        )));
    }
    let mut out = vec![0; width];
    for (slot, x) in out.iter_mut().zip(&raw) {
        if strict && !(0..m as i64).contains(x) {
            return Err(CliError::parse(format!(
                "entry {x} is not a residue mod {m}"
            )));
        }
        *slot = x.rem_euclid(m as i64) as u64;
    }
    Ok(out)
}

pub fn parse_grid(ring: &BaseRing, text: &str, strict: bool) -> CliResult<Grid> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| CliError::parse(format!("bad matrix JSON: {e}")))?;
    let rows = v
        .as_array()
        .ok_or_else(|| CliError::parse("matrix must be an array of rows"))?;
    let grid: Grid = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| CliError::parse("matrix row must be an array"))?
                .iter()
                .map(|x| entry_from_json(ring, x, strict))
                .collect()
        })
        .collect::<CliResult<_>>()?;
    check_square(&grid)?;
    Ok(grid)
}

pub fn check_square(grid: &Grid) -> CliResult<usize> {
    let n = grid.len();
    if n == 0 || grid.iter().any(|r| r.len() != n) {
        return Err(CliError::parse("matrix must be square and non-empty"));
    }
    Ok(n)
}

/// Ordered `key: value` fields of one document.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Fields(Vec<(String, String)>);

impl Fields {
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut out: Vec<(String, String)> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once(':').ok_or_else(|| {
                CliError::parse(format!("line {}: expected `key: value`", lineno + 1))
            })?;
            let k = k.trim().to_string();
            if out.iter().any(|(seen, _)| *seen == k) {
                return Err(CliError::parse(format!("duplicate key {k:?}")));
            }
            out.push((k, v.trim().to_string()));
        }
        Ok(Fields(out))
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn require(&self, key: &str) -> CliResult<&str> {
        self.get(key)
            .ok_or_else(|| CliError::parse(format!("missing field {key:?}")))
    }

    pub fn only(&self, allowed: &[&str]) -> CliResult<()> {
        match self.0.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
            Some((k, _)) => Err(CliError::parse(format!("unknown field {k:?}"))),
            None => Ok(()),
        }
    }
}

/// Splits a stream on `---` lines, dropping empty chunks.
pub fn split_documents(text: &str) -> Vec<String> {
    let mut docs = vec![String::new()];
    for line in text.lines() {
        if line.trim() == SEPARATOR {
            docs.push(String::new());
        } else {
            let cur = docs.last_mut().expect("at least one chunk");
            cur.push_str(line);
            cur.push('\n');
        }
    }
    docs.retain(|d| {
        d.lines()
            .any(|l| !l.trim().is_empty() && !l.trim().starts_with('#'))
    });
    docs
}

pub fn join_documents(docs: &[String]) -> String {
    docs.join(&format!("{SEPARATOR}\n"))
}

fn parse_bool(s: &str) -> CliResult<bool> {
    match s {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(CliError::parse(format!(
            "expected true or false, found {s:?}"
        ))),
    }
}

fn parse_num<T: FromStr>(s: &str, key: &str) -> CliResult<T> {
    s.parse()
        .map_err(|_| CliError::parse(format!("field {key:?}: bad number {s:?}")))
}

fn check_schema(f: &Fields, schema: &str) -> CliResult<()> {
    match f.require("schema")? {
        s if s == schema => Ok(()),
        s => Err(CliError::parse(format!(
            "unsupported schema {s:?}, expected {schema:?}"
        ))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateDocument {
    pub ring: BaseRing,
    pub n: usize,
    pub a: Grid,
    pub e: Grid,
    pub f: Grid,
    pub w: Grid,
    pub nilpotency_exponent: u32,
    pub case_tags: Vec<BlockTag>,
    pub verified: bool,
}

const CERT_KEYS: [&str; 10] = [
    "schema",
    "ring",
    "n",
    "A",
    "E",
    "F",
    "W",
    "nilpotency_exponent",
    "case_tags",
    "verified",
];

impl CertificateDocument {
    pub fn from_certificate<R: DocRing>(c: &DecompositionCertificate<R>) -> Self {
        CertificateDocument {
            ring: c.a.ring().base_ring(),
            n: c.dim(),
            a: grid_of(&c.a),
            e: grid_of(&c.e),
            f: grid_of(&c.f),
            w: grid_of(&c.w),
            nilpotency_exponent: c.nilpotency_exponent,
            case_tags: c.tags.clone(),
            verified: c.is_verified(),
        }
    }

    pub fn to_certificate<R: DocRing>(&self, ring: &R) -> CliResult<DecompositionCertificate<R>> {
        Ok(DecompositionCertificate::new(
            matrix_of(ring, &self.a)?,
            matrix_of(ring, &self.e)?,
            matrix_of(ring, &self.f)?,
            matrix_of(ring, &self.w)?,
            self.nilpotency_exponent,
            self.case_tags.clone(),
        ))
    }

    pub fn emit(&self) -> String {
        let g = |x: &Grid| grid_json(&self.ring, x).to_string();
        let tags: Vec<String> = self.case_tags.iter().map(|t| t.to_string()).collect();
        format!(
            "schema: {CERT_SCHEMA}\nring: {}\nn: {}\nA: {}\nE: {}\nF: {}\nW: {}\n\
             nilpotency_exponent: {}\ncase_tags: {}\nverified: {}\n",
            self.ring,
            self.n,
            g(&self.a),
            g(&self.e),
            g(&self.f),
            g(&self.w),
            self.nilpotency_exponent,
            Value::from(tags),
            self.verified
        )
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let f = Fields::parse(text)?;
        f.only(&CERT_KEYS)?;
        check_schema(&f, CERT_SCHEMA)?;
        let ring: BaseRing = f.require("ring")?.parse()?;
        let n: usize = parse_num(f.require("n")?, "n")?;
        let grid = |key: &str| -> CliResult<Grid> {
            let g = parse_grid(&ring, f.require(key)?, true)?;
            if g.len() != n {
                return Err(CliError::parse(format!(
                    "{key} is {}x{0}, expected n = {n}",
                    g.len()
                )));
            }
            Ok(g)
        };
        let tags: Vec<String> = serde_json::from_str(f.require("case_tags")?)
            .map_err(|e| CliError::parse(format!("case_tags: {e}")))?;
        let case_tags = tags
            .iter()
            .map(|t| {
                t.parse::<BlockTag>()
                    .map_err(|e| CliError::parse(e.to_string()))
            })
            .collect::<CliResult<_>>()?;
        Ok(CertificateDocument {
            a: grid("A")?,
            e: grid("E")?,
            f: grid("F")?,
            w: grid("W")?,
            nilpotency_exponent: parse_num(
                f.require("nilpotency_exponent")?,
                "nilpotency_exponent",
            )?,
            case_tags,
            verified: parse_bool(f.require("verified")?)?,
            ring,
            n,
        })
    }
}

/// A bare matrix to operate on: `ring:` plus `A:` (other fields ignored,
/// so a certificate is also a valid input).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixDocument {
    pub ring: BaseRing,
    pub a: Grid,
}

impl MatrixDocument {
    pub fn parse(text: &str) -> CliResult<Self> {
        let f = Fields::parse(text)?;
        let ring: BaseRing = f.require("ring")?.parse()?;
        let a = parse_grid(&ring, f.require("A")?, false)?;
        if let Some(n) = f.get("n") {
            if parse_num::<usize>(n, "n")? != a.len() {
                return Err(CliError::parse("field n does not match the matrix"));
            }
        }
        Ok(MatrixDocument { ring, a })
    }

    pub fn emit(&self) -> String {
        format!(
            "ring: {}\nn: {}\nA: {}\n",
            self.ring,
            self.a.len(),
            grid_json(&self.ring, &self.a)
        )
    }
}

/// Frobenius form over a prime field. Block polynomials are monic
/// coefficient lists, constant term first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RcfDocument {
    pub modulus: Modulus,
    pub a: Grid,
    pub blocks: Vec<Vec<u64>>,
    pub p: Grid,
    pub p_inv: Grid,
    pub verified: bool,
}

impl RcfDocument {
    pub fn emit(&self) -> String {
        let ring = BaseRing::Zm(self.modulus.clone());
        let g = |x: &Grid| grid_json(&ring, x).to_string();
        format!(
            "schema: {RCF_SCHEMA}\nring: {}\nn: {}\nA: {}\nblocks: {}\nP: {}\nP_inv: {}\nverified: {}\n",
            self.modulus,
            self.a.len(),
            g(&self.a),
            Value::from(self.blocks.clone()),
            g(&self.p),
            g(&self.p_inv),
            self.verified
        )
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let f = Fields::parse(text)?;
        f.only(&[
            "schema", "ring", "n", "A", "blocks", "P", "P_inv", "verified",
        ])?;
        check_schema(&f, RCF_SCHEMA)?;
        let ring: BaseRing = f.require("ring")?.parse()?;
        let BaseRing::Zm(modulus) = ring.clone() else {
            return Err(CliError::parse("rcf documents are over Z_p"));
        };
        let blocks: Vec<Vec<u64>> = serde_json::from_str(f.require("blocks")?)
            .map_err(|e| CliError::parse(format!("blocks: {e}")))?;
        Ok(RcfDocument {
            a: parse_grid(&ring, f.require("A")?, true)?,
            p: parse_grid(&ring, f.require("P")?, true)?,
            p_inv: parse_grid(&ring, f.require("P_inv")?, true)?,
            blocks,
            verified: parse_bool(f.require("verified")?)?,
            modulus,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_ring_parsing() {
        assert_eq!("Z6".parse::<BaseRing>().unwrap().to_string(), "Z6");
        assert_eq!("6".parse::<BaseRing>().unwrap().to_string(), "Z6");
        assert_eq!("Z3[x]/(x^2)".parse::<BaseRing>().unwrap().width(), 2);
        assert!("M2(Z2)".parse::<BaseRing>().is_err());
        assert!("Z0".parse::<BaseRing>().is_err());
    }

    #[test]
    fn lenient_and_strict_entries() {
        let r: BaseRing = "Z3[x]/(x^2)".parse().unwrap();
        let g = parse_grid(&r, "[[-1, [1, 4]], [0, [2]]]", false).unwrap();
        assert_eq!(
            g,
            vec![vec![vec![2, 0], vec![1, 1]], vec![vec![0, 0], vec![2, 0]]]
        );
        assert!(parse_grid(&r, "[[[2,0]]]", true).is_ok());
        assert!(parse_grid(&r, "[[2]]", true).is_err());
        assert!(parse_grid(&r, "[[[3,0]]]", true).is_err());
        assert!(parse_grid(&r, "[[1,0]]", false).is_err());
    }

    #[test]
    fn fields_reject_duplicates_and_unknown_keys() {
        assert!(Fields::parse("a: 1\na: 2").is_err());
        assert!(Fields::parse("no colon").is_err());
        let f = Fields::parse("# comment\n\na: 1\nb: [1, 2]").unwrap();
        assert_eq!(f.get("b"), Some("[1, 2]"));
        assert!(f.only(&["a"]).is_err());
    }

    #[test]
    fn stream_splitting() {
        let docs = split_documents("a: 1\n---\n\n---\nb: 2\n");
        assert_eq!(docs, vec!["a: 1\n".to_string(), "b: 2\n".to_string()]);
        assert_eq!(split_documents(&join_documents(&docs)), docs);
    }
}
