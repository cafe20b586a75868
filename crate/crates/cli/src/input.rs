//! Matrix input: a `ring:`/`A:` document, or plain whitespace-separated
//! rows with the ring supplied by flag. Truncated-polynomial entries are
//! written `c0,c1,...`.

use crate::doc::{check_square, BaseRing, Grid, MatrixDocument};
use crate::error::{CliError, CliResult};

fn looks_like_document(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .any(|l| l.starts_with("ring:") || l.starts_with("A:") || l.starts_with("schema:"))
}

pub fn parse_plain(ring: &BaseRing, text: &str) -> CliResult<Grid> {
    let m = ring.modulus().value() as i64;
    let width = ring.width();
    let mut grid = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|tok| {
                let coeffs: Vec<i64> = tok
                    .split(',')
                    .map(|c| c.trim().parse::<i64>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| CliError::parse(format!("bad matrix entry {tok:?}")))?;
                if coeffs.len() > width {
                    return Err(CliError::parse(format!(
                        "entry {tok:?} has more than {width} coefficient(s)"
                    )));
                }
                let mut out: Vec<u64> = coeffs.iter().map(|c| c.rem_euclid(m) as u64).collect();
                out.resize(width, 0);
                Ok(out)
            })
            .collect::<CliResult<Vec<_>>>()?;
        grid.push(row);
    }
    check_square(&grid)?;
    Ok(grid)
}

/// Reads a matrix. A `ring:` field in the document wins over `flag_ring`
/// only when the flag is absent; disagreement is an error.
pub fn read_matrix(text: &str, flag_ring: Option<&BaseRing>) -> CliResult<MatrixDocument> {
    if looks_like_document(text) {
        let doc = MatrixDocument::parse(text)?;
        if let Some(r) = flag_ring {
            if *r != doc.ring {
                return Err(CliError::parse(format!(
                    "--ring/--modulus {r} disagrees with document ring {}",
                    doc.ring
                )));
            }
        }
        return Ok(doc);
    }
    let ring = flag_ring
        .cloned()
        .ok_or_else(|| CliError::parse("plain matrix input needs --modulus or --ring"))?;
    let a = parse_plain(&ring, text)?;
    Ok(MatrixDocument { ring, a })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_rows() {
        let r: BaseRing = "Z6".parse().unwrap();
        let d = read_matrix("1 2\n-1 7 # comment\n\n", Some(&r)).unwrap();
        assert_eq!(d.a, vec![vec![vec![1], vec![2]], vec![vec![5], vec![1]]]);
        assert!(read_matrix("1 2\n3", Some(&r)).is_err());
        assert!(read_matrix("1 2\n3 4", None).is_err());
        assert!(read_matrix("1 x\n3 4", Some(&r)).is_err());
    }

    #[test]
    fn plain_trunc_entries() {
        let r: BaseRing = "Z3[x]/(x^2)".parse().unwrap();
        let d = read_matrix("1,1", Some(&r)).unwrap();
        assert_eq!(d.a, vec![vec![vec![1, 1]]]);
        assert!(read_matrix("1,1,1", Some(&r)).is_err());
    }

    #[test]
    fn document_input() {
        let d = read_matrix("ring: Z4\nA: [[1, 2], [3, 5]]\n", None).unwrap();
        assert_eq!(d.a[1][1], vec![1]);
        let z6: BaseRing = "Z6".parse().unwrap();
        assert!(read_matrix("ring: Z4\nA: [[1]]\n", Some(&z6)).is_err());
        assert_eq!(read_matrix(&d.emit(), None).unwrap(), d);
    }
}
