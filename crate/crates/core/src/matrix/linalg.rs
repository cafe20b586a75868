use super::RingMatrix;
use crate::error::{Error, Result};
use crate::residue::{crt_combine, inv_mod, mul_mod, Modulus};

/// Rank over `GF(p)`; the matrix modulus must be prime.
pub(crate) fn field_rank(a: &RingMatrix) -> usize {
    let p = a.modulus().value();
    let n = a.dim();
    let mut rows = a.rows();
    let mut rank = 0;
    for col in 0..n {
        let Some(piv) = (rank..n).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][col], p).expect("nonzero in a field");
        for r in 0..n {
            if r != rank && rows[r][col] != 0 {
                let factor = mul_mod(rows[r][col], inv, p);
                for c in col..n {
                    let sub = mul_mod(factor, rows[rank][c], p);
                    rows[r][c] = (rows[r][c] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn valuation(mut a: u64, p: u64, e: u32) -> u32 {
    if a == 0 {
        return e;
    }
    let mut v = 0;
    while a.is_multiple_of(p) {
        a /= p;
        v += 1;
    }
    v
}

/// Determinant over the local ring `Z_{p^e}`: pivot on the entry of least
/// valuation, which divides the rest of its column.
fn local_determinant(rows: &mut [Vec<u64>], p: u64, e: u32) -> u64 {
    let q = p.pow(e);
    let n = rows.len();
    let mut det = 1 % q;
    for col in 0..n {
        let piv = (col..n)
            .min_by_key(|&r| valuation(rows[r][col], p, e))
            .expect("nonempty range");
        let v = valuation(rows[piv][col], p, e);
        if v >= e {
            return 0;
        }
        if piv != col {
            rows.swap(piv, col);
            det = (q - det) % q;
        }
        let pivot = rows[col][col];
        det = mul_mod(det, pivot, q);
        let unit = pivot / p.pow(v);
        let unit_inv = inv_mod(unit % q, q).expect("unit part is invertible");
        for r in col + 1..n {
            if rows[r][col] == 0 {
                continue;
            }
            // rows[r][col] = p^v * t; subtract (t / unit) times the pivot row.
            let t = rows[r][col] / p.pow(v);
            let factor = mul_mod(t % q, unit_inv, q);
            for c in col..n {
                let sub = mul_mod(factor, rows[col][c], q);
                rows[r][c] = (rows[r][c] + q - sub) % q;
            }
        }
    }
    det
}

/// Determinant over `Z_m`, computed per prime power and recombined.
pub fn determinant(a: &RingMatrix) -> u64 {
    let md = a.modulus();
    let parts: Vec<(u64, u64)> = md
        .factors()
        .iter()
        .map(|&(p, e)| {
            let q = p.pow(e);
            let mut rows: Vec<Vec<u64>> = a
                .rows()
                .into_iter()
                .map(|r| r.into_iter().map(|x| x % q).collect())
                .collect();
            (local_determinant(&mut rows, p, e), q)
        })
        .collect();
    crt_combine(&parts).expect("prime powers are coprime").0
}

/// Gauss-Jordan over `Z_{p^e}`; `None` if some column has no unit pivot.
fn local_inverse(a: &[Vec<u64>], q: u64) -> Option<Vec<Vec<u64>>> {
    let n = a.len();
    let mut rows: Vec<Vec<u64>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<u64> = r.iter().map(|x| x % q).collect();
            row.extend((0..n).map(|j| u64::from(i == j)));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| inv_mod(rows[r][col], q).is_some())?;
        rows.swap(piv, col);
        let inv = inv_mod(rows[col][col], q)?;
        for c in 0..2 * n {
            rows[col][c] = mul_mod(rows[col][c], inv, q);
        }
        for r in 0..n {
            if r != col && rows[r][col] != 0 {
                let factor = rows[r][col];
                for c in 0..2 * n {
                    let sub = mul_mod(factor, rows[col][c], q);
                    rows[r][c] = (rows[r][c] + q - sub) % q;
                }
            }
        }
    }
    Some(rows.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Inverse over `Z_m`.
pub fn inverse(a: &RingMatrix) -> Result<RingMatrix> {
    let md: &Modulus = a.modulus();
    let parts = md
        .prime_power_parts()
        .into_iter()
        .map(|q| {
            let inv = local_inverse(&a.rows(), q.value())
                .ok_or_else(|| Error::Domain(format!("matrix is singular modulo {}", q.value())))?;
            RingMatrix::from_rows(&q, inv)
        })
        .collect::<Result<Vec<_>>>()?;
    RingMatrix::crt_recombine(&parts)
}
