use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::frobenius::CompanionBlock;
use crate::matrix::{Matrix, RingMatrix};
use crate::residue::factorize;

/// Which construction decomposed a companion block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// `GF(3)`, `c_{n-1} = 1`.
    CaseI,
    /// `GF(3)`, `c_{n-1} = -1`.
    CaseII,
    /// `GF(3)`, `c_{n-1} = 0`, `n = 1`: the zero block.
    CaseIIIN1,
    CaseIIIN2,
    CaseIIIN3,
    /// `GF(3)`, `c_{n-1} = 0`, `n >= 4`.
    CaseIIIGeneral,
    Gf2TopEntryOne,
    Gf2TopEntryZero,
}

impl CaseTag {
    pub const ALL: [CaseTag; 8] = [
        CaseTag::CaseI,
        CaseTag::CaseII,
        CaseTag::CaseIIIN1,
        CaseTag::CaseIIIN2,
        CaseTag::CaseIIIN3,
        CaseTag::CaseIIIGeneral,
        CaseTag::Gf2TopEntryOne,
        CaseTag::Gf2TopEntryZero,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CaseTag::CaseI => "CaseI",
            CaseTag::CaseII => "CaseII",
            CaseTag::CaseIIIN1 => "CaseIII_n1",
            CaseTag::CaseIIIN2 => "CaseIII_n2",
            CaseTag::CaseIIIN3 => "CaseIII_n3",
            CaseTag::CaseIIIGeneral => "CaseIII_general",
            CaseTag::Gf2TopEntryOne => "GF2_topEntryOne",
            CaseTag::Gf2TopEntryZero => "GF2_topEntryZero",
        }
    }

    /// The residue field the tag belongs to.
    pub fn prime(self) -> u64 {
        match self {
            CaseTag::Gf2TopEntryOne | CaseTag::Gf2TopEntryZero => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CaseTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CaseTag::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::input(format!("unknown case tag {s:?}")))
    }
}

/// A case tag together with the block size it was applied to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlockTag {
    pub tag: CaseTag,
    pub size: usize,
}

impl fmt::Display for BlockTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.tag, self.size)
    }
}

impl FromStr for BlockTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (tag, size) = s
            .split_once(':')
            .ok_or_else(|| Error::input(format!("block tag {s:?} is not TAG:SIZE")))?;
        let size = size
            .parse()
            .map_err(|_| Error::input(format!("bad block size in {s:?}")))?;
        Ok(BlockTag {
            tag: tag.parse()?,
            size,
        })
    }
}

/// `block = e + f + w` over the block's prime field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub e: RingMatrix,
    pub f: RingMatrix,
    pub w: RingMatrix,
    pub tag: CaseTag,
}

fn require_field(block: &CompanionBlock, p: u64) -> Result<()> {
    if block.prime() != p {
        return Err(Error::input(format!(
            "block over GF({}) where GF({p}) was expected",
            block.prime()
        )));
    }
    Ok(())
}

/// The subdiagonal shift, i.e. the block with its last column cleared.
fn shift(block: &CompanionBlock) -> RingMatrix {
    let field = factorize(block.prime()).expect("prime");
    let n = block.dim();
    Matrix::from_fn(&field, n, |i, j| u64::from(j + 1 < n && i == j + 1))
}

/// Matrix that is zero except for the given last column.
fn last_column_matrix(p: u64, column: &[u64]) -> RingMatrix {
    let field = factorize(p).expect("prime");
    let n = column.len();
    Matrix::from_fn(&field, n, |i, j| if j == n - 1 { column[i] % p } else { 0 })
}

/// Embed a 3x3 matrix (given over the integers) in the bottom-right corner.
fn corner3(n: usize, rows: [[i64; 3]; 3]) -> RingMatrix {
    let field = factorize(3).expect("prime");
    Matrix::from_fn(&field, n, |i, j| {
        if i + 3 >= n && j + 3 >= n {
            field.reduce(rows[i + 3 - n][j + 3 - n])
        } else {
            0
        }
    })
}

/// Decompose a companion block over `GF(3)` by the value of `c_{n-1}`.
///
/// - `c_{n-1} = 1`: `E` is the last column, `F = 0`, `W` the shift.
/// - `c_{n-1} = -1`: the last-column matrix `L` has `L^2 = -L`, so `-L` is
///   idempotent and `L = (-L) + (-L)` in characteristic 3.
/// - `c_{n-1} = 0`: fixed corner idempotents for `n = 2, 3` and their
///   bottom-right embedding for `n >= 4`.
pub fn decompose_companion_gf3(block: &CompanionBlock) -> Result<BlockDecomposition> {
    require_field(block, 3)?;
    let field = factorize(3).expect("prime");
    let n = block.dim();
    let c = block.last_column();
    let zero = Matrix::zeros(&field, n);
    let out = match c[n - 1] {
        1 => BlockDecomposition {
            e: last_column_matrix(3, &c),
            f: zero,
            w: shift(block),
            tag: CaseTag::CaseI,
        },
        2 => {
            let minus_l = last_column_matrix(3, &c).neg();
            BlockDecomposition {
                e: minus_l.clone(),
                f: minus_l,
                w: shift(block),
                tag: CaseTag::CaseII,
            }
        }
        _ => match n {
            1 => BlockDecomposition {
                e: zero.clone(),
                f: zero.clone(),
                w: zero,
                tag: CaseTag::CaseIIIN1,
            },
            2 => {
                let c0 = c[0] as i64;
                BlockDecomposition {
                    e: Matrix::identity(&field, 2),
                    f: RingMatrix::from_ints(&field, &[vec![-1, 1], vec![1, -1]])?,
                    w: RingMatrix::from_ints(&field, &[vec![0, c0 - 1], vec![0, 0]])?,
                    tag: CaseTag::CaseIIIN2,
                }
            }
            _ => {
                let e = corner3(n, [[0, 0, 0], [0, 1, 0], [1, 0, 1]]);
                let f = corner3(n, [[0, 0, 0], [1, -1, 1], [-1, 1, -1]]);
                // W keeps the shift on the first n - 2 coordinates and the last
                // column with c_{n-2} decreased by one.
                let mut column = c.clone();
                column[n - 2] = (column[n - 2] + 2) % 3;
                let mut w = last_column_matrix(3, &column);
                for i in 1..n - 2 {
                    w.set(i, i - 1, 1);
                }
                let tag = if n == 3 {
                    CaseTag::CaseIIIN3
                } else {
                    CaseTag::CaseIIIGeneral
                };
                BlockDecomposition { e, f, w, tag }
            }
        },
    };
    Ok(out)
}

/// Decompose a companion block over `GF(2)`.
///
/// With `c_{n-1} = 1` the last-column matrix is idempotent. With
/// `c_{n-1} = 0` and `n >= 2`, subtracting the corner unit `E_{nn}` leaves a
/// companion shape whose last entry is `-1 = 1`, so the same template
/// applies to the remainder.
pub fn decompose_companion_gf2(block: &CompanionBlock) -> Result<BlockDecomposition> {
    require_field(block, 2)?;
    let field = factorize(2).expect("prime");
    let n = block.dim();
    let c = block.last_column();
    let zero = Matrix::zeros(&field, n);
    if c[n - 1] == 1 {
        return Ok(BlockDecomposition {
            e: last_column_matrix(2, &c),
            f: zero,
            w: shift(block),
            tag: CaseTag::Gf2TopEntryOne,
        });
    }
    if n == 1 {
        return Ok(BlockDecomposition {
            e: zero.clone(),
            f: zero.clone(),
            w: zero,
            tag: CaseTag::Gf2TopEntryZero,
        });
    }
    let mut corner = zero;
    corner.set(n - 1, n - 1, 1);
    let mut column = c;
    column[n - 1] = 1;
    Ok(BlockDecomposition {
        e: corner,
        f: last_column_matrix(2, &column),
        w: shift(block),
        tag: CaseTag::Gf2TopEntryZero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::FieldPoly;

    fn block(p: u64, column: &[u64]) -> CompanionBlock {
        CompanionBlock::from_last_column(p, column).unwrap()
    }

    fn mat(p: u64, rows: &[&[i64]]) -> RingMatrix {
        RingMatrix::from_ints(
            &factorize(p).unwrap(),
            &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    fn check(b: &CompanionBlock, d: &BlockDecomposition) {
        assert!(d.e.is_idempotent(), "{d:?}");
        assert!(d.f.is_idempotent(), "{d:?}");
        assert!(d.w.is_nilpotent(), "{d:?}");
        assert_eq!(&(&d.e + &d.f) + &d.w, b.matrix());
    }

    #[test]
    fn case_one_example() {
        let b = block(3, &[1, 1]);
        assert_eq!(b.matrix(), mat(3, &[&[0, 1], &[1, 1]]));
        let d = decompose_companion_gf3(&b).unwrap();
        assert_eq!(d.tag, CaseTag::CaseI);
        assert_eq!(d.e, mat(3, &[&[0, 1], &[0, 1]]));
        assert!(d.f.is_zero());
        assert_eq!(d.w, mat(3, &[&[0, 0], &[1, 0]]));
    }

    #[test]
    fn case_two_uses_minus_l_twice() {
        let b = block(3, &[1, 2]);
        let d = decompose_companion_gf3(&b).unwrap();
        assert_eq!(d.tag, CaseTag::CaseII);
        assert_eq!(d.e, mat(3, &[&[0, 2], &[0, 1]]));
        assert_eq!(d.f, d.e);
        assert_eq!(d.w, mat(3, &[&[0, 0], &[1, 0]]));
        check(&b, &d);
    }

    #[test]
    fn i_minus_l_is_an_involution_not_an_idempotent() {
        // L^2 = -L makes I - L an involution, and (I - L) + I + W != A.
        let b = block(3, &[1, 2]);
        let l = last_column_matrix(3, &b.last_column());
        let id = Matrix::identity(&factorize(3).unwrap(), 2);
        assert_eq!(&l * &l, l.neg());
        let i_minus_l = &id - &l;
        assert!(!i_minus_l.is_idempotent());
        assert_eq!(&i_minus_l * &i_minus_l, id);
        assert_ne!(&(&i_minus_l + &id) + &shift(&b), b.matrix());
    }

    #[test]
    fn case_three_n2_example() {
        for c0 in 0..3 {
            let b = block(3, &[c0, 0]);
            let d = decompose_companion_gf3(&b).unwrap();
            assert_eq!(d.tag, CaseTag::CaseIIIN2);
            assert_eq!(d.e, Matrix::identity(&factorize(3).unwrap(), 2));
            assert_eq!(d.f, mat(3, &[&[-1, 1], &[1, -1]]));
            assert_eq!(d.w, mat(3, &[&[0, c0 as i64 - 1], &[0, 0]]));
            check(&b, &d);
        }
    }

    #[test]
    fn case_three_n3_example() {
        for c0 in 0..3 {
            for c1 in 0..3 {
                let b = block(3, &[c0, c1, 0]);
                let d = decompose_companion_gf3(&b).unwrap();
                assert_eq!(d.tag, CaseTag::CaseIIIN3);
                assert_eq!(d.e, mat(3, &[&[0, 0, 0], &[0, 1, 0], &[1, 0, 1]]));
                assert_eq!(d.f, mat(3, &[&[0, 0, 0], &[1, -1, 1], &[-1, 1, -1]]));
                let (c0, c1) = (c0 as i64, c1 as i64);
                assert_eq!(d.w, mat(3, &[&[0, 0, c0], &[0, 0, c1 - 1], &[0, 0, 0]]));
                check(&b, &d);
            }
        }
    }

    fn all_columns(p: u64, n: usize) -> impl Iterator<Item = Vec<u64>> {
        (0..p.pow(n as u32)).map(move |mut code| {
            (0..n)
                .map(|_| {
                    let d = code % p;
                    code /= p;
                    d
                })
                .collect()
        })
    }

    #[test]
    fn every_gf3_block_up_to_eight() {
        for n in 1..=8 {
            for column in all_columns(3, n) {
                let b = block(3, &column);
                let d = decompose_companion_gf3(&b).unwrap();
                let expected = match (column[n - 1], n) {
                    (1, _) => CaseTag::CaseI,
                    (2, _) => CaseTag::CaseII,
                    (_, 1) => CaseTag::CaseIIIN1,
                    (_, 2) => CaseTag::CaseIIIN2,
                    (_, 3) => CaseTag::CaseIIIN3,
                    _ => CaseTag::CaseIIIGeneral,
                };
                assert_eq!(d.tag, expected);
                check(&b, &d);
            }
        }
    }

    #[test]
    fn gf2_examples() {
        for c0 in 0..2 {
            let b = block(2, &[c0, 1]);
            let d = decompose_companion_gf2(&b).unwrap();
            assert_eq!(d.tag, CaseTag::Gf2TopEntryOne);
            assert_eq!(d.e, mat(2, &[&[0, c0 as i64], &[0, 1]]));
            assert!(d.f.is_zero());

            let b = block(2, &[c0, 0]);
            let d = decompose_companion_gf2(&b).unwrap();
            assert_eq!(d.tag, CaseTag::Gf2TopEntryZero);
            assert_eq!(d.e, mat(2, &[&[0, 0], &[0, 1]]));
            assert_eq!(d.f, mat(2, &[&[0, c0 as i64], &[0, 1]]));
            assert_eq!(d.w, mat(2, &[&[0, 0], &[1, 0]]));
            check(&b, &d);
        }
        let d = decompose_companion_gf2(&block(2, &[0])).unwrap();
        assert!(d.e.is_zero() && d.f.is_zero() && d.w.is_zero());
    }

    #[test]
    fn every_gf2_block_up_to_ten() {
        for n in 1..=10 {
            for column in all_columns(2, n) {
                let b = block(2, &column);
                check(&b, &decompose_companion_gf2(&b).unwrap());
            }
        }
    }

    #[test]
    fn wrong_field_rejected() {
        let b3 = CompanionBlock::new(FieldPoly::new(3, &[1, 1])).unwrap();
        let b2 = CompanionBlock::new(FieldPoly::new(2, &[1, 1])).unwrap();
        assert!(decompose_companion_gf2(&b3).is_err());
        assert!(decompose_companion_gf3(&b2).is_err());
    }

    #[test]
    fn tags_round_trip_through_text() {
        for t in CaseTag::ALL {
            assert_eq!(t.name().parse::<CaseTag>().unwrap(), t);
            let bt = BlockTag { tag: t, size: 4 };
            assert_eq!(bt.to_string().parse::<BlockTag>().unwrap(), bt);
        }
        assert!("CaseIV".parse::<CaseTag>().is_err());
    }
}
