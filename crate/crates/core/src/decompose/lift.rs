use crate::error::{Error, Result};
use crate::matrix::{Matrix, RingMatrix};
use crate::ring::Ring;

pub(crate) use crate::residue::lift_rounds;

/// Iterate `X <- 3X^2 - 2X^3` until `X^2 = X`, for at most `rounds` steps.
///
/// Only powers of `X` appear, so the commutative lifting argument applies to
/// matrices as well.
pub(crate) fn newton_idempotent<R: Ring>(x: &Matrix<R>, rounds: u32) -> Option<Matrix<R>> {
    let ring = x.ring().clone();
    let three = ring.from_int(3);
    let two = ring.from_int(2);
    let mut cur = x.clone();
    for _ in 0..=rounds {
        let sq = &cur * &cur;
        if sq == cur {
            return Some(cur);
        }
        let cube = &sq * &cur;
        cur = &sq.scale(&three) - &cube.scale(&two);
    }
    None
}

/// Lift `X` over `Z_{p^e}` (with `X mod p` idempotent) to an idempotent
/// congruent to it mod `p`.
pub fn lift_idempotent_matrix(x: &RingMatrix) -> Result<RingMatrix> {
    let md = x.modulus();
    let (p, e) = md
        .prime_power()
        .ok_or_else(|| Error::input(format!("{} is not a prime power", md.value())))?;
    let defect = &(x * x) - x;
    if !defect.reduce_mod_prime(p)?.is_zero() {
        return Err(Error::Domain(
            "X^2 - X is not nilpotent (X mod p is not idempotent)".into(),
        ));
    }
    newton_idempotent(x, e + 1)
        .ok_or_else(|| Error::Internal(format!("lift over Z_{} did not converge", md.value())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residue::{factorize, lift_idempotent_elem, ZmodElem};

    fn mat(m: u64, rows: &[&[i64]]) -> RingMatrix {
        RingMatrix::from_ints(
            &factorize(m).unwrap(),
            &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn examples() {
        let id = Matrix::identity(&factorize(4).unwrap(), 3);
        assert_eq!(lift_idempotent_matrix(&id).unwrap(), id);
        assert_eq!(
            lift_idempotent_matrix(&mat(4, &[&[3]])).unwrap(),
            mat(4, &[&[1]])
        );
        let x = mat(4, &[&[1, 2], &[0, 0]]);
        let e = lift_idempotent_matrix(&x).unwrap();
        assert!(e.is_idempotent());
        assert_eq!(e.reduce_mod_prime(2).unwrap(), mat(2, &[&[1, 0], &[0, 0]]));
    }

    #[test]
    fn scalar_lift_agrees_with_element_lift() {
        for m in [4u64, 8, 9, 27, 64, 81] {
            let md = factorize(m).unwrap();
            for r in 0..m as i64 {
                let Ok(e) = lift_idempotent_elem(&ZmodElem::new(r, &md)) else {
                    continue;
                };
                let lifted = lift_idempotent_matrix(&mat(m, &[&[r]])).unwrap();
                assert_eq!(*lifted.get(0, 0), e.residue());
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            lift_idempotent_matrix(&mat(4, &[&[2, 1], &[0, 0]])),
            Err(Error::Domain(_))
        ));
        assert!(lift_idempotent_matrix(&mat(12, &[&[1]])).is_err());
    }
}
