use super::poly::FieldPoly;
use crate::error::{Error, Result};
use crate::matrix::{inverse, Matrix, RingMatrix};
use crate::residue::{factorize, Modulus};

/// The companion matrix of a monic polynomial
/// `x^n - c_{n-1} x^{n-1} - ... - c_0`: ones on the subdiagonal and
/// `(c_0, ..., c_{n-1})` in the last column.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompanionBlock {
    poly: FieldPoly,
}

impl CompanionBlock {
    pub fn new(poly: FieldPoly) -> Result<Self> {
        match poly.degree() {
            Some(d) if d >= 1 && poly.is_monic() => Ok(CompanionBlock { poly }),
            _ => Err(Error::input(format!(
                "companion block needs a monic polynomial of degree >= 1, got {poly}"
            ))),
        }
    }

    /// Block with the given last column `(c_0, ..., c_{n-1})`.
    pub fn from_last_column(p: u64, column: &[u64]) -> Result<Self> {
        let mut coeffs: Vec<u64> = column.iter().map(|&c| (p - c % p) % p).collect();
        coeffs.push(1);
        Self::new(FieldPoly::from_residues(p, coeffs))
    }

    pub fn poly(&self) -> &FieldPoly {
        &self.poly
    }

    pub fn prime(&self) -> u64 {
        self.poly.prime()
    }

    pub fn dim(&self) -> usize {
        self.poly.degree().expect("degree >= 1")
    }

    /// `(c_0, ..., c_{n-1})`.
    pub fn last_column(&self) -> Vec<u64> {
        let p = self.prime();
        (0..self.dim())
            .map(|k| (p - self.poly.coeff(k)) % p)
            .collect()
    }

    /// The bottom-right entry `c_{n-1}`.
    pub fn top_coefficient(&self) -> u64 {
        *self.last_column().last().expect("nonempty")
    }

    pub fn matrix(&self) -> RingMatrix {
        let field = factorize(self.prime()).expect("prime");
        let n = self.dim();
        let col = self.last_column();
        Matrix::from_fn(&field, n, |i, j| {
            if j == n - 1 {
                col[i]
            } else {
                u64::from(i == j + 1)
            }
        })
    }
}

pub fn companion(poly: &FieldPoly) -> Result<RingMatrix> {
    Ok(CompanionBlock::new(poly.clone())?.matrix())
}

/// Frobenius normal form `P A P^{-1} = diag(C(f_1), ..., C(f_k))` with
/// `f_1 | f_2 | ... | f_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RcfResult {
    pub blocks: Vec<CompanionBlock>,
    pub transform: RingMatrix,
    pub transform_inv: RingMatrix,
}

impl RcfResult {
    /// The block-diagonal canonical form.
    pub fn form(&self) -> RingMatrix {
        let field = self.transform.modulus().clone();
        let mats: Vec<RingMatrix> = self.blocks.iter().map(CompanionBlock::matrix).collect();
        Matrix::block_diagonal(&field, &mats)
    }
}

fn prime_field(a: &RingMatrix) -> Result<u64> {
    let md = a.modulus();
    if !md.is_prime() {
        return Err(Error::input(format!(
            "canonical form needs a prime field, got modulus {}",
            md.value()
        )));
    }
    Ok(md.value())
}

/// Split an already block-diagonal companion matrix into its blocks, if the
/// blocks form a divisibility chain.
fn existing_form(a: &RingMatrix) -> Option<Vec<CompanionBlock>> {
    let n = a.dim();
    let p = a.modulus().value();
    let mut blocks = Vec::new();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && *a.get(end, end - 1) == 1 {
            end += 1;
        }
        let column: Vec<u64> = (start..end).map(|i| *a.get(i, end - 1)).collect();
        blocks.push(CompanionBlock::from_last_column(p, &column).ok()?);
        start = end;
    }
    let chain = blocks.windows(2).all(|w| w[0].poly.divides(&w[1].poly));
    let field = a.modulus().clone();
    let mats: Vec<RingMatrix> = blocks.iter().map(CompanionBlock::matrix).collect();
    (chain && Matrix::block_diagonal(&field, &mats) == *a).then_some(blocks)
}

type PolyMatrix = Vec<Vec<FieldPoly>>;

/// Diagonalize `xI - A` over `GF(p)[x]` by elementary operations, returning
/// the Smith diagonal and the inverse of the accumulated row transform.
fn smith_of_characteristic_matrix(a: &RingMatrix) -> (Vec<FieldPoly>, PolyMatrix) {
    let n = a.dim();
    let p = a.modulus().value();
    let mut m: PolyMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = FieldPoly::constant(p, (p - *a.get(i, j)) % p);
                    if i == j {
                        c.add(&FieldPoly::monomial(p, 1))
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    let mut uinv: PolyMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| FieldPoly::constant(p, u64::from(i == j)))
                .collect()
        })
        .collect();

    for k in 0..n {
        loop {
            let pivot = (k..n)
                .flat_map(|i| (k..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !m[i][j].is_zero())
                .min_by_key(|&(i, j)| m[i][j].degree());
            let Some((pi, pj)) = pivot else { break };
            if pi != k {
                m.swap(pi, k);
                for row in uinv.iter_mut() {
                    row.swap(pi, k);
                }
            }
            if pj != k {
                for row in m.iter_mut() {
                    row.swap(pj, k);
                }
            }

            let mut clean = true;
            for i in k + 1..n {
                if m[i][k].is_zero() {
                    continue;
                }
                let (q, r) = m[i][k].divmod(&m[k][k]).expect("pivot nonzero");
                for c in k..n {
                    m[i][c] = m[i][c].sub(&q.mul(&m[k][c]));
                }
                // Row_i -= q Row_k on the left means Col_k += q Col_i on the inverse.
                for row in uinv.iter_mut() {
                    row[k] = row[k].add(&q.mul(&row[i]));
                }
                clean &= r.is_zero();
            }
            for j in k + 1..n {
                if m[k][j].is_zero() {
                    continue;
                }
                let (q, r) = m[k][j].divmod(&m[k][k]).expect("pivot nonzero");
                for row in m.iter_mut().skip(k) {
                    row[j] = row[j].sub(&q.mul(&row[k]));
                }
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }

            let offender = (k + 1..n).find(|&i| (k + 1..n).any(|j| !m[k][k].divides(&m[i][j])));
            if let Some(i) = offender {
                for c in k..n {
                    m[k][c] = m[k][c].add(&m[i][c]);
                }
                for row in uinv.iter_mut() {
                    row[i] = row[i].sub(&row[k]);
                }
                continue;
            }
            break;
        }
        let lc = m[k][k].leading();
        if lc > 1 {
            m[k][k] = m[k][k].monic();
            for row in uinv.iter_mut() {
                row[k] = row[k].scale(lc);
            }
        }
    }
    let diag = (0..n).map(|k| m[k][k].clone()).collect();
    (diag, uinv)
}

/// `g(A) v` by Horner's rule.
fn apply_poly(a: &RingMatrix, g: &FieldPoly, v: &[u64]) -> Vec<u64> {
    let p = a.modulus().value();
    let n = a.dim();
    let mut acc = vec![0u64; n];
    for &c in g.coeffs().iter().rev() {
        let mut next = mat_vec(a, &acc);
        for (x, &vi) in next.iter_mut().zip(v) {
            *x = (*x + c * vi) % p;
        }
        acc = next;
    }
    acc
}

fn mat_vec(a: &RingMatrix, v: &[u64]) -> Vec<u64> {
    let p = a.modulus().value();
    let n = a.dim();
    (0..n)
        .map(|i| (0..n).fold(0, |s, j| (s + a.get(i, j) * v[j]) % p))
        .collect()
}

/// Rational canonical form over `GF(p)` with an explicit transform.
///
/// Matrices already in canonical form come back unchanged with `P = I`.
/// Otherwise the Smith form of `xI - A` supplies the invariant factors, and
/// the columns of the inverse row transform, evaluated at `A`, give one
/// cyclic generator per nontrivial factor; their Krylov bases form `P^{-1}`.
pub fn rcf(a: &RingMatrix) -> Result<RcfResult> {
    let p = prime_field(a)?;
    let field: Modulus = a.modulus().clone();
    let n = a.dim();
    if let Some(blocks) = existing_form(a) {
        let id = Matrix::identity(&field, n);
        return Ok(RcfResult {
            blocks,
            transform: id.clone(),
            transform_inv: id,
        });
    }

    let (diag, uinv) = smith_of_characteristic_matrix(a);
    let mut blocks = Vec::new();
    let mut columns: Vec<Vec<u64>> = Vec::with_capacity(n);
    for (j, d) in diag.iter().enumerate() {
        if d.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut v = vec![0u64; n];
        for (i, row) in uinv.iter().enumerate() {
            let mut e_i = vec![0u64; n];
            e_i[i] = 1;
            for (x, y) in v.iter_mut().zip(apply_poly(a, &row[j], &e_i)) {
                *x = (*x + y) % p;
            }
        }
        for _ in 0..d.degree().expect("nonzero") {
            let next = mat_vec(a, &v);
            columns.push(std::mem::replace(&mut v, next));
        }
        blocks.push(CompanionBlock::new(d.clone())?);
    }
    if columns.len() != n {
        return Err(Error::Internal(format!(
            "invariant factors have total degree {} for a {n}x{n} matrix",
            columns.len()
        )));
    }
    let transform_inv = Matrix::from_fn(&field, n, |i, j| columns[j][i]);
    let transform = inverse(&transform_inv)
        .map_err(|_| Error::Internal("cyclic bases are not independent".into()))?;
    let out = RcfResult {
        blocks,
        transform,
        transform_inv,
    };
    if !verify_rcf(a, &out) {
        return Err(Error::Internal("canonical form failed verification".into()));
    }
    Ok(out)
}

/// Check the transform, the similarity, block shapes and the divisibility
/// chain.
pub fn verify_rcf(a: &RingMatrix, r: &RcfResult) -> bool {
    let n = a.dim();
    let field = a.modulus();
    let shapes_ok = r.transform.dim() == n
        && r.transform_inv.dim() == n
        && r.transform.modulus() == field
        && r.transform_inv.modulus() == field
        && r.blocks
            .iter()
            .all(|b| b.prime() == field.value() && b.poly.is_monic())
        && r.blocks.iter().map(CompanionBlock::dim).sum::<usize>() == n;
    if !shapes_ok {
        return false;
    }
    let id = Matrix::identity(field, n);
    let chain = r.blocks.windows(2).all(|w| w[0].poly.divides(&w[1].poly));
    chain
        && &r.transform * &r.transform_inv == id
        && &(&r.transform * a) * &r.transform_inv == r.form()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn mat(p: u64, rows: &[&[i64]]) -> RingMatrix {
        RingMatrix::from_ints(
            &factorize(p).unwrap(),
            &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn companion_examples() {
        let f = FieldPoly::new(3, &[-1, -1, 1]);
        assert_eq!(companion(&f).unwrap(), mat(3, &[&[0, 1], &[1, 1]]));
        assert_eq!(
            companion(&FieldPoly::monomial(2, 1)).unwrap(),
            mat(2, &[&[0]])
        );
        assert_eq!(
            companion(&FieldPoly::monomial(3, 2)).unwrap(),
            mat(3, &[&[0, 0], &[1, 0]])
        );
        assert!(companion(&FieldPoly::new(3, &[1])).is_err());
        assert!(companion(&FieldPoly::new(3, &[1, 2])).is_err());
    }

    #[test]
    fn companion_input_is_its_own_form() {
        let a = mat(3, &[&[0, 0, 2], &[1, 0, 1], &[0, 1, 1]]);
        let r = rcf(&a).unwrap();
        assert_eq!(r.blocks.len(), 1);
        assert_eq!(r.transform, Matrix::identity(a.modulus(), 3));
        assert!(verify_rcf(&a, &r));
    }

    #[test]
    fn diagonal_with_distinct_eigenvalues() {
        let a = mat(3, &[&[1, 0], &[0, 2]]);
        let r = rcf(&a).unwrap();
        assert_eq!(r.blocks.len(), 1);
        assert_eq!(r.blocks[0].poly(), &FieldPoly::new(3, &[-1, 0, 1]));
        assert_eq!(r.blocks[0].matrix(), mat(3, &[&[0, 1], &[1, 0]]));
        assert!(verify_rcf(&a, &r));
    }

    #[test]
    fn scalar_matrix_gives_repeated_blocks() {
        let a = mat(2, &[&[1, 0], &[0, 1]]);
        let r = rcf(&a).unwrap();
        let polys: Vec<_> = r.blocks.iter().map(|b| b.poly().clone()).collect();
        assert_eq!(polys, vec![FieldPoly::new(2, &[1, 1]); 2]);
        assert!(verify_rcf(&a, &r));
    }

    #[test]
    fn one_by_one() {
        for c in 0..5 {
            let a = mat(5, &[&[c]]);
            let r = rcf(&a).unwrap();
            assert_eq!(r.blocks[0].last_column(), vec![c as u64]);
            assert!(verify_rcf(&a, &r));
        }
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(rcf(&mat(6, &[&[1]])).is_err());
    }

    #[test]
    fn tampered_transform_fails() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let field = factorize(3).unwrap();
        for _ in 0..50 {
            let a = Matrix::from_fn(&field, 4, |_, _| rng.random_range(0..3));
            let mut r = rcf(&a).unwrap();
            let (i, j) = (rng.random_range(0..4), rng.random_range(0..4));
            let old = *r.transform.get(i, j);
            r.transform.set(i, j, (old + 1) % 3);
            assert!(!verify_rcf(&a, &r));
        }
    }

    #[test]
    fn other_small_primes() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for p in [5u64, 7] {
            let field = factorize(p).unwrap();
            for _ in 0..100 {
                let n = rng.random_range(1..=5);
                let a = Matrix::from_fn(&field, n, |_, _| rng.random_range(0..p));
                assert!(verify_rcf(&a, &rcf(&a).unwrap()));
            }
        }
    }
}
