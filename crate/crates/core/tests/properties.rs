use nilclean::decompose::decompose_zm;
use nilclean::frobenius::{rcf, verify_rcf, FieldPoly};
use nilclean::matrix::inverse;
use nilclean::{verify_certificate, DecompositionCertificate, Modulus, RingMatrix};
use proptest::prelude::*;

fn matrix(m: u64, n: usize, entries: &[u64]) -> RingMatrix {
    let modulus = Modulus::new(m).unwrap();
    let rows: Vec<Vec<i64>> = entries
        .chunks(n)
        .map(|r| r.iter().map(|&x| x as i64).collect())
        .collect();
    RingMatrix::from_ints(&modulus, &rows).unwrap()
}

fn square(m: u64, max_n: usize) -> impl Strategy<Value = RingMatrix> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(0..m, n * n).prop_map(move |v| matrix(m, n, &v))
    })
}

fn unit_of_dim(m: u64, n: usize) -> impl Strategy<Value = RingMatrix> {
    prop::collection::vec(0..m, n * n)
        .prop_map(move |v| matrix(m, n, &v))
        .prop_filter("invertible", |p| p.is_invertible())
}

/// `det(xI - A)` by cofactor expansion along the first row.
fn char_poly_cofactor(a: &RingMatrix) -> FieldPoly {
    let p = a.modulus().value();
    let n = a.dim();
    let entries: Vec<Vec<FieldPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = FieldPoly::constant(p, *a.get(i, j)).neg();
                    if i == j {
                        c.add(&FieldPoly::monomial(p, 1))
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    fn det(m: &[Vec<FieldPoly>], p: u64) -> FieldPoly {
        if m.len() == 1 {
            return m[0][0].clone();
        }
        let mut acc = FieldPoly::zero(p);
        for j in 0..m.len() {
            let minor: Vec<Vec<FieldPoly>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(k, _)| k != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let term = m[0][j].mul(&det(&minor, p));
            acc = if j % 2 == 0 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            };
        }
        acc
    }
    det(&entries, p)
}

fn conjugate(p: &RingMatrix, x: &RingMatrix, p_inv: &RingMatrix) -> RingMatrix {
    &(p * x) * p_inv
}

fn with_unit(m: u64, max_n: usize) -> impl Strategy<Value = (RingMatrix, RingMatrix)> {
    (1..=max_n).prop_flat_map(move |n| {
        (
            prop::collection::vec(0..m, n * n).prop_map(move |v| matrix(m, n, &v)),
            unit_of_dim(m, n),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn block_polys_multiply_to_char_poly(
        a in prop::sample::select(vec![2u64, 3, 5]).prop_flat_map(|p| square(p, 6))
    ) {
        let p = a.modulus().value();
        let r = rcf(&a).unwrap();
        prop_assert!(verify_rcf(&a, &r));
        let product = r.blocks.iter().fold(FieldPoly::constant(p, 1), |acc, b| acc.mul(b.poly()));
        prop_assert_eq!(product, char_poly_cofactor(&a));
        for pair in r.blocks.windows(2) {
            prop_assert!(pair[0].poly().divides(pair[1].poly()));
        }
    }

    #[test]
    fn rcf_blocks_are_similarity_invariant((a, p) in with_unit(3, 5)) {
        let p_inv = inverse(&p).unwrap();
        let b = conjugate(&p, &a, &p_inv);
        let polys = |m: &RingMatrix| -> Vec<FieldPoly> {
            rcf(m).unwrap().blocks.iter().map(|b| b.poly().clone()).collect()
        };
        prop_assert_eq!(polys(&a), polys(&b));
    }

    #[test]
    fn certificates_survive_conjugation((a, p) in with_unit(12, 4)) {
        let c = decompose_zm(&a).unwrap();
        let p_inv = inverse(&p).unwrap();
        let mut moved = DecompositionCertificate::new(
            conjugate(&p, &c.a, &p_inv),
            conjugate(&p, &c.e, &p_inv),
            conjugate(&p, &c.f, &p_inv),
            conjugate(&p, &c.w, &p_inv),
            c.nilpotency_exponent,
            c.tags.clone(),
        );
        prop_assert!(verify_certificate(&mut moved));
    }

    #[test]
    fn decompose_zm_is_sound(
        a in prop::sample::select(vec![2u64, 4, 6, 8, 9, 18, 24, 36, 72]).prop_flat_map(|m| square(m, 6))
    ) {
        let c = decompose_zm(&a).unwrap();
        prop_assert!(c.is_verified());
        let bound = a.dim() as u32 * a.modulus().max_exponent();
        prop_assert!(c.nilpotency_exponent >= 1 && c.nilpotency_exponent <= bound);
        prop_assert_eq!(&c.a, &a);
    }

    #[test]
    fn decompose_zm_refuses_non_smooth(
        m in prop::sample::select(vec![5u64, 7, 10, 14, 15, 35, 60]),
        a in 0i64..60,
    ) {
        let x = RingMatrix::from_ints(&Modulus::new(m).unwrap(), &[vec![a]]).unwrap();
        let refused = matches!(decompose_zm(&x), Err(nilclean::Error::UnsupportedModulus { .. }));
        prop_assert!(refused);
    }
}
