use super::*;
use crate::residue::factorize;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn zm(m: u64) -> Modulus {
    factorize(m).unwrap()
}

fn mat(m: u64, rows: &[&[i64]]) -> RingMatrix {
    RingMatrix::from_ints(&zm(m), &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn all_matrices(m: u64, n: usize) -> impl Iterator<Item = RingMatrix> {
    let md = zm(m);
    (0..m.pow((n * n) as u32)).map(move |mut code| {
        Matrix::from_fn(&md, n, |_, _| {
            let d = code % m;
            code /= m;
            d
        })
    })
}

#[test]
fn zero_matrix() {
    for m in [2, 3, 6, 36] {
        let c = decompose_zm(&Matrix::zeros(&zm(m), 3)).unwrap();
        assert!(c.e.is_zero() && c.f.is_zero() && c.w.is_zero());
        assert_eq!(c.nilpotency_exponent, 1);
    }
}

#[test]
fn companion_swap_over_gf3() {
    let a = mat(3, &[&[0, 1], &[1, 0]]);
    let c = decompose_field_matrix(&a).unwrap();
    assert_eq!(c.e, Matrix::identity(&zm(3), 2));
    assert_eq!(c.f, mat(3, &[&[2, 1], &[1, 2]]));
    assert!(c.w.is_zero());
    assert_eq!(
        c.tags,
        vec![BlockTag {
            tag: CaseTag::CaseIIIN2,
            size: 2
        }]
    );
}

#[test]
fn unsupported_inputs() {
    assert_eq!(
        decompose_field_matrix(&mat(5, &[&[3]])),
        Err(Error::UnsupportedField(5))
    );
    assert!(matches!(
        decompose_zm(&mat(5, &[&[3]])),
        Err(Error::UnsupportedModulus {
            modulus: 5,
            prime: 5
        })
    ));
    assert!(matches!(
        decompose_zm(&mat(30, &[&[3]])),
        Err(Error::UnsupportedModulus { prime: 5, .. })
    ));
    assert!(matches!(
        decompose_prime_power(&mat(25, &[&[3]])),
        Err(Error::UnsupportedModulus { .. })
    ));
    assert!(decompose_prime_power(&mat(6, &[&[3]])).is_err());
}

#[test]
fn exhaustive_small_cases() {
    for (n, m) in [(2, 2), (2, 3), (2, 4), (2, 6), (2, 9), (3, 2), (3, 3)] {
        for a in all_matrices(m, n) {
            let c = decompose_zm(&a).unwrap();
            assert!(c.is_verified());
            let e_max = zm(m).max_exponent();
            assert!(c.nilpotency_exponent <= n as u32 * e_max);
        }
    }
}

#[test]
fn prime_power_examples() {
    let c = decompose_prime_power(&mat(4, &[&[2, 0], &[0, 2]])).unwrap();
    assert!(c.e.is_zero() && c.f.is_zero());
    assert_eq!(c.w, mat(4, &[&[2, 0], &[0, 2]]));
    assert_eq!(c.nilpotency_exponent, 2);

    let c = decompose_prime_power(&mat(9, &[&[3]])).unwrap();
    assert!(c.e.is_zero() && c.f.is_zero());
    assert_eq!(c.w, mat(9, &[&[3]]));
    assert_eq!(c.nilpotency_exponent, 2);

    let a = mat(3, &[&[1, 2], &[0, 1]]);
    assert_eq!(
        decompose_prime_power(&a).unwrap(),
        decompose_field_matrix(&a).unwrap()
    );
}

#[test]
fn idempotent_scalar_over_z6() {
    let c = decompose_zm(&mat(6, &[&[4]])).unwrap();
    assert_eq!((c.e.get(0, 0), c.f.get(0, 0), c.w.get(0, 0)), (&4, &0, &0));
}

#[test]
fn prime_modulus_matches_field_path() {
    for a in all_matrices(2, 2).chain(all_matrices(3, 2)) {
        assert_eq!(
            decompose_zm(&a).unwrap(),
            decompose_field_matrix(&a).unwrap()
        );
    }
}

#[test]
fn random_zm_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let smooth: Vec<u64> = (2..=72).filter(|&m| zm(m).is_two_three_smooth()).collect();
    for _ in 0..1000 {
        let m = smooth[rng.random_range(0..smooth.len())];
        let n = rng.random_range(1..=8);
        let md = zm(m);
        let a = Matrix::from_fn(&md, n, |_, _| rng.random_range(0..m));
        let c = decompose_zm(&a).unwrap();
        assert!(c.is_verified());
        assert!(c.nilpotency_exponent <= n as u32 * md.max_exponent());
    }
}

#[test]
fn triangular_examples() {
    let t = mat(6, &[&[0, 5, 1], &[0, 0, 2], &[0, 0, 0]]);
    let c = decompose_triangular(&t).unwrap();
    assert!(c.e.is_zero() && c.f.is_zero());
    assert_eq!(c.w, t);

    // 5 = 1 + 4 + 0; 2 is 0 mod 2 and 2 = 1 + 1 mod 3, giving 2 = 4 + 4 + 0.
    let c = decompose_triangular(&mat(6, &[&[5, 0], &[0, 2]])).unwrap();
    assert_eq!(c.e, mat(6, &[&[1, 0], &[0, 4]]));
    assert_eq!(c.f, mat(6, &[&[4, 0], &[0, 4]]));
    assert!(c.w.is_zero());

    // 2 = 1 + 1 + 0 and 3 = 0 + 0 + 3 in Z_9.
    let c = decompose_triangular(&mat(9, &[&[2, 7], &[0, 3]])).unwrap();
    assert_eq!(c.e, mat(9, &[&[1, 0], &[0, 0]]));
    assert_eq!(c.f, mat(9, &[&[1, 0], &[0, 0]]));
    assert_eq!(c.w, mat(9, &[&[0, 7], &[0, 3]]));
    // W^2 = [[0,3],[0,0]], W^3 = 0.
    assert_eq!(c.nilpotency_exponent, 3);

    assert!(decompose_triangular(&mat(6, &[&[1, 0], &[1, 1]])).is_err());
    assert!(decompose_triangular(&mat(10, &[&[1, 0], &[0, 1]])).is_err());
}

fn trunc(m: u64, d: usize) -> TruncPolyRing {
    TruncPolyRing::new(zm(m), d).unwrap()
}

#[test]
fn trunc_examples() {
    let r = trunc(2, 3);
    let a = Matrix::from_rows(&r, vec![vec![r.elem(&[0, 1]).unwrap()]]).unwrap();
    let c = decompose_trunc_poly_matrix(&a).unwrap();
    assert!(c.e.is_zero() && c.f.is_zero());
    assert_eq!(c.w, a);
    assert_eq!(c.nilpotency_exponent, 3);

    let r = trunc(3, 2);
    let a = Matrix::from_rows(&r, vec![vec![r.elem(&[1, 1]).unwrap()]]).unwrap();
    let c = decompose_trunc_poly_matrix(&a).unwrap();
    assert_eq!(c.e.get(0, 0), &r.elem(&[1]).unwrap());
    assert_eq!(c.w.get(0, 0), &r.elem(&[0, 1]).unwrap());

    let r1 = trunc(6, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..50 {
        let a0 = Matrix::from_fn(&zm(6), 3, |_, _| rng.random_range(0..6));
        let a = a0.map(&r1, |&c| r1.constant(c));
        let c = decompose_trunc_poly_matrix(&a).unwrap();
        let plain = decompose_zm(&a0).unwrap();
        assert_eq!(c.e, plain.e.map(&r1, |&v| r1.constant(v)));
        assert_eq!(c.f, plain.f.map(&r1, |&v| r1.constant(v)));
    }

    let bad = trunc(5, 2);
    let a = Matrix::zeros(&bad, 1);
    assert!(decompose_trunc_poly_matrix(&a).is_err());
}

#[test]
fn trunc_random_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (m, d) in [(6u64, 2usize), (12, 3), (4, 4), (9, 2)] {
        let r = trunc(m, d);
        for _ in 0..100 {
            let n = rng.random_range(1..=4);
            let a = Matrix::from_fn(&r, n, |_, _| {
                (0..d).map(|_| rng.random_range(0..m)).collect()
            });
            let c = decompose_trunc_poly_matrix(&a).unwrap();
            assert!(c.nilpotency_exponent <= (n * d) as u32 * zm(m).max_exponent());
        }
    }
}
