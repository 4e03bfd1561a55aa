use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use intdiff::endo::{apply_endo, compose, decompose, inner, torus, validate, Endo};
use intdiff::error::Error;
use intdiff::sample;
use intdiff::{FMatrix, IOp, Scalar};

fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_aut(rng: &mut ChaCha8Rng) -> Endo {
    let lam = sample::nonzero_scalar(rng);
    let block = rng.gen_range(1..=3);
    let u = sample::unit(rng, block);
    compose(&torus(&lam).unwrap(), &inner(&u).unwrap()).unwrap()
}

#[test]
fn apply_endo_is_multiplicative() {
    let mut rng = seeded(21);
    for _ in 0..15 {
        let s = random_aut(&mut rng);
        for _ in 0..5 {
            let a = sample::iop(&mut rng, 2, 2, 3);
            let b = sample::iop(&mut rng, 2, 2, 3);
            assert_eq!(
                apply_endo(&s, &(&a * &b)),
                &apply_endo(&s, &a) * &apply_endo(&s, &b)
            );
            assert_eq!(
                apply_endo(&s, &(&a + &b)),
                &apply_endo(&s, &a) + &apply_endo(&s, &b)
            );
        }
    }
}

#[test]
fn nonzero_elements_have_nonzero_images() {
    let mut rng = seeded(22);
    for _ in 0..10 {
        let s = random_aut(&mut rng);
        let e00 = apply_endo(&s, &IOp::e(0, 0));
        let proj = &IOp::one() - &(s.int_img() * s.der_img());
        assert_eq!(e00, proj);
        assert!(!e00.is_zero());
        for _ in 0..10 {
            let a = sample::iop(&mut rng, 2, 2, 3);
            if !a.is_zero() {
                assert!(!apply_endo(&s, &a).is_zero(), "a = {a}");
            }
        }
    }
}

#[test]
fn matrix_units_map_into_f() {
    let mut rng = seeded(23);
    let s = random_aut(&mut rng);
    for i in 0..=4 {
        for j in 0..=4 {
            assert!(apply_endo(&s, &IOp::e(i, j)).is_in_f());
        }
    }
}

#[test]
fn chains_of_automorphisms_decompose() {
    let mut rng = seeded(24);
    for _ in 0..25 {
        let s = compose(&random_aut(&mut rng), &random_aut(&mut rng)).unwrap();
        let dec = decompose(&s).unwrap();
        let rebuilt = compose(&torus(&dec.nu).unwrap(), &inner(&dec.u).unwrap()).unwrap();
        assert_eq!(rebuilt, s);
        assert_eq!(dec.diagnostics.n, 1);
        assert!(dec.diagnostics.mu.is_zero());
        assert_eq!(dec.diagnostics.lambda, Scalar::one());
    }
}

#[test]
fn hand_built_triple_decomposes() {
    // Conjugation by 1 + 2e(1,0), written out by hand:
    // (1 + 2e10)^{-1} = 1 - 2e10.
    let g = &IOp::one() + &IOp::e(1, 0).scale(&Scalar::from_int(2));
    let g_inv = &IOp::one() - &IOp::e(1, 0).scale(&Scalar::from_int(2));
    let conj = |a: IOp| &(&g * &a) * &g_inv;
    let s = validate(conj(IOp::h()), conj(IOp::int()), conj(IOp::der())).unwrap();
    let dec = decompose(&s).unwrap();
    assert_eq!(dec.nu, Scalar::one());
    assert_eq!(dec.u, FMatrix::term(1, 0, Scalar::from_int(2)));
}

#[test]
fn identity_decomposes_trivially() {
    let dec = decompose(&Endo::identity()).unwrap();
    assert_eq!(dec.nu, Scalar::one());
    assert!(dec.u.is_zero());
    assert_eq!(dec.diagnostics.kernel_der_deg, 0);
}

#[test]
fn inner_rejects_non_units() {
    assert_eq!(inner(&-&FMatrix::unit(0, 0)).unwrap_err(), Error::NotAUnit);
    assert_eq!(torus(&Scalar::zero()).unwrap_err(), Error::ZeroScalar);
}

#[test]
fn decompose_never_reports_a_theorem_violation_on_validated_input() {
    let mut rng = seeded(25);
    for _ in 0..40 {
        let s = random_aut(&mut rng);
        match decompose(&s) {
            Ok(_) => {}
            Err(e @ Error::TheoremViolation { .. }) => panic!("{e}"),
            Err(e) => panic!("unexpected {e}"),
        }
    }
}
