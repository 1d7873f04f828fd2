mod common;

use common::{c, rand_disc, rand_even_poly, rand_poly, rng};
use num_complex::Complex64;
use proptest::prelude::*;
use th_szego::generalm::{
    basis_convert, check_compatibility, k_of_tn, m_general_section, m_general_section_power_basis,
    rows_vanish_from, trace_norm, PerturbationVector,
};
use th_szego::{m_section, toeplitz_section, Error, FourierSymbol, Realization};

fn rand_x(seed: u64) -> PerturbationVector {
    let mut r = rng(seed);
    PerturbationVector::new((0..4).map(|_| rand_disc(&mut r)).collect())
}

#[test]
fn basis_examples() {
    let b = basis_convert(&FourierSymbol::from_real(&[(-1, 1.0), (1, 1.0)]));
    assert_eq!(b.c, vec![c(0.0), c(1.0)]);
    assert!(b.d.is_empty());
    let b = basis_convert(&FourierSymbol::monomial(2, c(1.0)));
    assert_eq!(b.c, vec![c(-2.0), c(0.0), c(1.0)]);
    assert_eq!(b.d, vec![c(0.0), c(-1.0)]);
}

#[test]
fn basis_round_trip() {
    let mut r = rng(4);
    for _ in 0..20 {
        let p = rand_poly(&mut r, -6, 6, 1.0);
        let back = basis_convert(&p).to_symbol();
        assert!(common::max_coeff_diff(&back, &p) <= 1e-13);
    }
}

#[test]
fn zero_vector_gives_realization_three() {
    // M(t + 1/t) = T(t + 1/t); higher powers pick up -H(t^{-1} p)
    let x = PerturbationVector::zero();
    let lin = FourierSymbol::from_real(&[(-1, 0.7), (0, 0.2), (1, -0.4)]);
    let m = m_general_section(&x, &lin, 9).unwrap();
    assert!(m.max_abs_diff(&toeplitz_section(&lin, 9)).unwrap() <= 1e-15);
    let p = rand_poly(&mut rng(8), -4, 4, 1.0);
    let m = m_general_section(&x, &p, 16).unwrap();
    assert!(
        m.max_abs_diff(&m_section(&p, 16, Realization::III))
            .unwrap()
            <= 1e-13
    );
}

#[test]
fn unit_vectors_reproduce_realizations() {
    let mut r = rng(12);
    for _ in 0..5 {
        let p = rand_even_poly(&mut r, 4, 1.0);
        for (x, real) in [
            (PerturbationVector::unit(0, 1.0), Realization::I),
            (PerturbationVector::unit(0, -1.0), Realization::II),
            (PerturbationVector::unit(1, 1.0), Realization::IV),
        ] {
            let m = m_general_section(&x, &p, 24).unwrap();
            assert!(
                m.max_abs_diff(&m_section(&p, 24, real)).unwrap() <= 1e-13,
                "{real}"
            );
        }
    }
}

#[test]
fn chebyshev_and_power_routes_agree() {
    let x = rand_x(2);
    let p = rand_poly(&mut rng(3), -5, 5, 1.0);
    let a = m_general_section(&x, &p, 20).unwrap();
    let b = m_general_section_power_basis(&x, &p, 20).unwrap();
    assert!(a.max_abs_diff(&b).unwrap() <= 1e-11 * (1.0 + a.max_abs()));
}

#[test]
fn kernel_examples() {
    let x = rand_x(5);
    assert_eq!(k_of_tn(&x, 0, 8).unwrap().max_abs(), 0.0);
    let k = k_of_tn(&PerturbationVector::unit(0, 1.0), 1, 6).unwrap();
    for i in 0..6 {
        for j in 0..6 {
            assert_eq!(k[(i, j)], c(f64::from(i == 0 && j == 0)));
        }
    }
    let k = k_of_tn(&x, 3, 16).unwrap();
    assert!(rows_vanish_from(&k, 3));
    assert!(k.row(2).iter().any(|z| z.norm() > 0.0));
}

#[test]
fn kernel_trace_norms() {
    // x = e_0 gives K(t^n) = H(t^n), whose singular values are n ones
    let e0 = PerturbationVector::unit(0, 1.0);
    for n in 1..=8 {
        let tn = trace_norm(&k_of_tn(&e0, n, 32).unwrap());
        assert!((tn - n as f64).abs() < 1e-12, "n = {n}: {tn}");
    }
}

#[test]
fn compatibility_examples() {
    let one = FourierSymbol::one();
    let x = rand_x(6);
    assert_eq!(check_compatibility(&x, &one, &one, &one, 16).unwrap(), 0.0);
    let mut r = rng(13);
    let a = rand_poly(&mut r, -4, 0, 0.5);
    let b = rand_poly(&mut r, -4, 4, 0.5);
    let cc = rand_even_poly(&mut r, 4, 0.5);
    let e0 = PerturbationVector::unit(0, 1.0);
    assert!(check_compatibility(&e0, &a, &b, &cc, 64).unwrap() <= 1e-12);
    assert!(check_compatibility(&x, &a, &b, &cc, 64).unwrap() <= 1e-12);
}

#[test]
fn compatibility_rejects_bad_inputs() {
    let x = rand_x(7);
    let one = FourierSymbol::one();
    let t = FourierSymbol::monomial(1, c(1.0));
    assert!(check_compatibility(&x, &t, &one, &one, 16).is_err());
    assert!(matches!(
        check_compatibility(&x, &one, &one, &t, 16),
        Err(Error::NotEven(_))
    ));
    let wide = FourierSymbol::from_real(&[(-9, 1.0), (9, 1.0)]);
    assert!(check_compatibility(&x, &one, &wide, &one, 8).is_err());
}

#[test]
fn perturbation_json() {
    let x = PerturbationVector::from_json(r#"{"x": [[1, 0], [0.5, -0.25], [0, 0]]}"#).unwrap();
    assert_eq!(x.support_bound(), 2);
    assert_eq!(x.get(1), Complex64::new(0.5, -0.25));
    assert_eq!(PerturbationVector::from_json(&x.to_json()).unwrap(), x);
    assert!(PerturbationVector::from_json(r#"{"y": []}"#).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn m_is_linear_and_unital(seed in 0u64..10_000) {
        let x = rand_x(seed);
        let mut r = rng(seed + 1);
        let p = rand_poly(&mut r, -3, 3, 1.0);
        let q = rand_poly(&mut r, -3, 3, 1.0);
        let lhs = m_general_section(&x, &(&p + &q), 12).unwrap();
        let rhs = m_general_section(&x, &p, 12).unwrap().add(&m_general_section(&x, &q, 12).unwrap()).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs).unwrap() <= 1e-12);
        prop_assert_eq!(m_general_section(&x, &FourierSymbol::one(), 7).unwrap(), th_szego::ComplexMatrix::identity(7));
    }

    #[test]
    fn kernel_rows_vanish(seed in 0u64..10_000, n in 1usize..=16) {
        let k = k_of_tn(&rand_x(seed), n, 40).unwrap();
        prop_assert!(rows_vanish_from(&k, n));
    }
}
