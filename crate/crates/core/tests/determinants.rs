mod common;

use common::{c, det_cofactor, gauss, rand_c, rng, rows_of};
use num_complex::Complex64;
use proptest::prelude::*;
use th_szego::determinants::{fredholm_det_fixed, wrap_phase, LuFactors};
use th_szego::{
    det_lu, fredholm_det, m_section, szego_constants, ComplexMatrix, Error, FourierSymbol, LogDet,
    Realization,
};

fn rand_matrix(seed: u64, n: usize) -> ComplexMatrix {
    let mut r = rng(seed);
    ComplexMatrix::from_fn(n, n, |_, _| rand_c(&mut r, 1.0))
}

#[test]
fn det_lu_examples() {
    let d = det_lu(&ComplexMatrix::identity(7)).unwrap();
    assert_eq!((d.log_abs, d.phase, d.zero_flag), (0.0, 0.0, false));
    let m = ComplexMatrix::from_row_major(2, 2, vec![c(1.0), c(2.0), c(3.0), c(4.0)]).unwrap();
    assert!((det_lu(&m).unwrap().to_complex() - c(-2.0)).norm() < 1e-15);
    assert!(matches!(
        det_lu(&ComplexMatrix::zeros(2, 3)),
        Err(Error::NonSquare { .. })
    ));
}

#[test]
fn det_lu_matches_cofactor_oracle() {
    for n in 1..=6 {
        for seed in 0..5 {
            let m = rand_matrix(100 * n as u64 + seed, n);
            let want = det_cofactor(&rows_of(&m));
            let got = det_lu(&m).unwrap();
            assert!(
                got.rel_err(&LogDet::from_complex(want)) <= 1e-12,
                "n = {n} seed = {seed}"
            );
        }
    }
}

#[test]
fn singular_matrices_are_flagged() {
    let mut m = rand_matrix(1, 5);
    let r0 = m.row(0).to_vec();
    let rows: Vec<Complex64> = (0..5)
        .flat_map(|i| {
            if i == 3 {
                r0.clone()
            } else {
                m.row(i).to_vec()
            }
        })
        .collect();
    m = ComplexMatrix::from_row_major(5, 5, rows).unwrap();
    let d = det_lu(&m).unwrap();
    assert!(d.zero_flag);
    assert_eq!(d.to_complex(), c(0.0));
    assert!(LuFactors::new(&m).unwrap().is_singular());
    assert!(det_lu(&ComplexMatrix::zeros(3, 3)).unwrap().zero_flag);
}

#[test]
fn log_form_survives_huge_determinants() {
    // 400 x 400 diagonal of 10: det = 10^400 overflows f64
    let m = ComplexMatrix::from_fn(400, 400, |i, j| if i == j { c(10.0) } else { c(0.0) });
    let d = det_lu(&m).unwrap();
    assert!((d.log_abs - 400.0 * 10f64.ln()).abs() < 1e-10);
    assert!(!d.zero_flag);
}

#[test]
fn logdet_arithmetic() {
    let a = LogDet::from_complex(Complex64::new(0.0, 2.0));
    let b = LogDet::from_complex(Complex64::new(-3.0, 0.0));
    assert!((a.mul(&b).to_complex() - Complex64::new(0.0, -6.0)).norm() < 1e-14);
    assert!(a.mul(&LogDet::zero()).zero_flag);
    assert_eq!(LogDet::ONE.to_complex(), c(1.0));
    assert_eq!(a.rel_err(&a), 0.0);
    assert!(LogDet::zero().rel_err(&LogDet::zero()) == 0.0);
    assert!(LogDet::zero().rel_err(&LogDet::ONE).is_infinite());
    for x in [-10.0, -3.5, 0.0, 3.2, 7.0, 100.0] {
        let w = wrap_phase(x);
        assert!(w > -std::f64::consts::PI - 1e-15 && w <= std::f64::consts::PI);
        let turns = (x - w) / std::f64::consts::TAU;
        assert!((turns - turns.round()).abs() < 1e-12);
    }
}

#[test]
fn fredholm_examples() {
    for r in Realization::BASIC {
        for n in [0, 1, 5] {
            let f = fredholm_det(&FourierSymbol::one(), r, n, 1e-14).unwrap();
            assert!((f.value - c(1.0)).norm() < 1e-15, "{r} n = {n}");
        }
    }
    let a = gauss(0.3);
    let f = fredholm_det(&a, Realization::I, 8, 1e-14).unwrap();
    let dense = det_lu(&m_section(&a, 8, Realization::I))
        .unwrap()
        .to_complex();
    let k = szego_constants(&a, Realization::I).unwrap();
    let want = dense / (k.g.powi(8) * k.f_hat.unwrap());
    assert!((f.value - want).norm() <= 1e-10 * want.norm());

    let d4 = fredholm_det(&a, Realization::I, 4, 1e-15).unwrap().value;
    let d32 = fredholm_det(&a, Realization::I, 32, 1e-15).unwrap().value;
    assert!((d32 - c(1.0)).norm() < (d4 - c(1.0)).norm());
}

#[test]
fn fredholm_truncation_converges() {
    let a = gauss(0.4);
    let adaptive = fredholm_det(&a, Realization::III, 2, 1e-14).unwrap();
    let big = fredholm_det_fixed(&a, Realization::III, 2, 256).unwrap();
    assert!((adaptive.value - big.value).norm() < 1e-13);
    // truncation bound below tol plus an m * eps round-off allowance
    assert!(adaptive.tail_estimate < 1e-14 + adaptive.truncation as f64 * 1e-14);
    assert!((adaptive.value - big.value).norm() <= adaptive.tail_estimate + 1e-14);
    assert!(adaptive.truncation >= 32);
}

#[test]
fn fredholm_rejects_shifted_and_non_even() {
    let a = gauss(0.3);
    let shifted = Realization::Shifted {
        k: 1,
        sign: th_szego::Sign::Plus,
    };
    assert!(fredholm_det(&a, shifted, 4, 1e-12).is_err());
    let odd = FourierSymbol::from_real(&[(1, 0.3)]).exp().unwrap();
    assert!(matches!(
        fredholm_det(&odd, Realization::I, 4, 1e-12),
        Err(Error::NotEven(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn det_is_multiplicative(seed in 0u64..10_000, n in 1usize..7) {
        let a = rand_matrix(seed, n);
        let b = rand_matrix(seed + 77_777, n);
        let ab = det_lu(&a.matmul(&b).unwrap()).unwrap();
        let prod = det_lu(&a).unwrap().mul(&det_lu(&b).unwrap());
        prop_assert!(ab.rel_err(&prod) <= 1e-10);
    }

    #[test]
    fn det_of_transpose(seed in 0u64..10_000, n in 1usize..7) {
        let a = rand_matrix(seed, n);
        prop_assert!(det_lu(&a).unwrap().rel_err(&det_lu(&a.transpose()).unwrap()) <= 1e-12);
    }
}
