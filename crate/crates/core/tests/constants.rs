mod common;

use common::{c, circle_mean, fourier_coeff, gauss, rand_even_poly, rng};
use num_complex::Complex64;
use th_szego::constants::{log_e_hat_fit, Traces};
use th_szego::{
    case_constants, szego_constants, trace_m_minus_t, FourierSymbol, IndexConvention, Realization,
};

fn close(a: Complex64, b: f64, tol: f64) -> bool {
    (a - c(b)).norm() <= tol
}

#[test]
fn trace_examples() {
    for r in Realization::BASIC {
        assert_eq!(trace_m_minus_t(&FourierSymbol::zero(), r).unwrap(), c(0.0));
    }
    let b = FourierSymbol::from_real(&[(-1, 0.3), (1, 0.3)]);
    assert_eq!(trace_m_minus_t(&b, Realization::I).unwrap(), c(0.3));
    let b = FourierSymbol::from_real(&[(2, 0.4)]);
    assert_eq!(trace_m_minus_t(&b, Realization::IV).unwrap(), c(0.4));
    assert_eq!(trace_m_minus_t(&b, Realization::III).unwrap(), c(-0.4));
}

#[test]
fn szego_constant_examples() {
    for r in Realization::BASIC {
        let k = szego_constants(&FourierSymbol::one(), r).unwrap();
        assert_eq!([k.g, k.e, k.f, k.f_hat.unwrap(), k.e_hat], [c(1.0); 5]);
    }
    let k = szego_constants(&gauss(0.3), Realization::I).unwrap();
    let tol = 1e-13;
    assert!(close(k.g, 1.0, tol));
    assert!(close(k.e, 0.09f64.exp(), tol));
    assert!(close(k.f, 0.255f64.exp(), tol));
    assert!(close(k.f_hat.unwrap(), 0.345f64.exp(), tol));
    assert!(close(k.e_hat, 0.345f64.exp(), tol));

    let k = szego_constants(
        &FourierSymbol::from_real(&[(1, 0.1)]).exp().unwrap(),
        Realization::II,
    )
    .unwrap();
    assert!(close(k.g, 1.0, tol) && close(k.e, 1.0, tol));
    assert!(close(k.e_hat, (-0.105f64).exp(), tol));
    assert!(k.f_hat.is_none());
}

#[test]
fn geometric_mean_matches_quadrature() {
    // G = exp(mean of log a) for a positive symbol
    let a = FourierSymbol::from_real(&[(-2, 0.1), (-1, 0.25), (0, 2.0), (1, 0.4), (2, 0.05)]);
    let mean_log = circle_mean(|th| a.eval(th).ln(), 512);
    let k = szego_constants(&a, Realization::I).unwrap();
    assert!((k.g - mean_log.exp()).norm() < 1e-13);
}

#[test]
fn traces_match_quadrature_coefficients() {
    let b = FourierSymbol::from_real(&[
        (-3, 0.02),
        (-1, 0.1),
        (0, 0.3),
        (1, 0.2),
        (2, -0.15),
        (3, 0.05),
    ]);
    let t = Traces::of_log(&b);
    let coeff = |n: i64| fourier_coeff(|th| b.eval(th), n, 64);
    let h_cross: Complex64 = (1..=3).map(|n| coeff(n) * coeff(-n) * n as f64).sum();
    let h_sq: Complex64 = (1..=3).map(|n| coeff(n) * coeff(n) * n as f64).sum();
    assert!((t.h_cross - h_cross).norm() < 1e-15);
    assert!((t.h_sq - h_sq).norm() < 1e-15);
    assert!((t.h_odd - (coeff(1) + coeff(3))).norm() < 1e-15);
    assert!((t.h_even - coeff(2)).norm() < 1e-15);
}

#[test]
fn even_symbols_have_e_hat_equal_f_hat() {
    let mut r = rng(21);
    for _ in 0..5 {
        let b = rand_even_poly(&mut r, 3, 0.2);
        let a = b.exp().unwrap();
        for real in Realization::BASIC {
            let k = szego_constants(&a, real).unwrap();
            assert!((k.e_hat - k.f_hat.unwrap()).norm() < 1e-12 * k.e_hat.norm());
            assert!((k.e * k.f - k.e_hat).norm() < 1e-12 * k.e_hat.norm());
        }
    }
}

#[test]
fn case_constant_examples() {
    for conv in IndexConvention::ALL {
        let cc = case_constants(&FourierSymbol::one(), conv).unwrap();
        assert_eq!((cc.e1_plus, cc.e1_minus, cc.e2), (c(1.0), c(1.0), c(1.0)));
        assert!(close(cc.e3, 0.5, 1e-16));
        assert_eq!(cc.index_convention, conv);
    }
    let a = gauss(0.3);
    let n0 = case_constants(&a, IndexConvention::FromN0).unwrap();
    let paper = case_constants(&a, IndexConvention::Paper).unwrap();
    assert!(close(n0.e1_plus, 0.345f64.exp(), 1e-13));
    assert!(close(paper.e1_plus, 0.045f64.exp(), 1e-13));
    let e_hat_i = szego_constants(&a, Realization::I).unwrap().e_hat;
    assert!((n0.e1_plus - e_hat_i).norm() < 1e-13);
    let e_hat_ii = szego_constants(&a, Realization::II).unwrap().e_hat;
    assert!((n0.e1_minus - e_hat_ii).norm() < 1e-13);
    // E_2 and E_3 do not depend on the convention
    assert_eq!((n0.e2, n0.e3), (paper.e2, paper.e3));
}

#[test]
fn log_e_hat_is_quadratic_in_lambda() {
    let f = FourierSymbol::from_real(&[(-1, 1.0), (1, 1.0)]);
    let lambdas = [0.0, 0.1, -0.1, 0.2, -0.2, 0.3];
    for r in Realization::BASIC {
        let fit = log_e_hat_fit(&f, r, &lambdas).unwrap();
        assert!(fit[3].norm() <= 1e-10, "{r}: {}", fit[3]);
        // the linear coefficient is i tr(M(f) - T(f))
        let tr = trace_m_minus_t(&f, r).unwrap();
        assert!((fit[1] - Complex64::i() * tr).norm() < 1e-10);
    }
    assert!(log_e_hat_fit(&f, Realization::I, &[0.0, 0.1]).is_err());
}
