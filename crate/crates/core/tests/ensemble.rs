mod common;

use std::f64::consts::PI;

use common::{bessel_j, c, rng};
use num_complex::Complex64;
use th_szego::ensemble::{
    estimate, haar_special_orthogonal, haar_unitary, probe_oplus_normalization, sample_cue,
    sample_oplus, verify_cue_identity, verify_oplus_identity, EnsembleKind, OplusNormalization,
};
use th_szego::FourierSymbol;

fn two_cos() -> FourierSymbol {
    FourierSymbol::from_real(&[(-1, 1.0), (1, 1.0)])
}

/// Kolmogorov-Smirnov distance of `xs` from the uniform law on `[lo, hi]`.
fn ks_uniform(mut xs: Vec<f64>, lo: f64, hi: f64) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = (x - lo) / (hi - lo);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

/// One-sample KS critical value at the 1% level.
fn ks_critical(n: usize) -> f64 {
    1.628 / (n as f64).sqrt()
}

#[test]
fn sampling_is_deterministic() {
    for seed in [0, 1, u64::MAX] {
        let a = sample_cue(6, seed).unwrap();
        let b = sample_cue(6, seed).unwrap();
        assert_eq!(
            a.angles.iter().map(|x| x.to_bits()).collect::<Vec<_>>(),
            b.angles.iter().map(|x| x.to_bits()).collect::<Vec<_>>()
        );
        assert_eq!(
            sample_oplus(4, seed).unwrap(),
            sample_oplus(4, seed).unwrap()
        );
    }
    assert!(sample_cue(0, 1).is_err());
    assert!(sample_oplus(0, 1).is_err());
    let f = two_cos();
    let x = verify_cue_identity(&f, 0.5, 3, 2000, 9).unwrap();
    let y = verify_cue_identity(&f, 0.5, 3, 2000, 9).unwrap();
    assert_eq!(
        serde_json::to_string(&x).unwrap(),
        serde_json::to_string(&y).unwrap()
    );
}

#[test]
fn samples_have_the_right_shape() {
    let s = sample_cue(7, 3).unwrap();
    assert_eq!(s.angles.len(), 7);
    assert_eq!(s.ensemble, EnsembleKind::Cue(7));
    assert!(s.angles.iter().all(|&a| a > -PI && a <= PI));
    let s = sample_oplus(5, 3).unwrap();
    assert_eq!(s.angles.len(), 5);
    assert_eq!(s.ensemble, EnsembleKind::OPlus(5));
    assert!(s.angles.iter().all(|&a| (0.0..=PI).contains(&a)));
}

#[test]
fn haar_matrices_are_unitary_with_unit_determinant() {
    let mut r = rng(17);
    for n in [1, 3, 8] {
        let u = haar_unitary(n, &mut r);
        let err = (u.adjoint() * &u - nalgebra::DMatrix::<Complex64>::identity(n, n)).norm();
        assert!(err < 1e-12, "n = {n}: {err}");
    }
    for m in [2, 4, 8, 16] {
        for _ in 0..10 {
            let q = haar_special_orthogonal(m, &mut r);
            assert!((q.determinant() - 1.0).abs() <= 1e-10);
            assert!((q.transpose() * &q - nalgebra::DMatrix::<f64>::identity(m, m)).norm() < 1e-12);
        }
    }
}

#[test]
fn one_by_one_cue_is_uniform() {
    let xs: Vec<f64> = (0..10_000)
        .map(|s| sample_cue(1, s).unwrap().angles[0])
        .collect();
    let d = ks_uniform(xs, -PI, PI);
    assert!(d < ks_critical(10_000), "KS = {d}");
}

#[test]
fn so2_angle_is_uniform() {
    let xs: Vec<f64> = (0..10_000)
        .map(|s| sample_oplus(1, s).unwrap().angles[0])
        .collect();
    let d = ks_uniform(xs, 0.0, PI);
    assert!(d < ks_critical(10_000), "KS = {d}");
}

#[test]
fn lambda_zero_is_exact() {
    let f = two_cos();
    let rep = verify_cue_identity(&f, 0.0, 5, 50, 2).unwrap();
    assert_eq!(rep.lhs.to_complex(), c(1.0));
    assert_eq!(rep.rhs.to_complex(), c(1.0));
    assert_eq!(rep.passed, Some(true));
    let plain = verify_oplus_identity(&f, 0.0, 4, 50, 2, OplusNormalization::Plain).unwrap();
    assert!((plain.rhs.to_complex() - c(2.0)).norm() < 1e-15);
    assert_eq!(plain.passed, Some(false));
    let halved =
        verify_oplus_identity(&f, 0.0, 4, 50, 2, OplusNormalization::HalvedFirstRow).unwrap();
    assert!(halved.passed());
}

#[test]
fn one_by_one_cue_matches_bessel() {
    // (1/2pi) int exp(2 i lambda cos) = J_0(2 lambda)
    let lambda = 0.7;
    let rep = verify_cue_identity(&two_cos(), lambda, 1, 40_000, 5).unwrap();
    assert!((rep.rhs.to_complex() - c(bessel_j(0, 2.0 * lambda))).norm() < 1e-14);
    assert!(rep.passed(), "{}", rep.notes);
}

#[test]
fn small_cue_check_brackets_the_determinant() {
    let f = FourierSymbol::from_real(&[(-2, 0.3), (-1, 1.0), (1, 1.0), (2, 0.3)]);
    let rep = verify_cue_identity(&f, 0.4, 4, 40_000, 11).unwrap();
    assert!(rep.passed(), "{}", rep.notes);
    assert_eq!(rep.params.samples, Some(40_000));
}

#[test]
fn small_oplus_probe_is_decisive() {
    let probe = probe_oplus_normalization(&two_cos(), 0.3, 3, 40_000, 13).unwrap();
    assert_eq!(probe.matching, vec![OplusNormalization::HalvedFirstRow]);
    assert_eq!(probe.reports.len(), 2);
}

#[test]
fn cue_mean_is_rotation_invariant() {
    let est = estimate(EnsembleKind::Cue(4), 100_000, 21, |angles| {
        angles.iter().map(|&t| Complex64::from_polar(1.0, t)).sum()
    })
    .unwrap();
    assert!(
        est.mean.norm() <= 4.0 * est.stderr,
        "{} vs {}",
        est.mean.norm(),
        est.stderr
    );
}

#[test]
fn stderr_scales_like_inverse_sqrt() {
    let stat = |angles: &[f64]| -> Complex64 {
        let s: f64 = angles.iter().map(|&t| 4.0 * t.cos()).sum();
        Complex64::from_polar(1.0, 0.3 * s)
    };
    let small = estimate(EnsembleKind::OPlus(4), 10_000, 3, stat).unwrap();
    let big = estimate(EnsembleKind::OPlus(4), 40_000, 4, stat).unwrap();
    let ratio = big.stderr / small.stderr;
    assert!((ratio - 0.5).abs() <= 0.3 * 0.5, "ratio {ratio}");
    assert!(estimate(EnsembleKind::Cue(2), 1, 0, stat).is_err());
}
