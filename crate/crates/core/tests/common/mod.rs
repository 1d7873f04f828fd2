//! Independent reference computations used by the integration tests.
//!
//! Nothing here calls into the library's numerical code: series are summed
//! term by term, products are double loops, determinants are cofactor
//! expansions and Fourier coefficients come from trapezoid quadrature.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use th_szego::{ComplexMatrix, FourierSymbol};

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// Modified Bessel `I_n(x) = sum_k (x/2)^{2k+|n|} / (k! (k+|n|)!)`.
pub fn bessel_i(n: i64, x: f64) -> f64 {
    let n = n.unsigned_abs() as u32;
    (0..60u32)
        .map(|k| (x / 2.0).powi((2 * k + n) as i32) / (factorial(k) * factorial(k + n)))
        .sum()
}

/// Bessel `J_n(x) = sum_k (-1)^k (x/2)^{2k+n} / (k! (k+n)!)`, with
/// `J_{-n} = (-1)^n J_n`.
pub fn bessel_j(n: i64, x: f64) -> f64 {
    let m = n.unsigned_abs() as u32;
    let v: f64 = (0..60u32)
        .map(|k| {
            (-1f64).powi(k as i32) * (x / 2.0).powi((2 * k + m) as i32)
                / (factorial(k) * factorial(k + m))
        })
        .sum();
    if n < 0 && m % 2 == 1 {
        -v
    } else {
        v
    }
}

/// `exp(gamma (t + 1/t))` has coefficients `I_n(2 gamma)`.
pub fn gauss(gamma: f64) -> FourierSymbol {
    FourierSymbol::from_real(&[(-1, gamma), (1, gamma)])
        .exp()
        .unwrap()
}

/// Laurent product by the double sum over stored coefficients.
pub fn convolve(a: &FourierSymbol, b: &FourierSymbol) -> BTreeMap<i64, Complex64> {
    let mut out = BTreeMap::new();
    for (i, x) in a.iter() {
        for (j, y) in b.iter() {
            *out.entry(i + j).or_insert(c(0.0)) += x * y;
        }
    }
    out
}

/// Determinant by Laplace expansion along the first row.
pub fn det_cofactor(m: &[Vec<Complex64>]) -> Complex64 {
    let n = m.len();
    if n == 0 {
        return c(1.0);
    }
    if n == 1 {
        return m[0][0];
    }
    let mut total = c(0.0);
    for j in 0..n {
        let minor: Vec<Vec<Complex64>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, &z)| z)
                    .collect()
            })
            .collect();
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        total += m[0][j] * det_cofactor(&minor) * sign;
    }
    total
}

pub fn rows_of(m: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// `n`-th Fourier coefficient of `f(theta)` by the `points`-point trapezoid rule.
pub fn fourier_coeff<F: Fn(f64) -> Complex64>(f: F, n: i64, points: usize) -> Complex64 {
    let h = 2.0 * PI / points as f64;
    (0..points)
        .map(|j| {
            let th = j as f64 * h;
            f(th) * Complex64::from_polar(1.0, -(n as f64) * th)
        })
        .sum::<Complex64>()
        / points as f64
}

/// Mean of `f` over the circle.
pub fn circle_mean<F: Fn(f64) -> Complex64>(f: F, points: usize) -> Complex64 {
    fourier_coeff(f, 0, points)
}

/// Random complex coefficient in the square `[-s, s]^2`.
pub fn rand_c(rng: &mut ChaCha8Rng, s: f64) -> Complex64 {
    Complex64::new(rng.random_range(-s..=s), rng.random_range(-s..=s))
}

/// Random point of the open unit disc.
pub fn rand_disc(rng: &mut ChaCha8Rng) -> Complex64 {
    loop {
        let z = rand_c(rng, 1.0);
        if z.norm() < 1.0 {
            return z;
        }
    }
}

/// Random trigonometric polynomial with indices in `lo..=hi`.
pub fn rand_poly(rng: &mut ChaCha8Rng, lo: i64, hi: i64, s: f64) -> FourierSymbol {
    FourierSymbol::from_coeffs((lo..=hi).map(|n| (n, rand_c(rng, s))).collect::<Vec<_>>())
}

/// Random even trigonometric polynomial of degree `deg`.
pub fn rand_even_poly(rng: &mut ChaCha8Rng, deg: i64, s: f64) -> FourierSymbol {
    let mut entries = vec![(0, rand_c(rng, s))];
    for n in 1..=deg {
        let z = rand_c(rng, s);
        entries.push((n, z));
        entries.push((-n, z));
    }
    FourierSymbol::from_coeffs(entries)
}

pub fn max_coeff_diff(a: &FourierSymbol, b: &FourierSymbol) -> f64 {
    (a - b).iter().map(|(_, z)| z.norm()).fold(0.0, f64::max)
}
