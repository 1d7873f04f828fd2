//! Determinants in log/phase form and truncated Fredholm determinants.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::operators::{EvenKernel, Realization};
use crate::symbol::{max_degree, FourierSymbol};

/// A pivot below this fraction of the largest row norm is treated as an exact zero.
pub const ZERO_PIVOT_RTOL: f64 = 1e-13;

/// First truncation size tried by [`fredholm_det`].
pub const FREDHOLM_START: usize = 32;

/// Wraps an angle into `(-pi, pi]`.
pub fn wrap_phase(phase: f64) -> f64 {
    let mut p = phase % (2.0 * PI);
    if p > PI {
        p -= 2.0 * PI;
    } else if p <= -PI {
        p += 2.0 * PI;
    }
    p
}

/// `det = exp(log_abs) * e^{i phase}`, or exactly zero when `zero_flag` is set.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogDet {
    #[serde(with = "crate::report::nonfinite_as_null")]
    pub log_abs: f64,
    pub phase: f64,
    pub zero_flag: bool,
}

impl LogDet {
    pub const ONE: LogDet = LogDet {
        log_abs: 0.0,
        phase: 0.0,
        zero_flag: false,
    };

    pub fn zero() -> Self {
        Self {
            log_abs: f64::NEG_INFINITY,
            phase: 0.0,
            zero_flag: true,
        }
    }

    pub fn from_complex(z: Complex64) -> Self {
        if z == Complex64::new(0.0, 0.0) {
            Self::zero()
        } else {
            Self {
                log_abs: z.norm().ln(),
                phase: z.arg(),
                zero_flag: false,
            }
        }
    }

    /// From a complex logarithm `z`, so the value is `exp(z)`.
    pub fn from_log(z: Complex64) -> Self {
        Self {
            log_abs: z.re,
            phase: wrap_phase(z.im),
            zero_flag: false,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        if self.zero_flag {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::from_polar(self.log_abs.exp(), self.phase)
        }
    }

    pub fn mul(&self, other: &LogDet) -> LogDet {
        if self.zero_flag || other.zero_flag {
            return Self::zero();
        }
        Self {
            log_abs: self.log_abs + other.log_abs,
            phase: wrap_phase(self.phase + other.phase),
            zero_flag: false,
        }
    }

    /// `|self/reference - 1|`, evaluated as `|exp(d_log + i d_phase) - 1|`.
    /// Two exact zeros agree perfectly; one exact zero is infinitely far off.
    pub fn rel_err(&self, reference: &LogDet) -> f64 {
        match (self.zero_flag, reference.zero_flag) {
            (true, true) => 0.0,
            (true, false) | (false, true) => f64::INFINITY,
            (false, false) => {
                let d = Complex64::new(
                    self.log_abs - reference.log_abs,
                    wrap_phase(self.phase - reference.phase),
                );
                (d.exp() - 1.0).norm()
            }
        }
    }
}

/// Result of LU with partial pivoting: the pivots of `U`, the number of row
/// swaps, and the largest row norm of the input.
#[derive(Clone, Debug)]
pub struct LuFactors {
    pub pivots: Vec<Complex64>,
    pub swaps: usize,
    pub scale: f64,
}

impl LuFactors {
    pub fn new(m: &ComplexMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NonSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        let n = m.rows();
        let scale = m.row_norms().into_iter().fold(0.0, f64::max);
        let mut a: Vec<Complex64> = m.as_slice().to_vec();
        let mut pivots = Vec::with_capacity(n);
        let mut swaps = 0;
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| a[i * n + k].norm().total_cmp(&a[j * n + k].norm()))
                .expect("non-empty range");
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                swaps += 1;
            }
            let pivot = a[k * n + k];
            pivots.push(pivot);
            if pivot == Complex64::new(0.0, 0.0) {
                // column already zero below the diagonal
                continue;
            }
            let inv = 1.0 / pivot;
            let (top, bottom) = a.split_at_mut((k + 1) * n);
            let pivot_row = &top[k * n..(k + 1) * n];
            for row in bottom.chunks_exact_mut(n) {
                let l = row[k] * inv;
                if l == Complex64::new(0.0, 0.0) {
                    continue;
                }
                row[k] = Complex64::new(0.0, 0.0);
                for (x, &u) in row[k + 1..].iter_mut().zip(&pivot_row[k + 1..]) {
                    *x -= l * u;
                }
            }
        }
        Ok(Self {
            pivots,
            swaps,
            scale,
        })
    }

    /// True when some pivot is below `ZERO_PIVOT_RTOL * scale`.
    pub fn is_singular(&self) -> bool {
        self.pivots
            .iter()
            .any(|p| p.norm() <= ZERO_PIVOT_RTOL * self.scale)
    }

    /// `|det|` as the plain product of pivot moduli (no zero detection).
    pub fn abs_det(&self) -> f64 {
        self.pivots.iter().map(|p| p.norm()).product()
    }

    pub fn log_det(&self) -> LogDet {
        if self.is_singular() {
            return LogDet::zero();
        }
        let log_abs = self.pivots.iter().map(|p| p.norm().ln()).sum();
        let phase = self.pivots.iter().map(|p| p.arg()).sum::<f64>() + PI * (self.swaps % 2) as f64;
        LogDet {
            log_abs,
            phase: wrap_phase(phase),
            zero_flag: false,
        }
    }
}

/// Determinant by LU with partial pivoting, accumulated in log/phase form.
/// The empty matrix has determinant 1.
pub fn det_lu(m: &ComplexMatrix) -> Result<LogDet> {
    Ok(LuFactors::new(m)?.log_det())
}

/// `det(I + Q_N K Q_N)` truncated to a block of size `truncation`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FredholmResult {
    pub value: Complex64,
    pub truncation: usize,
    /// Bound on the neglected part plus a round-off allowance.
    pub tail_estimate: f64,
}

/// `det(I + Q_N K Q_N)` for the even-symbol kernel of realization `r`, with
/// the block size doubled from 32 until the weighted tail of the kernel's
/// generating symbol past the block is below `tol`.
pub fn fredholm_det(
    a: &FourierSymbol,
    r: Realization,
    n: usize,
    tol: f64,
) -> Result<FredholmResult> {
    let kernel = EvenKernel::new(a, r)?;
    let cap = max_degree() as usize;
    let mut m = FREDHOLM_START;
    loop {
        let tail = kernel_tail(&kernel, n, m);
        if tail < tol {
            return Ok(fredholm_block(&kernel, n, m, tail));
        }
        m *= 2;
        if m > cap {
            return Err(Error::NoConvergence(format!(
                "kernel tail {tail:e} still above {tol:e} at block size {m}"
            )));
        }
    }
}

/// As [`fredholm_det`] with a fixed block size `m`.
pub fn fredholm_det_fixed(
    a: &FourierSymbol,
    r: Realization,
    n: usize,
    m: usize,
) -> Result<FredholmResult> {
    let kernel = EvenKernel::new(a, r)?;
    let tail = kernel_tail(&kernel, n, m);
    Ok(fredholm_block(&kernel, n, m, tail))
}

fn kernel_tail(kernel: &EvenKernel, n: usize, m: usize) -> f64 {
    // entries outside [n, n+m)^2 involve generating-symbol indices > 2n + m
    let from = (2 * n + m + 1) as i64;
    let mut tail = kernel.tail_bound(from);
    if n == 0 {
        tail += (m..m + 64).map(|j| kernel.entry(j, 0).norm()).sum::<f64>();
    }
    tail
}

fn fredholm_block(kernel: &EvenKernel, n: usize, m: usize, tail: f64) -> FredholmResult {
    let mut block = kernel.block(n, m);
    for i in 0..m {
        block[(i, i)] += 1.0;
    }
    let value = det_lu(&block).expect("square block").to_complex();
    let roundoff = m as f64 * f64::EPSILON * (1.0 + kernel.hankel_symbol().norm_fl11());
    FredholmResult {
        value,
        truncation: m,
        tail_estimate: tail + roundoff,
    }
}
