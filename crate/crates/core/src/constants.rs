//! Closed-form constants built from the Fourier coefficients of `b = log a`.
//!
//! With `h_sq = sum_{n>=1} n b_n^2` (the trace of `H(b)^2`) and
//! `h_cross = sum_{n>=1} n b_n b_{-n}` (the trace of `H(b) H(b~)`):
//!
//! * `G = exp(b_0)`, `E = exp(h_cross)`
//! * `F = exp(tr(M(b) - T(b)) - h_sq / 2)`
//! * `F^ = exp(tr(M(b) - T(b)) + h_sq / 2)` (even symbols)
//! * `E^ = exp(tr(M(b) - T(b)) - h_sq / 2 + h_cross)`, the constant in
//!   `det P_N M(a) P_N ~ G^N E^`.

use std::f64::consts::LN_2;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::Realization;
use crate::symbol::FourierSymbol;

/// Coefficient sums shared by all constants.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Traces {
    /// `sum_{n>=0} b_{2n+1}`
    pub h_odd: Complex64,
    /// `sum_{n>=1} b_{2n}`
    pub h_even: Complex64,
    /// `sum_{n>=1} n b_n^2`
    pub h_sq: Complex64,
    /// `sum_{n>=1} n b_n b_{-n}`
    pub h_cross: Complex64,
}

impl Traces {
    pub fn of_log(b: &FourierSymbol) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        let mut t = Traces {
            h_odd: zero,
            h_even: zero,
            h_sq: zero,
            h_cross: zero,
        };
        for (n, bn) in b.iter().filter(|&(n, _)| n >= 1) {
            if n % 2 == 1 {
                t.h_odd += bn;
            } else {
                t.h_even += bn;
            }
            t.h_sq += bn * bn * n as f64;
            t.h_cross += bn * b.coeff(-n) * n as f64;
        }
        t
    }
}

/// `trace(M(b) - T(b))` for the four realizations.
pub fn trace_m_minus_t(b: &FourierSymbol, r: Realization) -> Result<Complex64> {
    trace_from(&Traces::of_log(b), r)
}

fn trace_from(t: &Traces, r: Realization) -> Result<Complex64> {
    match r {
        Realization::I => Ok(t.h_odd),
        Realization::II => Ok(-t.h_odd),
        Realization::III => Ok(-t.h_even),
        Realization::IV => Ok(t.h_even),
        Realization::Shifted { .. } => Err(Error::UnsupportedRealization(r.to_string())),
    }
}

/// Natural logarithms of the constants (no branch wrapping).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantLogs {
    pub g: Complex64,
    pub e: Complex64,
    pub f: Complex64,
    pub f_hat: Option<Complex64>,
    pub e_hat: Complex64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SzegoConstants {
    pub g: Complex64,
    pub e: Complex64,
    pub f: Complex64,
    /// Only defined for even symbols.
    pub f_hat: Option<Complex64>,
    pub e_hat: Complex64,
    pub traces: Traces,
    pub logs: ConstantLogs,
}

/// All constants of `a` for realization `r`.
pub fn szego_constants(a: &FourierSymbol, r: Realization) -> Result<SzegoConstants> {
    szego_constants_from_log(&a.log()?, r, a.is_even())
}

/// Constants from an already computed `b = log a`.
pub fn szego_constants_from_log(
    b: &FourierSymbol,
    r: Realization,
    even: bool,
) -> Result<SzegoConstants> {
    let traces = Traces::of_log(b);
    let tr = trace_from(&traces, r)?;
    let logs = ConstantLogs {
        g: b.coeff(0),
        e: traces.h_cross,
        f: tr - traces.h_sq * 0.5,
        f_hat: even.then(|| tr + traces.h_sq * 0.5),
        e_hat: tr - traces.h_sq * 0.5 + traces.h_cross,
    };
    Ok(SzegoConstants {
        g: logs.g.exp(),
        e: logs.e.exp(),
        f: logs.f.exp(),
        f_hat: logs.f_hat.map(|z| z.exp()),
        e_hat: logs.e_hat.exp(),
        traces,
        logs,
    })
}

/// Lower limit of the odd-index sum in `E_{1,+-}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IndexConvention {
    /// `sum_{n>=1} b_{2n+1}`: omits `b_1`.
    #[serde(rename = "paper")]
    Paper,
    /// `sum_{n>=0} b_{2n+1}`: matches `E^` of realizations I/II.
    #[serde(rename = "from_n0")]
    FromN0,
}

impl IndexConvention {
    pub const ALL: [IndexConvention; 2] = [IndexConvention::Paper, IndexConvention::FromN0];
}

impl std::fmt::Display for IndexConvention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            IndexConvention::Paper => "paper",
            IndexConvention::FromN0 => "from_n0",
        })
    }
}

impl std::str::FromStr for IndexConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "paper" => Ok(IndexConvention::Paper),
            "from_n0" | "n0" => Ok(IndexConvention::FromN0),
            other => Err(Error::Parse(format!("unknown index convention {other:?}"))),
        }
    }
}

/// Constants of the shifted-symbol asymptotics `T(a) +- H(a t^k)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseConstants {
    pub e1_plus: Complex64,
    pub e1_minus: Complex64,
    pub e2: Complex64,
    /// Includes the factor `1/2`.
    pub e3: Complex64,
    pub index_convention: IndexConvention,
    pub log_e1_plus: Complex64,
    pub log_e1_minus: Complex64,
    pub log_e2: Complex64,
    pub log_e3: Complex64,
}

pub fn case_constants(a: &FourierSymbol, convention: IndexConvention) -> Result<CaseConstants> {
    let b = a.log()?;
    let t = Traces::of_log(&b);
    let odd = match convention {
        IndexConvention::FromN0 => t.h_odd,
        IndexConvention::Paper => t.h_odd - b.coeff(1),
    };
    let common = t.h_cross - t.h_sq * 0.5;
    let log_e1_plus = odd + common;
    let log_e1_minus = -odd + common;
    let log_e2 = -t.h_even + common;
    let log_e3 = t.h_even + common - LN_2;
    Ok(CaseConstants {
        e1_plus: log_e1_plus.exp(),
        e1_minus: log_e1_minus.exp(),
        e2: log_e2.exp(),
        e3: log_e3.exp(),
        index_convention: convention,
        log_e1_plus,
        log_e1_minus,
        log_e2,
        log_e3,
    })
}

/// Least-squares cubic fit of `lambda -> log E^(exp(i lambda f))`; returns the
/// fitted coefficients `[c0, c1, c2, c3]`. The map is exactly quadratic, so `c3`
/// measures numerical noise only.
pub fn log_e_hat_fit(f: &FourierSymbol, r: Realization, lambdas: &[f64]) -> Result<[Complex64; 4]> {
    if lambdas.len() < 4 {
        return Err(Error::InvalidArgument(
            "need at least four sample points".into(),
        ));
    }
    let mut values = Vec::with_capacity(lambdas.len());
    for &lam in lambdas {
        let a = f.scale(Complex64::new(0.0, lam)).exp()?;
        values.push(szego_constants(&a, r)?.logs.e_hat);
    }
    let vander = DMatrix::from_fn(lambdas.len(), 4, |i, j| lambdas[i].powi(j as i32));
    let svd = vander.svd(true, true);
    let solve = |y: DVector<f64>| -> Result<DVector<f64>> {
        svd.solve(&y, 1e-14)
            .map_err(|e| Error::InvalidArgument(format!("cubic fit failed: {e}")))
    };
    let re = solve(DVector::from_iterator(
        values.len(),
        values.iter().map(|z| z.re),
    ))?;
    let im = solve(DVector::from_iterator(
        values.len(),
        values.iter().map(|z| z.im),
    ))?;
    Ok(std::array::from_fn(|j| Complex64::new(re[j], im[j])))
}
