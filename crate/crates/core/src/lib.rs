//! Determinants of Toeplitz+Hankel finite sections.
//!
//! * [`symbol`]: truncated Laurent series, `exp`/`log`, Wiener-Hopf factors.
//! * [`operators`]: finite sections of `T(a)`, `H(a)`, the realizations
//!   `M(a)` I-IV, shifted `T(a) +- H(a t^k)`, and the Fredholm kernels.
//! * [`determinants`]: LU determinants in log/phase form and truncated
//!   Fredholm determinants.
//! * [`constants`]: `G`, `E`, `F`, `F^`, `E^` and the shifted-case constants.
//! * [`identities`]: checks of the exact identities, the Szego-type limits
//!   and the shifted-symbol formulas.
//! * [`multiprec`]: the Szego check at extended precision.
//! * [`generalm`]: the operator `M` generated by a perturbation vector `x`.
//! * [`ensemble`]: Monte Carlo over CUE and SO(2n).
//! * [`cli`]: the command-line front end.

pub mod cli;
pub mod constants;
pub mod determinants;
pub mod ensemble;
pub mod error;
pub mod generalm;
pub mod identities;
pub mod matrix;
pub mod multiprec;
pub mod operators;
pub mod report;
pub mod symbol;

pub use constants::{
    case_constants, szego_constants, trace_m_minus_t, CaseConstants, IndexConvention,
    SzegoConstants,
};
pub use determinants::{det_lu, fredholm_det, FredholmResult, LogDet};
pub use error::{Error, Result};
pub use matrix::ComplexMatrix;
pub use num_complex::Complex64;
pub use operators::{
    correction_block, hankel_section, k_operator_block, m_section, oplus_section, shifted_section,
    toeplitz_section, CorrectionVariant, Realization, Sign,
};
pub use report::{ReportParams, VerificationReport};
pub use symbol::{parse_symbol_spec, FourierSymbol};
