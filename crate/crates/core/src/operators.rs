//! Finite sections of Toeplitz, Hankel and Toeplitz+Hankel operators.
//!
//! All constructors read entries straight from the coefficient table of the
//! symbol; `P_N` and `Q_N` only appear as index offsets.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::symbol::FourierSymbol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "plus" | "+1" | "1" => Ok(Sign::Plus),
            "-" | "minus" | "-1" => Ok(Sign::Minus),
            other => Err(Error::Parse(format!("unknown sign {other:?}"))),
        }
    }
}

/// The four Toeplitz+Hankel realizations of `M(a)`, plus the shifted family
/// `T(a) + sign * H(a t^k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Realization {
    /// `T(a) + H(a)`
    I,
    /// `T(a) - H(a)`
    II,
    /// `T(a) - H(t^{-1} a)`
    III,
    /// `T(a) + H(t a) Q_1`
    IV,
    Shifted {
        k: i64,
        sign: Sign,
    },
}

impl Realization {
    pub const BASIC: [Realization; 4] = [
        Realization::I,
        Realization::II,
        Realization::III,
        Realization::IV,
    ];

    pub fn is_basic(self) -> bool {
        !matches!(self, Realization::Shifted { .. })
    }

    pub(crate) fn require_basic(self) -> Result<()> {
        if self.is_basic() {
            Ok(())
        } else {
            Err(Error::UnsupportedRealization(self.to_string()))
        }
    }
}

impl fmt::Display for Realization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Realization::I => f.pad("I"),
            Realization::II => f.pad("II"),
            Realization::III => f.pad("III"),
            Realization::IV => f.pad("IV"),
            Realization::Shifted { k, sign } => f.pad(&format!("shifted(k={k},{sign})")),
        }
    }
}

impl FromStr for Realization {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "I" | "1" => Ok(Realization::I),
            "II" | "2" => Ok(Realization::II),
            "III" | "3" => Ok(Realization::III),
            "IV" | "4" => Ok(Realization::IV),
            other => Err(Error::Parse(format!("unknown realization {other:?}"))),
        }
    }
}

/// `P_N T(a) P_N`, entry `(j, k) = a_{j-k}`.
pub fn toeplitz_section(a: &FourierSymbol, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |j, k| a.coeff(j as i64 - k as i64))
}

/// `P_N H(a) P_N`, entry `(j, k) = a_{j+k+1}`.
pub fn hankel_section(a: &FourierSymbol, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |j, k| a.coeff((j + k + 1) as i64))
}

/// `P_N M(a) P_N` for the given realization.
pub fn m_section(a: &FourierSymbol, n: usize, r: Realization) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |j, k| {
        let (j, k) = (j as i64, k as i64);
        let t = a.coeff(j - k);
        match r {
            Realization::I => t + a.coeff(j + k + 1),
            Realization::II => t - a.coeff(j + k + 1),
            Realization::III => t - a.coeff(j + k + 2),
            Realization::IV if k >= 1 => t + a.coeff(j + k),
            Realization::IV => t,
            Realization::Shifted { k: shift, sign } => {
                t + a.coeff(j + k + 1 - shift) * sign.factor()
            }
        }
    })
}

/// `(a_{j-k} + a_{j+k})` for even `a`, i.e. `P_N (T(a) + H(t a)) P_N`.
pub fn oplus_section(a: &FourierSymbol, n: usize) -> Result<ComplexMatrix> {
    a.require_even()?;
    Ok(ComplexMatrix::from_fn(n, n, |j, k| {
        let (j, k) = (j as i64, k as i64);
        a.coeff(j - k) + a.coeff(j + k)
    }))
}

/// `(a_{i-j} + sign * a_{i+j+1-k})`, the section of `T(a) + sign * H(a t^k)`.
pub fn shifted_section(a: &FourierSymbol, n: usize, k: i64, sign: Sign) -> ComplexMatrix {
    m_section(a, n, Realization::Shifted { k, sign })
}

/// True when the columns that make the shifted section singular for `k >= 1`
/// coincide exactly: column 0 equals `sign` times column `k-1`, or is zero
/// when `k = 1` and `sign = -`.
pub fn shifted_columns_degenerate(m: &ComplexMatrix, k: i64, sign: Sign) -> bool {
    if k < 1 || k as usize > m.cols() {
        return false;
    }
    let col0 = m.column(0);
    if k == 1 {
        return sign == Sign::Minus && col0.iter().all(|z| *z == Complex64::new(0.0, 0.0));
    }
    let other = m.column(k as usize - 1);
    col0.iter()
        .zip(&other)
        .all(|(a, b)| *a == *b * sign.factor())
}

/// The trace-class operator `K = M(a_+^{-1}) T(a_+) - I` of the even-symbol
/// identity, in the closed Hankel forms available for the four realizations.
#[derive(Clone, Debug)]
pub struct EvenKernel {
    realization: Realization,
    /// `s` with `K = sign * H(s)` (plus the column-0 term for IV).
    hankel_symbol: FourierSymbol,
    sign: f64,
    /// `-[a_+]_0 (a_+^{-1})_j`: column 0 of `-T(a_+^{-1}) H(t a_+~)`, IV only.
    column0: Option<FourierSymbol>,
}

impl EvenKernel {
    pub fn new(a: &FourierSymbol, r: Realization) -> Result<Self> {
        r.require_basic()?;
        let fac = a.factor_even_plus()?;
        let inv = fac.a_plus_inverse()?;
        let c = inv.multiply(&fac.a_plus.flip())?;
        let (hankel_symbol, sign, column0) = match r {
            Realization::I => (c, 1.0, None),
            Realization::II => (c, -1.0, None),
            Realization::III => (c.shift(-1), -1.0, None),
            Realization::IV => {
                let col = inv.scale(-fac.a_plus.coeff(0));
                (c.shift(1), 1.0, Some(col))
            }
            Realization::Shifted { .. } => unreachable!(),
        };
        Ok(Self {
            realization: r,
            hankel_symbol,
            sign,
            column0,
        })
    }

    pub fn realization(&self) -> Realization {
        self.realization
    }

    /// Symbol `s` with `K = +-H(s)` away from column 0.
    pub fn hankel_symbol(&self) -> &FourierSymbol {
        &self.hankel_symbol
    }

    pub fn entry(&self, j: usize, k: usize) -> Complex64 {
        let mut z = self.hankel_symbol.coeff((j + k + 1) as i64) * self.sign;
        if k == 0 {
            if let Some(col) = &self.column0 {
                z += col.coeff(j as i64);
            }
        }
        z
    }

    /// Rows and columns `offset..offset+size`.
    pub fn block(&self, offset: usize, size: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(size, size, |j, k| self.entry(offset + j, offset + k))
    }

    /// Weighted tail of the generating symbol from degree `from` on.
    pub fn tail_bound(&self, from: i64) -> f64 {
        self.hankel_symbol.positive_tail_fl11(from)
    }
}

/// Block `[offset, offset+size)^2` of the kernel `K` for even `a`.
pub fn k_operator_block(
    a: &FourierSymbol,
    r: Realization,
    offset: usize,
    size: usize,
) -> Result<ComplexMatrix> {
    Ok(EvenKernel::new(a, r)?.block(offset, size))
}

/// Which `l x l` section of `T(a_0^{-1}) +- H(a_0^{-1} t^j)` to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CorrectionVariant {
    /// `T + H`
    PlusH,
    /// `T - H`
    MinusH,
    /// `T - H(. t^{-1})`
    MinusHt,
    /// `T + H(. t)`
    PlusHt,
}

/// `P_l (T(a_0^{-1}) +- H(a_0^{-1} t^j)) P_l` for an even `a_zero`.
pub fn correction_block(
    a_zero: &FourierSymbol,
    l: usize,
    variant: CorrectionVariant,
) -> Result<ComplexMatrix> {
    a_zero.require_even()?;
    let inv = a_zero.inverse()?;
    Ok(ComplexMatrix::from_fn(l, l, |j, k| {
        let (j, k) = (j as i64, k as i64);
        let t = inv.coeff(j - k);
        match variant {
            CorrectionVariant::PlusH => t + inv.coeff(j + k + 1),
            CorrectionVariant::MinusH => t - inv.coeff(j + k + 1),
            CorrectionVariant::MinusHt => t - inv.coeff(j + k + 2),
            CorrectionVariant::PlusHt => t + inv.coeff(j + k),
        }
    }))
}
