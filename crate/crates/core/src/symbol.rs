//! Functions on the unit circle stored as truncated Laurent coefficient tables.
//!
//! A [`FourierSymbol`] holds the coefficients `a_n` of `a(t) = sum a_n t^n`,
//! `t = e^{i theta}`, in canonical trimmed form: every stored coefficient has
//! magnitude at least [`TAIL_TOL`]. Products are exact convolutions; the
//! transcendental maps (`exp`, `log`) sample the symbol on a power-of-two grid,
//! act pointwise, and transform back, doubling the grid until the
//! high-frequency half of the spectrum is negligible.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::ops::{Add, Neg, Sub};
use std::sync::OnceLock;

use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients below this magnitude are dropped from the canonical form.
pub const TAIL_TOL: f64 = 1e-16;

/// Default cap on `|n|` for any stored coefficient.
pub const DEFAULT_MAX_DEGREE: i64 = 4096;

/// Environment variable overriding [`DEFAULT_MAX_DEGREE`].
pub const MAX_DEGREE_ENV: &str = "TH_SZEGO_MAX_DEGREE";

/// Grid refinement stops once the upper half of the spectrum is below this
/// (relative to `max(1, max |c_n|)`).
const ALIAS_TOL: f64 = 1e-14;

/// `log` refuses symbols whose sampled modulus drops below this.
const NEAR_ZERO_TOL: f64 = 1e-10;

/// Tolerance used by the evenness guards, relative to `max(1, ||a||)`.
pub const EVEN_TOL: f64 = 1e-13;

/// The active degree cap: [`MAX_DEGREE_ENV`] if set and valid, else 4096.
pub fn max_degree() -> i64 {
    static CAP: OnceLock<i64> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(MAX_DEGREE_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<i64>().ok())
            .filter(|&v| v > 0)
            .unwrap_or(DEFAULT_MAX_DEGREE)
    })
}

/// Truncated Laurent series on the unit circle.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FourierSymbol {
    coeffs: BTreeMap<i64, Complex64>,
}

impl FourierSymbol {
    /// Builds a symbol from `(index, coefficient)` pairs. Repeated indices are
    /// summed; the result is trimmed at [`TAIL_TOL`].
    pub fn from_coeffs<I>(entries: I) -> Self
    where
        I: IntoIterator<Item = (i64, Complex64)>,
    {
        let mut coeffs = BTreeMap::new();
        for (n, c) in entries {
            *coeffs.entry(n).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        Self::trimmed(coeffs, TAIL_TOL)
    }

    /// Real coefficients, e.g. `from_real(&[(-1, 0.3), (1, 0.3)])`.
    pub fn from_real(entries: &[(i64, f64)]) -> Self {
        Self::from_coeffs(entries.iter().map(|&(n, c)| (n, Complex64::new(c, 0.0))))
    }

    fn trimmed(mut coeffs: BTreeMap<i64, Complex64>, tol: f64) -> Self {
        coeffs.retain(|_, c| c.norm() >= tol && c.is_finite());
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    pub fn constant(c: Complex64) -> Self {
        Self::monomial(0, c)
    }

    /// `c t^n`.
    pub fn monomial(n: i64, c: Complex64) -> Self {
        Self::from_coeffs([(n, c)])
    }

    /// The coefficient `a_n` (zero outside the stored support).
    pub fn coeff(&self, n: i64) -> Complex64 {
        self.coeffs.get(&n).copied().unwrap_or_default()
    }

    /// Stored `(n, a_n)` pairs in increasing `n`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs.iter().map(|(&n, &c)| (n, c))
    }

    /// Number of stored coefficients.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.is_empty()
    }

    /// Lower window bound, `min(0, smallest stored index)`.
    pub fn lo(&self) -> i64 {
        self.coeffs.keys().next().copied().unwrap_or(0).min(0)
    }

    /// Upper window bound, `max(0, largest stored index)`.
    pub fn hi(&self) -> i64 {
        self.coeffs.keys().next_back().copied().unwrap_or(0).max(0)
    }

    /// `max |n|` over stored indices.
    pub fn degree(&self) -> i64 {
        self.hi().max(-self.lo())
    }

    /// Pointwise value `a(e^{i theta})`.
    pub fn eval(&self, theta: f64) -> Complex64 {
        self.iter()
            .map(|(n, c)| c * Complex64::from_polar(1.0, n as f64 * theta))
            .sum()
    }

    /// `a~(t) = a(1/t)`, i.e. `(a~)_n = a_{-n}`.
    pub fn flip(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&n, &c)| (-n, c)).collect(),
        }
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&n, &c)| (n + k, c)).collect(),
        }
    }

    /// `a(-t)`, i.e. `a_n -> (-1)^n a_n`.
    pub fn reflect(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&n, &c)| (n, if n.rem_euclid(2) == 1 { -c } else { c }))
                .collect(),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_coeffs(self.iter().map(|(n, c)| (n, c * s)))
    }

    /// Laurent product `(ab)_n = sum_k a_k b_{n-k}`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let cap = max_degree();
        let lo = self.lo() + other.lo();
        let hi = self.hi() + other.hi();
        let degree = hi.max(-lo);
        if degree > cap {
            return Err(Error::DegreeCap { degree, cap });
        }
        let mut dense = vec![Complex64::new(0.0, 0.0); (hi - lo + 1) as usize];
        for (i, a) in self.iter() {
            for (j, b) in other.iter() {
                dense[(i + j - lo) as usize] += a * b;
            }
        }
        Ok(Self::from_coeffs(
            dense
                .into_iter()
                .enumerate()
                .map(|(k, c)| (k as i64 + lo, c)),
        ))
    }

    /// `sum (1 + |n|) |a_n|`.
    pub fn norm_fl11(&self) -> f64 {
        self.iter()
            .map(|(n, c)| (1.0 + n.abs() as f64) * c.norm())
            .sum()
    }

    /// `sum_{n >= from} (1 + |n|) |a_n|`: the weighted tail on the analytic side.
    pub fn positive_tail_fl11(&self, from: i64) -> f64 {
        self.coeffs
            .range(from..)
            .map(|(&n, c)| (1.0 + n.abs() as f64) * c.norm())
            .sum()
    }

    /// `||a - a~||` in the weighted norm.
    pub fn even_defect(&self) -> f64 {
        (self - &self.flip()).norm_fl11()
    }

    pub fn is_even(&self) -> bool {
        self.even_defect() <= EVEN_TOL * self.norm_fl11().max(1.0)
    }

    pub(crate) fn require_even(&self) -> Result<()> {
        if self.is_even() {
            Ok(())
        } else {
            Err(Error::NotEven(self.even_defect()))
        }
    }

    /// Riesz split `a = a_plus + a_minus` with `a_plus` on `n >= 0` and
    /// `a_minus` on `n < 0`.
    pub fn decompose_plus_minus(&self) -> (Self, Self) {
        let plus = self.coeffs.range(0..).map(|(&n, &c)| (n, c)).collect();
        let minus = self.coeffs.range(..0).map(|(&n, &c)| (n, c)).collect();
        (Self { coeffs: plus }, Self { coeffs: minus })
    }

    /// Split `b = b_zero + b_minus` with `b_zero` even and `b_minus` on `n < 0`:
    /// `[b_zero]_{+-k} = b_k` for `k >= 0`, `[b_minus]_{-k} = b_{-k} - b_k`.
    pub fn decompose_even_minus(&self) -> (Self, Self) {
        let mut zero = Vec::new();
        let mut minus = Vec::new();
        for (n, c) in self.iter() {
            if n >= 0 {
                zero.push((n, c));
                if n > 0 {
                    zero.push((-n, c));
                    minus.push((-n, -c));
                }
            } else {
                minus.push((n, c));
            }
        }
        (Self::from_coeffs(zero), Self::from_coeffs(minus))
    }

    /// Winding number about the origin on the default grid.
    pub fn winding_number(&self) -> Result<i64> {
        self.winding_number_with_grid(0)
    }

    /// Winding number using at least `min_grid` sample points.
    pub fn winding_number_with_grid(&self, min_grid: usize) -> Result<i64> {
        let len = self.initial_grid(min_grid);
        let samples = self.samples(len, &mut FftPlanner::new());
        let (_, winding, min_abs) = unwrap_phase(&samples);
        if min_abs < NEAR_ZERO_TOL {
            return Err(Error::NearZero(min_abs));
        }
        Ok(winding)
    }

    /// Continuous logarithm `b` with `exp(b) = a`; `b_0` uses the principal
    /// argument of `a(1)`.
    pub fn log(&self) -> Result<Self> {
        self.log_with_grid(0)
    }

    pub fn log_with_grid(&self, min_grid: usize) -> Result<Self> {
        self.spectral_map(min_grid, |buf| {
            let (phase, winding, min_abs) = unwrap_phase(buf);
            if min_abs < NEAR_ZERO_TOL {
                return Err(Error::NearZero(min_abs));
            }
            if winding != 0 {
                return Err(Error::NonzeroWinding(winding));
            }
            for (z, ph) in buf.iter_mut().zip(phase) {
                *z = Complex64::new(z.norm().ln(), ph);
            }
            Ok(())
        })
    }

    /// Pointwise exponential.
    pub fn exp(&self) -> Result<Self> {
        self.exp_with_grid(0)
    }

    pub fn exp_with_grid(&self, min_grid: usize) -> Result<Self> {
        self.spectral_map(min_grid, |buf| {
            for z in buf.iter_mut() {
                *z = z.exp();
            }
            Ok(())
        })
    }

    /// `a^{-1}` computed as `exp(-log a)`.
    pub fn inverse(&self) -> Result<Self> {
        (-&self.log()?).exp()
    }

    /// Even symbol `a = a_plus a_plus~` with `a_plus = exp(s_0/2 + sum_{k>=1} s_k t^k)`,
    /// `s = log a`.
    pub fn factor_even_plus(&self) -> Result<FactorizationEvenPlus> {
        self.require_even()?;
        let s = self.log()?;
        let log_plus = Self::from_coeffs(
            s.iter()
                .filter(|&(n, _)| n >= 0)
                .map(|(n, c)| (n, if n == 0 { c * 0.5 } else { c })),
        );
        let a_plus = log_plus.exp()?;
        Ok(FactorizationEvenPlus {
            a_plus,
            log_plus,
            symbol: self.clone(),
        })
    }

    /// Factorization `a = a_minus a_zero` with `a_minus` anti-analytic,
    /// `[log a_minus]_0 = 0` (so `[a_minus]_0 = 1`), and `a_zero` even.
    pub fn factor_minus_even(&self) -> Result<FactorizationMinusEven> {
        let (log_zero, log_minus) = self.log()?.decompose_even_minus();
        Ok(FactorizationMinusEven {
            a_minus: log_minus.exp()?,
            a_zero: log_zero.exp()?,
            log_minus,
            log_zero,
        })
    }

    fn initial_grid(&self, min_grid: usize) -> usize {
        let width = (self.hi() - self.lo()) as usize;
        (8 * (width + 1))
            .next_power_of_two()
            .max(min_grid.next_power_of_two())
            .max(16)
    }

    /// Values on the grid `theta_j = 2 pi j / len`.
    fn samples(&self, len: usize, planner: &mut FftPlanner<f64>) -> Vec<Complex64> {
        let mut buf = vec![Complex64::new(0.0, 0.0); len];
        for (n, c) in self.iter() {
            buf[n.rem_euclid(len as i64) as usize] += c;
        }
        planner
            .plan_fft(len, FftDirection::Inverse)
            .process(&mut buf);
        buf
    }

    fn spectral_map<F>(&self, min_grid: usize, mut pointwise: F) -> Result<Self>
    where
        F: FnMut(&mut [Complex64]) -> Result<()>,
    {
        let cap = max_degree();
        let mut planner = FftPlanner::new();
        let mut len = self.initial_grid(min_grid);
        loop {
            let mut buf = self.samples(len, &mut planner);
            pointwise(&mut buf)?;
            let peak = buf.iter().map(|z| z.norm()).fold(0.0, f64::max);
            planner
                .plan_fft(len, FftDirection::Forward)
                .process(&mut buf);
            let inv_len = 1.0 / len as f64;
            let half = len as i64 / 2;
            let coeffs: Vec<(i64, Complex64)> = buf
                .iter()
                .enumerate()
                .map(|(k, &c)| {
                    let k = k as i64;
                    (if k < half { k } else { k - len as i64 }, c * inv_len)
                })
                .collect();
            let scale = coeffs.iter().map(|(_, c)| c.norm()).fold(1.0, f64::max);
            let alias = coeffs
                .iter()
                .filter(|(n, _)| n.abs() >= half / 2)
                .map(|(_, c)| c.norm())
                .fold(0.0, f64::max);
            if alias < ALIAS_TOL * scale {
                // FFT round-off floor; coefficients below it carry no information.
                let floor = f64::EPSILON * (len as f64).log2() * peak;
                let sym = Self::trimmed(coeffs.into_iter().collect(), floor.max(TAIL_TOL));
                let degree = sym.degree();
                if degree > cap {
                    return Err(Error::DegreeCap { degree, cap });
                }
                return Ok(sym);
            }
            if half / 2 >= cap {
                return Err(Error::DegreeCap {
                    degree: half / 2,
                    cap,
                });
            }
            len *= 2;
        }
    }

    /// Serializes as a `"coeffs"` symbol spec.
    pub fn to_spec_json(&self) -> String {
        let spec = SymbolSpec {
            form: SymbolForm::Coeffs,
            entries: self
                .iter()
                .map(|(n, c)| (n.to_string(), [c.re, c.im]))
                .collect(),
        };
        serde_json::to_string(&spec).expect("symbol spec serializes")
    }
}

/// Unwrapped phase along the grid, winding number, and `min |a|`.
fn unwrap_phase(samples: &[Complex64]) -> (Vec<f64>, i64, f64) {
    let wrap = |d: f64| {
        let mut d = d % (2.0 * PI);
        if d > PI {
            d -= 2.0 * PI;
        } else if d <= -PI {
            d += 2.0 * PI;
        }
        d
    };
    let mut phase = Vec::with_capacity(samples.len());
    let mut acc = samples[0].arg();
    phase.push(acc);
    for w in samples.windows(2) {
        acc += wrap(w[1].arg() - w[0].arg());
        phase.push(acc);
    }
    let closing = wrap(samples[0].arg() - samples[samples.len() - 1].arg());
    let total = acc + closing - phase[0];
    let winding = (total / (2.0 * PI)).round() as i64;
    let min_abs = samples
        .iter()
        .map(|z| z.norm())
        .fold(f64::INFINITY, f64::min);
    (phase, winding, min_abs)
}

impl Add for &FourierSymbol {
    type Output = FourierSymbol;
    fn add(self, rhs: &FourierSymbol) -> FourierSymbol {
        FourierSymbol::from_coeffs(self.iter().chain(rhs.iter()))
    }
}

impl Sub for &FourierSymbol {
    type Output = FourierSymbol;
    fn sub(self, rhs: &FourierSymbol) -> FourierSymbol {
        FourierSymbol::from_coeffs(self.iter().chain(rhs.iter().map(|(n, c)| (n, -c))))
    }
}

impl Neg for &FourierSymbol {
    type Output = FourierSymbol;
    fn neg(self) -> FourierSymbol {
        FourierSymbol {
            coeffs: self.coeffs.iter().map(|(&n, &c)| (n, -c)).collect(),
        }
    }
}

/// `a = a_plus a_plus~` for an even symbol.
#[derive(Clone, Debug)]
pub struct FactorizationEvenPlus {
    pub a_plus: FourierSymbol,
    /// `log a_plus`, supported on `n >= 0`.
    pub log_plus: FourierSymbol,
    pub symbol: FourierSymbol,
}

impl FactorizationEvenPlus {
    /// `a_plus^{-1} = exp(-log a_plus)`.
    pub fn a_plus_inverse(&self) -> Result<FourierSymbol> {
        (-&self.log_plus).exp()
    }
}

/// `a = a_minus a_zero` with `[a_minus]_0 = 1`.
#[derive(Clone, Debug)]
pub struct FactorizationMinusEven {
    pub a_minus: FourierSymbol,
    pub a_zero: FourierSymbol,
    pub log_minus: FourierSymbol,
    pub log_zero: FourierSymbol,
}

impl FactorizationMinusEven {
    pub fn a_zero_inverse(&self) -> Result<FourierSymbol> {
        (-&self.log_zero).exp()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SymbolForm {
    #[serde(rename = "coeffs")]
    Coeffs,
    /// Entries are the coefficients of `log a`.
    #[serde(rename = "log-coeffs")]
    LogCoeffs,
}

/// JSON text form of a symbol: `{"form": ..., "entries": {"<n>": [re, im]}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolSpec {
    pub form: SymbolForm,
    pub entries: BTreeMap<String, [f64; 2]>,
}

impl SymbolSpec {
    pub fn to_symbol(&self) -> Result<FourierSymbol> {
        let cap = max_degree();
        let mut entries = Vec::with_capacity(self.entries.len());
        for (key, &[re, im]) in &self.entries {
            let n: i64 = key
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("non-integer index {key:?}")))?;
            if n.abs() > cap {
                return Err(Error::DegreeCap {
                    degree: n.abs(),
                    cap,
                });
            }
            if !re.is_finite() || !im.is_finite() {
                return Err(Error::Parse(format!("non-finite coefficient at index {n}")));
            }
            entries.push((n, Complex64::new(re, im)));
        }
        let sym = FourierSymbol::from_coeffs(entries);
        match self.form {
            SymbolForm::Coeffs => Ok(sym),
            SymbolForm::LogCoeffs => sym.exp(),
        }
    }

    /// The entries as a symbol, without applying `exp` for `"log-coeffs"`.
    pub fn raw_symbol(&self) -> Result<FourierSymbol> {
        SymbolSpec {
            form: SymbolForm::Coeffs,
            entries: self.entries.clone(),
        }
        .to_symbol()
    }
}

/// Parses the JSON symbol format without converting it.
pub fn parse_symbol_spec_raw(text: &str) -> Result<SymbolSpec> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Parses the JSON symbol format into a canonical symbol.
pub fn parse_symbol_spec(text: &str) -> Result<FourierSymbol> {
    parse_symbol_spec_raw(text)?.to_symbol()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn monomials_multiply() {
        let t = FourierSymbol::monomial(1, c(1.0));
        let tinv = FourierSymbol::monomial(-1, c(1.0));
        assert_eq!(t.multiply(&tinv).unwrap(), FourierSymbol::one());

        let a = FourierSymbol::from_real(&[(0, 1.0), (1, 1.0)]);
        let prod = a.multiply(&a.flip()).unwrap();
        assert_eq!(
            prod,
            FourierSymbol::from_real(&[(-1, 1.0), (0, 2.0), (1, 1.0)])
        );
    }

    #[test]
    fn trimming_drops_tiny_coefficients() {
        let a = FourierSymbol::from_real(&[(0, 1.0), (3, 1e-17)]);
        assert_eq!(a.len(), 1);
        assert_eq!(a.hi(), 0);
    }

    #[test]
    fn window_always_contains_zero() {
        let a = FourierSymbol::from_real(&[(3, 1.0)]);
        assert_eq!((a.lo(), a.hi()), (0, 3));
        assert_eq!(FourierSymbol::zero().degree(), 0);
    }

    #[test]
    fn degree_cap_on_multiply() {
        let big = FourierSymbol::monomial(DEFAULT_MAX_DEGREE, c(1.0));
        let err = big
            .multiply(&FourierSymbol::monomial(1, c(1.0)))
            .unwrap_err();
        assert!(matches!(err, Error::DegreeCap { .. }));
    }

    #[test]
    fn flip_and_norms() {
        let t = FourierSymbol::monomial(1, c(1.0));
        assert_eq!(t.flip(), FourierSymbol::monomial(-1, c(1.0)));
        assert_eq!(FourierSymbol::one().norm_fl11(), 1.0);
        assert_eq!(t.norm_fl11(), 2.0);
        assert_eq!((&t + &t.flip()).norm_fl11(), 4.0);
    }

    #[test]
    fn plus_minus_split() {
        let a = FourierSymbol::from_real(&[(-1, 1.0), (0, 2.0), (1, 1.0)]);
        let (p, m) = a.decompose_plus_minus();
        assert_eq!(p, FourierSymbol::from_real(&[(0, 2.0), (1, 1.0)]));
        assert_eq!(m, FourierSymbol::from_real(&[(-1, 1.0)]));
        let analytic = FourierSymbol::from_real(&[(0, 1.0), (2, 0.5)]);
        let (p, m) = analytic.decompose_plus_minus();
        assert_eq!(p, analytic);
        assert!(m.is_zero());
    }

    #[test]
    fn even_minus_split() {
        let t = FourierSymbol::monomial(1, c(1.0));
        let (z, m) = t.decompose_even_minus();
        assert_eq!(z, FourierSymbol::from_real(&[(-1, 1.0), (1, 1.0)]));
        assert_eq!(m, FourierSymbol::from_real(&[(-1, -1.0)]));

        let tinv = t.flip();
        let (z, m) = tinv.decompose_even_minus();
        assert!(z.is_zero());
        assert_eq!(m, tinv);

        let even = FourierSymbol::from_real(&[(-2, 0.4), (0, 1.0), (2, 0.4)]);
        let (z, m) = even.decompose_even_minus();
        assert_eq!(z, even);
        assert!(m.is_zero());
    }

    #[test]
    fn winding_numbers() {
        assert_eq!(
            FourierSymbol::monomial(1, c(1.0)).winding_number().unwrap(),
            1
        );
        assert_eq!(
            FourierSymbol::from_real(&[(0, 2.0), (1, 1.0)])
                .winding_number()
                .unwrap(),
            0
        );
        assert_eq!(
            FourierSymbol::monomial(-2, c(1.0))
                .winding_number()
                .unwrap(),
            -2
        );
        let vanishing = FourierSymbol::from_real(&[(0, 1.0), (1, 1.0)]);
        assert!(matches!(
            vanishing.winding_number(),
            Err(Error::NearZero(_))
        ));
    }

    #[test]
    fn log_guards() {
        let t = FourierSymbol::monomial(1, c(1.0));
        assert_eq!(t.log().unwrap_err(), Error::NonzeroWinding(1));
        assert!(FourierSymbol::one().log().unwrap().is_zero());
        assert_eq!(FourierSymbol::zero().exp().unwrap(), FourierSymbol::one());
    }

    #[test]
    fn not_even_guard() {
        let a = FourierSymbol::from_real(&[(0, 2.0), (1, 0.5)]);
        assert!(matches!(a.factor_even_plus(), Err(Error::NotEven(_))));
    }

    #[test]
    fn factor_even_plus_of_exponential() {
        let b = FourierSymbol::from_real(&[(-1, 0.3), (1, 0.3)]);
        let f = b.exp().unwrap().factor_even_plus().unwrap();
        let expected = FourierSymbol::from_real(&[(1, 0.3)]).exp().unwrap();
        assert!((&f.a_plus - &expected).norm_fl11() < 1e-13);
        assert_eq!(
            FourierSymbol::one().factor_even_plus().unwrap().a_plus,
            FourierSymbol::one()
        );
    }

    #[test]
    fn factor_minus_even_of_even_symbol() {
        let a = FourierSymbol::from_real(&[(-1, 0.3), (1, 0.3)])
            .exp()
            .unwrap();
        let f = a.factor_minus_even().unwrap();
        assert!((&f.a_minus - &FourierSymbol::one()).norm_fl11() < 1e-13);
        assert!((&f.a_zero - &a).norm_fl11() < 1e-13);
    }

    #[test]
    fn spec_parsing() {
        let one = parse_symbol_spec(r#"{"form":"coeffs","entries":{"0":[1,0]}}"#).unwrap();
        assert_eq!(one, FourierSymbol::one());

        let a = parse_symbol_spec(r#"{"form":"log-coeffs","entries":{"1":[0.3,0],"-1":[0.3,0]}}"#)
            .unwrap();
        let b = FourierSymbol::from_real(&[(-1, 0.3), (1, 0.3)])
            .exp()
            .unwrap();
        assert_eq!(a, b);

        let tiny =
            parse_symbol_spec(r#"{"form":"coeffs","entries":{"0":[1,0],"5":[1e-18,0]}}"#).unwrap();
        assert_eq!(tiny, FourierSymbol::one());

        assert!(matches!(parse_symbol_spec("{"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_symbol_spec(r#"{"form":"poly","entries":{}}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_symbol_spec(r#"{"form":"coeffs","entries":{"x":[1,0]}}"#),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn spec_text_round_trip_preserves_digits() {
        let a = FourierSymbol::from_coeffs([
            (-3, Complex64::new(0.1, -1.0 / 3.0)),
            (0, Complex64::new(std::f64::consts::PI, 0.0)),
            (2, Complex64::new(1e-7, 2.0f64.sqrt())),
        ]);
        let back = parse_symbol_spec(&a.to_spec_json()).unwrap();
        assert_eq!(back, a);
    }
}
