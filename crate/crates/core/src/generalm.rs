//! The general operator `M` determined by a perturbation vector `x`:
//!
//! * `M(t^{-n}) = T(t^{-n})`
//! * `M((t+t^{-1})^n) = (T(t+t^{-1}) + e_0 x^T)^n`
//!
//! Every trigonometric polynomial is a unique combination of `t^{-n}` and
//! `(t+t^{-1})^n`, which fixes `M` on all of them. Sections are computed on a
//! padded window and cropped, which is exact because `T(t+t^{-1})` is
//! tridiagonal and `e_0 x^T` touches only the first `support_bound` columns.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::operators::toeplitz_section;
use crate::symbol::FourierSymbol;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Finitely supported `x = (x_0, x_1, ...)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PerturbationVector {
    entries: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PerturbationJson {
    x: Vec<[f64; 2]>,
}

impl PerturbationVector {
    pub fn new(mut entries: Vec<Complex64>) -> Self {
        while entries.last() == Some(&zero()) {
            entries.pop();
        }
        Self { entries }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit vector `e_i`, scaled by `s`.
    pub fn unit(i: usize, s: f64) -> Self {
        let mut e = vec![zero(); i + 1];
        e[i] = Complex64::new(s, 0.0);
        Self::new(e)
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> Complex64 {
        self.entries.get(i).copied().unwrap_or_default()
    }

    /// `x_i = 0` for all `i >= support_bound()`.
    pub fn support_bound(&self) -> usize {
        self.entries.len()
    }

    /// Parses `{"x": [[re, im], ...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let p: PerturbationJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(Self::new(
            p.x.into_iter()
                .map(|[re, im]| Complex64::new(re, im))
                .collect(),
        ))
    }

    pub fn to_json(&self) -> String {
        let p = PerturbationJson {
            x: self.entries.iter().map(|z| [z.re, z.im]).collect(),
        };
        serde_json::to_string(&p).expect("perturbation serializes")
    }
}

/// `p = sum_{n=0}^m c_n (t+t^{-1})^n + sum_{n=1}^m d_n t^{-n}`;
/// `d[0]` is the coefficient of `t^{-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyInCanonicalBasis {
    pub c: Vec<Complex64>,
    pub d: Vec<Complex64>,
}

impl PolyInCanonicalBasis {
    pub fn to_symbol(&self) -> FourierSymbol {
        let mut acc = vec![zero(); 2 * self.c.len().max(self.d.len() + 1) + 1];
        let mid = (acc.len() / 2) as i64;
        for (n, &cn) in self.c.iter().enumerate() {
            for (k, b) in binomial_row(n).into_iter().enumerate() {
                acc[(mid + 2 * k as i64 - n as i64) as usize] += cn * b;
            }
        }
        for (i, &dn) in self.d.iter().enumerate() {
            acc[(mid - 1 - i as i64) as usize] += dn;
        }
        FourierSymbol::from_coeffs(
            acc.into_iter()
                .enumerate()
                .map(|(i, z)| (i as i64 - mid, z)),
        )
    }
}

fn binomial_row(n: usize) -> Vec<f64> {
    let mut row = vec![1.0; n + 1];
    for k in 1..n {
        row[k] = row[k - 1] * (n + 1 - k) as f64 / k as f64;
        row[k] = row[k].round();
    }
    row
}

/// Triangular elimination from the top degree.
pub fn basis_convert(p: &FourierSymbol) -> PolyInCanonicalBasis {
    let m = p.hi().max(0) as usize;
    let neg = (-p.lo()).max(0) as usize;
    let width = m.max(neg);
    // work[width + n] holds the current coefficient of t^n
    let mut work = vec![zero(); 2 * width + 1];
    for (n, z) in p.iter() {
        work[(width as i64 + n) as usize] = z;
    }
    let mut c = vec![zero(); m + 1];
    for n in (1..=m).rev() {
        let cn = work[width + n];
        c[n] = cn;
        if cn == zero() {
            continue;
        }
        for (k, b) in binomial_row(n).into_iter().enumerate() {
            work[width + 2 * k - n] -= cn * b;
        }
    }
    c[0] = work[width];
    let d = (1..=neg.max(m))
        .map(|n| work[width - n])
        .collect::<Vec<_>>();
    let mut d = d;
    while d.last() == Some(&zero()) {
        d.pop();
    }
    PolyInCanonicalBasis { c, d }
}

/// `S x S` section of `B = T(t+t^{-1}) + e_0 x^T`.
pub fn b_section(x: &PerturbationVector, size: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(size, size, |i, j| {
        let band = if i.abs_diff(j) == 1 { 1.0 } else { 0.0 };
        let rank_one = if i == 0 { x.get(j) } else { zero() };
        rank_one + band
    })
}

/// `C B` for an `S x S` section `C` and `B = T(t+t^{-1}) + e_0 x^T`, truncated
/// to the same window.
fn times_b(c: &ComplexMatrix, x: &PerturbationVector) -> ComplexMatrix {
    let s = c.cols();
    ComplexMatrix::from_fn(c.rows(), s, |i, j| {
        let mut z = c[(i, 0)] * x.get(j);
        if j + 1 < s {
            z += c[(i, j + 1)];
        }
        if j >= 1 {
            z += c[(i, j - 1)];
        }
        z
    })
}

/// Padding that makes the crop of a degree-`n_max` product exact.
pub fn exact_pad(x: &PerturbationVector, n_max: usize) -> usize {
    n_max * (1 + x.support_bound())
}

/// `P_N M(p) P_N` for a trigonometric polynomial `p`.
///
/// Uses `p = p_0 + sum_{m>=1} p_m (t^m + t^{-m}) + (p_{-m} - p_m) t^{-m}`
/// and the three-term recurrence `C_{m+1} = C_m B - C_{m-1}` for
/// `C_m = M(t^m + t^{-m})`, which avoids the cancellation of the power basis.
pub fn m_general_section(
    x: &PerturbationVector,
    p: &FourierSymbol,
    n: usize,
) -> Result<ComplexMatrix> {
    let m_max = p.hi().max(0) as usize;
    let size = n + exact_pad(x, m_max);
    let mut out = toeplitz_section(&FourierSymbol::constant(p.coeff(0)), size);
    let mut prev = ComplexMatrix::identity(size).scale(Complex64::new(2.0, 0.0));
    let mut cur = b_section(x, size);
    for m in 1..=m_max {
        let pm = p.coeff(m as i64);
        if pm != zero() {
            out.add_scaled(&cur, pm)?;
        }
        if m < m_max {
            let next = times_b(&cur, x).sub(&prev)?;
            prev = std::mem::replace(&mut cur, next);
        }
    }
    let neg = (-p.lo()).max(m_max as i64);
    for m in 1..=neg {
        let w = p.coeff(-m) - p.coeff(m);
        if w != zero() {
            out.add_scaled(
                &toeplitz_section(&FourierSymbol::monomial(-m, w), size),
                Complex64::new(1.0, 0.0),
            )?;
        }
    }
    Ok(out.block(0, 0, n, n))
}

/// Same operator through the literal power basis of [`basis_convert`].
pub fn m_general_section_power_basis(
    x: &PerturbationVector,
    p: &FourierSymbol,
    n: usize,
) -> Result<ComplexMatrix> {
    let basis = basis_convert(p);
    let m_max = basis.c.len().saturating_sub(1);
    let size = n + exact_pad(x, m_max);
    let mut out = ComplexMatrix::identity(size).scale(basis.c[0]);
    let mut power = ComplexMatrix::identity(size);
    for cn in basis.c.iter().skip(1) {
        power = times_b(&power, x);
        if *cn != zero() {
            out.add_scaled(&power, *cn)?;
        }
    }
    for (i, &dn) in basis.d.iter().enumerate() {
        if dn != zero() {
            let t = toeplitz_section(&FourierSymbol::monomial(-(i as i64) - 1, dn), size);
            out.add_scaled(&t, Complex64::new(1.0, 0.0))?;
        }
    }
    Ok(out.block(0, 0, n, n))
}

/// `K(t^n) = M(t^n) - T(t^n)` on the first `N` rows and columns.
pub fn k_of_tn(x: &PerturbationVector, n: usize, size: usize) -> Result<ComplexMatrix> {
    let tn = FourierSymbol::monomial(n as i64, Complex64::new(1.0, 0.0));
    m_general_section(x, &tn, size)?.sub(&toeplitz_section(&tn, size))
}

/// Max-entry deviation of `M(abc) - T(a) M(b) M(c)` on the top-left corner
/// of size `N - deg`, where `deg` is the total degree of the three symbols.
pub fn check_compatibility(
    x: &PerturbationVector,
    a: &FourierSymbol,
    b: &FourierSymbol,
    c: &FourierSymbol,
    n: usize,
) -> Result<f64> {
    if a.hi() > 0 {
        return Err(Error::InvalidArgument(
            "a must be supported on n <= 0".into(),
        ));
    }
    if !c.is_even() {
        return Err(Error::NotEven(c.even_defect()));
    }
    let deg = (a.degree() + b.degree() + c.degree()) as usize;
    if n <= deg {
        return Err(Error::WindowTooSmall { n, needed: deg + 1 });
    }
    let abc = a.multiply(b)?.multiply(c)?;
    let lhs = m_general_section(x, &abc, n)?;
    let rhs = toeplitz_section(a, n)
        .matmul(&m_general_section(x, b, n)?)?
        .matmul(&m_general_section(x, c, n)?)?;
    let keep = n - deg;
    lhs.block(0, 0, keep, keep)
        .max_abs_diff(&rhs.block(0, 0, keep, keep))
}

/// Sum of the singular values.
pub fn trace_norm(m: &ComplexMatrix) -> f64 {
    m.to_nalgebra().singular_values().iter().sum()
}

/// True when rows `n..` of `k` are exactly zero.
pub fn rows_vanish_from(k: &ComplexMatrix, n: usize) -> bool {
    (n..k.rows()).all(|i| k.row(i).iter().all(|z| *z == zero()))
}
