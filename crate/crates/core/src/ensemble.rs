//! Haar sampling on U(n) and SO(2n), and Monte Carlo estimates of linear
//! statistic averages against their determinant formulas.
//!
//! Sample `i` of a run with seed `s` draws from a ChaCha8 stream
//! `(s, stream = i)`, so results do not depend on the number of threads.
//! Samples are processed in fixed-size chunks whose statistics are merged in
//! chunk order.

use nalgebra::{DMatrix, Dyn};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::determinants::{det_lu, LogDet};
use crate::error::{Error, Result};
use crate::operators::{oplus_section, toeplitz_section};
use crate::report::{ReportParams, VerificationReport};
use crate::symbol::FourierSymbol;

/// Samples per parallel work unit.
const CHUNK: usize = 512;

/// Acceptance band in standard errors.
pub const STDERR_BAND: f64 = 4.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EnsembleKind {
    /// Haar unitary `n x n`.
    Cue(usize),
    /// Haar special orthogonal `2n x 2n`.
    OPlus(usize),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSample {
    /// `n` eigenangles in `(-pi, pi]` (CUE) or `n` angles in `[0, pi]`
    /// standing for the pairs `e^{+-i theta}` (SO(2n)).
    pub angles: Vec<f64>,
    pub ensemble: EnsembleKind,
    pub seed: u64,
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn normal(rng: &mut ChaCha8Rng) -> f64 {
    StandardNormal.sample(rng)
}

/// Haar unitary: QR of a complex Ginibre matrix with the phases of `R`'s
/// diagonal moved into `Q`.
pub fn haar_unitary(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<Complex64> {
    let g = DMatrix::from_fn(n, n, |_, _| Complex64::new(normal(rng), normal(rng)));
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for z in q.column_mut(j).iter_mut() {
            *z *= phase;
        }
    }
    q
}

/// Haar special orthogonal `m x m`: sign-corrected QR of a real Ginibre
/// matrix, with two columns swapped when the determinant is `-1`.
pub fn haar_special_orthogonal(m: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let g = DMatrix::from_fn(m, m, |_, _| normal(rng));
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..m {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    if m >= 2 && q.determinant() < 0.0 {
        q.swap_columns(0, 1);
    }
    q
}

fn cue_angles(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let u = haar_unitary(n, rng);
    let eig = u
        .schur()
        .eigenvalues()
        .expect("complex Schur form yields eigenvalues");
    eig.iter().map(|z| z.arg()).collect()
}

fn oplus_angles(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let q = haar_special_orthogonal(2 * n, rng);
    let eig: nalgebra::OVector<Complex64, Dyn> = q.complex_eigenvalues();
    let mut abs_args: Vec<f64> = eig.iter().map(|z| z.arg().abs()).collect();
    abs_args.sort_by(f64::total_cmp);
    abs_args
        .chunks_exact(2)
        .map(|p| 0.5 * (p[0] + p[1]))
        .collect()
}

fn require_positive(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "matrix size must be at least 1".into(),
        ));
    }
    Ok(())
}

/// Eigenangles of one Haar unitary `n x n` matrix.
pub fn sample_cue(n: usize, seed: u64) -> Result<SpectrumSample> {
    require_positive(n)?;
    Ok(SpectrumSample {
        angles: cue_angles(n, &mut rng_for(seed, 0)),
        ensemble: EnsembleKind::Cue(n),
        seed,
    })
}

/// The `n` angles of one Haar SO(2n) matrix.
pub fn sample_oplus(n: usize, seed: u64) -> Result<SpectrumSample> {
    require_positive(n)?;
    Ok(SpectrumSample {
        angles: oplus_angles(n, &mut rng_for(seed, 0)),
        ensemble: EnsembleKind::OPlus(n),
        seed,
    })
}

/// Mean of complex samples with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MCEstimate {
    pub mean: Complex64,
    /// Sample standard deviation (of `|X - mean|`) over `sqrt(samples)`.
    pub stderr: f64,
    pub samples: usize,
}

/// Streaming mean and sum of squared deviations.
#[derive(Clone, Copy, Debug, Default)]
struct Moments {
    count: usize,
    mean: Complex64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: Complex64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += (delta.conj() * (x - self.mean)).re;
    }

    fn merge(self, other: Moments) -> Moments {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let w = other.count as f64 / count as f64;
        Moments {
            count,
            mean: self.mean + delta * w,
            m2: self.m2 + other.m2 + delta.norm_sqr() * self.count as f64 * w,
        }
    }
}

/// Monte Carlo mean of `stat(angles)` over `samples` draws from `kind`.
pub fn estimate<F>(kind: EnsembleKind, samples: usize, seed: u64, stat: F) -> Result<MCEstimate>
where
    F: Fn(&[f64]) -> Complex64 + Sync,
{
    if samples < 2 {
        return Err(Error::InvalidArgument("need at least two samples".into()));
    }
    let draw = |rng: &mut ChaCha8Rng| match kind {
        EnsembleKind::Cue(n) => cue_angles(n, rng),
        EnsembleKind::OPlus(n) => oplus_angles(n, rng),
    };
    match kind {
        EnsembleKind::Cue(n) | EnsembleKind::OPlus(n) => require_positive(n)?,
    }
    let chunks = samples.div_ceil(CHUNK);
    let parts: Vec<Moments> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut m = Moments::default();
            for i in c * CHUNK..((c + 1) * CHUNK).min(samples) {
                let angles = draw(&mut rng_for(seed, i as u64));
                m.push(stat(&angles));
            }
            m
        })
        .collect();
    let total = parts.into_iter().fold(Moments::default(), Moments::merge);
    let var = total.m2 / (total.count - 1) as f64;
    Ok(MCEstimate {
        mean: total.mean,
        stderr: (var / total.count as f64).sqrt(),
        samples: total.count,
    })
}

fn mc_report(
    check: &str,
    est: &MCEstimate,
    rhs: LogDet,
    mut params: ReportParams,
) -> VerificationReport {
    let rhs_abs = rhs.to_complex().norm();
    params.tolerance = if rhs_abs > 0.0 {
        STDERR_BAND * est.stderr / rhs_abs
    } else {
        f64::INFINITY
    };
    params.samples = Some(est.samples);
    params.stderr = Some(est.stderr);
    let lhs = LogDet::from_complex(est.mean);
    let mut rep = VerificationReport::compare(check, lhs, rhs, params);
    if rhs_abs == 0.0 {
        rep.passed = Some(est.mean.norm() <= STDERR_BAND * est.stderr);
    }
    rep.with_notes(format!(
        "MC mean {:e}{:+e}i, stderr {:e}",
        est.mean.re, est.mean.im, est.stderr
    ))
}

/// `E_CUE(n) prod_j e^{i lambda f(theta_j)}` against `det T_n(e^{i lambda f})`.
pub fn verify_cue_identity(
    f: &FourierSymbol,
    lambda: f64,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let a = f.scale(Complex64::new(0.0, lambda)).exp()?;
    let rhs = det_lu(&toeplitz_section(&a, n))?;
    let est = estimate(EnsembleKind::Cue(n), samples, seed, |angles| {
        let s: Complex64 = angles.iter().map(|&th| f.eval(th)).sum();
        (Complex64::new(0.0, lambda) * s).exp()
    })?;
    let params = ReportParams {
        n,
        seed: Some(seed),
        ..Default::default()
    };
    Ok(mc_report("mc-cue", &est, rhs, params))
}

/// Normalization of the SO(2n) determinant formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OplusNormalization {
    /// `det(a_{j-k} + a_{j+k})`
    #[serde(rename = "plain")]
    Plain,
    /// The same with row 0 halved, i.e. half the plain determinant.
    #[serde(rename = "halved_first_row")]
    HalvedFirstRow,
}

impl OplusNormalization {
    pub const ALL: [OplusNormalization; 2] = [
        OplusNormalization::Plain,
        OplusNormalization::HalvedFirstRow,
    ];
}

impl std::fmt::Display for OplusNormalization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            OplusNormalization::Plain => "plain",
            OplusNormalization::HalvedFirstRow => "halved_first_row",
        })
    }
}

impl std::str::FromStr for OplusNormalization {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "plain" => Ok(OplusNormalization::Plain),
            "halved_first_row" | "halved" => Ok(OplusNormalization::HalvedFirstRow),
            other => Err(Error::Parse(format!("unknown normalization {other:?}"))),
        }
    }
}

fn oplus_rhs(a: &FourierSymbol, n: usize, normalization: OplusNormalization) -> Result<LogDet> {
    let mut m = oplus_section(a, n)?;
    if normalization == OplusNormalization::HalvedFirstRow {
        for k in 0..n {
            m[(0, k)] *= 0.5;
        }
    }
    det_lu(&m)
}

/// `exp(i lambda (f + f~))`.
pub fn pair_symbol(f: &FourierSymbol, lambda: f64) -> Result<FourierSymbol> {
    (f + &f.flip()).scale(Complex64::new(0.0, lambda)).exp()
}

fn oplus_estimate(
    f: &FourierSymbol,
    lambda: f64,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<MCEstimate> {
    estimate(EnsembleKind::OPlus(n), samples, seed, |angles| {
        let s: Complex64 = angles.iter().map(|&th| f.eval(th) + f.eval(-th)).sum();
        (Complex64::new(0.0, lambda) * s).exp()
    })
}

/// `E_SO(2n) prod_j e^{i lambda (f(theta_j) + f(-theta_j))}` against the
/// Toeplitz+Hankel determinant of `a = e^{i lambda (f + f~)}`, the even symbol
/// with `a(theta_j) = e^{i lambda (f(theta_j) + f(-theta_j))}`, under `normalization`.
pub fn verify_oplus_identity(
    f: &FourierSymbol,
    lambda: f64,
    n: usize,
    samples: usize,
    seed: u64,
    normalization: OplusNormalization,
) -> Result<VerificationReport> {
    let a = pair_symbol(f, lambda)?;
    let rhs = oplus_rhs(&a, n, normalization)?;
    let est = oplus_estimate(f, lambda, n, samples, seed)?;
    Ok(mc_report(
        "mc-oplus",
        &est,
        rhs,
        oplus_params(n, seed, normalization),
    ))
}

fn oplus_params(n: usize, seed: u64, normalization: OplusNormalization) -> ReportParams {
    ReportParams {
        n,
        seed: Some(seed),
        normalization: Some(normalization),
        ..Default::default()
    }
}

/// Both normalizations checked against one shared Monte Carlo run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalizationProbe {
    pub reports: Vec<VerificationReport>,
    pub matching: Vec<OplusNormalization>,
}

pub fn probe_oplus_normalization(
    f: &FourierSymbol,
    lambda: f64,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<NormalizationProbe> {
    let a = pair_symbol(f, lambda)?;
    let est = oplus_estimate(f, lambda, n, samples, seed)?;
    let mut reports = Vec::new();
    let mut matching = Vec::new();
    for norm in OplusNormalization::ALL {
        let rep = mc_report(
            "mc-oplus",
            &est,
            oplus_rhs(&a, n, norm)?,
            oplus_params(n, seed, norm),
        );
        if rep.passed() {
            matching.push(norm);
        }
        reports.push(rep);
    }
    Ok(NormalizationProbe { reports, matching })
}
