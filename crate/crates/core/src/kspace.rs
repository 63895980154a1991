//! Discrete k-space: conjugate symmetry, partial-Fourier acquisition and
//! comb sampling.
//!
//! Spectra are indexed `k = −M/2 … M/2 − 1`. The transform is the plain
//! `X[k] = Σ_m s[m] e^{−2πikm/M}`, evaluated directly.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::KSpaceError;
use crate::expr::{classify, eval_pointwise, DistExpr, Kind};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    samples: Vec<Complex64>,
    dx: f64,
}

fn check_len(m: usize) -> Result<(), KSpaceError> {
    if m < 8 || !m.is_multiple_of(2) {
        Err(KSpaceError::BadLength(m))
    } else {
        Ok(())
    }
}

impl Signal {
    pub fn new(samples: Vec<Complex64>, dx: f64) -> Result<Self, KSpaceError> {
        check_len(samples.len())?;
        if !(dx.is_finite() && dx > 0.0) {
            return Err(KSpaceError::BadSpacing(dx));
        }
        Ok(Signal { samples, dx })
    }

    pub fn from_real(samples: &[f64], dx: f64) -> Result<Self, KSpaceError> {
        Self::new(
            samples.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
            dx,
        )
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.samples.iter().all(|s| s.im == 0.0)
    }

    /// `s[m] · e^{iθ(m·dx)}` with `θ(x) = slope · x`.
    pub fn with_linear_phase(&self, slope: f64) -> Signal {
        Signal {
            samples: self
                .samples
                .iter()
                .enumerate()
                .map(|(m, &s)| s * Complex64::cis(slope * m as f64 * self.dx))
                .collect(),
            dx: self.dx,
        }
    }

    /// `s[(m − shift) mod M]`.
    pub fn circular_shift(&self, shift: i64) -> Signal {
        let m = self.len() as i64;
        Signal {
            samples: (0..m)
                .map(|i| self.samples[(i - shift).rem_euclid(m) as usize])
                .collect(),
            dx: self.dx,
        }
    }

    pub fn max_abs_diff(&self, other: &Signal) -> f64 {
        self.samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KSpace {
    /// `coeffs[k + M/2]` holds `X[k]`.
    coeffs: Vec<Complex64>,
    mask: Vec<bool>,
    fraction: f64,
    dx: f64,
}

impl KSpace {
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn half(&self) -> i64 {
        self.len() as i64 / 2
    }

    fn slot(&self, k: i64) -> usize {
        (k + self.half()) as usize
    }

    /// Frequency indices in storage order.
    pub fn indices(&self) -> std::ops::Range<i64> {
        -self.half()..self.half()
    }

    /// `X[k]` for `−M/2 ≤ k < M/2`.
    pub fn get(&self, k: i64) -> Complex64 {
        self.coeffs[self.slot(k)]
    }

    pub fn acquired(&self, k: i64) -> bool {
        self.mask[self.slot(k)]
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn fraction(&self) -> f64 {
        self.fraction
    }

    pub fn lines(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    /// Index of the largest `|X[k]|`, ties to the lowest `k`.
    pub fn peaks(&self, count: usize) -> Vec<i64> {
        let mut ks: Vec<i64> = self.indices().collect();
        ks.sort_by(|&a, &b| {
            self.get(b)
                .norm()
                .total_cmp(&self.get(a).norm())
                .then(a.cmp(&b))
        });
        ks.truncate(count);
        ks
    }
}

fn twiddles(m: usize, sign: f64) -> Vec<Complex64> {
    (0..m)
        .map(|j| Complex64::cis(sign * 2.0 * PI * j as f64 / m as f64))
        .collect()
}

pub fn dft(s: &Signal) -> KSpace {
    let m = s.len();
    let w = twiddles(m, -1.0);
    let half = m as i64 / 2;
    let coeffs = (-half..half)
        .map(|k| {
            let k = k.rem_euclid(m as i64) as usize;
            s.samples
                .iter()
                .enumerate()
                .map(|(j, &v)| v * w[(k * j) % m])
                .sum()
        })
        .collect();
    KSpace {
        coeffs,
        mask: vec![true; m],
        fraction: 1.0,
        dx: s.dx,
    }
}

/// Inverse of [`dft`], with the `1/M` factor. Unacquired lines count as 0.
pub fn idft(k: &KSpace) -> Signal {
    let m = k.len();
    let w = twiddles(m, 1.0);
    let samples = (0..m)
        .map(|j| {
            let sum: Complex64 = k
                .indices()
                .filter(|&kk| k.acquired(kk))
                .map(|kk| k.get(kk) * w[(kk.rem_euclid(m as i64) as usize * j) % m])
                .sum();
            sum / m as f64
        })
        .collect();
    Signal { samples, dx: k.dx }
}

fn symmetry_residual(k: &KSpace, sign: f64) -> f64 {
    let half = k.half();
    let mut worst: f64 = 0.0;
    for kk in 1..half {
        worst = worst.max((k.get(-kk) - sign * k.get(kk).conj()).norm());
    }
    // Self-paired lines must be real (or imaginary for the odd law).
    for kk in [0, -half] {
        let v = k.get(kk);
        worst = worst.max(if sign > 0.0 { v.im.abs() } else { v.re.abs() });
    }
    worst
}

/// `max_k |X[−k] − conj X[k]|`, zero for spectra of real signals.
pub fn conjugate_symmetry_residual(k: &KSpace) -> f64 {
    symmetry_residual(k, 1.0)
}

/// `max_k |X[−k] + conj X[k]|`, zero for spectra of imaginary signals.
pub fn conjugate_antisymmetry_residual(k: &KSpace) -> f64 {
    symmetry_residual(k, -1.0)
}

/// Keeps `round(fraction · M)` lines: every `k ≥ 0`, the self-paired line
/// `k = −M/2`, and the negative lines closest to the center.
pub fn acquire_partial(k: &KSpace, fraction: f64) -> Result<KSpace, KSpaceError> {
    let m = k.len();
    if !(fraction > 0.5 && fraction <= 1.0) {
        return Err(KSpaceError::BadFraction(fraction));
    }
    let lines = (fraction * m as f64).round() as usize;
    if lines <= m / 2 {
        return Err(KSpaceError::BadFraction(fraction));
    }
    let half = k.half();
    let negatives = (lines - m / 2 - 1) as i64;
    let keep = |kk: i64| kk >= 0 || kk == -half || kk >= -negatives;
    let mask: Vec<bool> = k.indices().map(|kk| keep(kk) && k.acquired(kk)).collect();
    let coeffs = k
        .indices()
        .map(|kk| if keep(kk) { k.get(kk) } else { ZERO })
        .collect();
    Ok(KSpace {
        coeffs,
        mask,
        fraction,
        dx: k.dx,
    })
}

/// Fills each missing line from its acquired mirror, `X[k] = conj X[−k]`.
pub fn partial_fourier_fill(k: &KSpace) -> Result<KSpace, KSpaceError> {
    let half = k.half();
    let mut out = k.clone();
    for kk in k.indices() {
        if k.acquired(kk) {
            continue;
        }
        if kk == -half || !k.acquired(-kk) {
            return Err(KSpaceError::UnfillableLine(kk));
        }
        let slot = out.slot(kk);
        out.coeffs[slot] = k.get(-kk).conj();
    }
    out.mask = vec![true; k.len()];
    out.fraction = 1.0;
    Ok(out)
}

/// `s[m] = e((m − M/2) · delta)`: the product of `e` with a comb of
/// spacing `delta`, restricted to `M` teeth.
pub fn sample_with_comb(e: &DistExpr, delta: f64, m: usize) -> Result<Signal, KSpaceError> {
    check_len(m)?;
    if !(delta.is_finite() && delta > 0.0) {
        return Err(KSpaceError::BadSpacing(delta));
    }
    if classify(e) != Kind::Regular {
        return Err(crate::error::ExprError::SingularEvaluation.into());
    }
    let half = (m / 2) as f64;
    let samples = (0..m)
        .map(|j| eval_pointwise(e, (j as f64 - half) * delta))
        .collect::<Result<Vec<_>, _>>()?;
    Signal::new(samples, delta)
}

/// Frequency that `f` appears at after sampling with spacing `delta`,
/// folded into `[−1/(2δ), 1/(2δ))`.
pub fn alias_frequency(f: f64, delta: f64) -> f64 {
    let fs = 1.0 / delta;
    (f + 0.5 * fs).rem_euclid(fs) - 0.5 * fs
}

/// Seeded signal with samples uniform in `[−1, 1]`.
pub fn random_real_signal(seed: u64, m: usize, dx: f64) -> Result<Signal, KSpaceError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v: Vec<f64> = (0..m).map(|_| rng.random_range(-1.0..1.0)).collect();
    Signal::from_real(&v, dx)
}

pub fn random_complex_signal(seed: u64, m: usize, dx: f64) -> Result<Signal, KSpaceError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = (0..m)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    Signal::new(v, dx)
}

/// Spectra whose symmetry residual exceeds this (relative to the largest
/// coefficient) are reported as violating conjugate symmetry.
pub const SYMMETRY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartialFourierReport {
    pub m: usize,
    pub fraction: f64,
    pub lines: usize,
    pub seed: u64,
    pub phase_slope: f64,
    pub clean_symmetry_residual: f64,
    pub clean_reconstruction_error: f64,
    pub corrupted_symmetry_residual: f64,
    pub corrupted_reconstruction_error: f64,
    pub symmetry_violated: bool,
}

fn reconstruct(s: &Signal, fraction: f64) -> Result<(f64, f64, usize, f64), KSpaceError> {
    let full = dft(s);
    let partial = acquire_partial(&full, fraction)?;
    let filled = partial_fourier_fill(&partial)?;
    let scale = full.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    Ok((
        conjugate_symmetry_residual(&full),
        idft(&filled).max_abs_diff(s),
        partial.lines(),
        scale,
    ))
}

/// Partial-Fourier reconstruction of a seeded real signal on `[0, 1)`,
/// then of the same signal with the phase error `e^{i·slope·x}`.
pub fn partial_fourier_experiment(
    m: usize,
    fraction: f64,
    seed: u64,
    phase_slope: f64,
) -> Result<PartialFourierReport, KSpaceError> {
    let clean = random_real_signal(seed, m, 1.0 / m as f64)?;
    let corrupted = clean.with_linear_phase(phase_slope);
    let (cs, ce, lines, _) = reconstruct(&clean, fraction)?;
    let (ps, pe, _, scale) = reconstruct(&corrupted, fraction)?;
    Ok(PartialFourierReport {
        m,
        fraction,
        lines,
        seed,
        phase_slope,
        clean_symmetry_residual: cs,
        clean_reconstruction_error: ce,
        corrupted_symmetry_residual: ps,
        corrupted_reconstruction_error: pe,
        symmetry_violated: ps > SYMMETRY_TOL * scale.max(1.0),
    })
}

/// `[[re, im], …]`.
pub fn samples_to_json(samples: &[Complex64]) -> String {
    let pairs: Vec<[f64; 2]> = samples.iter().map(|c| [c.re, c.im]).collect();
    serde_json::to_string(&pairs).expect("finite samples serialize")
}

pub fn samples_from_json(text: &str) -> Result<Vec<Complex64>, KSpaceError> {
    let pairs: Vec<[f64; 2]> =
        serde_json::from_str(text).map_err(|e| KSpaceError::Json(e.to_string()))?;
    Ok(pairs
        .into_iter()
        .map(|[re, im]| Complex64::new(re, im))
        .collect())
}
