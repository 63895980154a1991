//! Gaussian wave packets `k · e^{2πiγx} · R(x − c) · e^{−α(x − c)²}`.
//!
//! The family is closed under translation, dilation and the Fourier
//! transform, which gives closed-form transforms for tail envelopes and an
//! analytic cross-check for the quadrature transform.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::expr::cis2pi;

pub(crate) fn horner(coeffs: &[Complex64], x: f64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Coefficients of `P(t + shift)` from those of `P`.
pub(crate) fn taylor_shift(coeffs: &[Complex64], shift: f64) -> Vec<Complex64> {
    let n = coeffs.len();
    (0..n)
        .map(|m| {
            (m..n)
                .map(|j| coeffs[j] * binomial(j, m) * shift.powi((j - m) as i32))
                .sum()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Packet {
    pub factor: Complex64,
    pub freq: f64,
    pub center: f64,
    pub alpha: f64,
    /// Polynomial in `x − center`.
    pub poly: Vec<Complex64>,
}

impl Packet {
    pub fn eval(&self, x: f64) -> Complex64 {
        let t = x - self.center;
        self.factor * cis2pi(self.freq * x) * horner(&self.poly, t) * (-self.alpha * t * t).exp()
    }

    /// `x ↦ p(μx)`.
    pub fn dilated(&self, mu: f64) -> Packet {
        Packet {
            factor: self.factor,
            freq: self.freq * mu,
            center: self.center / mu,
            alpha: self.alpha * mu * mu,
            poly: self
                .poly
                .iter()
                .enumerate()
                .map(|(j, &c)| c * mu.powi(j as i32))
                .collect(),
        }
    }

    pub fn scaled(mut self, k: f64) -> Packet {
        self.factor *= k;
        self
    }

    /// Closed-form transform `∫ e^{−2πixξ} p(x) dx`.
    ///
    /// With `ν = ξ − γ`, `∫ t^m e^{−αt²} e^{−2πiνt} dt = (i/2π)^m ∂_ν^m G(ν)`
    /// where `G(ν) = √(π/α) e^{−π²ν²/α}` and `∂_ν^m G = H_m(ν) G`,
    /// `H_{m+1} = H_m' − (2π²/α) ν H_m`.
    pub fn fourier_eng(&self) -> Packet {
        let k = PI * PI / self.alpha;
        let deg = self.poly.len();
        let mut herm: Vec<f64> = vec![1.0];
        let mut out = vec![Complex64::new(0.0, 0.0); deg.max(1)];
        let step = Complex64::new(0.0, 1.0 / (2.0 * PI));
        let mut pow = Complex64::new(1.0, 0.0);
        for (m, &p) in self.poly.iter().enumerate() {
            if m > 0 {
                let mut next = vec![0.0; herm.len() + 1];
                for (j, &h) in herm.iter().enumerate() {
                    if j > 0 {
                        next[j - 1] += j as f64 * h;
                    }
                    next[j + 1] -= 2.0 * k * h;
                }
                herm = next;
                pow *= step;
            }
            if out.len() < herm.len() {
                out.resize(herm.len(), Complex64::new(0.0, 0.0));
            }
            for (j, &h) in herm.iter().enumerate() {
                out[j] += p * pow * h;
            }
        }
        let norm = (PI / self.alpha).sqrt();
        Packet {
            factor: self.factor * cis2pi(self.freq * self.center) * norm,
            freq: -self.center,
            center: self.freq,
            alpha: k,
            poly: out,
        }
    }

    pub fn envelope(&self) -> Envelope {
        let k = self.factor.norm();
        Envelope::new(
            self.center,
            self.alpha,
            self.poly.iter().map(|c| c.norm() * k).collect(),
        )
    }
}

/// Radial bound `|f(x)| ≤ Σ_j q_j |x − c|^j e^{−α(x − c)²}`.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Envelope {
    pub center: f64,
    pub alpha: f64,
    pub q: Vec<f64>,
}

impl Envelope {
    pub fn new(center: f64, alpha: f64, mut q: Vec<f64>) -> Self {
        while q.len() > 1 && q.last() == Some(&0.0) {
            q.pop();
        }
        Envelope { center, alpha, q }
    }

    fn degree(&self) -> usize {
        self.q.len().saturating_sub(1)
    }

    fn is_zero(&self) -> bool {
        self.q.iter().all(|&v| v == 0.0)
    }

    /// Envelope value at distance `t ≥ 0` from the center.
    pub fn at(&self, t: f64) -> f64 {
        self.q.iter().rev().fold(0.0, |acc, &c| acc * t + c) * (-self.alpha * t * t).exp()
    }

    /// Beyond this distance the envelope is strictly decreasing.
    pub fn knee(&self) -> f64 {
        (self.degree() as f64 / (2.0 * self.alpha)).sqrt()
    }

    /// `∫_{|x−c|>L} envelope`, using
    /// `∫_L^∞ t^j e^{−αt²} dt ≤ L^j e^{−αL²} / (2αL − j/L)` for `L² > j/(2α)`.
    pub fn tail_integral(&self, l: f64) -> f64 {
        if l <= self.knee() || l <= 0.0 {
            return f64::INFINITY;
        }
        let g = (-self.alpha * l * l).exp();
        2.0 * self
            .q
            .iter()
            .enumerate()
            .map(|(j, &c)| c * l.powi(j as i32) * g / (2.0 * self.alpha * l - j as f64 / l))
            .sum::<f64>()
    }

    /// Bound on `Σ |f(n)|` over integers with `|n − c| > L`.
    pub fn tail_sum(&self, l: f64) -> f64 {
        if l <= self.knee() || l <= 0.0 {
            return f64::INFINITY;
        }
        2.0 * self.at(l) + self.tail_integral(l)
    }

    /// Smallest radius (to bisection accuracy) whose tail bound is `≤ eps`.
    pub fn radius(&self, eps: f64, tail: impl Fn(&Self, f64) -> f64) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let floor = 1.0001 * self.knee() + 1e-12;
        let mut hi = floor.max(0.5 / self.alpha.sqrt());
        while tail(self, hi) > eps {
            hi *= 1.5;
            if !hi.is_finite() {
                return f64::INFINITY;
            }
        }
        let mut lo = floor;
        if tail(self, lo) <= eps {
            return lo;
        }
        for _ in 0..48 {
            let mid = 0.5 * (lo + hi);
            if tail(self, mid) <= eps {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }

    /// Envelope of `k · f(dil · x + off)`.
    pub fn pulled(&self, k: f64, dil: f64, off: f64) -> Envelope {
        Envelope::new(
            (self.center - off) / dil,
            self.alpha * dil * dil,
            self.q
                .iter()
                .enumerate()
                .map(|(j, &c)| c * k * dil.powi(j as i32))
                .collect(),
        )
    }
}
