//! Numerical ground truth.
//!
//! Test functions are `P(x) · e^{−a(x−b)²} · e^{2πiωx}`; everything the
//! oracle reports (transforms, pairings, seminorms) is computed by
//! quadrature or truncated sums against them, with analytic tail bounds.

mod continuity;
pub(crate) mod packet;
mod pairing;
mod probe;
pub(crate) mod quad;
mod seminorm;
mod transform;

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::OracleError;
use crate::expr::cis2pi;
use packet::{horner, taylor_shift, Packet};

pub use continuity::{continuity_check, ContinuityReport, CONTINUITY_SLACK, FAMILY_CAVEAT};
pub use pairing::{
    pair, pair_direct, pair_with, verify_candidate, verify_ft, verify_ft_detail, FtCheck,
};
pub use probe::{Probe, ProbeSource};
pub use seminorm::qn;
pub use transform::{ft_closed_form, ft_numeric};

pub const MAX_DEGREE: usize = 6;
pub const MAX_DERIVATIVE: usize = 8;

/// `φ(x) = P(x) · e^{−a(x−b)²} · e^{2πiωx}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SchwartzFn {
    coeffs: Vec<Complex64>,
    a: f64,
    b: f64,
    omega: f64,
}

impl SchwartzFn {
    /// `coeffs[j]` multiplies `x^j`. The polynomial must be nonzero with
    /// degree at most [`MAX_DEGREE`]; `a` must be positive.
    pub fn new(coeffs: Vec<Complex64>, a: f64, b: f64, omega: f64) -> Result<Self, OracleError> {
        let invalid = |msg: String| Err(OracleError::InvalidTestFunction(msg));
        if !(a.is_finite() && a > 0.0) {
            return invalid(format!("width a must be positive, got {a}"));
        }
        if !(b.is_finite() && omega.is_finite()) {
            return invalid("center and frequency must be finite".into());
        }
        if coeffs
            .iter()
            .any(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return invalid("coefficients must be finite".into());
        }
        let phi = SchwartzFn {
            coeffs,
            a,
            b,
            omega,
        };
        match phi.degree() {
            None => invalid("polynomial factor is identically zero".into()),
            Some(d) if d > MAX_DEGREE => {
                invalid(format!("polynomial degree {d} exceeds {MAX_DEGREE}"))
            }
            Some(_) => Ok(phi),
        }
    }

    /// Real polynomial coefficients.
    pub fn real(coeffs: &[f64], a: f64, b: f64, omega: f64) -> Result<Self, OracleError> {
        Self::new(
            coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect(),
            a,
            b,
            omega,
        )
    }

    /// `e^{−πx²}`, the self-dual Gaussian.
    pub fn gauss_profile() -> Self {
        SchwartzFn {
            coeffs: vec![Complex64::new(1.0, 0.0)],
            a: PI,
            b: 0.0,
            omega: 0.0,
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Degree of the polynomial factor, `None` if it vanishes.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .rposition(|c| *c != Complex64::new(0.0, 0.0))
    }

    /// True for real-valued functions (real coefficients, no modulation).
    pub fn is_real(&self) -> bool {
        self.omega == 0.0 && self.coeffs.iter().all(|c| c.im == 0.0)
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        let t = x - self.b;
        horner(&self.coeffs, x) * (-self.a * t * t).exp() * cis2pi(self.omega * x)
    }

    /// `|∂^0 φ|` without the unimodular factor, for seminorm searches.
    pub(crate) fn modulus(&self, x: f64) -> f64 {
        let t = x - self.b;
        horner(&self.coeffs, x).norm() * (-self.a * t * t).exp()
    }

    /// Closed-form derivative: `(Pgm)' = (P' − 2a(x − b)P + 2πiωP) g m`.
    pub fn derivative(&self, order: usize) -> Result<SchwartzFn, OracleError> {
        if order > MAX_DERIVATIVE {
            return Err(OracleError::OrderTooHigh(order));
        }
        let mut p = self.coeffs.clone();
        let lin = Complex64::new(2.0 * self.a * self.b, 2.0 * PI * self.omega);
        for _ in 0..order {
            let mut q = vec![Complex64::new(0.0, 0.0); p.len() + 1];
            for (j, &c) in p.iter().enumerate() {
                if j > 0 {
                    q[j - 1] += c * j as f64;
                }
                q[j] += c * lin;
                q[j + 1] -= c * (2.0 * self.a);
            }
            p = q;
        }
        Ok(SchwartzFn {
            coeffs: p,
            a: self.a,
            b: self.b,
            omega: self.omega,
        })
    }

    /// `x ↦ conj(φ(x))`.
    pub fn conj(&self) -> SchwartzFn {
        SchwartzFn {
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
            a: self.a,
            b: self.b,
            omega: -self.omega,
        }
    }

    /// `x ↦ φ(x − t)`.
    pub fn translated(&self, t: f64) -> SchwartzFn {
        let phase = cis2pi(-self.omega * t);
        SchwartzFn {
            coeffs: taylor_shift(&self.coeffs, -t)
                .into_iter()
                .map(|c| c * phase)
                .collect(),
            a: self.a,
            b: self.b + t,
            omega: self.omega,
        }
    }

    pub(crate) fn packet(&self) -> Packet {
        Packet {
            factor: Complex64::new(1.0, 0.0),
            freq: self.omega,
            center: self.b,
            alpha: self.a,
            poly: taylor_shift(&self.coeffs, self.b),
        }
    }
}

/// Renders as `poly(c0,c1,…)*gauss(a,b)*mod(omega)`.
impl fmt::Display for SchwartzFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::syntax::{fmt_complex_bare, fmt_real};
        let coeffs: Vec<String> = self.coeffs.iter().map(|&c| fmt_complex_bare(c)).collect();
        write!(
            f,
            "poly({})*gauss({},{})*mod({})",
            coeffs.join(","),
            fmt_real(self.a),
            fmt_real(self.b),
            fmt_real(self.omega)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairingMethod {
    Quadrature,
    PointEval,
    TruncatedSum,
    Composite,
}

/// A numerical value together with a bound on its error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairingResult {
    pub value: Complex64,
    pub err_bound: f64,
    pub method: PairingMethod,
}

pub(crate) fn check_tol(tol: f64) -> Result<(), OracleError> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(OracleError::InvalidTolerance(tol))
    }
}
