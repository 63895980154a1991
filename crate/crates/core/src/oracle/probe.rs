use std::f64::consts::PI;

use num_complex::Complex64;

use super::packet::Envelope;
use super::transform::ft_numeric;
use super::SchwartzFn;
use crate::error::OracleError;
use crate::expr::cis2pi;
use crate::fourier::{Convention, INV_SQRT_2PI, INV_TWO_PI};

#[derive(Debug, Clone)]
enum Kind {
    Direct(SchwartzFn),
    Transformed {
        phi: SchwartzFn,
        conv: Convention,
        tol: f64,
    },
}

/// A function distributions are paired against: either a test function
/// itself or its transform evaluated by quadrature.
#[derive(Debug, Clone)]
pub struct ProbeSource {
    kind: Kind,
    envelope: Envelope,
    cycles: f64,
}

impl ProbeSource {
    pub fn direct(phi: SchwartzFn) -> Self {
        ProbeSource {
            envelope: phi.packet().envelope(),
            cycles: phi.omega().abs(),
            kind: Kind::Direct(phi),
        }
    }

    /// `ξ ↦ ft_numeric(φ, ξ, conv, tol)`. The tail envelope comes from the
    /// closed-form transform; values come from quadrature.
    pub fn transformed(phi: SchwartzFn, conv: Convention, tol: f64) -> Self {
        let hat = phi.packet().fourier_eng();
        let (envelope, cycles) = match conv {
            Convention::EngII => (hat.envelope(), phi.b().abs()),
            Convention::MathI => (
                hat.dilated(INV_TWO_PI).scaled(INV_SQRT_2PI).envelope(),
                phi.b().abs() / (2.0 * PI),
            ),
        };
        ProbeSource {
            kind: Kind::Transformed { phi, conv, tol },
            envelope,
            cycles,
        }
    }

    pub fn probe(&self) -> Probe<'_> {
        Probe {
            src: self,
            factor: Complex64::new(1.0, 0.0),
            dil: 1.0,
            off: 0.0,
            freq: 0.0,
        }
    }

    fn value(&self, y: f64) -> Result<(Complex64, f64), OracleError> {
        match &self.kind {
            Kind::Direct(phi) => Ok((phi.eval(y), 0.0)),
            Kind::Transformed { phi, conv, tol } => {
                let r = ft_numeric(phi, y, *conv, *tol)?;
                Ok((r.value, r.err_bound))
            }
        }
    }
}

/// `x ↦ factor · e^{2πi·freq·x} · ψ(dil·x + off)` for a source `ψ`.
#[derive(Debug, Clone, Copy)]
pub struct Probe<'a> {
    src: &'a ProbeSource,
    factor: Complex64,
    dil: f64,
    off: f64,
    freq: f64,
}

impl<'a> Probe<'a> {
    /// Value and a bound on its error.
    pub fn value(&self, x: f64) -> Result<(Complex64, f64), OracleError> {
        let (v, e) = self.src.value(self.dil * x + self.off)?;
        Ok((
            self.factor * cis2pi(self.freq * x) * v,
            self.factor.norm() * e,
        ))
    }

    /// `y ↦ k · e^{2πi·freq·y} · self(dil·y + off)`.
    pub fn pulled(&self, k: Complex64, dil: f64, off: f64, freq: f64) -> Probe<'a> {
        Probe {
            src: self.src,
            factor: k * self.factor * cis2pi(self.freq * off),
            dil: self.dil * dil,
            off: self.dil * off + self.off,
            freq: freq + self.freq * dil,
        }
    }

    pub(crate) fn envelope(&self) -> Envelope {
        self.src
            .envelope
            .pulled(self.factor.norm(), self.dil, self.off)
    }

    /// Rough bound on oscillation in cycles per unit, for panel sizing.
    pub(crate) fn cycles(&self) -> f64 {
        self.freq.abs() + self.dil * self.src.cycles
    }
}
