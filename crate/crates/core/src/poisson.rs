//! Poisson summation: `Σ φ(x + n) = Σ φ̂(n) e^{2πinx}`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::OracleError;
use crate::expr::DistExpr;
use crate::fourier::Convention;
use crate::oracle::packet::Envelope;
use crate::oracle::{check_tol, pair, Probe, ProbeSource, SchwartzFn};

/// A truncated lattice sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: Complex64,
    /// Largest `|n|` included.
    pub k: u64,
    /// Bound on the truncation error plus the error of the summands.
    pub tail_bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PeriodizationReport {
    pub x: f64,
    #[serde(serialize_with = "ser_complex")]
    pub lhs: Complex64,
    #[serde(serialize_with = "ser_complex")]
    pub rhs: Complex64,
    pub k_lhs: u64,
    pub k_rhs: u64,
    pub residual: f64,
    pub tail_bound: f64,
}

fn ser_complex<S: serde::Serializer>(c: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    [c.re, c.im].serialize(s)
}

fn reduce(x: f64) -> f64 {
    let r = x - x.floor();
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// `Σ_{n ∈ ℤ} ψ(n)` over the integers with `|n − c| ≤ L`, where the
/// envelope tail beyond `L` is at most `eps`.
fn lattice_sum(probe: &Probe<'_>, eps: f64) -> Result<SeriesSum, OracleError> {
    let env = probe.envelope();
    let l = env.radius(eps, Envelope::tail_sum);
    let lo = (env.center - l).ceil() as i64;
    let hi = (env.center + l).floor() as i64;
    let mut value = Complex64::new(0.0, 0.0);
    let mut tail_bound = env.tail_sum(l);
    for n in lo..=hi {
        let (v, e) = probe.value(n as f64)?;
        value += v;
        tail_bound += e;
    }
    Ok(SeriesSum {
        value,
        k: lo.unsigned_abs().max(hi.unsigned_abs()),
        tail_bound,
    })
}

/// `Σ_n φ(x + n)`, with `x` reduced mod 1 first.
pub fn periodize(phi: &SchwartzFn, x: f64, tol: f64) -> Result<SeriesSum, OracleError> {
    check_tol(tol)?;
    let src = ProbeSource::direct(phi.clone());
    let probe = src
        .probe()
        .pulled(Complex64::new(1.0, 0.0), 1.0, reduce(x), 0.0);
    lattice_sum(&probe, 0.5 * tol)
}

/// `Σ_n φ̂(n) e^{2πinx}` with `φ̂` from quadrature (engineering
/// convention). The truncation point comes from the closed-form envelope
/// of `φ̂`; doubling it must change the sum by less than `tol/4`.
pub fn fourier_series_side(phi: &SchwartzFn, x: f64, tol: f64) -> Result<SeriesSum, OracleError> {
    check_tol(tol)?;
    let inner = 1e-3 * tol;
    let src = ProbeSource::transformed(phi.clone(), Convention::EngII, inner);
    let probe = src
        .probe()
        .pulled(Complex64::new(1.0, 0.0), 1.0, 0.0, reduce(x));
    let s = lattice_sum(&probe, 0.25 * tol)?;
    let k = s.k as i64;
    let mut outer = Complex64::new(0.0, 0.0);
    let mut outer_err = 0.0;
    for n in (k + 1)..=(2 * k + 1) {
        for m in [n, -n] {
            let (v, e) = probe.value(m as f64)?;
            outer += v;
            outer_err += e;
        }
    }
    if outer.norm() > 0.25 * tol + outer_err {
        return Err(OracleError::ToleranceNotMet {
            what: "fourier_series_side doubling check",
            achieved: outer.norm(),
            tol: 0.25 * tol,
        });
    }
    Ok(s)
}

pub fn periodization_report(
    phi: &SchwartzFn,
    x: f64,
    tol: f64,
) -> Result<PeriodizationReport, OracleError> {
    let lhs = periodize(phi, x, 0.5 * tol)?;
    let rhs = fourier_series_side(phi, x, 0.5 * tol)?;
    Ok(PeriodizationReport {
        x: reduce(x),
        lhs: lhs.value,
        rhs: rhs.value,
        k_lhs: lhs.k,
        k_rhs: rhs.k,
        residual: (lhs.value - rhs.value).norm(),
        tail_bound: lhs.tail_bound + rhs.tail_bound,
    })
}

/// Largest `|Σ φ(x + n) − Σ φ̂(n) e^{2πinx}|` over `xs`.
pub fn psf_check(phi: &SchwartzFn, xs: &[f64], tol: f64) -> Result<f64, OracleError> {
    xs.iter()
        .map(|&x| periodization_report(phi, x, tol).map(|r| r.residual))
        .try_fold(0.0, |m: f64, r| r.map(|r| m.max(r)))
}

/// `|⟨Ш, φ⟩ − Σ φ̂(n)|`, the two sides of `Ш̂ = Ш` computed independently.
pub fn comb_selfdual_check(phi: &SchwartzFn, tol: f64) -> Result<f64, OracleError> {
    check_tol(tol)?;
    let lhs = pair(&DistExpr::Comb, phi, 0.5 * tol)?;
    let rhs = fourier_series_side(phi, 0.0, 0.5 * tol)?;
    Ok((lhs.value - rhs.value).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::standard_family;
    use crate::oracle::verify_ft;

    fn g() -> SchwartzFn {
        SchwartzFn::gauss_profile()
    }

    fn shifted_g() -> SchwartzFn {
        SchwartzFn::real(&[1.0], std::f64::consts::PI, 0.5, 0.0).unwrap()
    }

    #[test]
    fn periodization_examples() {
        let s = periodize(&g(), 0.0, 1e-15).unwrap();
        assert!((s.value.re - 1.0864348112133082).abs() < 1e-15);
        assert!(s.k <= 7);
        // Σ e^{−π(n − 1/2)²}, frozen from a partial-sum oracle.
        let s = periodize(&shifted_g(), 0.0, 1e-15).unwrap();
        assert!(
            (s.value.re - 0.9135791381561168).abs() < 1e-15,
            "{}",
            s.value
        );
        let phi = standard_family()[21].clone();
        for &x in &[0.0, 0.3, 0.75] {
            let a = periodize(&phi, x, 1e-13).unwrap();
            let b = periodize(&phi.translated(1.0), x, 1e-13).unwrap();
            let c = periodize(&phi, x + 3.0, 1e-13).unwrap();
            assert!((a.value - b.value).norm() <= a.tail_bound + b.tail_bound + 1e-15);
            assert!((a.value - c.value).norm() <= a.tail_bound + c.tail_bound + 1e-15);
        }
    }

    #[test]
    fn fourier_series_examples() {
        let s = fourier_series_side(&g(), 0.0, 1e-12).unwrap();
        assert!((s.value.re - 1.0864348112133082).abs() < 1e-12);
        let modulated = SchwartzFn::real(&[1.0], 2.0, 0.3, 1.0).unwrap();
        let r = periodization_report(&modulated, 0.0, 1e-10).unwrap();
        assert!(r.residual < 1e-8);
    }

    #[test]
    fn psf_examples() {
        assert!(psf_check(&g(), &[0.0], 1e-12).unwrap() < 1e-10);
        let odd = SchwartzFn::real(&[0.0, 1.0], std::f64::consts::PI, 0.0, 0.0).unwrap();
        let r = periodization_report(&odd, 0.0, 1e-12).unwrap();
        assert!(r.lhs.norm() < 1e-15 && r.rhs.norm() < 1e-11, "{r:?}");
    }

    #[test]
    fn comb_self_duality() {
        assert!(comb_selfdual_check(&g(), 1e-12).unwrap() < 1e-10);
        let odd = SchwartzFn::real(&[0.0, 1.0], std::f64::consts::PI, 0.0, 0.0).unwrap();
        assert!(comb_selfdual_check(&odd, 1e-12).unwrap() < 1e-11);
        assert!(comb_selfdual_check(&shifted_g(), 1e-10).unwrap() < 1e-8);
    }

    #[test]
    fn agrees_with_verify_ft() {
        let phi = standard_family()[13].clone();
        let a = comb_selfdual_check(&phi, 1e-10).unwrap();
        let b = verify_ft(&DistExpr::Comb, Convention::EngII, &phi, 1e-10).unwrap();
        assert!((a - b).abs() < 2e-10);
    }
}
