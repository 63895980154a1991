//! Composite Gauss–Legendre quadrature with panel halving.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::OracleError;

const ORDER: usize = 10;
const MAX_PANELS: usize = 1 << 15;

fn rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| legendre_rule(ORDER))
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`,
/// by Newton iteration on the three-term recurrence.
pub(crate) fn legendre_rule(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Quadrature {
    pub value: Complex64,
    /// Halving difference plus the integrated pointwise error of `f`.
    pub err: f64,
    pub panels: usize,
}

fn composite<F>(f: &mut F, lo: f64, hi: f64, panels: usize) -> Result<(Complex64, f64), OracleError>
where
    F: FnMut(f64) -> Result<(Complex64, f64), OracleError>,
{
    let h = (hi - lo) / panels as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut perr = 0.0;
    for p in 0..panels {
        let mid = lo + (p as f64 + 0.5) * h;
        for &(x, w) in rule() {
            let (v, e) = f(mid + 0.5 * h * x)?;
            sum += w * v;
            perr += w * e;
        }
    }
    Ok((sum * (0.5 * h), perr * 0.5 * h))
}

/// Integrates `f` over `[lo, hi]`, starting from `panels` panels and halving
/// until two successive estimates differ by at most `tol`. `f` returns a
/// value and a bound on that value's own error.
pub(crate) fn integrate<F>(
    mut f: F,
    lo: f64,
    hi: f64,
    panels: usize,
    tol: f64,
    what: &'static str,
) -> Result<Quadrature, OracleError>
where
    F: FnMut(f64) -> Result<(Complex64, f64), OracleError>,
{
    if hi <= lo {
        return Ok(Quadrature {
            value: Complex64::new(0.0, 0.0),
            err: 0.0,
            panels: 0,
        });
    }
    let mut n = panels.max(1);
    let (mut coarse, _) = composite(&mut f, lo, hi, n)?;
    loop {
        let (fine, perr) = composite(&mut f, lo, hi, 2 * n)?;
        let diff = (fine - coarse).norm();
        // Rounding floor: the sum cannot resolve differences below this.
        let floor = 64.0 * f64::EPSILON * fine.norm();
        if diff <= tol.max(floor) {
            return Ok(Quadrature {
                value: fine,
                err: diff + perr,
                panels: 2 * n,
            });
        }
        n *= 2;
        if n > MAX_PANELS {
            return Err(OracleError::ToleranceNotMet {
                what,
                achieved: diff,
                tol,
            });
        }
        coarse = fine;
    }
}

/// Initial panel count for an integrand oscillating at up to `cycles`
/// cycles per unit with envelope width `width` over an interval of `len`.
pub(crate) fn panels_for(len: f64, cycles: f64, width: f64) -> usize {
    let h = (1.0 / (4.0 * cycles + 1.0)).min(width).max(1e-6);
    ((len / h).ceil() as usize).clamp(1, MAX_PANELS / 4)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let r = legendre_rule(ORDER);
        let w: f64 = r.iter().map(|p| p.1).sum();
        assert!((w - 2.0).abs() < 1e-14);
        // ∫ x^18 over [-1, 1] = 2/19
        let m: f64 = r.iter().map(|&(x, w)| w * x.powi(18)).sum();
        assert!((m - 2.0 / 19.0).abs() < 1e-14);
    }

    #[test]
    fn gaussian_integral() {
        let g = |x: f64| {
            Ok((
                Complex64::new((-std::f64::consts::PI * x * x).exp(), 0.0),
                0.0,
            ))
        };
        let q = integrate(g, -8.0, 8.0, 4, 1e-14, "test").unwrap();
        assert!((q.value.re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn oscillatory_integral() {
        // ∫_0^1 e^{15πix} dx = (e^{15πi} − 1)/(15πi) = −2/(15πi) = i/(7.5π)
        let f = |x: f64| Ok((Complex64::cis(2.0 * std::f64::consts::PI * 7.5 * x), 0.0));
        let q = integrate(f, 0.0, 1.0, 1, 1e-13, "test").unwrap();
        let want = Complex64::new(0.0, 1.0 / (7.5 * std::f64::consts::PI));
        assert!((q.value - want).norm() < 1e-13, "{}", q.value);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        // Discontinuous integrand: halving never reaches 1e-15.
        let f = |x: f64| Ok((Complex64::new(if x < 0.3 { 1.0 } else { 0.0 }, 0.0), 0.0));
        let err = integrate(f, 0.0, 1.0, 1, 1e-15, "step").unwrap_err();
        assert!(matches!(
            err,
            OracleError::ToleranceNotMet { what: "step", .. }
        ));
    }
}
