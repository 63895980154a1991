use std::f64::consts::PI;

use num_complex::Complex64;

use super::packet::Envelope;
use super::quad::{integrate, panels_for};
use super::{check_tol, PairingMethod, PairingResult, SchwartzFn};
use crate::error::OracleError;
use crate::fourier::{Convention, INV_SQRT_2PI, INV_TWO_PI};

/// Transform of `φ` at `ξ` by quadrature over `[b − L, b + L]`, where the
/// Gaussian tail outside the window is bounded analytically.
pub fn ft_numeric(
    phi: &SchwartzFn,
    xi: f64,
    conv: Convention,
    tol: f64,
) -> Result<PairingResult, OracleError> {
    check_tol(tol)?;
    let (measure, kernel_cycles) = match conv {
        Convention::EngII => (1.0, xi),
        Convention::MathI => (INV_SQRT_2PI, xi * INV_TWO_PI),
    };
    let env: Envelope = phi.packet().envelope();
    let l = env.radius(0.25 * tol / measure, Envelope::tail_integral);
    let tail = measure * env.tail_integral(l);
    let cycles = kernel_cycles.abs() + phi.omega().abs();
    let panels = panels_for(2.0 * l, cycles, 1.5 / phi.a().sqrt());
    let coeffs = phi.coeffs();
    let (a, b) = (phi.a(), phi.b());
    // Angular frequency of the combined oscillation e^{2πiωx} e^{−ix·κ}.
    let angular = match conv {
        Convention::EngII => 2.0 * PI * (phi.omega() - xi),
        Convention::MathI => 2.0 * PI * phi.omega() - xi,
    };
    let q = integrate(
        |x| {
            let t = x - b;
            let v = super::packet::horner(coeffs, x)
                * ((-a * t * t).exp() * measure)
                * Complex64::cis(angular * x);
            Ok((v, 0.0))
        },
        b - l,
        b + l,
        panels,
        0.5 * tol,
        "ft_numeric",
    )?;
    Ok(PairingResult {
        value: q.value,
        err_bound: q.err + tail,
        method: PairingMethod::Quadrature,
    })
}

/// Exact transform of `φ` at `ξ` from the Gaussian-packet closed form.
pub fn ft_closed_form(phi: &SchwartzFn, xi: f64, conv: Convention) -> Complex64 {
    let hat = phi.packet().fourier_eng();
    match conv {
        Convention::EngII => hat.eval(xi),
        Convention::MathI => hat.dilated(INV_TWO_PI).scaled(INV_SQRT_2PI).eval(xi),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::Convention::{EngII, MathI};

    fn g() -> SchwartzFn {
        SchwartzFn::gauss_profile()
    }

    #[test]
    fn gaussian_transform_values() {
        let r = ft_numeric(&g(), 0.0, EngII, 1e-12).unwrap();
        assert!((r.value - 1.0).norm() < 1e-12);
        assert!(r.err_bound <= 1e-12);
        // ĝ(1) = e^{−π}
        let r = ft_numeric(&g(), 1.0, EngII, 1e-12).unwrap();
        assert!((r.value.re - 0.0432139182637723).abs() < 1e-12);
        // Definition I at 0: (2π)^{−1/2}
        let r = ft_numeric(&g(), 0.0, MathI, 1e-12).unwrap();
        assert!((r.value.re - 0.3989422804014327).abs() < 1e-12);
    }

    #[test]
    fn agrees_with_closed_form() {
        let phis = [
            SchwartzFn::new(
                vec![
                    Complex64::new(1.0, 0.5),
                    Complex64::new(-0.3, 0.0),
                    Complex64::new(0.2, 0.1),
                ],
                2.0,
                0.3,
                1.0,
            )
            .unwrap(),
            SchwartzFn::real(&[0.0, 1.0], PI, 0.0, 0.0).unwrap(),
            SchwartzFn::real(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0], 0.7, -1.0, -0.5).unwrap(),
        ];
        for phi in &phis {
            for conv in [EngII, MathI] {
                for i in -12..=12 {
                    let xi = 0.37 * i as f64;
                    let r = ft_numeric(phi, xi, conv, 1e-12).unwrap();
                    let exact = ft_closed_form(phi, xi, conv);
                    assert!(
                        (r.value - exact).norm() <= 1e-11 + r.err_bound,
                        "{phi} {conv} xi={xi}: {} vs {exact}",
                        r.value
                    );
                }
            }
        }
    }

    #[test]
    fn conventions_are_related_by_conversion() {
        let phi = SchwartzFn::new(
            vec![Complex64::new(0.4, -0.1), Complex64::new(1.0, 0.0)],
            2.0,
            0.3,
            1.0,
        )
        .unwrap();
        for i in -5..=5 {
            let xi = 0.9 * i as f64;
            let one = ft_numeric(&phi, xi, MathI, 1e-12).unwrap();
            let two = ft_numeric(&phi, xi / (2.0 * PI), EngII, 1e-12).unwrap();
            let bound = one.err_bound + INV_SQRT_2PI * two.err_bound + 1e-14;
            assert!(
                (one.value - INV_SQRT_2PI * two.value).norm() <= bound,
                "xi={xi}"
            );
        }
    }

    #[test]
    fn conjugate_symmetry_of_real_and_imaginary_functions() {
        let real = SchwartzFn::real(&[0.5, 1.0, -0.25], 2.0, 0.3, 0.0).unwrap();
        let imag = SchwartzFn::new(
            vec![Complex64::new(0.0, 0.5), Complex64::new(0.0, 1.0)],
            2.0,
            0.3,
            0.0,
        )
        .unwrap();
        for i in 0..=10 {
            let xi = 0.3 * i as f64;
            let p = ft_numeric(&real, xi, EngII, 1e-12).unwrap();
            let m = ft_numeric(&real, -xi, EngII, 1e-12).unwrap();
            assert!((m.value - p.value.conj()).norm() <= p.err_bound + m.err_bound + 1e-14);
            let p = ft_numeric(&imag, xi, EngII, 1e-12).unwrap();
            let m = ft_numeric(&imag, -xi, EngII, 1e-12).unwrap();
            assert!((m.value + p.value.conj()).norm() <= p.err_bound + m.err_bound + 1e-14);
        }
    }

    #[test]
    fn gaussian_ode_holds_numerically() {
        // ĝ' = −2πξ ĝ, via a fourth-order central difference.
        let h = 1e-3;
        let f = |xi: f64| ft_numeric(&g(), xi, EngII, 1e-14).unwrap().value;
        for i in -30..=30 {
            let xi = 0.1 * i as f64;
            let d = (f(xi - 2.0 * h) - 8.0 * f(xi - h) + 8.0 * f(xi + h) - f(xi + 2.0 * h))
                / (12.0 * h);
            assert!((d + 2.0 * PI * xi * f(xi)).norm() < 1e-6, "xi={xi}");
        }
    }

    #[test]
    fn rejects_bad_tolerance() {
        assert_eq!(
            ft_numeric(&g(), 0.0, EngII, 0.0),
            Err(OracleError::InvalidTolerance(0.0))
        );
    }
}
