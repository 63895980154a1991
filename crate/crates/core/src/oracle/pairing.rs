use num_complex::Complex64;

use super::packet::Envelope;
use super::probe::{Probe, ProbeSource};
use super::quad::{integrate, panels_for};
use super::{check_tol, PairingMethod, PairingResult, SchwartzFn};
use crate::error::OracleError;
use crate::expr::{canonical_terms, cis2pi, eval_pointwise, Base, DistExpr, Kind};
use crate::fourier::{fourier, Convention};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `⟨u, φ⟩` with a rigorous error bound.
pub fn pair(u: &DistExpr, phi: &SchwartzFn, tol: f64) -> Result<PairingResult, OracleError> {
    let src = ProbeSource::direct(phi.clone());
    pair_with(u, &src.probe(), tol)
}

/// `⟨u, ψ⟩` for an arbitrary probe.
///
/// `u` is reduced to its canonical terms and each term
/// `c · e^{2πiνx} · A(λ(x − s))` is moved onto the probe by the adjoint
/// identities for shift, dilation and modulation, leaving one pairing of a
/// bare atom per term.
pub fn pair_with(u: &DistExpr, probe: &Probe<'_>, tol: f64) -> Result<PairingResult, OracleError> {
    check_tol(tol)?;
    u.validate()?;
    let terms = canonical_terms(u);
    let n = terms.len().max(1) as f64;
    let mut value = ZERO;
    let mut err = 0.0;
    let mut method = PairingMethod::Composite;
    for t in &terms {
        let pref = t.coef / t.dil;
        let pulled = probe.pulled(
            cis2pi(t.freq * t.shift),
            1.0 / t.dil,
            t.shift,
            t.freq / t.dil,
        );
        let budget = tol / (n * pref.norm());
        let (v, e, m) = pair_atom(t.base, &pulled, budget)?;
        value += pref * v;
        err += pref.norm() * e;
        method = m;
    }
    if terms.len() != 1 {
        method = if terms.is_empty() {
            PairingMethod::PointEval
        } else {
            PairingMethod::Composite
        };
    }
    Ok(PairingResult {
        value,
        err_bound: err,
        method,
    })
}

fn pair_atom(
    base: Base,
    probe: &Probe<'_>,
    budget: f64,
) -> Result<(Complex64, f64, PairingMethod), OracleError> {
    let env = probe.envelope();
    let width = 1.5 / env.alpha.sqrt();
    match base {
        Base::Delta => {
            let (v, e) = probe.value(0.0)?;
            Ok((v, e, PairingMethod::PointEval))
        }
        Base::Comb => {
            let l = env.radius(0.5 * budget, Envelope::tail_sum);
            let tail = env.tail_sum(l);
            let lo = (env.center - l).ceil() as i64;
            let hi = (env.center + l).floor() as i64;
            let mut sum = ZERO;
            let mut err = tail;
            for k in lo..=hi {
                let (v, e) = probe.value(k as f64)?;
                sum += v;
                err += e;
            }
            Ok((sum, err, PairingMethod::TruncatedSum))
        }
        Base::Rect => {
            let panels = panels_for(1.0, probe.cycles(), width);
            let q = integrate(
                |x| probe.value(x),
                -0.5,
                0.5,
                panels,
                0.5 * budget,
                "pair:rect",
            )?;
            Ok((q.value, q.err, PairingMethod::Quadrature))
        }
        Base::Sinc | Base::Gauss | Base::One => {
            // Each of these atoms is bounded by 1 in modulus.
            let l = env.radius(0.25 * budget, Envelope::tail_integral);
            let tail = env.tail_integral(l);
            let atom: fn(f64) -> f64 = match base {
                Base::Sinc => crate::expr::sinc,
                Base::Gauss => crate::expr::gauss,
                _ => |_| 1.0,
            };
            let own = if base == Base::Sinc { 0.5 } else { 0.0 };
            let panels = panels_for(2.0 * l, probe.cycles() + own, width.min(1.0));
            let q = integrate(
                |x| {
                    let (v, e) = probe.value(x)?;
                    let w = atom(x);
                    Ok((v * w, e * w.abs()))
                },
                env.center - l,
                env.center + l,
                panels,
                0.5 * budget,
                "pair",
            )?;
            Ok((q.value, q.err + tail, PairingMethod::Quadrature))
        }
    }
}

/// `∫ u(x) φ(x) dx` for regular `u`, integrating the expression tree as
/// written instead of reducing it through the adjoint identities.
pub fn pair_direct(u: &DistExpr, phi: &SchwartzFn, tol: f64) -> Result<PairingResult, OracleError> {
    check_tol(tol)?;
    if crate::expr::classify(u) != Kind::Regular {
        return Err(crate::error::ExprError::SingularEvaluation.into());
    }
    let terms = canonical_terms(u);
    let sup: f64 = terms.iter().map(|t| t.coef.norm()).sum();
    if sup == 0.0 {
        return Ok(PairingResult {
            value: ZERO,
            err_bound: 0.0,
            method: PairingMethod::Quadrature,
        });
    }
    let env = phi.packet().envelope();
    let l = env.radius(0.25 * tol / sup, Envelope::tail_integral);
    let tail = sup * env.tail_integral(l);
    let (lo, hi) = (env.center - l, env.center + l);
    let mut cuts = vec![lo, hi];
    let mut cycles = phi.omega().abs();
    for t in &terms {
        cycles += t.freq.abs() + t.dil;
        if t.base == Base::Rect {
            for edge in [t.shift - 0.5 / t.dil, t.shift + 0.5 / t.dil] {
                if edge > lo && edge < hi {
                    cuts.push(edge);
                }
            }
        }
    }
    cuts.sort_by(f64::total_cmp);
    let width = 1.5 / phi.a().sqrt();
    let mut value = ZERO;
    let mut err = tail;
    let pieces = (cuts.len() - 1) as f64;
    for w in cuts.windows(2) {
        let panels = panels_for(w[1] - w[0], cycles, width);
        let q = integrate(
            |x| Ok((eval_pointwise(u, x)? * phi.eval(x), 0.0)),
            w[0],
            w[1],
            panels,
            0.5 * tol / pieces,
            "pair_direct",
        )?;
        value += q.value;
        err += q.err;
    }
    Ok(PairingResult {
        value,
        err_bound: err,
        method: PairingMethod::Quadrature,
    })
}

/// Both sides of `⟨û, φ⟩ = ⟨u, φ̂⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FtCheck {
    /// `⟨û, φ⟩` with `û` from the symbolic engine.
    pub lhs: PairingResult,
    /// `⟨u, φ̂⟩` with `φ̂` from quadrature.
    pub rhs: PairingResult,
    pub residual: f64,
}

pub fn verify_ft_detail(
    u: &DistExpr,
    conv: Convention,
    phi: &SchwartzFn,
    tol: f64,
) -> Result<FtCheck, OracleError> {
    let hat = fourier(u, conv)?;
    verify_candidate(u, &hat.expr, conv, phi, tol)
}

/// As [`verify_ft_detail`], but with a caller-supplied claimed transform
/// `hat` of `u` in place of the engine's.
pub fn verify_candidate(
    u: &DistExpr,
    hat: &DistExpr,
    conv: Convention,
    phi: &SchwartzFn,
    tol: f64,
) -> Result<FtCheck, OracleError> {
    check_tol(tol)?;
    let lhs = pair(hat, phi, 0.1 * tol)?;
    let src = ProbeSource::transformed(phi.clone(), conv, 1e-3 * tol);
    let rhs = pair_with(u, &src.probe(), 0.1 * tol)?;
    Ok(FtCheck {
        lhs,
        rhs,
        residual: (lhs.value - rhs.value).norm(),
    })
}

/// `|⟨û, φ⟩ − ⟨u, φ̂⟩|`.
pub fn verify_ft(
    u: &DistExpr,
    conv: Convention,
    phi: &SchwartzFn,
    tol: f64,
) -> Result<f64, OracleError> {
    verify_ft_detail(u, conv, phi, tol).map(|c| c.residual)
}
