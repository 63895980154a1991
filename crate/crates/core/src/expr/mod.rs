//! Distribution expressions.
//!
//! A [`DistExpr`] is a finite tree over a handful of atoms (the rectangle,
//! the normalized sinc, the Gaussian `e^{-πx²}`, the constant one, point
//! masses, the unit-spaced Dirac comb and the complex exponentials) and a
//! small set of combinators. Every expression denotes a tempered
//! distribution on the real line; the regular ones are also functions and
//! can be evaluated pointwise.

mod normal;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::ExprError;

pub use normal::{approx_eq, normalize};
pub(crate) use normal::{canonical_terms, terms_to_expr, Base, Term};

#[derive(Debug, Clone, PartialEq)]
pub enum DistExpr {
    /// `1` on `|x| ≤ 1/2`, `0` elsewhere (boundary inclusive).
    Rect,
    /// `sin(πx)/(πx)`, with value `1` at the origin.
    Sinc,
    /// `e^{-πx²}`.
    Gauss,
    One,
    /// `δ(x - x0)`.
    Delta(f64),
    /// `Σ_n δ(x - n)`.
    Comb,
    /// `e^{2πixξ0}`.
    CExp(f64),
    /// `cos(2πxξ0)`.
    Cos(f64),
    /// `sin(2πxξ0)`.
    Sin(f64),
    Scale(Complex64, Box<DistExpr>),
    Sum(Vec<DistExpr>),
    /// `e(x - x0)`.
    Shift(Box<DistExpr>, f64),
    /// `e(λx)` with `λ > 0`.
    Dilate(Box<DistExpr>, f64),
    /// `e^{2πixξ0} · e(x)`.
    Modulate(Box<DistExpr>, f64),
    Conjugate(Box<DistExpr>),
    RealPart(Box<DistExpr>),
    ImagPart(Box<DistExpr>),
}

/// Coarse classification of an expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    /// A locally integrable, bounded function; pointwise evaluable.
    Regular,
    /// Every additive term carries a point mass or a comb.
    Singular,
    Mixed,
}

impl DistExpr {
    pub fn scale(self, c: impl Into<Complex64>) -> Self {
        DistExpr::Scale(c.into(), Box::new(self))
    }

    pub fn shift(self, x0: f64) -> Self {
        DistExpr::Shift(Box::new(self), x0)
    }

    pub fn dilate(self, lambda: f64) -> Self {
        DistExpr::Dilate(Box::new(self), lambda)
    }

    pub fn modulate(self, xi0: f64) -> Self {
        DistExpr::Modulate(Box::new(self), xi0)
    }

    pub fn conj(self) -> Self {
        DistExpr::Conjugate(Box::new(self))
    }

    pub fn re(self) -> Self {
        DistExpr::RealPart(Box::new(self))
    }

    pub fn im(self) -> Self {
        DistExpr::ImagPart(Box::new(self))
    }

    pub fn sum(terms: impl IntoIterator<Item = DistExpr>) -> Self {
        DistExpr::Sum(terms.into_iter().collect())
    }

    /// Checks the structural invariants: finite parameters, positive dilations,
    /// non-empty sums.
    pub fn validate(&self) -> Result<(), ExprError> {
        fn finite(node: &'static str, value: f64) -> Result<(), ExprError> {
            if value.is_finite() {
                Ok(())
            } else {
                Err(ExprError::NonFinite { node, value })
            }
        }
        match self {
            DistExpr::Rect | DistExpr::Sinc | DistExpr::Gauss | DistExpr::One | DistExpr::Comb => {
                Ok(())
            }
            DistExpr::Delta(x) => finite("delta", *x),
            DistExpr::CExp(x) => finite("cexp", *x),
            DistExpr::Cos(x) => finite("cos2pi", *x),
            DistExpr::Sin(x) => finite("sin2pi", *x),
            DistExpr::Scale(c, e) => {
                finite("scale", c.re)?;
                finite("scale", c.im)?;
                e.validate()
            }
            DistExpr::Sum(es) => {
                if es.is_empty() {
                    return Err(ExprError::UnsupportedExpr("empty sum".into()));
                }
                es.iter().try_for_each(DistExpr::validate)
            }
            DistExpr::Shift(e, x) => {
                finite("shift", *x)?;
                e.validate()
            }
            DistExpr::Modulate(e, x) => {
                finite("modulate", *x)?;
                e.validate()
            }
            DistExpr::Dilate(e, l) => {
                if !(l.is_finite() && *l > 0.0) {
                    return Err(ExprError::InvalidDilation(*l));
                }
                e.validate()
            }
            DistExpr::Conjugate(e) | DistExpr::RealPart(e) | DistExpr::ImagPart(e) => e.validate(),
        }
    }

    /// True if a `Delta` or `Comb` node occurs anywhere in the tree.
    pub fn contains_singular_atom(&self) -> bool {
        match self {
            DistExpr::Delta(_) | DistExpr::Comb => true,
            DistExpr::Rect
            | DistExpr::Sinc
            | DistExpr::Gauss
            | DistExpr::One
            | DistExpr::CExp(_)
            | DistExpr::Cos(_)
            | DistExpr::Sin(_) => false,
            DistExpr::Sum(es) => es.iter().any(DistExpr::contains_singular_atom),
            DistExpr::Scale(_, e)
            | DistExpr::Shift(e, _)
            | DistExpr::Dilate(e, _)
            | DistExpr::Modulate(e, _)
            | DistExpr::Conjugate(e)
            | DistExpr::RealPart(e)
            | DistExpr::ImagPart(e) => e.contains_singular_atom(),
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            DistExpr::Sum(es) => 1 + es.iter().map(DistExpr::size).sum::<usize>(),
            DistExpr::Scale(_, e)
            | DistExpr::Shift(e, _)
            | DistExpr::Dilate(e, _)
            | DistExpr::Modulate(e, _)
            | DistExpr::Conjugate(e)
            | DistExpr::RealPart(e)
            | DistExpr::ImagPart(e) => 1 + e.size(),
            _ => 1,
        }
    }
}

/// Classifies `e` by the atoms of its canonical form, so that terms which
/// cancel under normalization (`im(delta(0))`, `0*comb`) do not count.
pub fn classify(e: &DistExpr) -> Kind {
    let terms = canonical_terms(e);
    let singular = terms.iter().filter(|t| t.base.is_singular()).count();
    if singular == 0 {
        Kind::Regular
    } else if singular == terms.len() {
        Kind::Singular
    } else {
        Kind::Mixed
    }
}

pub fn rect(x: f64) -> f64 {
    if x.abs() <= 0.5 {
        1.0
    } else {
        0.0
    }
}

pub fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        let px = PI * x;
        px.sin() / px
    }
}

pub fn gauss(x: f64) -> f64 {
    (-PI * x * x).exp()
}

/// `e^{2πi·cycles}`.
pub(crate) fn cis2pi(cycles: f64) -> Complex64 {
    Complex64::cis(2.0 * PI * cycles)
}

/// Pointwise value of a regular expression.
///
/// The tree is evaluated as written. Trees that mention `Delta` or `Comb`
/// are accepted only when those parts cancel in the canonical form, in
/// which case the canonical form is evaluated instead.
pub fn eval_pointwise(e: &DistExpr, x: f64) -> Result<Complex64, ExprError> {
    if e.contains_singular_atom() {
        if classify(e) != Kind::Regular {
            return Err(ExprError::SingularEvaluation);
        }
        return Ok(eval_tree(&normalize(e), x));
    }
    Ok(eval_tree(e, x))
}

fn eval_tree(e: &DistExpr, x: f64) -> Complex64 {
    let real = |v: f64| Complex64::new(v, 0.0);
    match e {
        DistExpr::Rect => real(rect(x)),
        DistExpr::Sinc => real(sinc(x)),
        DistExpr::Gauss => real(gauss(x)),
        DistExpr::One => real(1.0),
        DistExpr::CExp(xi) => cis2pi(x * xi),
        DistExpr::Cos(xi) => real((2.0 * PI * x * xi).cos()),
        DistExpr::Sin(xi) => real((2.0 * PI * x * xi).sin()),
        DistExpr::Delta(_) | DistExpr::Comb => unreachable!("singular atoms are filtered out"),
        DistExpr::Scale(c, e) => c * eval_tree(e, x),
        DistExpr::Sum(es) => es.iter().map(|e| eval_tree(e, x)).sum(),
        DistExpr::Shift(e, x0) => eval_tree(e, x - x0),
        DistExpr::Dilate(e, l) => eval_tree(e, l * x),
        DistExpr::Modulate(e, xi) => cis2pi(x * xi) * eval_tree(e, x),
        DistExpr::Conjugate(e) => eval_tree(e, x).conj(),
        DistExpr::RealPart(e) => real(eval_tree(e, x).re),
        DistExpr::ImagPart(e) => real(eval_tree(e, x).im),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&DistExpr::Rect), Kind::Regular);
        assert_eq!(
            classify(&DistExpr::sum([DistExpr::Gauss, DistExpr::Delta(0.0)])),
            Kind::Mixed
        );
        assert_eq!(classify(&DistExpr::Comb.shift(0.25)), Kind::Singular);
        assert_eq!(classify(&DistExpr::CExp(1.0).dilate(2.0)), Kind::Regular);
    }

    #[test]
    fn cancelled_singular_parts_are_regular() {
        // δ is real, so its imaginary part vanishes.
        let e = DistExpr::sum([DistExpr::Delta(0.0).im(), DistExpr::Gauss]);
        assert_eq!(classify(&e), Kind::Regular);
        assert!((eval_pointwise(&e, 0.0).unwrap() - 1.0).norm() < 1e-15);
        assert_eq!(classify(&DistExpr::Comb.scale(0.0)), Kind::Regular);
    }

    #[test]
    fn pointwise_examples() {
        assert_eq!(
            eval_pointwise(&DistExpr::Rect, 0.5).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        assert_eq!(
            eval_pointwise(&DistExpr::Rect, -0.5).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        assert_eq!(eval_pointwise(&DistExpr::Rect, 0.5000001).unwrap().re, 0.0);
        assert_eq!(
            eval_pointwise(&DistExpr::Sinc, 0.0).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        assert_eq!(
            eval_pointwise(&DistExpr::Gauss.shift(1.0), 1.0).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        assert!(eval_pointwise(&DistExpr::Sinc, 1.0).unwrap().norm() < 1e-16);
    }

    #[test]
    fn singular_evaluation_is_rejected() {
        assert_eq!(
            eval_pointwise(&DistExpr::Delta(0.0), 0.0),
            Err(ExprError::SingularEvaluation)
        );
        let mixed = DistExpr::sum([DistExpr::Rect, DistExpr::Comb]);
        assert_eq!(
            eval_pointwise(&mixed, 0.3),
            Err(ExprError::SingularEvaluation)
        );
    }

    #[test]
    fn combinators_evaluate_pointwise() {
        let e = DistExpr::Gauss
            .dilate(2.0)
            .shift(0.5)
            .scale(Complex64::new(0.0, 2.0));
        let got = eval_pointwise(&e, 1.0).unwrap();
        assert!((got - Complex64::new(0.0, 2.0 * gauss(1.0))).norm() < 1e-15);
        let c = eval_pointwise(&DistExpr::CExp(0.25).conj(), 1.0).unwrap();
        assert!((c - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        let s = eval_pointwise(&DistExpr::CExp(0.25).im(), 1.0).unwrap();
        assert!((s - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn validate_rejects_bad_dilation() {
        assert_eq!(
            DistExpr::Gauss.dilate(0.0).validate(),
            Err(ExprError::InvalidDilation(0.0))
        );
        assert!(DistExpr::Gauss.dilate(-1.0).validate().is_err());
        assert!(DistExpr::Delta(f64::NAN).validate().is_err());
        assert!(DistExpr::Sum(vec![]).validate().is_err());
        assert!(DistExpr::Gauss.dilate(0.5).shift(1.0).validate().is_ok());
    }
}
