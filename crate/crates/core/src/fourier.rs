//! Symbolic Fourier transform.
//!
//! The engine works on canonical terms `c · e^{2πiνx} · A(λ(x − s))`. Each
//! term is transformed by looking up `Â` in the atom table and applying the
//! structural laws (engineering convention):
//!
//! ```text
//! F[A(λ·)]          = (1/λ) Â(·/λ)
//! F[u(· − s)]       = e^{−2πisξ} û
//! F[e^{2πiν·} u]    = û(· − ν)
//! ```
//!
//! Each step strictly consumes one wrapper of the term, so the rewrite
//! terminates in at most four steps per term. Results in the mathematical
//! convention are always obtained from the engineering result by
//! [`convert`].

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::ExprError;
use crate::expr::{canonical_terms, terms_to_expr, Base, DistExpr, Term};

/// `(2π)^{-1/2}`.
pub const INV_SQRT_2PI: f64 = 0.3989422804014327;
/// `(2π)^{1/2}`; `INV_SQRT_2PI * SQRT_2PI == 1.0` exactly in binary64.
pub const SQRT_2PI: f64 = 2.5066282746310002;
pub const TWO_PI: f64 = 2.0 * PI;
/// `1/(2π)`; `INV_TWO_PI * TWO_PI == 1.0` exactly in binary64.
pub const INV_TWO_PI: f64 = 0.15915494309189535;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convention {
    /// Kernel `e^{−ixξ}`, measure `(2π)^{−1/2} dx`.
    MathI,
    /// Kernel `e^{−2πixξ}`, measure `dx`.
    EngII,
}

impl Convention {
    pub fn name(self) -> &'static str {
        match self {
            Convention::MathI => "math",
            Convention::EngII => "eng",
        }
    }
}

impl std::str::FromStr for Convention {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "math" | "MathI" | "I" => Ok(Convention::MathI),
            "eng" | "EngII" | "II" => Ok(Convention::EngII),
            other => Err(format!(
                "unknown convention {other:?} (expected math or eng)"
            )),
        }
    }
}

impl std::fmt::Display for Convention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransformResult {
    pub expr: DistExpr,
    pub convention: Convention,
    /// Names of the rules applied, in order of first use.
    pub rules: Vec<&'static str>,
}

fn note(rules: &mut Vec<&'static str>, rule: &'static str) {
    if !rules.contains(&rule) {
        rules.push(rule);
    }
}

fn note_input_rules(e: &DistExpr, rules: &mut Vec<&'static str>) {
    match e {
        DistExpr::Cos(_) => note(rules, "expand:cos2pi"),
        DistExpr::Sin(_) => note(rules, "expand:sin2pi"),
        DistExpr::Sum(es) => es.iter().for_each(|e| note_input_rules(e, rules)),
        DistExpr::Conjugate(e) => {
            note(rules, "conjugation");
            note_input_rules(e, rules)
        }
        DistExpr::RealPart(e) => {
            note(rules, "real-part");
            note_input_rules(e, rules)
        }
        DistExpr::ImagPart(e) => {
            note(rules, "imag-part");
            note_input_rules(e, rules)
        }
        DistExpr::Scale(_, e)
        | DistExpr::Shift(e, _)
        | DistExpr::Dilate(e, _)
        | DistExpr::Modulate(e, _) => note_input_rules(e, rules),
        _ => {}
    }
}

fn atom_transform(base: Base, rules: &mut Vec<&'static str>) -> Term {
    let (image, rule) = match base {
        Base::Rect => (Base::Sinc, "table:rect->sinc"),
        Base::Sinc => (Base::Rect, "table:sinc->rect"),
        Base::Gauss => (Base::Gauss, "table:gauss->gauss"),
        Base::One => (Base::Delta, "table:one->delta"),
        Base::Delta => (Base::One, "table:delta->one"),
        Base::Comb => (Base::Comb, "table:comb->comb"),
    };
    note(rules, rule);
    Term::atom(image)
}

fn transform_term(t: &Term, rules: &mut Vec<&'static str>) -> Term {
    let mut out = atom_transform(t.base, rules);
    if t.dil != 1.0 {
        note(rules, "dilation");
        let inv = 1.0 / t.dil;
        out = out.dilated(inv).scaled(Complex64::new(inv, 0.0));
    }
    if t.shift != 0.0 {
        note(rules, "shift->modulation");
        out = out.modulated(-t.shift);
    }
    if t.freq != 0.0 {
        note(rules, "modulation->shift");
        out = out.shifted(t.freq);
    }
    if t.coef != Complex64::new(1.0, 0.0) {
        note(rules, "linearity:scale");
    }
    out.scaled(t.coef)
}

fn fourier_eng(e: &DistExpr) -> Result<TransformResult, ExprError> {
    e.validate()?;
    let mut rules = vec!["normalize"];
    note_input_rules(e, &mut rules);
    let terms = canonical_terms(e);
    if terms.len() > 1 {
        note(&mut rules, "linearity:sum");
    }
    let image: Vec<Term> = terms
        .iter()
        .map(|t| transform_term(t, &mut rules))
        .collect();
    // Re-run the canonical pass so the image is merged and ordered.
    let expr = terms_to_expr(&canonical_terms(&terms_to_expr(&image)));
    Ok(TransformResult {
        expr,
        convention: Convention::EngII,
        rules,
    })
}

/// Symbolic Fourier transform of `e` under `conv`.
pub fn fourier(e: &DistExpr, conv: Convention) -> Result<TransformResult, ExprError> {
    let eng = fourier_eng(e)?;
    Ok(match conv {
        Convention::EngII => eng,
        Convention::MathI => convert(&eng, Convention::MathI),
    })
}

/// Rewrites a transform between conventions:
/// `f̂₁(ξ) = (2π)^{−1/2} f̂₂(ξ/2π)` and `f̂₂(ξ) = (2π)^{1/2} f̂₁(2πξ)`.
pub fn convert(r: &TransformResult, to: Convention) -> TransformResult {
    if r.convention == to {
        return r.clone();
    }
    let (scale, dil, rule) = match to {
        Convention::MathI => (INV_SQRT_2PI, INV_TWO_PI, "convert:eng->math"),
        Convention::EngII => (SQRT_2PI, TWO_PI, "convert:math->eng"),
    };
    let mut rules = r.rules.clone();
    note(&mut rules, rule);
    TransformResult {
        expr: crate::expr::normalize(&r.expr.clone().dilate(dil).scale(scale)),
        convention: to,
        rules,
    }
}

/// `e(−x)`, pushed through to the atoms and normalized.
pub fn reflect(e: &DistExpr) -> DistExpr {
    let terms: Vec<Term> = canonical_terms(e)
        .into_iter()
        .map(Term::reflected)
        .collect();
    terms_to_expr(&canonical_terms(&terms_to_expr(&terms)))
}

/// Inverse transform under `conv`: the reflection of the forward transform.
pub fn inverse_fourier(e: &DistExpr, conv: Convention) -> Result<TransformResult, ExprError> {
    let mut r = fourier(e, conv)?;
    r.expr = reflect(&r.expr);
    note(&mut r.rules, "reflect");
    Ok(r)
}
