//! Canonical form.
//!
//! Every expression is a finite linear combination of *terms*
//! `c · e^{2πiνx} · A(λ(x − s))` over six base atoms. Normalization computes
//! that combination, merges like terms, drops zero coefficients, orders the
//! terms and rebuilds a tree. `Cos`/`Sin` expand into complex exponentials;
//! conjugation and real/imaginary parts are resolved term by term, using
//! that every base atom is real-valued.

use std::cmp::Ordering;

use num_complex::Complex64;

use super::{cis2pi, DistExpr};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) enum Base {
    Comb,
    Delta,
    Gauss,
    One,
    Rect,
    Sinc,
}

impl Base {
    pub(crate) fn is_singular(self) -> bool {
        matches!(self, Base::Delta | Base::Comb)
    }
}

/// `coef · e^{2πi·freq·x} · base(dil · (x − shift))`.
///
/// `Delta` terms always carry `freq = 0` and `dil = 1` (the Jacobian and
/// the phase are folded into `coef`); `One` terms carry `shift = 0` and
/// `dil = 1`.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Term {
    pub coef: Complex64,
    pub base: Base,
    pub freq: f64,
    pub shift: f64,
    pub dil: f64,
}

const ONE: Complex64 = Complex64::new(1.0, 0.0);

impl Term {
    pub(crate) fn atom(base: Base) -> Self {
        Term {
            coef: ONE,
            base,
            freq: 0.0,
            shift: 0.0,
            dil: 1.0,
        }
    }

    fn tidy(mut self) -> Self {
        match self.base {
            Base::One => {
                self.shift = 0.0;
                self.dil = 1.0;
            }
            Base::Delta => {
                if self.dil != 1.0 {
                    self.coef /= self.dil;
                    self.dil = 1.0;
                }
                if self.freq != 0.0 {
                    self.coef *= cis2pi(self.freq * self.shift);
                    self.freq = 0.0;
                }
            }
            _ => {}
        }
        // Canonical zero: no negative zeros in keys.
        self.freq += 0.0;
        self.shift += 0.0;
        self
    }

    pub(crate) fn scaled(mut self, k: Complex64) -> Self {
        self.coef = k * self.coef;
        self
    }

    /// `x ↦ t(x − x0)`.
    pub(crate) fn shifted(mut self, x0: f64) -> Self {
        if self.freq != 0.0 {
            self.coef *= cis2pi(-self.freq * x0);
        }
        self.shift += x0;
        self.tidy()
    }

    /// `x ↦ t(μx)`.
    pub(crate) fn dilated(mut self, mu: f64) -> Self {
        self.freq *= mu;
        self.dil *= mu;
        self.shift /= mu;
        self.tidy()
    }

    /// `x ↦ e^{2πiηx} t(x)`.
    pub(crate) fn modulated(mut self, eta: f64) -> Self {
        self.freq += eta;
        self.tidy()
    }

    pub(crate) fn conjugated(mut self) -> Self {
        self.coef = self.coef.conj();
        self.freq = -self.freq;
        self.tidy()
    }

    /// `x ↦ t(−x)`; all base atoms are even.
    pub(crate) fn reflected(mut self) -> Self {
        self.freq = -self.freq;
        self.shift = -self.shift;
        self.tidy()
    }

    fn key_cmp(&self, other: &Self) -> Ordering {
        self.base
            .cmp(&other.base)
            .then(self.shift.total_cmp(&other.shift))
            .then(self.dil.total_cmp(&other.dil))
            .then(self.freq.total_cmp(&other.freq))
    }

    fn same_key(&self, other: &Self) -> bool {
        self.key_cmp(other) == Ordering::Equal
    }

    fn approx_key(&self, other: &Self, tol: f64) -> bool {
        let close = |a: f64, b: f64| (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs());
        self.base == other.base
            && close(self.shift, other.shift)
            && close(self.dil, other.dil)
            && close(self.freq, other.freq)
    }

    pub(crate) fn to_expr(&self) -> DistExpr {
        let mut e = match self.base {
            Base::One if self.freq == 0.0 => DistExpr::One,
            Base::One => DistExpr::CExp(self.freq),
            Base::Delta => DistExpr::Delta(self.shift),
            base => {
                let mut e = match base {
                    Base::Rect => DistExpr::Rect,
                    Base::Sinc => DistExpr::Sinc,
                    Base::Gauss => DistExpr::Gauss,
                    _ => DistExpr::Comb,
                };
                if self.dil != 1.0 {
                    e = e.dilate(self.dil);
                }
                if self.shift != 0.0 {
                    e = e.shift(self.shift);
                }
                if self.freq != 0.0 {
                    e = e.modulate(self.freq);
                }
                e
            }
        };
        if self.coef != ONE {
            e = e.scale(self.coef);
        }
        e
    }
}

fn collect(mut terms: Vec<Term>) -> Vec<Term> {
    terms.sort_by(Term::key_cmp);
    let mut out: Vec<Term> = Vec::with_capacity(terms.len());
    for t in terms {
        match out.last_mut() {
            Some(last) if last.same_key(&t) => last.coef += t.coef,
            _ => out.push(t),
        }
    }
    out.retain(|t| t.coef != Complex64::new(0.0, 0.0));
    for t in &mut out {
        t.coef = Complex64::new(t.coef.re + 0.0, t.coef.im + 0.0);
    }
    out
}

fn raw_terms(e: &DistExpr) -> Vec<Term> {
    let half = Complex64::new(0.5, 0.0);
    match e {
        DistExpr::Rect => vec![Term::atom(Base::Rect)],
        DistExpr::Sinc => vec![Term::atom(Base::Sinc)],
        DistExpr::Gauss => vec![Term::atom(Base::Gauss)],
        DistExpr::One => vec![Term::atom(Base::One)],
        DistExpr::Comb => vec![Term::atom(Base::Comb)],
        DistExpr::Delta(x0) => vec![Term::atom(Base::Delta).shifted(*x0)],
        DistExpr::CExp(xi) => vec![Term::atom(Base::One).modulated(*xi)],
        DistExpr::Cos(xi) => collect(vec![
            Term::atom(Base::One).modulated(*xi).scaled(half),
            Term::atom(Base::One).modulated(-xi).scaled(half),
        ]),
        DistExpr::Sin(xi) => {
            // (e^{+} − e^{−}) / 2i
            let k = Complex64::new(0.0, -0.5);
            collect(vec![
                Term::atom(Base::One).modulated(*xi).scaled(k),
                Term::atom(Base::One).modulated(-xi).scaled(-k),
            ])
        }
        DistExpr::Scale(c, e) => raw_terms(e).into_iter().map(|t| t.scaled(*c)).collect(),
        DistExpr::Sum(es) => es.iter().flat_map(raw_terms).collect(),
        DistExpr::Shift(e, x0) => raw_terms(e).into_iter().map(|t| t.shifted(*x0)).collect(),
        DistExpr::Dilate(e, l) => raw_terms(e).into_iter().map(|t| t.dilated(*l)).collect(),
        DistExpr::Modulate(e, xi) => raw_terms(e).into_iter().map(|t| t.modulated(*xi)).collect(),
        DistExpr::Conjugate(e) => raw_terms(e).into_iter().map(Term::conjugated).collect(),
        DistExpr::RealPart(e) => {
            // (u + ū) / 2
            let inner = raw_terms(e);
            let conj = inner.iter().cloned().map(Term::conjugated);
            collect(
                inner
                    .iter()
                    .cloned()
                    .chain(conj)
                    .map(|t| t.scaled(half))
                    .collect(),
            )
        }
        DistExpr::ImagPart(e) => {
            // (u − ū) / 2i
            let k = Complex64::new(0.0, -0.5);
            let inner = raw_terms(e);
            let conj = inner.iter().cloned().map(|t| t.conjugated().scaled(-k));
            collect(
                inner
                    .iter()
                    .cloned()
                    .map(|t| t.scaled(k))
                    .chain(conj)
                    .collect(),
            )
        }
    }
}

/// The merged, ordered term list of `e`.
pub(crate) fn canonical_terms(e: &DistExpr) -> Vec<Term> {
    collect(raw_terms(e))
}

pub(crate) fn terms_to_expr(terms: &[Term]) -> DistExpr {
    match terms {
        [] => DistExpr::One.scale(0.0),
        [t] => t.to_expr(),
        [first, rest @ ..] => {
            let c = first.coef;
            if c != ONE && rest.iter().all(|t| t.coef == c) {
                let unit = terms.iter().map(|t| {
                    Term {
                        coef: ONE,
                        ..t.clone()
                    }
                    .to_expr()
                });
                DistExpr::sum(unit).scale(c)
            } else {
                DistExpr::sum(terms.iter().map(Term::to_expr))
            }
        }
    }
}

/// Canonical form of `e`. Idempotent; preserves the denoted distribution.
pub fn normalize(e: &DistExpr) -> DistExpr {
    terms_to_expr(&canonical_terms(e))
}

fn merge_close(terms: Vec<Term>, tol: f64) -> Vec<Term> {
    let mut out: Vec<Term> = Vec::new();
    for t in terms {
        match out.iter_mut().find(|o| o.approx_key(&t, tol)) {
            Some(o) => o.coef += t.coef,
            None => out.push(t),
        }
    }
    out
}

/// Structural equality of canonical forms up to a relative tolerance on
/// every coefficient and parameter. Used where floating-point rounding
/// makes bit-exact comparison meaningless (for example after a double
/// transform).
pub fn approx_eq(a: &DistExpr, b: &DistExpr, tol: f64) -> bool {
    // Measured before merging, so cancellation leaves a small residue.
    let scale = raw_terms(a)
        .iter()
        .chain(raw_terms(b).iter())
        .map(|t| t.coef.norm())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let ta = merge_close(canonical_terms(a), tol);
    let tb = merge_close(canonical_terms(b), tol);
    let keep = |ts: Vec<Term>| -> Vec<Term> {
        ts.into_iter()
            .filter(|t| t.coef.norm() > tol * scale)
            .collect()
    };
    let ta = keep(ta);
    let mut tb = keep(tb);
    if ta.len() != tb.len() {
        return false;
    }
    for t in &ta {
        let pos = tb
            .iter()
            .position(|o| o.approx_key(t, tol) && (o.coef - t.coef).norm() <= tol * scale);
        match pos {
            Some(i) => {
                tb.swap_remove(i);
            }
            None => return false,
        }
    }
    true
}
