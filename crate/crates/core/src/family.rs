//! Test-function families and random expressions.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;

use crate::expr::DistExpr;
use crate::oracle::SchwartzFn;

/// The 24 functions `P · e^{−a(x−b)²} · e^{2πiωx}` with `P ∈ {1, x, x²}`,
/// `a ∈ {π, 2}`, `b ∈ {0, 0.3}` and `ω ∈ {0, 1}`.
pub fn standard_family() -> Vec<SchwartzFn> {
    let mut out = Vec::with_capacity(24);
    for degree in 0..3 {
        let mut coeffs = vec![0.0; degree + 1];
        coeffs[degree] = 1.0;
        for a in [PI, 2.0] {
            for b in [0.0, 0.3] {
                for omega in [0.0, 1.0] {
                    out.push(SchwartzFn::real(&coeffs, a, b, omega).expect("valid parameters"));
                }
            }
        }
    }
    out
}

/// A random test function: degree ≤ 3 with complex coefficients in the
/// unit square, `a ∈ [0.5, 4]`, `b ∈ [−1, 1]`, `ω ∈ [−2, 2]`.
pub fn random_member(rng: &mut impl Rng) -> SchwartzFn {
    let degree = rng.random_range(0..=3);
    let mut coeffs: Vec<Complex64> = (0..=degree)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    coeffs[degree] += Complex64::new(0.25, 0.0);
    SchwartzFn::new(
        coeffs,
        rng.random_range(0.5..4.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-2.0..2.0),
    )
    .expect("valid parameters")
}

pub fn random_family(rng: &mut impl Rng, n: usize) -> Vec<SchwartzFn> {
    (0..n).map(|_| random_member(rng)).collect()
}

fn param(rng: &mut impl Rng) -> f64 {
    // Mix short decimals with arbitrary doubles.
    if rng.random_bool(0.5) {
        rng.random_range(-8i32..=8) as f64 / 4.0
    } else {
        rng.random_range(-3.0..3.0)
    }
}

fn coefficient(rng: &mut impl Rng) -> Complex64 {
    match rng.random_range(0..3) {
        0 => Complex64::new(param(rng), 0.0),
        1 => Complex64::new(0.0, param(rng)),
        _ => Complex64::new(param(rng), param(rng)),
    }
}

/// A random expression tree of depth at most `depth`.
pub fn random_expr(rng: &mut impl Rng, depth: usize) -> DistExpr {
    if depth == 0 || rng.random_bool(0.3) {
        return match rng.random_range(0..9) {
            0 => DistExpr::Rect,
            1 => DistExpr::Sinc,
            2 => DistExpr::Gauss,
            3 => DistExpr::One,
            4 => DistExpr::Delta(param(rng)),
            5 => DistExpr::Comb,
            6 => DistExpr::CExp(param(rng)),
            7 => DistExpr::Cos(param(rng)),
            _ => DistExpr::Sin(param(rng)),
        };
    }
    let d = depth - 1;
    match rng.random_range(0..8) {
        0 => random_expr(rng, d).scale(coefficient(rng)),
        1 => {
            let n = rng.random_range(2..=3);
            DistExpr::Sum((0..n).map(|_| random_expr(rng, d)).collect())
        }
        2 => random_expr(rng, d).shift(param(rng)),
        3 => random_expr(rng, d).dilate(rng.random_range(0.25..4.0)),
        4 => random_expr(rng, d).modulate(param(rng)),
        5 => random_expr(rng, d).conj(),
        6 => random_expr(rng, d).re(),
        _ => random_expr(rng, d).im(),
    }
}
