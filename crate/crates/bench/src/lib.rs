//! Shared fixtures for the benchmarks.

use distcalc_core::family::random_expr;
use distcalc_core::kspace::{random_real_signal, Signal};
use distcalc_core::oracle::SchwartzFn;
use distcalc_core::syntax::parse_expr;
use distcalc_core::DistExpr;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A mid-sized expression touching every transform rule.
pub fn mixed_expr() -> DistExpr {
    parse_expr("0.5*shift(dilate(rect,2),0.3)+cexp(1)*gauss-2i*sin2pi(0.25)+dilate(comb,0.5)+conj(re(sinc))")
        .expect("fixture parses")
}

/// Seeded random expression trees.
pub fn random_exprs(n: usize, depth: usize) -> Vec<DistExpr> {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    (0..n).map(|_| random_expr(&mut rng, depth)).collect()
}

/// `(1 + x²) e^{−2(x − 0.3)²} e^{2πix}`.
pub fn test_function() -> SchwartzFn {
    SchwartzFn::real(&[1.0, 0.0, 1.0], 2.0, 0.3, 1.0).expect("valid test function")
}

pub fn signal(m: usize) -> Signal {
    random_real_signal(3, m, 1.0 / m as f64).expect("valid length")
}
