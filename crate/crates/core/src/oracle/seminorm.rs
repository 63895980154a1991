use super::{SchwartzFn, MAX_DERIVATIVE};
use crate::error::OracleError;

const REFINE: usize = 8;

/// `q_N(φ) = sup_{x, k ≤ N} (1 + |x|)^N |φ^{(k)}(x)|`.
///
/// The sup is searched on a dense grid over a window outside which the
/// analytic envelope of every weighted derivative is below the grid
/// maximum, then the best grid peaks are refined by golden-section search.
/// The result is a converged maximum, so it bounds the true sup from below.
pub fn qn(phi: &SchwartzFn, n: usize) -> Result<f64, OracleError> {
    if n > MAX_DERIVATIVE {
        return Err(OracleError::OrderTooHigh(n));
    }
    let derivs = (0..=n)
        .map(|k| phi.derivative(k))
        .collect::<Result<Vec<_>, _>>()?;
    let (a, b) = (phi.a(), phi.b());
    let weight = |x: f64| (1.0 + x.abs()).powi(n as i32);
    let envs: Vec<_> = derivs.iter().map(|d| d.packet().envelope()).collect();
    // Bound of the weighted derivative at distance r from b, decreasing
    // once r exceeds the knee of a polynomial of degree n + deg.
    let outside = |r: f64| {
        envs.iter()
            .map(|e| (1.0 + b.abs() + r).powi(n as i32) * e.at(r))
            .fold(0.0, f64::max)
    };
    let degree = envs.iter().map(|e| e.q.len() - 1).max().unwrap_or(0);
    let knee = ((n + degree) as f64 / (2.0 * a)).sqrt();
    let h = 0.01f64.min(0.05 / a.sqrt());
    let mut r = knee.max(1.0 / a.sqrt()).max(b.abs() + 1.0);
    let (grid, values, best) = loop {
        let count = (2.0 * r / h).ceil() as usize + 1;
        let step = 2.0 * r / (count - 1) as f64;
        let grid: Vec<f64> = (0..count).map(|i| b - r + i as f64 * step).collect();
        let values: Vec<Vec<f64>> = derivs
            .iter()
            .map(|d| grid.iter().map(|&x| weight(x) * d.modulus(x)).collect())
            .collect();
        let best = values.iter().flatten().cloned().fold(0.0, f64::max);
        if outside(r) <= best {
            break (grid, values, best);
        }
        r *= 1.5;
    };
    let mut peaks: Vec<(f64, usize, usize)> = Vec::new();
    for (k, vals) in values.iter().enumerate() {
        for i in 0..vals.len() {
            let left = if i == 0 {
                f64::NEG_INFINITY
            } else {
                vals[i - 1]
            };
            let right = vals.get(i + 1).copied().unwrap_or(f64::NEG_INFINITY);
            if vals[i] >= left && vals[i] >= right && vals[i] > 0.0 {
                peaks.push((vals[i], k, i));
            }
        }
    }
    peaks.sort_by(|p, q| q.0.total_cmp(&p.0));
    let mut sup = best.max(weight(0.0) * derivs.iter().map(|d| d.modulus(0.0)).fold(0.0, f64::max));
    for &(_, k, i) in peaks.iter().take(REFINE) {
        let lo = grid[i.saturating_sub(1)];
        let hi = grid[(i + 1).min(grid.len() - 1)];
        let f = |x: f64| weight(x) * derivs[k].modulus(x);
        sup = sup.max(golden_max(f, lo, hi));
    }
    Ok(sup)
}

fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - ratio * (hi - lo);
    let mut d = lo + ratio * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..80 {
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - ratio * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + ratio * (hi - lo);
            fd = f(d);
        }
    }
    fc.max(fd).max(f(0.5 * (lo + hi)))
}
