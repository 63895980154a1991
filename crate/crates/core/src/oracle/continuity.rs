use super::{pair, qn, SchwartzFn};
use crate::error::OracleError;
use crate::expr::DistExpr;

/// Absolute slack on `|⟨u, φ⟩| ≤ C_N q_N(φ)`, covering the fact that `q_N`
/// is a converged maximum rather than a certified upper bound.
pub const CONTINUITY_SLACK: f64 = 1e-9;

pub const FAMILY_CAVEAT: &str =
    "checked on a finite family only: necessary evidence for continuity, not a proof";

const PAIR_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ContinuityReport {
    pub n: usize,
    pub constant: f64,
    pub count: usize,
    /// Largest `|⟨u, φ⟩| / (C_N q_N(φ))` over the family.
    pub max_ratio: f64,
    /// Test function attaining `max_ratio`.
    pub worst: String,
    pub caveat: &'static str,
}

/// Checks `|⟨u, φ⟩| ≤ C_N q_N(φ)` for every `φ` in `family`.
pub fn continuity_check(
    u: &DistExpr,
    n: usize,
    constant: f64,
    family: &[SchwartzFn],
) -> Result<ContinuityReport, OracleError> {
    if family.is_empty() {
        return Err(OracleError::EmptyFamily);
    }
    let mut report = ContinuityReport {
        n,
        constant,
        count: 0,
        max_ratio: 0.0,
        worst: String::new(),
        caveat: FAMILY_CAVEAT,
    };
    for phi in family {
        let p = pair(u, phi, PAIR_TOL)?;
        let bound = constant * qn(phi, n)?;
        let pairing = p.value.norm();
        if pairing > bound + CONTINUITY_SLACK + p.err_bound {
            return Err(OracleError::BoundViolated {
                phi: phi.to_string(),
                pairing,
                bound,
            });
        }
        let ratio = pairing / bound;
        if ratio > report.max_ratio || report.worst.is_empty() {
            report.max_ratio = ratio;
            report.worst = phi.to_string();
        }
        report.count += 1;
    }
    Ok(report)
}
