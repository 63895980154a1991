//! The standard table of transform pairs, generated by the engine and set
//! against the forms printed in the literature.

use num_complex::Complex64;

use crate::error::ExprError;
use crate::expr::{approx_eq, normalize, DistExpr};
use crate::fourier::{fourier, Convention, INV_SQRT_2PI, INV_TWO_PI, SQRT_2PI, TWO_PI};

/// Frequency of the exponential, cosine and sine rows.
pub const TABLE_XI0: f64 = 0.5;
/// Position of the shifted point-mass row.
pub const TABLE_X0: f64 = 0.5;

pub const SIN_FOOTNOTE: &str = "engine follows F[e^{2πiξ0x}] = δ(ξ − ξ0); the commonly printed \
engineering sine row (1/2i)[δ(ξ + ξ0) − δ(ξ − ξ0)] has the opposite sign";

#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub input: DistExpr,
    /// Transform computed by the engine.
    pub engine: DistExpr,
    /// Transform as usually printed.
    pub printed: DistExpr,
    pub matches_printed: bool,
}

/// The nine inputs in table order.
pub fn table_inputs() -> Vec<DistExpr> {
    vec![
        DistExpr::Rect,
        DistExpr::Gauss,
        DistExpr::One,
        DistExpr::Delta(0.0),
        DistExpr::CExp(TABLE_XI0),
        DistExpr::Delta(TABLE_X0),
        DistExpr::Cos(TABLE_XI0),
        DistExpr::Sin(TABLE_XI0),
        DistExpr::Comb,
    ]
}

fn half_pair(c: Complex64, a: f64, b: f64, minus: bool) -> DistExpr {
    let second = if minus {
        DistExpr::Delta(b).scale(-1.0)
    } else {
        DistExpr::Delta(b)
    };
    DistExpr::sum([DistExpr::Delta(a), second]).scale(c)
}

/// The printed transforms, row by row.
pub fn printed_transforms(conv: Convention) -> Vec<DistExpr> {
    let (xi0, x0) = (TABLE_XI0, TABLE_X0);
    let half = Complex64::new(0.5, 0.0);
    let half_i = Complex64::new(0.0, -0.5);
    match conv {
        Convention::EngII => vec![
            DistExpr::Sinc,
            DistExpr::Gauss,
            DistExpr::Delta(0.0),
            DistExpr::One,
            DistExpr::Delta(xi0),
            DistExpr::CExp(-x0),
            half_pair(half, -xi0, xi0, false),
            half_pair(half_i, -xi0, xi0, true),
            DistExpr::Comb,
        ],
        Convention::MathI => {
            let w = TWO_PI * xi0;
            vec![
                DistExpr::Sinc.dilate(INV_TWO_PI).scale(INV_SQRT_2PI),
                DistExpr::Gauss.dilate(INV_TWO_PI).scale(INV_SQRT_2PI),
                DistExpr::Delta(0.0).scale(SQRT_2PI),
                DistExpr::One.scale(INV_SQRT_2PI),
                DistExpr::Delta(w).scale(SQRT_2PI),
                DistExpr::CExp(-x0 * INV_TWO_PI).scale(INV_SQRT_2PI),
                half_pair(half * SQRT_2PI, w, -w, false),
                half_pair(half_i * SQRT_2PI, w, -w, true),
                DistExpr::Comb.dilate(INV_TWO_PI).scale(INV_SQRT_2PI),
            ]
        }
    }
}

/// All nine rows under `conv`, each transformed by the engine.
pub fn generate_table(conv: Convention) -> Result<Vec<TableRow>, ExprError> {
    table_inputs()
        .into_iter()
        .zip(printed_transforms(conv))
        .map(|(input, printed)| {
            let engine = fourier(&input, conv)?.expr;
            let printed = normalize(&printed);
            Ok(TableRow {
                matches_printed: approx_eq(&engine, &printed, 1e-12),
                input,
                engine,
                printed,
            })
        })
        .collect()
}
