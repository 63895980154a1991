//! Symbolic Fourier calculus for tempered distributions on the line, with
//! a numerical pairing oracle that checks every symbolic result.

pub mod error;
pub mod expr;
pub mod family;
pub mod fourier;
pub mod kspace;
pub mod oracle;
pub mod poisson;
pub mod syntax;
pub mod table;

pub use num_complex::Complex64;

pub use error::{ExprError, KSpaceError, OracleError, SyntaxError};
pub use expr::{classify, eval_pointwise, normalize, DistExpr, Kind};
pub use fourier::{convert, fourier, inverse_fourier, reflect, Convention, TransformResult};
pub use oracle::{PairingMethod, PairingResult, SchwartzFn};
pub use syntax::{parse_expr, parse_fnspec, print_expr};
