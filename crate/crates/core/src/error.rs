use thiserror::Error;

/// Errors raised by the expression algebra and the symbolic transform.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error("expression contains a singular distribution and has no pointwise value")]
    SingularEvaluation,
    #[error("dilation factor must be positive and finite, got {0}")]
    InvalidDilation(f64),
    #[error("non-finite parameter {value} in {node}")]
    NonFinite { node: &'static str, value: f64 },
    #[error("no transform rule applies to {0}")]
    UnsupportedExpr(String),
}

/// Errors raised by the numerical oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error(
        "{what}: error estimate {achieved:e} exceeds tolerance {tol:e} within the panel budget"
    )]
    ToleranceNotMet {
        what: &'static str,
        achieved: f64,
        tol: f64,
    },
    #[error("derivative order {0} exceeds the supported maximum of 8")]
    OrderTooHigh(usize),
    #[error("invalid test function: {0}")]
    InvalidTestFunction(String),
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error(
        "continuity bound violated: |<u, phi>| = {pairing:e} > C_N q_N(phi) = {bound:e} for {phi}"
    )]
    BoundViolated {
        phi: String,
        pairing: f64,
        bound: f64,
    },
    #[error("empty test-function family")]
    EmptyFamily,
    #[error(transparent)]
    Expr(#[from] ExprError),
}

/// Errors raised by the discrete k-space demonstration.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum KSpaceError {
    #[error("signal length must be even and at least 8, got {0}")]
    BadLength(usize),
    #[error("sample spacing must be positive, got {0}")]
    BadSpacing(f64),
    #[error("acquired fraction must lie in (1/2, 1] and keep more than half the lines, got {0}")]
    BadFraction(f64),
    #[error("line k = {0} is unacquired and so is its mirror")]
    UnfillableLine(i64),
    #[error("malformed signal JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

/// Errors raised by the expression and test-function parsers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SyntaxError {
    #[error("parse error at line {line}, column {col}: expected {expected}")]
    Parse {
        line: usize,
        col: usize,
        expected: String,
    },
    #[error("semantic error at line {line}, column {col}: {message}")]
    Semantic {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("input is {0} bytes; the limit is 65536")]
    TooLong(usize),
    #[error("nesting deeper than {limit} at line {line}, column {col}")]
    TooDeep {
        line: usize,
        col: usize,
        limit: usize,
    },
}
