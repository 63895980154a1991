//! JSON output shapes. Each has a schema under `schemas/`.

use distcalc_core::kspace::PartialFourierReport;
use distcalc_core::poisson::PeriodizationReport;
use distcalc_core::PairingMethod;
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct TransformOut {
    pub input: String,
    pub convention: &'static str,
    pub result: String,
    pub rules: Vec<&'static str>,
}

#[derive(Debug, Serialize)]
pub struct VerifyOut {
    pub expr: String,
    pub convention: &'static str,
    pub max_residual: f64,
    pub family_size: usize,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct PairOut {
    pub expr: String,
    pub testfn: String,
    pub value: [f64; 2],
    pub err_bound: f64,
    pub method: PairingMethod,
}

#[derive(Debug, Serialize)]
pub struct PsfOut {
    pub testfn: String,
    pub tol: f64,
    pub points: Vec<PeriodizationReport>,
    pub max_residual: f64,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct TableRowOut {
    pub input: String,
    pub result: String,
    pub printed: String,
    pub matches_printed: bool,
}

#[derive(Debug, Serialize)]
pub struct TableOut {
    pub convention: &'static str,
    pub rows: Vec<TableRowOut>,
    pub footnote: Option<&'static str>,
}

#[derive(Debug, Serialize)]
pub struct KspaceOut {
    #[serde(flatten)]
    pub report: PartialFourierReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signals: Option<Signals>,
}

/// Samples as `[re, im]` pairs.
#[derive(Debug, Serialize)]
pub struct Signals {
    pub signal: Vec<[f64; 2]>,
    pub clean_reconstruction: Vec<[f64; 2]>,
    pub corrupted_reconstruction: Vec<[f64; 2]>,
}
