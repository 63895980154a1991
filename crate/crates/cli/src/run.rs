use std::fmt::{self, Write};

use distcalc_core::family::{random_family, standard_family};
use distcalc_core::kspace::{
    acquire_partial, dft, idft, partial_fourier_experiment, partial_fourier_fill,
    random_real_signal, Signal,
};
use distcalc_core::poisson::periodization_report;
use distcalc_core::syntax::{fmt_complex_bare, fmt_real};
use distcalc_core::table::{generate_table, SIN_FOOTNOTE};
use distcalc_core::{
    fourier, oracle, parse_expr, parse_fnspec, print_expr, ExprError, KSpaceError, OracleError,
    SchwartzFn, SyntaxError,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::args::{Cli, Command, FamilySpec};
use crate::report::*;

pub struct Output {
    pub stdout: String,
    pub code: u8,
}

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unparsable input.
    Usage(String),
    /// The oracle could not reach the requested accuracy.
    Numerical(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Numerical(m) => f.write_str(m),
        }
    }
}

impl From<SyntaxError> for CliError {
    fn from(e: SyntaxError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<ExprError> for CliError {
    fn from(e: ExprError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::ToleranceNotMet { .. } | OracleError::BoundViolated { .. } => {
                CliError::Numerical(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<KSpaceError> for CliError {
    fn from(e: KSpaceError) -> Self {
        match e {
            KSpaceError::UnfillableLine(_) => CliError::Numerical(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

fn json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn pairs(s: &Signal) -> Vec<[f64; 2]> {
    s.samples().iter().map(|c| [c.re, c.im]).collect()
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let tol = cli.tol;
    if !(tol.is_finite() && tol > 0.0) {
        return Err(CliError::Usage(format!(
            "--tol must be positive and finite, got {tol}"
        )));
    }
    let conv = cli.convention;
    let mut out = String::new();
    let mut code = 0;
    match &cli.command {
        Command::Transform { expr, explain } => {
            let e = parse_expr(expr)?;
            let r = fourier(&e, conv)?;
            let result = print_expr(&r.expr);
            if cli.json {
                out = json(&TransformOut {
                    input: expr.clone(),
                    convention: conv.name(),
                    result,
                    rules: r.rules,
                });
            } else {
                writeln!(out, "{result}").unwrap();
                if *explain {
                    for rule in &r.rules {
                        writeln!(out, "rule: {rule}").unwrap();
                    }
                }
            }
        }
        Command::Verify {
            expr,
            family,
            seed,
            count,
        } => {
            let e = parse_expr(expr)?;
            let phis: Vec<SchwartzFn> = match family {
                FamilySpec::Standard => standard_family(),
                FamilySpec::Random => random_family(&mut ChaCha8Rng::seed_from_u64(*seed), *count),
            };
            if phis.is_empty() {
                return Err(CliError::Usage("the test-function family is empty".into()));
            }
            let mut max_residual = 0.0f64;
            for phi in &phis {
                max_residual = max_residual.max(oracle::verify_ft(&e, conv, phi, tol)?);
            }
            let pass = max_residual <= tol;
            code = if pass { 0 } else { 1 };
            if cli.json {
                out = json(&VerifyOut {
                    expr: expr.clone(),
                    convention: conv.name(),
                    max_residual,
                    family_size: phis.len(),
                    pass,
                });
            } else {
                writeln!(out, "expr          {}", print_expr(&e)).unwrap();
                writeln!(out, "convention    {conv}").unwrap();
                writeln!(out, "family_size   {}", phis.len()).unwrap();
                writeln!(out, "max_residual  {}", fmt_real(max_residual)).unwrap();
                writeln!(out, "{}", verdict(pass)).unwrap();
            }
        }
        Command::Pair { expr, testfn } => {
            let e = parse_expr(expr)?;
            let phi = parse_fnspec(testfn)?;
            let r = oracle::pair(&e, &phi, tol)?;
            if cli.json {
                out = json(&PairOut {
                    expr: expr.clone(),
                    testfn: phi.to_string(),
                    value: [r.value.re, r.value.im],
                    err_bound: r.err_bound,
                    method: r.method,
                });
            } else {
                writeln!(out, "value      {}", fmt_complex_bare(r.value)).unwrap();
                writeln!(out, "err_bound  {}", fmt_real(r.err_bound)).unwrap();
                writeln!(
                    out,
                    "method     {}",
                    serde_json::to_value(r.method).unwrap().as_str().unwrap()
                )
                .unwrap();
            }
        }
        Command::Psf { testfn, xs } => {
            let phi = parse_fnspec(testfn)?;
            if xs.iter().any(|x| !x.is_finite()) {
                return Err(CliError::Usage("--xs must be finite".into()));
            }
            let points = xs
                .iter()
                .map(|&x| periodization_report(&phi, x, tol))
                .collect::<Result<Vec<_>, _>>()?;
            let max_residual = points.iter().map(|p| p.residual).fold(0.0, f64::max);
            let pass = max_residual <= tol;
            code = if pass { 0 } else { 1 };
            if cli.json {
                out = json(&PsfOut {
                    testfn: phi.to_string(),
                    tol,
                    points,
                    max_residual,
                    pass,
                });
            } else {
                let rows: Vec<[String; 4]> = points
                    .iter()
                    .map(|p| {
                        [
                            fmt_real(p.x),
                            fmt_complex_bare(p.lhs),
                            fmt_complex_bare(p.rhs),
                            fmt_real(p.residual),
                        ]
                    })
                    .collect();
                aligned(
                    &mut out,
                    ["x", "periodization", "fourier_series", "residual"],
                    &rows,
                );
                writeln!(out, "max_residual  {}", fmt_real(max_residual)).unwrap();
                writeln!(out, "{}", verdict(pass)).unwrap();
            }
        }
        Command::Table => {
            let rows = generate_table(conv)?;
            let any_mismatch = rows.iter().any(|r| !r.matches_printed);
            if cli.json {
                out = json(&TableOut {
                    convention: conv.name(),
                    rows: rows
                        .iter()
                        .map(|r| TableRowOut {
                            input: print_expr(&r.input),
                            result: print_expr(&r.engine),
                            printed: print_expr(&r.printed),
                            matches_printed: r.matches_printed,
                        })
                        .collect(),
                    footnote: any_mismatch.then_some(SIN_FOOTNOTE),
                });
            } else {
                let cells: Vec<[String; 3]> = rows
                    .iter()
                    .map(|r| {
                        let flag = if r.matches_printed { "" } else { "[1]" };
                        [
                            print_expr(&r.input),
                            print_expr(&r.engine),
                            flag.to_string(),
                        ]
                    })
                    .collect();
                writeln!(out, "convention {conv}").unwrap();
                aligned(&mut out, ["input", "transform", ""], &cells);
                for r in rows.iter().filter(|r| !r.matches_printed) {
                    writeln!(
                        out,
                        "[1] {SIN_FOOTNOTE}; printed form: {}",
                        print_expr(&r.printed)
                    )
                    .unwrap();
                }
            }
        }
        Command::KspaceDemo {
            m,
            fraction,
            seed,
            phase_slope,
            signals,
        } => {
            if !phase_slope.is_finite() || !fraction.is_finite() {
                return Err(CliError::Usage(
                    "--fraction and --phase-slope must be finite".into(),
                ));
            }
            let report = partial_fourier_experiment(*m, *fraction, *seed, *phase_slope)?;
            if cli.json {
                let signals = if *signals {
                    let clean = random_real_signal(*seed, *m, 1.0 / *m as f64)?;
                    let corrupted = clean.with_linear_phase(*phase_slope);
                    let recon = |s: &Signal| -> Result<Signal, KSpaceError> {
                        Ok(idft(&partial_fourier_fill(&acquire_partial(
                            &dft(s),
                            *fraction,
                        )?)?))
                    };
                    Some(Signals {
                        signal: pairs(&clean),
                        clean_reconstruction: pairs(&recon(&clean)?),
                        corrupted_reconstruction: pairs(&recon(&corrupted)?),
                    })
                } else {
                    None
                };
                out = json(&KspaceOut { report, signals });
            } else {
                let r = &report;
                writeln!(out, "M                               {}", r.m).unwrap();
                writeln!(
                    out,
                    "fraction                        {}",
                    fmt_real(r.fraction)
                )
                .unwrap();
                writeln!(out, "lines                           {}", r.lines).unwrap();
                writeln!(out, "seed                            {}", r.seed).unwrap();
                writeln!(
                    out,
                    "phase_slope                     {}",
                    fmt_real(r.phase_slope)
                )
                .unwrap();
                writeln!(
                    out,
                    "clean_symmetry_residual         {}",
                    fmt_real(r.clean_symmetry_residual)
                )
                .unwrap();
                writeln!(
                    out,
                    "clean_reconstruction_error      {}",
                    fmt_real(r.clean_reconstruction_error)
                )
                .unwrap();
                writeln!(
                    out,
                    "corrupted_symmetry_residual     {}",
                    fmt_real(r.corrupted_symmetry_residual)
                )
                .unwrap();
                writeln!(
                    out,
                    "corrupted_reconstruction_error  {}",
                    fmt_real(r.corrupted_reconstruction_error)
                )
                .unwrap();
                writeln!(
                    out,
                    "symmetry_violated               {}",
                    r.symmetry_violated
                )
                .unwrap();
            }
        }
    }
    Ok(Output { stdout: out, code })
}

/// Left-aligned columns separated by two spaces, trailing blanks trimmed.
fn aligned<const N: usize>(out: &mut String, header: [&str; N], rows: &[[String; N]]) {
    let mut width = header.map(str::len);
    for row in rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let header = header.map(String::from);
    for row in std::iter::once(&header).chain(rows) {
        let mut line = String::new();
        for (cell, w) in row.iter().zip(width) {
            write!(line, "{cell:<w$}  ").unwrap();
        }
        writeln!(out, "{}", line.trim_end()).unwrap();
    }
}
