//! Acceptance suite: one PASS/FAIL line per criterion.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use distcalc_core::expr::{approx_eq, normalize, DistExpr};
use distcalc_core::family::{random_expr, random_family, standard_family};
use distcalc_core::fourier::{convert, fourier, reflect, Convention};
use distcalc_core::kspace::{dft, idft, partial_fourier_experiment, random_complex_signal};
use distcalc_core::oracle::{
    continuity_check, ft_numeric, verify_candidate, verify_ft, SchwartzFn,
};
use distcalc_core::poisson::{comb_selfdual_check, periodize, psf_check};
use distcalc_core::syntax::{parse_expr, print_expr};
use distcalc_core::table::{printed_transforms, table_inputs};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

type Criterion = (&'static str, fn() -> Outcome);

const CONVS: [Convention; 2] = [Convention::EngII, Convention::MathI];

fn table_suite() -> Outcome {
    let start = Instant::now();
    let family = standard_family();
    let mut jobs = Vec::new();
    for conv in CONVS {
        for (row, u) in table_inputs().into_iter().enumerate() {
            for phi in &family {
                jobs.push((conv, row, u.clone(), phi.clone()));
            }
        }
    }
    let results: Vec<_> = jobs
        .par_iter()
        .map(|(conv, row, u, phi)| (*conv, *row, verify_ft(u, *conv, phi, 1e-8)))
        .collect();
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    for (conv, row, r) in &results {
        match r {
            Ok(res) if *res < 1e-8 => worst = worst.max(*res),
            Ok(res) => failures.push(format!("{conv} row {} residual {res:e}", row + 1)),
            Err(e) => failures.push(format!("{conv} row {}: {e}", row + 1)),
        }
    }
    // The mathematical column must be the converted engineering column.
    let converted = table_inputs().iter().all(|u| {
        let eng = fourier(u, Convention::EngII).unwrap();
        convert(&eng, Convention::MathI).expr == fourier(u, Convention::MathI).unwrap().expr
    });
    let secs = start.elapsed().as_secs_f64();
    let pass = failures.is_empty() && converted && secs < 120.0;
    outcome(
        pass,
        format!(
            "{} checks, max residual {worst:.3e}, math column via convert: {converted}, {secs:.1}s{}",
            results.len(),
            if failures.is_empty() { String::new() } else { format!(", failures: {}", failures.join("; ")) }
        ),
    )
}

fn gaussian_ode() -> Outcome {
    let g = SchwartzFn::gauss_profile();
    let f = |xi: f64| ft_numeric(&g, xi, Convention::EngII, 1e-14).map(|r| r.value);
    let h = 1e-3;
    let mut worst = 0.0f64;
    for i in -30..=30 {
        let xi = 0.1 * i as f64;
        let v = (|| -> Result<f64, distcalc_core::OracleError> {
            let d = (f(xi - 2.0 * h)? - 8.0 * f(xi - h)? + 8.0 * f(xi + h)? - f(xi + 2.0 * h)?)
                / (12.0 * h);
            Ok((d + 2.0 * PI * xi * f(xi)?).norm())
        })();
        worst = worst.max(v.unwrap_or(f64::INFINITY));
    }
    let at0 = ft_numeric(&g, 0.0, Convention::EngII, 1e-12).map(|r| (r.value - 1.0).norm());
    let at0 = at0.unwrap_or(f64::INFINITY);
    outcome(
        worst < 1e-6 && at0 < 1e-10,
        format!("61 points, max |g'+2*pi*xi*g| = {worst:.3e}; |g(0) - 1| = {at0:.3e}"),
    )
}

fn continuity() -> Outcome {
    let mut family = standard_family();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    family.extend(random_family(&mut rng, 100));
    let cases = [
        ("delta", DistExpr::Delta(0.0), 1, 1.0),
        ("one", DistExpr::One, 2, 2.0),
        ("rect", DistExpr::Rect, 1, 1.0),
        ("comb", DistExpr::Comb, 2, PI * PI / 3.0 - 1.0),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, u, n, c) in cases {
        match continuity_check(&u, n, c, &family) {
            Ok(r) => parts.push(format!("{name}(N={n}) max ratio {:.4}", r.max_ratio)),
            Err(e) => {
                pass = false;
                parts.push(format!("{name}: {e}"));
            }
        }
    }
    outcome(
        pass,
        format!("{} test functions; {}", family.len(), parts.join(", ")),
    )
}

fn poisson() -> Outcome {
    let xs = [0.0, 0.25, 0.5];
    let family = standard_family();
    let residuals: Vec<_> = family
        .par_iter()
        .map(|phi| psf_check(phi, &xs, 1e-10))
        .collect();
    let mut worst = 0.0f64;
    let mut pass = true;
    for r in residuals {
        match r {
            Ok(v) => worst = worst.max(v),
            Err(_) => pass = false,
        }
    }
    pass &= worst < 1e-8;
    let g = SchwartzFn::gauss_profile();
    let selfdual = comb_selfdual_check(&g, 1e-12).unwrap_or(f64::INFINITY);
    // Partial sums of Σ e^{−πn²}, doubling K until they stop changing.
    let partial = |k: i64| -> f64 { (-k..=k).map(|n| (-PI * (n * n) as f64).exp()).sum() };
    let mut k = 1;
    while partial(2 * k) != partial(k) {
        k *= 2;
    }
    let theta = periodize(&g, 0.0, 1e-14).map(|s| (s.value.re - partial(k)).abs());
    let theta = theta.unwrap_or(f64::INFINITY);
    pass &= selfdual < 1e-10 && theta < 1e-12;
    outcome(
        pass,
        format!(
            "PSF max residual {worst:.3e} over 24 x 3; comb self-duality {selfdual:.3e}; theta(0) vs partial sums (K={k}) {theta:.3e}"
        ),
    )
}

fn partial_fourier() -> Outcome {
    let mut pass = true;
    let mut clean = 0.0f64;
    let (mut sym, mut rec) = (f64::INFINITY, f64::INFINITY);
    for m in [64, 256] {
        for fraction in [5.0 / 8.0, 0.75] {
            for seed in [1u64, 2, 3] {
                match partial_fourier_experiment(m, fraction, seed, 0.3) {
                    Ok(r) => {
                        clean = clean.max(r.clean_reconstruction_error);
                        sym = sym.min(r.corrupted_symmetry_residual);
                        rec = rec.min(r.corrupted_reconstruction_error);
                        pass &= r.symmetry_violated;
                    }
                    Err(_) => pass = false,
                }
            }
        }
    }
    pass &= clean < 1e-12 && sym > 1e-3 && rec > 1e-3;
    outcome(
        pass,
        format!(
            "clean max error {clean:.3e}; phase slope 0.3: min symmetry residual {sym:.3e}, min reconstruction error {rec:.3e}"
        ),
    )
}

fn sign_adjudication() -> Outcome {
    let family = standard_family();
    let sin = &table_inputs()[7];
    let mut engine = 0.0f64;
    let mut printed_eng = 0.0f64;
    let mut printed_math = 0.0f64;
    let mut ok = true;
    for phi in &family {
        match verify_ft(sin, Convention::EngII, phi, 1e-8) {
            Ok(v) => engine = engine.max(v),
            Err(_) => ok = false,
        }
        for (conv, slot) in [
            (Convention::EngII, &mut printed_eng),
            (Convention::MathI, &mut printed_math),
        ] {
            let printed = &printed_transforms(conv)[7];
            match verify_candidate(sin, printed, conv, phi, 1e-8) {
                Ok(c) => *slot = slot.max(c.residual),
                Err(_) => ok = false,
            }
        }
    }
    let pass = ok && engine < 1e-8 && printed_eng > 1e-2;
    outcome(
        pass,
        format!(
            "sin row: engine (1/2i)[delta(xi-xi0) - delta(xi+xi0)] max residual {engine:.3e}; printed eng row (1/2i)[delta(xi+xi0) - delta(xi-xi0)] max residual {printed_eng:.3e} (rejected); printed math row max residual {printed_math:.3e}"
        ),
    )
}

fn structural() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut idempotent = true;
    for _ in 0..500 {
        let e = random_expr(&mut rng, 8);
        let n = normalize(&e);
        idempotent &= normalize(&n) == n;
    }
    let mut double = table_inputs().iter().chain(&[DistExpr::Sinc]).all(|a| {
        let once = fourier(a, Convention::EngII).unwrap().expr;
        fourier(&once, Convention::EngII).unwrap().expr == normalize(&reflect(a))
    });
    for _ in 0..500 {
        let e = random_expr(&mut rng, 5);
        let once = fourier(&e, Convention::EngII).unwrap().expr;
        let twice = fourier(&once, Convention::EngII).unwrap().expr;
        double &= approx_eq(&twice, &reflect(&e), 1e-9);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut round_trip = true;
    for _ in 0..1000 {
        let e = random_expr(&mut rng, 6);
        round_trip &= parse_expr(&print_expr(&e)).ok() == Some(normalize(&e));
    }
    let mut dft_err = 0.0f64;
    for (seed, m) in [(1, 8), (2, 64), (3, 256)] {
        let s = random_complex_signal(seed, m, 1.0).unwrap();
        dft_err = dft_err.max(idft(&dft(&s)).max_abs_diff(&s));
    }
    outcome(
        idempotent && double && round_trip && dft_err < 1e-12,
        format!(
            "normalize idempotent: {idempotent}; double transform = reflection: {double}; parse/print round trip (1000): {round_trip}; dft/idft max error {dft_err:.3e}"
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("table oracle suite", table_suite),
        ("gaussian ODE", gaussian_ode),
        ("continuity bounds", continuity),
        ("poisson summation", poisson),
        ("partial fourier", partial_fourier),
        ("sin-row sign adjudication", sign_adjudication),
        ("structural properties", structural),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        println!(
            "criterion {} [{name}]: {} ({})",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        if !o.pass {
            failed += 1;
        }
    }
    if failed == 0 {
        println!("acceptance: all 7 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 7 criteria failed");
        ExitCode::FAILURE
    }
}
