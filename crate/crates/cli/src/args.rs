use clap::{Parser, Subcommand, ValueEnum};
use distcalc_core::Convention;

#[derive(Debug, Parser)]
#[command(
    name = "distcalc",
    version,
    about = "Fourier calculus for tempered distributions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Fourier convention: `math` (e^{-ixξ}, (2π)^{-1/2}dx) or `eng` (e^{-2πixξ}).
    #[arg(long, global = true, default_value = "eng", value_parser = parse_convention)]
    pub convention: Convention,

    /// Oracle tolerance.
    #[arg(long, global = true, env = "DISTCALC_TOL", default_value_t = 1e-8)]
    pub tol: f64,

    /// Emit JSON instead of aligned text.
    #[arg(long, global = true)]
    pub json: bool,
}

fn parse_convention(s: &str) -> Result<Convention, String> {
    match s {
        "math" => Ok(Convention::MathI),
        "eng" => Ok(Convention::EngII),
        other => Err(format!("expected math or eng, got {other:?}")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilySpec {
    /// The fixed 24-function family.
    Standard,
    /// Seeded random members.
    Random,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the symbolic transform of an expression.
    Transform {
        expr: String,
        /// List the rewrite rules that fired.
        #[arg(long)]
        explain: bool,
    },
    /// Check a transform against the oracle over a test-function family.
    Verify {
        expr: String,
        #[arg(long, value_enum, default_value = "standard")]
        family: FamilySpec,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Size of a random family.
        #[arg(long, default_value_t = 24)]
        count: usize,
    },
    /// Pair an expression with a test function.
    Pair {
        expr: String,
        /// e.g. `poly(1,0,2)*gauss(3.14,0.5)*mod(1)`
        #[arg(long)]
        testfn: String,
    },
    /// Compare both sides of the Poisson summation formula.
    Psf {
        #[arg(long)]
        testfn: String,
        #[arg(long, value_delimiter = ',', default_value = "0,0.25,0.5")]
        xs: Vec<f64>,
    },
    /// The table of standard transform pairs, generated by the engine.
    Table,
    /// Seeded partial-Fourier reconstruction, with and without a phase error.
    KspaceDemo {
        #[arg(long = "M", default_value_t = 64)]
        m: usize,
        #[arg(long, default_value_t = 0.625)]
        fraction: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 0.3)]
        phase_slope: f64,
        /// Include the signal and both reconstructions.
        #[arg(long)]
        signals: bool,
    },
}
