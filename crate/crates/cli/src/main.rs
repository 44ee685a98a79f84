//! `ore`: exact computations with linear differential operators over `Q(x)`
//! and square matrices of them.
//!
//! Exit codes: 0 ok, 1 precondition violated, 2 parse error, 3 search
//! failure.

mod commands;
mod emit;
mod input;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ore_core::modules::SearchOptions;
use ore_core::regularize::DEFAULT_BUDGET;
use ore_core::{Result, Side};

use crate::commands::WitnessArgs;
use crate::emit::{CommandResult, Status};

#[derive(Parser)]
#[command(
    name = "ore",
    version,
    about = "Exact arithmetic for differential operators over Q(x)",
    after_help = "Operators are written like \"x^2*D^2 - (1/x)*D + 3\". Matrices are JSON: \
                  '{\"size\":2,\"rows\":[[\"D\",\"0\"],[\"0\",\"D^2\"]]}'."
)]
struct Cli {
    /// Side of divisions, gcds, lcms, fractions and shifts.
    #[arg(long, global = true, value_enum, default_value_t = SideArg::Right)]
    side: SideArg,
    /// Print a JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Trials per suite for `selftest`; the default sizes when absent.
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Operator order bound of the Euclid and roundtrip suites in `selftest`.
    #[arg(long, global = true)]
    max_order: Option<usize>,
    /// Candidate budget of the regularization searches.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Gcd with Bezout cofactors d, u, v.
    Gcd {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Lcm m with cofactors a1, b1.
    Lcm {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Full Bezout certificate, checked.
    Bezout {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Euclidean division of operators.
    Divide {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Formal adjoint.
    Adjoint {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Minimal decomposition of the fraction num/den on the given side.
    Minfrac {
        #[arg(allow_hyphen_values = true)]
        num: String,
        #[arg(allow_hyphen_values = true)]
        den: String,
    },
    /// Rewrites a fraction given on --side as a minimal fraction on the other.
    Convert {
        #[arg(allow_hyphen_values = true)]
        num: String,
        #[arg(allow_hyphen_values = true)]
        den: String,
    },
    /// Compares the values of two fractions given on --side.
    Equal {
        #[arg(allow_hyphen_values = true)]
        num1: String,
        #[arg(allow_hyphen_values = true)]
        den1: String,
        #[arg(allow_hyphen_values = true)]
        num2: String,
        #[arg(allow_hyphen_values = true)]
        den2: String,
    },
    /// Degree of the Dieudonne determinant, or "singular".
    DdetDeg {
        #[arg(allow_hyphen_values = true)]
        m: String,
    },
    /// Row Hermite form h = u*m with its transform.
    Hermite {
        #[arg(allow_hyphen_values = true)]
        m: String,
    },
    /// Finds q with a + q*b (left) or a + b*q (right) regular.
    Regularize {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Finds z with x = b1*z, y = a1*z from a*x = b*y.
    #[command(name = "witness-thm33")]
    WitnessThm33 {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        /// Work in R/Rc for this c instead of Q(x).
        #[arg(long, allow_hyphen_values = true)]
        modulus: Option<String>,
    },
    /// Finds z with x = b*z, y = a*z from adjoint(a)*x = eps*adjoint(b)*y.
    #[command(name = "witness-cor34")]
    WitnessCor34 {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        #[arg(long, allow_hyphen_values = true, default_value = "-1")]
        eps: String,
        #[arg(long, allow_hyphen_values = true)]
        modulus: Option<String>,
    },
    /// Skewness of (a, b) and, given x and x2, the isotropy class.
    Isotropy {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true, requires = "x2")]
        x: Option<String>,
        #[arg(allow_hyphen_values = true)]
        x2: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        modulus: Option<String>,
    },
    /// Polynomial solutions of b(p) = 0 up to a degree bound.
    KernelPoly {
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value_t = 10)]
        degree: usize,
    },
    /// Runs the seeded property suites.
    Selftest,
}

fn run(cli: &Cli) -> Result<CommandResult> {
    let side = Side::from(cli.side);
    let opts = SearchOptions {
        budget: cli.budget,
        seed: cli.seed,
    };
    match &cli.command {
        Command::Gcd { a, b } => commands::gcd(a, b, side, false),
        Command::Bezout { a, b } => commands::gcd(a, b, side, true),
        Command::Lcm { a, b } => commands::lcm(a, b, side),
        Command::Divide { a, b } => commands::divide(a, b, side),
        Command::Adjoint { a } => commands::adjoint(a),
        Command::Minfrac { num, den } => commands::minfrac(num, den, side),
        Command::Convert { num, den } => commands::convert(num, den, side),
        Command::Equal { num1, den1, num2, den2 } => commands::equal([num1, den1, num2, den2], side),
        Command::DdetDeg { m } => commands::ddet_degree(m),
        Command::Hermite { m } => commands::hermite(m),
        Command::Regularize { a, b } => commands::regularize_cmd(a, b, side, cli.budget, cli.seed),
        Command::WitnessThm33 { a, b, x, y, modulus } => {
            let args = WitnessArgs { a, b, x, y, modulus: modulus.as_deref() };
            commands::witness_thm33(args, opts)
        }
        Command::WitnessCor34 { a, b, x, y, eps, modulus } => {
            let args = WitnessArgs { a, b, x, y, modulus: modulus.as_deref() };
            commands::witness_cor34(args, eps, opts)
        }
        Command::Isotropy { a, b, x, x2, modulus } => {
            let xs = x.as_deref().zip(x2.as_deref());
            commands::isotropy(a, b, xs, modulus.as_deref())
        }
        Command::KernelPoly { b, degree } => commands::kernel_poly(b, *degree),
        Command::Selftest => commands::selftest(cli.seed, cli.trials, cli.max_order),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            if std::env::args().any(|a| a == "--json") {
                let rendered = e.render().to_string();
                let result = CommandResult::usage_error(rendered.trim_end());
                println!("{}", result.to_json());
            } else {
                let _ = e.print();
            }
            return ExitCode::from(Status::Parse as u8);
        }
    };
    let result = run(&cli).unwrap_or_else(|e| CommandResult::failure(&e));
    if cli.json {
        println!("{}", result.to_json());
    } else if result.is_error() {
        eprintln!("{}", result.text);
    } else {
        print!("{}", result.text);
    }
    ExitCode::from(result.status as u8)
}
