//! Command-line surface: `count`, `oracle`, `summatory`, `series-check`,
//! `coeffs`, `constants`, `scan`.
//!
//! Exit codes: 0 on success, 1 for usage and domain errors (bad flags or
//! precondition violations), 2 for computation errors (size caps,
//! overflow, precision failures).

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{error_scan, write_csv};
use crate::arith::{build_tables, isqrt};
use crate::constants::ConstantsBank;
use crate::counts::{c_count, enumerate_subgroups_with_cap, s_count, CFormula, SFormula,
    DEFAULT_ORACLE_CAP};
use crate::error::{Error, Result};
use crate::residue::{closed_form_weighted_s, main_term_coefficients, main_term_via_g,
    CoeffRoute, MainTermPolynomial};
use crate::summatory::{dirichlet_truncation, summatory, Algorithm};
use crate::Variant;

/// Accepts plain or scientific notation for an integer-valued flag.
fn parse_u64_sci(s: &str) -> std::result::Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let f: f64 = s.parse().map_err(|_| format!("invalid integer: {s}"))?;
    if !f.is_finite() || f < 0.0 || f.fract() != 0.0 || f >= (1u64 << 53) as f64 {
        return Err(format!("not a representable non-negative integer: {s}"));
    }
    Ok(f as u64)
}

fn parse_usize_sci(s: &str) -> std::result::Result<usize, String> {
    parse_u64_sci(s).map(|v| v as usize)
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VariantArg {
    S,
    C,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::S => Variant::S,
            VariantArg::C => Variant::C,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AlgoArg {
    Naive,
    Reduced,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RouteArg {
    Series,
    Closedform,
    Gderiv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormulaArg {
    F1,
    F2,
    F3,
    C1,
    C2,
    C3,
    C4,
}

#[derive(Debug, Parser)]
#[command(
    name = "subgroup-sums",
    about = "Subgroup counts of Z_m x Z_n, their summatory functions, and main-term diagnostics",
    version
)]
struct Cli {
    /// Working precision in significant decimal digits.
    #[arg(long, global = true, default_value_t = 50, value_parser = parse_usize_sci)]
    precision: usize,

    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_parser = parse_usize_sci)]
    threads: Option<usize>,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Subgroup count of Z_m x Z_n by a closed formula.
    Count(CountArgs),
    /// Subgroup counts by exhaustive enumeration.
    Oracle(OracleArgs),
    /// Summatory function over mn <= x.
    Summatory(SummatoryArgs),
    /// Truncated Dirichlet series against its closed value.
    SeriesCheck(SeriesCheckArgs),
    /// Main-term polynomial coefficients B_0..B_4.
    Coeffs(CoeffsArgs),
    /// The constants bank: Stieltjes constants and zeta derivatives.
    Constants,
    /// Error-term scan over a geometric grid, emitted as CSV.
    Scan(ScanArgs),
}

#[derive(Debug, Args)]
struct CountArgs {
    #[arg(long, value_parser = parse_u64_sci)]
    m: u64,
    #[arg(long, value_parser = parse_u64_sci)]
    n: u64,
    #[arg(long, value_enum)]
    variant: VariantArg,
    /// Formula choice; defaults to F2 (s) or C2 (c).
    #[arg(long, value_enum)]
    formula: Option<FormulaArg>,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long, value_parser = parse_u64_sci)]
    m: u64,
    #[arg(long, value_parser = parse_u64_sci)]
    n: u64,
    /// Enumeration cap on m*n.
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP, value_parser = parse_u64_sci)]
    cap: u64,
}

#[derive(Debug, Args)]
struct SummatoryArgs {
    #[arg(long, value_enum)]
    variant: VariantArg,
    #[arg(long)]
    weighted: bool,
    #[arg(long)]
    x: f64,
    #[arg(long, value_enum, default_value = "reduced")]
    algo: AlgoArg,
}

#[derive(Debug, Args)]
struct SeriesCheckArgs {
    #[arg(long, value_enum)]
    variant: VariantArg,
    #[arg(long)]
    z: f64,
    #[arg(long)]
    w: f64,
    #[arg(long, value_parser = parse_u64_sci)]
    trunc: u64,
}

#[derive(Debug, Args)]
struct CoeffsArgs {
    #[arg(long, value_enum)]
    variant: VariantArg,
    #[arg(long, value_parser = parse_usize_sci)]
    weight_order: usize,
    #[arg(long, value_enum, default_value = "series")]
    route: RouteArg,
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[arg(long, value_enum)]
    variant: VariantArg,
    #[arg(long)]
    from: f64,
    #[arg(long)]
    to: f64,
    #[arg(long, value_parser = parse_usize_sci)]
    points_per_decade: usize,
}

/// Parses `argv` and runs the requested command, returning the process
/// exit code. The first element of `argv` is the program name.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    0
                }
                _ => {
                    for line in e.to_string().lines() {
                        if !line.trim().is_empty() {
                            eprintln!("{line}");
                        }
                    }
                    1
                }
            };
        }
    };

    if let Some(threads) = cli.threads {
        // a second initialization in the same process is harmless
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }

    let outcome = (|| -> Result<()> {
        let mut out: Box<dyn Write> = match &cli.out {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(io::stdout().lock()),
        };
        dispatch(&cli, &mut out)?;
        out.flush()?;
        Ok(())
    })();

    match outcome {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Domain(_) => 1,
                _ => 2,
            }
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Count(a) => {
            let tables = build_tables(a.m.max(a.n).min(1_000_000))?;
            let variant: Variant = a.variant.into();
            let value = match (variant, a.formula) {
                (Variant::S, None) => s_count(a.m, a.n, SFormula::F2, &tables)?,
                (Variant::S, Some(FormulaArg::F1)) => s_count(a.m, a.n, SFormula::F1, &tables)?,
                (Variant::S, Some(FormulaArg::F2)) => s_count(a.m, a.n, SFormula::F2, &tables)?,
                (Variant::S, Some(FormulaArg::F3)) => s_count(a.m, a.n, SFormula::F3, &tables)?,
                (Variant::C, None) => c_count(a.m, a.n, CFormula::C2, &tables)?,
                (Variant::C, Some(FormulaArg::C1)) => c_count(a.m, a.n, CFormula::C1, &tables)?,
                (Variant::C, Some(FormulaArg::C2)) => c_count(a.m, a.n, CFormula::C2, &tables)?,
                (Variant::C, Some(FormulaArg::C3)) => c_count(a.m, a.n, CFormula::C3, &tables)?,
                (Variant::C, Some(FormulaArg::C4)) => c_count(a.m, a.n, CFormula::C4, &tables)?,
                (v, Some(f)) => {
                    return Err(Error::Domain(format!(
                        "formula {f:?} does not apply to variant {v}"
                    )))
                }
            };
            writeln!(out, "{value}")?;
        }
        Command::Oracle(a) => {
            let (total, cyclic) = enumerate_subgroups_with_cap(a.m, a.n, a.cap)?;
            writeln!(out, "{total} {cyclic}")?;
        }
        Command::Summatory(a) => {
            let fx = a.x.max(1.0) as u64;
            let table_limit = match a.algo {
                AlgoArg::Naive => fx,
                AlgoArg::Reduced => isqrt(fx).max(1),
            };
            // validate x before paying for tables
            if !(a.x >= 1.0) || !a.x.is_finite() {
                return Err(Error::Domain(format!("summatory: x = {} must be >= 1", a.x)));
            }
            let tables = build_tables(table_limit)?;
            let algo = match a.algo {
                AlgoArg::Naive => Algorithm::Naive,
                AlgoArg::Reduced => Algorithm::Reduced,
            };
            let r = summatory(a.variant.into(), a.weighted, a.x, algo, &tables)?;
            match r.value {
                crate::summatory::Value::Exact(v) => {
                    writeln!(out, "{v} {:.6}", r.elapsed.as_secs_f64())?
                }
                crate::summatory::Value::Weighted(v) => {
                    writeln!(out, "{v:.15e} {:.6}", r.elapsed.as_secs_f64())?
                }
            }
        }
        Command::SeriesCheck(a) => {
            if a.trunc > 10_000_000 {
                return Err(Error::Size("series-check: --trunc capped at 10^7".into()));
            }
            if a.trunc == 0 {
                return Err(Error::Domain("series-check: --trunc must be >= 1".into()));
            }
            let tables = build_tables(a.trunc)?;
            let (partial, closed) = dirichlet_truncation(
                a.variant.into(),
                a.z,
                a.w,
                a.trunc,
                cli.precision.max(30),
                &tables,
            )?;
            writeln!(
                out,
                "partial={partial:.15e} closed={closed:.15e} gap={:.15e}",
                closed - partial
            )?;
        }
        Command::Coeffs(a) => {
            let poly = coefficients_for(a, cli.precision)?;
            for r in (0..=4).rev() {
                writeln!(out, "{}", poly.coeff(r).to_decimal(cli.precision))?;
            }
        }
        Command::Constants => {
            let bank = ConstantsBank::build(cli.precision)?;
            let d = cli.precision;
            for n in 0..=4 {
                writeln!(out, "gamma_{n}        = {}", bank.gamma(n).to_decimal(d))?;
            }
            let names = ["zeta(2)       ", "zeta'(2)      ", "zeta''(2)     ",
                "zeta'''(2)    ", "zeta''''(2)   "];
            for (j, name) in names.iter().enumerate() {
                writeln!(out, "{name} = {}", bank.zeta2_deriv(j).to_decimal(d))?;
            }
        }
        Command::Scan(a) => {
            if !(a.from > 2.0) || !(a.to > a.from) {
                return Err(Error::Domain(format!(
                    "scan: need 2 < from < to, got {}..{}",
                    a.from, a.to
                )));
            }
            let variant: Variant = a.variant.into();
            let bank = ConstantsBank::build(cli.precision)?;
            let coeffs = main_term_coefficients(variant, 2, &bank)?;
            let tables = build_tables(isqrt(a.to as u64).max(1))?;
            let records = error_scan(
                variant,
                a.from,
                a.to,
                a.points_per_decade as u32,
                &coeffs,
                &tables,
            )?;
            write_csv(&records, out)?;
        }
    }
    Ok(())
}

fn coefficients_for(a: &CoeffsArgs, precision: usize) -> Result<MainTermPolynomial> {
    let variant: Variant = a.variant.into();
    if !(a.weight_order == 1 || a.weight_order == 2) {
        return Err(Error::Domain(format!(
            "coeffs: --weight-order {} not in {{1, 2}}",
            a.weight_order
        )));
    }
    let route = match a.route {
        RouteArg::Series => CoeffRoute::Series,
        RouteArg::Closedform => CoeffRoute::ClosedForm,
        RouteArg::Gderiv => CoeffRoute::GDeriv,
    };
    if route != CoeffRoute::Series && !(variant == Variant::S && a.weight_order == 2) {
        return Err(Error::Domain(
            "coeffs: closedform and gderiv routes exist only for --variant s --weight-order 2"
                .into(),
        ));
    }
    let bank = ConstantsBank::build(precision)?;
    Ok(match route {
        CoeffRoute::Series => main_term_coefficients(variant, a.weight_order as u8, &bank)?,
        CoeffRoute::ClosedForm => closed_form_weighted_s(&bank),
        CoeffRoute::GDeriv => main_term_via_g(&bank),
    })
}
