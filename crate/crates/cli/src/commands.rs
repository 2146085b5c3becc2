//! Argument parsing and the subcommands.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use permlab_core::bounds::{bound_report, BoundReport};
use permlab_core::families::{
    derangement_matrix, derangement_number, derive_seed, family_reference_stats, menage_matrix, menage_number_touchard,
    random_unit_disc, FamilyKind,
};
use permlab_core::identities::suite::{run_identity_suite, SuiteConfig};
use permlab_core::permanent::{injection_weight, permanent, permanent_ryser, Method};
use permlab_core::{AnyMatrix, RectMatrix, Scalar, ScalarDomain};
use serde_json::{Map, Value};

use crate::format::{g17, write_csv, SweepRow, FIRST_ORDER_COLUMNS, SECOND_ORDER_COLUMNS, VALUE_COLUMNS};
use crate::matrix_file::{parse_matrix, write_matrix};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "permlab", version, about = "Permanents of rectangular matrices and their approximation bounds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Permanent of a matrix file.
    Compute {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Divide by N!/(N-n)!.
        #[arg(long)]
        normalized: bool,
    },
    /// Statistics, error bounds and actual errors of a matrix file.
    Bounds {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = OrderArg::Both)]
        order: OrderArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Runs every identity checker on seeded random matrices.
    CheckIdentities {
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long = "n")]
        n: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = DomainArg::Rational)]
        domain: DomainArg,
    },
    /// Writes one CSV row per instance of a family.
    Sweep {
        #[arg(long, value_enum)]
        family: SweepFamily,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        out: PathBuf,
        /// Rows of the random matrices; defaults to n.
        #[arg(long = "N")]
        big_n: Option<usize>,
        /// Random matrices per n.
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Permanent, closed-form count and reference statistics of a named family.
    Family {
        #[arg(long, value_enum)]
        name: FamilyName,
        #[arg(long)]
        n: usize,
        /// Also write the matrix to this file.
        #[arg(long)]
        emit_matrix: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Naive,
    Ryser,
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    #[value(name = "1")]
    First,
    #[value(name = "2")]
    Second,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DomainArg {
    Rational,
    Complex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepFamily {
    Derangement,
    Menage,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Derangement,
    Menage,
}

/// Per-run settings taken from the environment.
#[derive(Clone, Copy, Debug)]
pub struct Context {
    /// Term budget for exact permanents.
    pub budget: u128,
}

pub fn run(cli: &Cli, ctx: &Context, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Compute { input, method, normalized } => compute(ctx, out, input, *method, *normalized),
        Command::Bounds { input, order, format } => bounds(ctx, out, input, *order, *format),
        Command::CheckIdentities { big_n, n, trials, seed, domain } => {
            let domain = match domain {
                DomainArg::Rational => ScalarDomain::ExactRational,
                DomainArg::Complex => ScalarDomain::ComplexFloat64,
            };
            check_identities(out, &SuiteConfig::new(domain, *big_n, *n, *trials, *seed))
        }
        Command::Sweep { family, n_min, n_max, out: path, big_n, trials, seed } => {
            let rows = sweep_rows(ctx, *family, *n_min, *n_max, *big_n, *trials, *seed)?;
            let file = fs::File::create(path).map_err(|e| CliError::io(path, e))?;
            write_csv(std::io::BufWriter::new(file), &rows).map_err(|e| CliError::io(path, e))?;
            writeln!(out, "wrote {} rows to {}", rows.len(), path.display())?;
            Ok(())
        }
        Command::Family { name, n, emit_matrix } => family(out, *name, *n, emit_matrix.as_deref()),
    }
}

fn read_matrix(path: &Path) -> Result<AnyMatrix, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_matrix(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn permanent_of<S: Scalar>(
    z: &RectMatrix<S>,
    method: MethodArg,
    normalized: bool,
    budget: u128,
) -> Result<S, CliError> {
    let method = match method {
        MethodArg::Naive => Method::Naive,
        MethodArg::Ryser => Method::Ryser,
        MethodArg::Auto => Method::Auto,
    };
    let per = permanent(z, method, budget)?;
    Ok(if normalized { per.scale(&injection_weight(z.rows(), z.cols())) } else { per })
}

fn compute(
    ctx: &Context,
    out: &mut dyn Write,
    input: &Path,
    method: MethodArg,
    normalized: bool,
) -> Result<(), CliError> {
    match read_matrix(input)? {
        AnyMatrix::Rational(z) => writeln!(out, "{}", permanent_of(&z, method, normalized, ctx.budget)?)?,
        AnyMatrix::Complex(z) => {
            let p = permanent_of(&z, method, normalized, ctx.budget)?;
            writeln!(out, "{} {}", g17(p.re), g17(p.im))?
        }
    }
    Ok(())
}

fn report_of(m: &AnyMatrix, budget: u128) -> Result<BoundReport, CliError> {
    Ok(match m {
        AnyMatrix::Rational(z) => bound_report(z, budget)?,
        AnyMatrix::Complex(z) => bound_report(z, budget)?,
    })
}

fn excluded(order: OrderArg) -> &'static [&'static str] {
    match order {
        OrderArg::First => &SECOND_ORDER_COLUMNS,
        OrderArg::Second => &FIRST_ORDER_COLUMNS,
        OrderArg::Both => &[],
    }
}

fn bounds(
    ctx: &Context,
    out: &mut dyn Write,
    input: &Path,
    order: OrderArg,
    format: FormatArg,
) -> Result<(), CliError> {
    let m = read_matrix(input)?;
    let report = report_of(&m, ctx.budget)?;
    let label = input.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let mut row = SweepRow::from_report(&label, &report);
    let skip = excluded(order);
    for (value, name) in row.values.iter_mut().zip(VALUE_COLUMNS) {
        if skip.contains(&name) {
            *value = None;
        }
    }
    let kept = || row.values.iter().zip(VALUE_COLUMNS).filter(|(_, name)| !skip.contains(name));
    match format {
        FormatArg::Csv => write_csv(&mut *out, std::slice::from_ref(&row))?,
        FormatArg::Text => {
            writeln!(out, "N {}", row.big_n)?;
            writeln!(out, "n {}", row.n)?;
            if let AnyMatrix::Rational(z) = &m {
                if report.normalized_permanent.is_some() {
                    writeln!(out, "norm_perm {}", permanent_of(z, MethodArg::Auto, true, ctx.budget)?)?;
                }
            }
            for (value, name) in kept() {
                writeln!(out, "{name} {}", value.map(g17).unwrap_or_else(|| "n/a".into()))?;
            }
        }
        FormatArg::Json => {
            let mut obj = Map::new();
            obj.insert("N".into(), row.big_n.into());
            obj.insert("n".into(), row.n.into());
            for (value, name) in kept() {
                let v = match value {
                    None => Value::Null,
                    Some(x) if x.is_infinite() => Value::from("inf"),
                    Some(x) => Value::from(*x),
                };
                obj.insert(name.to_string(), v);
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&Value::Object(obj)).expect("finite numbers"))?;
        }
    }
    Ok(())
}

fn check_identities(out: &mut dyn Write, config: &SuiteConfig) -> Result<(), CliError> {
    let outcome = run_identity_suite(config)?;
    for t in &outcome.tallies {
        writeln!(
            out,
            "{:<24} passed {:>5}  failed {:>5}  max discrepancy {}",
            t.id.name(),
            t.passed,
            t.failed,
            g17(t.max_discrepancy.value())
        )?;
    }
    if outcome.all_passed() {
        writeln!(out, "all identities hold")?;
        return Ok(());
    }
    for f in &outcome.failures {
        writeln!(out, "FAILED {} trial {} seed {} discrepancy {}", f.id, f.trial, f.seed, g17(f.discrepancy.value()))?;
    }
    let mut seeds: Vec<u64> = outcome.failures.iter().map(|f| f.seed).collect();
    seeds.dedup();
    let list: Vec<String> = seeds.iter().map(u64::to_string).collect();
    Err(CliError::CheckFailed(format!("identity check failed for seeds {}", list.join(", "))))
}

/// Rows of a sweep. A permanent beyond the budget is an error here, unlike in
/// `bounds`, since every row is meant to carry its actual errors.
pub fn sweep_rows(
    ctx: &Context,
    family: SweepFamily,
    n_min: usize,
    n_max: usize,
    big_n: Option<usize>,
    trials: usize,
    seed: u64,
) -> Result<Vec<SweepRow>, CliError> {
    if n_min < 2 || n_min > n_max {
        return Err(CliError::Input(format!("need 2 <= n-min <= n-max, got {n_min}..{n_max}")));
    }
    let mut rows = Vec::new();
    let mut push = |label: &str, m: AnyMatrix| -> Result<(), CliError> {
        let report = report_of(&m, ctx.budget)?;
        if report.normalized_permanent.is_none() {
            return Err(CliError::Budget(format!(
                "{label} {}x{}: permanent exceeds the budget of {} terms",
                m.rows(),
                m.cols(),
                ctx.budget
            )));
        }
        rows.push(SweepRow::from_report(label, &report));
        Ok(())
    };
    let mut index = 0u64;
    for n in n_min..=n_max {
        match family {
            SweepFamily::Derangement => push("derangement", AnyMatrix::Rational(derangement_matrix(n)?))?,
            SweepFamily::Menage => {
                if n < 3 {
                    return Err(CliError::Input("menage family needs n >= 3".into()));
                }
                push("menage", AnyMatrix::Rational(menage_matrix(n)?))?
            }
            SweepFamily::Random => {
                let rows_n = big_n.unwrap_or(n);
                if rows_n < n {
                    return Err(CliError::Input(format!("--N {rows_n} is smaller than n = {n}")));
                }
                for _ in 0..trials {
                    push("random", AnyMatrix::Complex(random_unit_disc(rows_n, n, derive_seed(seed, index))?))?;
                    index += 1;
                }
            }
        }
    }
    Ok(rows)
}

fn family(out: &mut dyn Write, name: FamilyName, n: usize, emit: Option<&Path>) -> Result<(), CliError> {
    let (kind, z, closed) = match name {
        FamilyName::Derangement => (FamilyKind::Derangement, derangement_matrix(n)?, derangement_number(n as u64)),
        FamilyName::Menage => (FamilyKind::Menage, menage_matrix(n)?, menage_number_touchard(n as u64)?),
    };
    let per = permanent_ryser(&z);
    let reference = family_reference_stats(kind, n)?;
    let kappa_tilde = reference.kappa_tilde.map(g17).unwrap_or_else(|| "n/a".into());
    writeln!(
        out,
        "{per} {closed} theta={} beta={} gamma={} kappa_tilde={kappa_tilde}",
        g17(reference.theta),
        reference.beta,
        reference.gamma
    )?;
    if let Some(path) = emit {
        fs::write(path, write_matrix(&AnyMatrix::Rational(z))).map_err(|e| CliError::io(path, e))?;
    }
    if !per.is_integer() || per.numer() != closed {
        return Err(CliError::CheckFailed(format!("permanent {per} disagrees with the closed-form count {closed}")));
    }
    Ok(())
}
