//! Command-line front end for `divseries`.
//!
//! Every command builds a [`ReportDocument`]; `--format` decides whether it is
//! printed as a table, CSV rows or a JSON report.

pub mod report;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use divseries::arith::{multiperfect_up_to, sigma};
use divseries::ramanujan::ramanujan_hoelder;
use divseries::series::{convergence_profiles, convolved_coefficient, SeriesId, SeriesValue, Target, WeightKind};
use divseries::zetakit::Precision;
use rug::{Integer, Rational};

pub use report::{Format, ReportDocument, Style};
pub use verify::Suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const DEFAULT_GRID: [u64; 4] = [10, 100, 1_000, 10_000];

#[derive(Debug, Parser)]
#[command(
    name = "divseries",
    version,
    about = "Evaluate, benchmark and verify rapidly convergent series for the sums-of-divisors functions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output layout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Significant decimal digits for real values.
    #[arg(long, global = true, default_value_t = Precision::DEFAULT_DIGITS)]
    pub precision: u32,

    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Print exact rationals as decimals with this many fractional digits.
    #[arg(long, global = true)]
    pub decimal: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sum of the s-th powers of the divisors of n.
    Sigma {
        #[arg(long, value_parser = parse_integer)]
        n: Integer,
        #[arg(long, default_value_t = 1)]
        s: u32,
    },
    /// Ramanujan sum c_k(n).
    Cksum {
        #[arg(long, value_parser = parse_integer)]
        k: Integer,
        #[arg(long, value_parser = parse_integer)]
        n: Integer,
    },
    /// Convolved coefficient a_n = sum over d | n of w(d) c_{n/d}(N).
    Coeff {
        #[arg(long, value_parser = parse_integer)]
        n: Integer,
        #[arg(long = "N", value_parser = parse_integer)]
        big_n: Integer,
        /// cb, alt-cb, geometric-half or squarefree.
        #[arg(long, default_value = "cb")]
        weight: WeightKind,
    },
    /// Partial sum of one series, with its target and error.
    Eval {
        /// thm1-i, thm1-ii, thm1-iii, lemma3, lemma4, lemma6-ii, lemma6-iii or ramanujan-baseline-<s>.
        #[arg(long)]
        series: SeriesId,
        #[arg(long = "N", value_parser = parse_integer)]
        big_n: Integer,
        #[arg(long)]
        terms: u64,
    },
    /// Convergence table over a grid of truncations.
    Bench {
        /// Comma-separated series tags.
        #[arg(long, value_delimiter = ',', default_values = ["thm1-i", "ramanujan-baseline-2"])]
        series: Vec<SeriesId>,
        /// Comma-separated arguments N.
        #[arg(long = "N", value_delimiter = ',', value_parser = parse_integer, default_values = ["1", "6", "12"])]
        ns: Vec<Integer>,
        /// Comma-separated term counts.
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_GRID)]
        grid: Vec<u64>,
    },
    /// Check the identities; exits 1 if any hard assertion fails.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Every N <= limit with sigma(N) = ratio * N.
    ScanMultiperfect {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        limit: u64,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(2..))]
        ratio: u64,
    },
}

fn parse_integer(s: &str) -> Result<Integer, String> {
    s.trim().parse::<Integer>().map_err(|e| format!("{e}"))
}

/// Invalid input; reported with exit code 2.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
}

impl From<divseries::Error> for Failure {
    fn from(e: divseries::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// A finished document plus, for `verify`, the first failed assertion.
pub struct Outcome {
    pub document: ReportDocument,
    pub failure: Option<String>,
}

impl From<ReportDocument> for Outcome {
    fn from(document: ReportDocument) -> Self {
        Self {
            document,
            failure: None,
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            if code == 0 {
                let _ = write!(stdout, "{}", e.render());
                return EXIT_OK;
            }
            let _ = write!(stderr, "{}", e.render());
            return EXIT_USAGE;
        }
    };
    let outcome = match execute(&cli) {
        Ok(outcome) => outcome,
        Err(Failure::Usage(message)) => {
            let _ = writeln!(stderr, "error: {message}");
            return EXIT_USAGE;
        }
    };
    let text = outcome.document.render(cli.format);
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| format!("cannot write output: {e}")),
    };
    if let Err(message) = written {
        let _ = writeln!(stderr, "error: {message}");
        return EXIT_USAGE;
    }
    match outcome.failure {
        Some(message) => {
            let _ = writeln!(stderr, "verification failed: {message}");
            EXIT_VERIFICATION_FAILED
        }
        None => EXIT_OK,
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    let precision = Precision::new(cli.precision)?;
    if cli.decimal.is_some_and(|d| d > 100_000) {
        return Err(Failure::Usage("--decimal is limited to 100000 digits".into()));
    }
    let style = Style {
        precision,
        decimal: cli.decimal,
    };
    match &cli.command {
        Command::Sigma { n, s } => cmd_sigma(n, *s, style).map(Outcome::from),
        Command::Cksum { k, n } => cmd_cksum(k, n, style).map(Outcome::from),
        Command::Coeff { n, big_n, weight } => cmd_coeff(n, big_n, *weight, style).map(Outcome::from),
        Command::Eval { series, big_n, terms } => cmd_eval(*series, big_n, *terms, style).map(Outcome::from),
        Command::Bench { series, ns, grid } => cmd_bench(series, ns, grid, style).map(Outcome::from),
        Command::Verify { suite } => cmd_verify(*suite, style),
        Command::ScanMultiperfect { limit, ratio } => cmd_scan_multiperfect(*limit, *ratio, style).map(Outcome::from),
    }
}

pub fn cmd_sigma(n: &Integer, s: u32, style: Style) -> Result<ReportDocument, Failure> {
    let value = sigma(s, n)?;
    let mut doc = ReportDocument::new("sigma", &["n", "s", "sigma"], style.precision);
    doc.parameter("n", n).parameter("s", s);
    doc.push_row(vec![n.to_string(), s.to_string(), value.to_string()]);
    doc.bare_column = Some(2);
    Ok(doc)
}

pub fn cmd_cksum(k: &Integer, n: &Integer, style: Style) -> Result<ReportDocument, Failure> {
    let value = ramanujan_hoelder(k, n)?;
    let mut doc = ReportDocument::new("cksum", &["k", "n", "c"], style.precision);
    doc.parameter("k", k).parameter("n", n);
    doc.push_row(vec![k.to_string(), n.to_string(), value.to_string()]);
    doc.bare_column = Some(2);
    Ok(doc)
}

pub fn cmd_coeff(n: &Integer, big_n: &Integer, weight: WeightKind, style: Style) -> Result<ReportDocument, Failure> {
    let value = convolved_coefficient(n, big_n, weight)?;
    let mut doc = ReportDocument::new("coeff", &["n", "N", "weight", "a"], style.precision);
    doc.parameter("n", n).parameter("N", big_n).parameter("weight", weight);
    doc.push_row(vec![
        n.to_string(),
        big_n.to_string(),
        weight.to_string(),
        style.exact(&value),
    ]);
    doc.bare_column = Some(3);
    Ok(doc)
}

pub const SERIES_COLUMNS: [&str; 7] = ["series", "N", "terms", "value", "target", "abs_error", "digits_correct"];

fn value_cell(value: &SeriesValue, style: Style) -> String {
    match value {
        SeriesValue::Exact(q) => style.exact(q),
        SeriesValue::Real(x) => style.real(x),
    }
}

fn target_cell(target: &Target, style: Style) -> String {
    match target {
        Target::Exact(q) => style.exact(q),
        Target::Real(x) => style.real(x),
    }
}

struct SeriesRow {
    series: String,
    n: Integer,
    terms: u64,
    cells: Vec<String>,
}

fn series_rows(series: SeriesId, ns: &[Integer], grid: &[u64], style: Style) -> Result<Vec<SeriesRow>, Failure> {
    let tag = series.to_string();
    let profiles = convergence_profiles(series, ns, grid, style.precision)?;
    let mut rows = Vec::new();
    for profile in profiles {
        let target = target_cell(&profile.target, style);
        for sample in profile.samples {
            rows.push(SeriesRow {
                series: tag.clone(),
                n: profile.n_input.clone(),
                terms: sample.terms,
                cells: vec![
                    tag.clone(),
                    profile.n_input.to_string(),
                    sample.terms.to_string(),
                    value_cell(&sample.value, style),
                    target.clone(),
                    style.real(&sample.abs_error),
                    sample.digits_correct.to_string(),
                ],
            });
        }
    }
    Ok(rows)
}

pub fn cmd_eval(series: SeriesId, big_n: &Integer, terms: u64, style: Style) -> Result<ReportDocument, Failure> {
    let mut doc = ReportDocument::new("eval", &SERIES_COLUMNS, style.precision);
    doc.parameter("series", series)
        .parameter("N", big_n)
        .parameter("terms", terms);
    for row in series_rows(series, std::slice::from_ref(big_n), &[terms], style)? {
        doc.push_row(row.cells);
    }
    Ok(doc)
}

fn joined<T: ToString>(items: &[T]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn cmd_bench(series: &[SeriesId], ns: &[Integer], grid: &[u64], style: Style) -> Result<ReportDocument, Failure> {
    if series.is_empty() || ns.is_empty() || grid.is_empty() {
        return Err(Failure::Usage(
            "bench needs at least one series, one N and one grid point".into(),
        ));
    }
    let mut series = series.to_vec();
    series.sort_by_key(|s| s.to_string());
    series.dedup();
    let mut ns = ns.to_vec();
    ns.sort();
    ns.dedup();
    let mut grid = grid.to_vec();
    grid.sort_unstable();
    grid.dedup();

    let mut doc = ReportDocument::new("bench", &SERIES_COLUMNS, style.precision);
    doc.parameter("series", joined(&series))
        .parameter("N", joined(&ns))
        .parameter("grid", joined(&grid));
    if let Some(d) = style.decimal {
        doc.parameter("decimal", d);
    }
    let mut rows = Vec::new();
    for &id in &series {
        rows.extend(series_rows(id, &ns, &grid, style)?);
    }
    rows.sort_by(|a, b| (&a.series, &a.n, a.terms).cmp(&(&b.series, &b.n, b.terms)));
    for row in rows {
        doc.push_row(row.cells);
    }
    Ok(doc)
}

pub const VERIFY_COLUMNS: [&str; 8] = [
    "suite",
    "identity",
    "range",
    "cases",
    "failures",
    "max_deviation",
    "tolerance",
    "status",
];

pub fn cmd_verify(suite: Suite, style: Style) -> Result<Outcome, Failure> {
    let checks = verify::run(suite, style.precision)?;
    let mut doc = ReportDocument::new("verify", &VERIFY_COLUMNS, style.precision);
    doc.parameter("suite", suite.name());
    for check in &checks {
        doc.push_row(vec![
            check.suite.to_string(),
            check.identity.clone(),
            check.range.clone(),
            check.cases.to_string(),
            check.failures.to_string(),
            check
                .max_deviation
                .as_ref()
                .map_or("exact".to_string(), |d| d.to_scientific(6)),
            check.tolerance.map_or("-".to_string(), |t| format!("{t:e}")),
            check.status.label().to_string(),
        ]);
    }
    let failure = checks
        .iter()
        .find(|c| c.status == verify::Status::Fail)
        .map(|c| format!("{} ({})", c.identity, c.first_failure.as_deref().unwrap_or("no detail")));
    if let Some(message) = &failure {
        doc.notes.push(format!("first failure: {message}"));
    }
    Ok(Outcome { document: doc, failure })
}

pub fn cmd_scan_multiperfect(limit: u64, ratio: u64, style: Style) -> Result<ReportDocument, Failure> {
    let found = multiperfect_up_to(limit, ratio)?;
    let mut doc = ReportDocument::new("scan-multiperfect", &["N", "sigma", "ratio"], style.precision);
    doc.parameter("limit", limit).parameter("ratio", ratio);
    for n in found {
        let sigma_n = sigma(1, &Integer::from(n))?;
        let abundancy = Rational::from((sigma_n.clone(), Integer::from(n)));
        doc.push_row(vec![n.to_string(), sigma_n.to_string(), style.exact(&abundancy)]);
    }
    Ok(doc)
}
