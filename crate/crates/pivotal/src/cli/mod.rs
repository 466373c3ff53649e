//! Command-line surface over the library.
//!
//! Four subcommands, all emitting CSV, JSON, or aligned text:
//!
//! * `power` — one pivot probability, exact or asymptotic;
//! * `figure` — the power-vs-population sweep behind the square-root-law
//!   plot (optionally also a self-contained gnuplot script);
//! * `allocate` — voting weights for a population CSV, by square root or
//!   by inverse power, with an optional three-basis invariance report;
//! * `verify` — the enumeration and Monte Carlo harness from
//!   [`verify`](self::verify).
//!
//! Exit codes are scripting-stable: 0 success, 1 verification failure,
//! 2 usage or input error, 3 resource refusal (a computation whose size
//! cap was exceeded). The `PIVOTAL_THREADS` environment variable caps the
//! worker-thread count; unset means the runtime default.

mod output;
pub mod verify;

use std::io::BufReader;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use crate::allocation::{
    invariance_report, load_population_table, power_based_weights_with, sqrt_weights,
    PopulationTable, TableError, WeightAllocation, WeightBasis,
};
use crate::oracle::OracleError;
use crate::power::{
    binary_power_exact, power_with, ternary_power_asymptotic, ternary_power_exact,
    ternary_power_float, PowerConfig, PowerError, Probability, Strategy, VotingScheme,
};
use output::{
    emit_csv, emit_json, sci, sci_opt, AllocateRow, FigureRow, Format, PowerRow, ReportRow,
};
use verify::{check_enumeration, check_monte_carlo, VerifyError};

#[derive(Parser)]
#[command(
    name = "pivotal",
    version,
    about = "Voting power and square-root voting weights"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Significant digits for numbers in text and CSV output (1-15).
    #[arg(long, global = true, value_parser = clap::value_parser!(u8).range(1..=15))]
    precision: Option<u8>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Pivot probability of one voter among N others.
    Power {
        /// Number of other voters.
        #[arg(long)]
        n: u64,
        /// Voting scheme.
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        /// Evaluation strategy.
        #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
        strategy: StrategyArg,
    },
    /// Ternary power across a population sweep, with the square-root law.
    Figure {
        /// Smallest population in the sweep.
        #[arg(long, default_value_t = 100_000)]
        pop_min: u64,
        /// Largest population in the sweep.
        #[arg(long, default_value_t = 100_000_000)]
        pop_max: u64,
        /// Number of log-spaced sample populations.
        #[arg(long, default_value_t = 25)]
        points: u64,
        /// Also write a self-contained gnuplot script to this path.
        #[arg(long)]
        gnuplot: Option<PathBuf>,
    },
    /// Voting weights for a population table.
    Allocate {
        /// CSV file with header `name,population`.
        csv_path: PathBuf,
        /// Weight basis.
        #[arg(long, value_enum, default_value_t = BasisArg::Sqrt)]
        basis: BasisArg,
        /// Evaluation strategy for power-based bases.
        #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
        strategy: StrategyArg,
        /// Emit the three-basis invariance report instead of one allocation.
        #[arg(long)]
        report: bool,
    },
    /// Cross-check analytic powers against enumeration and simulation.
    Verify {
        /// Top of the binary enumeration sweep (N = 0 up to this).
        #[arg(long, default_value_t = 20)]
        max_n_binary: u64,
        /// Top of the ternary enumeration sweep (N = 0 up to this).
        #[arg(long, default_value_t = 13)]
        max_n_ternary: u64,
        /// Monte Carlo sample count per check.
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        /// Monte Carlo seed.
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SchemeArg {
    Binary,
    Ternary,
}

impl From<SchemeArg> for VotingScheme {
    fn from(arg: SchemeArg) -> Self {
        match arg {
            SchemeArg::Binary => VotingScheme::Binary,
            SchemeArg::Ternary => VotingScheme::Ternary,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Auto,
    Exact,
    Asymptotic,
}

impl From<StrategyArg> for Strategy {
    fn from(arg: StrategyArg) -> Self {
        match arg {
            StrategyArg::Auto => Strategy::Auto,
            StrategyArg::Exact => Strategy::ForceExact,
            StrategyArg::Asymptotic => Strategy::ForceAsymptotic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Text,
}

impl From<FormatArg> for Format {
    fn from(arg: FormatArg) -> Self {
        match arg {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
            FormatArg::Text => Format::Text,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    Sqrt,
    Binary,
    Ternary,
}

/// Internal error type carrying the exit-code class.
#[derive(Debug)]
enum CliError {
    /// Usage or input problems: exit 2.
    Usage(String),
    /// A size cap refused the computation: exit 3.
    Resource(String),
    /// A verification check failed: exit 1.
    VerifyFailed,
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::VerifyFailed => 1,
            CliError::Usage(_) => 2,
            CliError::Resource(_) => 3,
        }
    }
}

impl From<PowerError> for CliError {
    fn from(err: PowerError) -> Self {
        match err {
            PowerError::ExactRefused { .. } => CliError::Resource(err.to_string()),
            PowerError::AsymptoticUndefined => CliError::Usage(err.to_string()),
        }
    }
}

impl From<TableError> for CliError {
    fn from(err: TableError) -> Self {
        CliError::Usage(err.to_string())
    }
}

impl From<OracleError> for CliError {
    fn from(err: OracleError) -> Self {
        CliError::Resource(err.to_string())
    }
}

/// Parse arguments from the process environment, run, and return the exit
/// code for `std::process::exit`.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version are not errors.
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = err.print();
            return code;
        }
    };
    if let Err(err) = configure_threads() {
        eprintln!("error: {}", message(&err));
        return err.exit_code();
    }
    match dispatch(cli) {
        Ok(()) => 0,
        Err(err) => {
            let text = message(&err);
            if !text.is_empty() {
                eprintln!("error: {text}");
            }
            err.exit_code()
        }
    }
}

fn message(err: &CliError) -> String {
    match err {
        CliError::Usage(m) | CliError::Resource(m) => m.clone(),
        // Verification failures already printed their FAIL lines.
        CliError::VerifyFailed => String::new(),
    }
}

/// Apply `PIVOTAL_THREADS` before any parallel work starts.
fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("PIVOTAL_THREADS") else {
        return Ok(());
    };
    if raw.trim().is_empty() {
        return Ok(());
    }
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t >= 1)
        .ok_or_else(|| {
            CliError::Usage(format!(
                "PIVOTAL_THREADS must be a positive integer, found '{raw}'"
            ))
        })?;
    // A second initialization (e.g. in tests) keeps the first pool; that is
    // fine, the variable is read once per process.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    Ok(())
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    let format = Format::from(cli.format);
    let precision = cli.precision.map(usize::from);
    match cli.command {
        Command::Power {
            n,
            scheme,
            strategy,
        } => cmd_power(n, scheme.into(), strategy.into(), format, precision.unwrap_or(6)),
        Command::Figure {
            pop_min,
            pop_max,
            points,
            gnuplot,
        } => cmd_figure(pop_min, pop_max, points, gnuplot.as_deref(), format, precision.unwrap_or(6)),
        Command::Allocate {
            csv_path,
            basis,
            strategy,
            report,
        } => cmd_allocate(&csv_path, basis, strategy.into(), report, format, precision),
        Command::Verify {
            max_n_binary,
            max_n_ternary,
            samples,
            seed,
        } => cmd_verify(max_n_binary, max_n_ternary, samples, seed),
    }
}

fn cmd_power(
    n: u64,
    scheme: VotingScheme,
    strategy: Strategy,
    format: Format,
    sig: usize,
) -> Result<(), CliError> {
    let result = power_with(n, scheme, strategy, &PowerConfig::default())?;
    let power = result.value_f64();
    let approx = match scheme {
        _ if n == 0 => None,
        VotingScheme::Binary => Some(crate::power::binary_power_asymptotic(n)?.value_f64()),
        VotingScheme::Ternary => Some(ternary_power_asymptotic(n)?.value_f64()),
    };
    let rel_dev = approx.map(|a| (power / a - 1.0).abs());
    let row = PowerRow {
        n,
        scheme: scheme.to_string(),
        method: result.method.to_string(),
        power,
        approx,
        rel_dev,
    };
    match format {
        Format::Json => emit_json(std::slice::from_ref(&row)),
        Format::Csv => emit_csv(
            "n,scheme,method,power,approx,rel_dev",
            &[format!(
                "{},{},{},{},{},{}",
                row.n,
                row.scheme,
                row.method,
                sci(row.power, sig),
                sci_opt(row.approx, sig),
                sci_opt(row.rel_dev, sig),
            )],
        ),
        Format::Text => {
            let value = match &result.value {
                Probability::Exact(r) => format!("{} = {}", r, sci(power, sig)),
                Probability::Real(_) => sci(power, sig),
            };
            println!("n        : {n}");
            println!("scheme   : {}", row.scheme);
            println!("method   : {}", row.method);
            println!("value    : {value}");
            match approx {
                Some(a) => println!("approx   : {} (square-root law)", sci(a, sig)),
                None => println!("approx   : undefined at n = 0"),
            }
            if let Some(d) = rel_dev {
                println!("rel_dev  : {}", sci(d, sig));
            }
            if let Some(hint) = result.error_hint {
                println!("err_hint : {}", sci(hint, sig));
            }
        }
    }
    Ok(())
}

/// Log-spaced integer populations with exact endpoints.
fn log_spaced(pop_min: u64, pop_max: u64, points: u64) -> Vec<u64> {
    let ln_min = (pop_min as f64).ln();
    let ln_max = (pop_max as f64).ln();
    (0..points)
        .map(|i| {
            if i == 0 {
                pop_min
            } else if i == points - 1 {
                pop_max
            } else {
                let t = i as f64 / (points - 1) as f64;
                (ln_min + t * (ln_max - ln_min)).exp().round() as u64
            }
        })
        .collect()
}

fn cmd_figure(
    pop_min: u64,
    pop_max: u64,
    points: u64,
    gnuplot: Option<&Path>,
    format: Format,
    sig: usize,
) -> Result<(), CliError> {
    if pop_min < 2 || pop_max <= pop_min || points < 2 {
        return Err(CliError::Usage(format!(
            "need pop_min >= 2, pop_max > pop_min, points >= 2 \
             (got {pop_min}, {pop_max}, {points})"
        )));
    }
    let rows: Vec<FigureRow> = log_spaced(pop_min, pop_max, points)
        .into_iter()
        .map(|population| {
            let n = population - 1;
            // The power column is the exact value evaluated in floating
            // point, so the deviation column genuinely measures the
            // square-root law's truncation error instead of comparing the
            // law with itself.
            let result = ternary_power_float(n);
            let power = result.value_f64();
            let approx = ternary_power_asymptotic(n)?.value_f64();
            Ok(FigureRow {
                population,
                scheme: VotingScheme::Ternary.to_string(),
                method: result.method.to_string(),
                power,
                approx,
                rel_dev: (power / approx - 1.0).abs(),
            })
        })
        .collect::<Result<_, PowerError>>()?;
    if let Some(path) = gnuplot {
        write_gnuplot_script(path, &rows)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    match format {
        Format::Json => emit_json(&rows),
        Format::Csv => {
            let lines: Vec<String> = rows
                .iter()
                .map(|r| {
                    format!(
                        "{},{},{},{},{},{}",
                        r.population,
                        r.scheme,
                        r.method,
                        sci(r.power, sig),
                        sci(r.approx, sig),
                        sci(r.rel_dev, sig)
                    )
                })
                .collect();
            emit_csv("population,scheme,method,power,approx,rel_dev", &lines);
        }
        Format::Text => {
            println!(
                "{:>12}  {:>13}  {:>13}  {:>10}",
                "population", "power", "sqrt-law", "rel_dev"
            );
            for r in &rows {
                println!(
                    "{:>12}  {:>13}  {:>13}  {:>10}",
                    r.population,
                    sci(r.power, sig),
                    sci(r.approx, sig),
                    sci(r.rel_dev, 3)
                );
            }
        }
    }
    Ok(())
}

/// A gnuplot script with the data inlined, runnable as-is.
fn write_gnuplot_script(path: &Path, rows: &[FigureRow]) -> std::io::Result<()> {
    let mut script = String::new();
    script.push_str("# Voting power vs population, with the square-root law\n");
    script.push_str("set logscale xy\n");
    script.push_str("set xlabel 'population'\n");
    script.push_str("set ylabel 'voting power'\n");
    script.push_str("set key top right\n");
    script.push_str("$data << EOD\n");
    for r in rows {
        script.push_str(&format!("{} {:e} {:e}\n", r.population, r.power, r.approx));
    }
    script.push_str("EOD\n");
    script.push_str(
        "plot $data using 1:2 with points pt 7 title 'computed power', \\\n     \
         $data using 1:3 with lines title 'sqrt(3/pi)/sqrt(N+1)'\n",
    );
    std::fs::write(path, script)
}

fn cmd_allocate(
    csv_path: &Path,
    basis: BasisArg,
    strategy: Strategy,
    report: bool,
    format: Format,
    precision: Option<usize>,
) -> Result<(), CliError> {
    let file = std::fs::File::open(csv_path)
        .map_err(|e| CliError::Usage(format!("cannot open {}: {e}", csv_path.display())))?;
    let table = load_population_table(BufReader::new(file))?;
    if report {
        return emit_report(&table, format, precision);
    }
    let allocation = match basis {
        BasisArg::Sqrt => sqrt_weights(&table),
        BasisArg::Binary => power_based_weights_with(
            &table,
            VotingScheme::Binary,
            strategy,
            &PowerConfig::default(),
        )?,
        BasisArg::Ternary => power_based_weights_with(
            &table,
            VotingScheme::Ternary,
            strategy,
            &PowerConfig::default(),
        )?,
    };
    emit_allocation(&allocation, format, precision);
    Ok(())
}

fn emit_allocation(allocation: &WeightAllocation, format: Format, precision: Option<usize>) {
    let rows: Vec<AllocateRow> = allocation
        .entries
        .iter()
        .map(|e| AllocateRow {
            name: e.name.clone(),
            population: e.population,
            weight: e.weight,
        })
        .collect();
    match format {
        Format::Json => emit_json(&rows),
        Format::Csv => {
            // Machine-readable weights default to 12 significant digits for
            // round-trip stability.
            let sig = precision.unwrap_or(12);
            let lines: Vec<String> = rows
                .iter()
                .map(|r| format!("{},{},{}", r.name, r.population, sci(r.weight, sig)))
                .collect();
            emit_csv("name,population,weight", &lines);
        }
        Format::Text => {
            let sig = precision.unwrap_or(6);
            println!("basis: {}", basis_name(allocation.basis));
            println!("{:<16} {:>12}  {:>13}", "name", "population", "weight");
            for r in &rows {
                println!(
                    "{:<16} {:>12}  {:>13}",
                    r.name,
                    r.population,
                    sci(r.weight, sig)
                );
            }
        }
    }
}

fn basis_name(basis: WeightBasis) -> &'static str {
    match basis {
        WeightBasis::SqrtPopulation => "sqrt-population",
        WeightBasis::InversePowerBinary => "inverse-power-binary",
        WeightBasis::InversePowerTernary => "inverse-power-ternary",
    }
}

fn emit_report(
    table: &PopulationTable,
    format: Format,
    precision: Option<usize>,
) -> Result<(), CliError> {
    let report = invariance_report(table)?;
    let rows: Vec<ReportRow> = report
        .rows
        .iter()
        .map(|r| ReportRow {
            name: r.name.clone(),
            population: r.population,
            binary_power: r.binary_power,
            ternary_power: r.ternary_power,
            power_ratio: r.power_ratio,
            weight_sqrt: r.weight_sqrt,
            weight_binary: r.weight_binary,
            weight_ternary: r.weight_ternary,
        })
        .collect();
    match format {
        Format::Json => emit_json(&rows),
        Format::Csv => {
            let sig = precision.unwrap_or(12);
            let lines: Vec<String> = rows
                .iter()
                .map(|r| {
                    format!(
                        "{},{},{},{},{},{},{},{}",
                        r.name,
                        r.population,
                        sci(r.binary_power, sig),
                        sci(r.ternary_power, sig),
                        sci(r.power_ratio, sig),
                        sci(r.weight_sqrt, sig),
                        sci(r.weight_binary, sig),
                        sci(r.weight_ternary, sig)
                    )
                })
                .collect();
            emit_csv(
                "name,population,binary_power,ternary_power,power_ratio,\
                 weight_sqrt,weight_binary,weight_ternary",
                &lines,
            );
        }
        Format::Text => {
            let sig = precision.unwrap_or(6);
            println!(
                "{:<16} {:>12}  {:>13}  {:>13}  {:>9}  {:>13}  {:>13}  {:>13}",
                "name",
                "population",
                "binary_power",
                "ternary_power",
                "ratio",
                "w_sqrt",
                "w_binary",
                "w_ternary"
            );
            for r in &rows {
                println!(
                    "{:<16} {:>12}  {:>13}  {:>13}  {:>9.6}  {:>13}  {:>13}  {:>13}",
                    r.name,
                    r.population,
                    sci(r.binary_power, sig),
                    sci(r.ternary_power, sig),
                    r.power_ratio,
                    sci(r.weight_sqrt, sig),
                    sci(r.weight_binary, sig),
                    sci(r.weight_ternary, sig)
                );
            }
            println!(
                "max |binary - ternary| weight deviation: {}",
                sci(report.max_dev_binary_ternary, 3)
            );
            println!(
                "max |sqrt - binary| weight deviation:    {}",
                sci(report.max_dev_sqrt_binary, 3)
            );
            println!(
                "max |sqrt - ternary| weight deviation:   {}",
                sci(report.max_dev_sqrt_ternary, 3)
            );
        }
    }
    Ok(())
}

fn cmd_verify(
    max_n_binary: u64,
    max_n_ternary: u64,
    samples: u64,
    seed: u64,
) -> Result<(), CliError> {
    if samples == 0 {
        return Err(CliError::Usage("samples must be at least 1".into()));
    }
    let cfg = PowerConfig::default();
    let mut all_passed = true;

    let exact_binary = |n: u64| match binary_power_exact(n, &cfg).expect("within cap").value {
        Probability::Exact(r) => r,
        Probability::Real(_) => unreachable!("exact path yields rationals"),
    };
    let exact_ternary = |n: u64| match ternary_power_exact(n, &cfg).expect("within cap").value {
        Probability::Exact(r) => r,
        Probability::Real(_) => unreachable!("exact path yields rationals"),
    };

    for (scheme, max_n) in [
        (VotingScheme::Binary, max_n_binary),
        (VotingScheme::Ternary, max_n_ternary),
    ] {
        let outcome = match scheme {
            VotingScheme::Binary => check_enumeration(scheme, max_n, &exact_binary),
            VotingScheme::Ternary => check_enumeration(scheme, max_n, &exact_ternary),
        };
        match outcome {
            Ok(()) => println!("PASS enumeration-vs-exact {scheme} (N = 0..={max_n})"),
            Err(VerifyError::Refused(err)) => return Err(err.into()),
            Err(diverged) => {
                println!("FAIL enumeration-vs-exact {scheme}: {diverged}");
                all_passed = false;
            }
        }
    }

    let mc_cases = [
        (VotingScheme::Binary, 100u64),
        (VotingScheme::Ternary, 100),
        (VotingScheme::Ternary, 1000),
    ];
    for (scheme, n) in mc_cases {
        let expected = match scheme {
            VotingScheme::Binary => binary_power_exact(n, &cfg),
            VotingScheme::Ternary => ternary_power_exact(n, &cfg),
        }
        .expect("within cap")
        .value_f64();
        let check = check_monte_carlo(scheme, n, samples, seed, 4.0, expected);
        if check.passed() {
            println!(
                "PASS monte-carlo-vs-exact {scheme} (N = {n}, {} samples, seed {}): \
                 |{:.6e} - {:.6e}| <= {:.2e}",
                samples,
                seed,
                check.estimate.mean,
                expected,
                check.tolerance()
            );
        } else {
            println!(
                "FAIL monte-carlo-vs-exact {scheme} (N = {n}, {} samples, seed {}): \
                 deviation {:.2e} exceeds {:.2e}",
                samples,
                seed,
                check.deviation(),
                check.tolerance()
            );
            all_passed = false;
        }
    }

    if all_passed {
        Ok(())
    } else {
        Err(CliError::VerifyFailed)
    }
}
