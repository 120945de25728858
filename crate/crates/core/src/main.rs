use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use higham_growth::classes::{classify, HermitianSplit};
use higham_growth::elimination::growth_factor;
use higham_growth::generators::extremal_pair;
use higham_growth::harness::{
    certify_matrix, emit_matrix, emit_report, extremal_checks, gap_checks, parse_matrix_file,
    run_campaign, CampaignConfig, ReportFormat, DEFAULT_DIMENSIONS, DEFAULT_OMEGAS,
};
use higham_growth::tolerances::Tolerances;
use higham_growth::Error;

const EXIT_VIOLATION: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "higham-growth",
    version,
    about = "Growth factors and certified bounds for pivotless elimination"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the growth report of a matrix file as JSON.
    Growth { file: PathBuf },
    /// Print class membership and spectral statistics as JSON.
    Classify { file: PathBuf },
    /// Print every applicable certificate; exits 2 on a binding violation.
    Certify { file: PathBuf },
    /// Emit an extremal 2x2 matrix in the matrix file format.
    Extremal(ExtremalArgs),
    /// Run a campaign from a TOML configuration.
    Campaign {
        #[arg(long)]
        config: PathBuf,
        /// Overrides `output_path` from the configuration; `-` is stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_parser = parse_format)]
        format: Option<ReportFormat>,
    },
    /// Reproduce the counterexample claims and extremal equalities.
    Counterexamples {
        /// Print the checks as JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct ExtremalArgs {
    #[arg(long)]
    omega: f64,
    /// Off-diagonal t(1+i): attains the lower scalar endpoint.
    #[arg(long, conflicts_with = "plus")]
    minus: bool,
    /// Off-diagonal t(1-i): attains the upper growth bound (the default).
    #[arg(long)]
    plus: bool,
}

fn parse_format(s: &str) -> Result<ReportFormat, String> {
    match s {
        "json" => Ok(ReportFormat::Json),
        "csv" => Ok(ReportFormat::Csv),
        _ => Err(format!("unknown format '{s}', expected json or csv")),
    }
}

/// Input, configuration and class-membership failures map to 3; everything
/// else to 1.
fn exit_for(err: &Error) -> u8 {
    match err {
        Error::Parse { .. }
        | Error::Config(_)
        | Error::Io(_)
        | Error::DimensionMismatch(_)
        | Error::NonFinite { .. }
        | Error::NotInClass(_)
        | Error::DomainError(_) => EXIT_INPUT,
        _ => 1,
    }
}

/// Writes to stdout; a closed pipe on the reader's side is not an error.
fn emit(bytes: &[u8]) -> Result<(), Error> {
    let mut out = std::io::stdout().lock();
    match out.write_all(bytes).and_then(|()| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Error> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    text.push('\n');
    emit(text.as_bytes())
}

fn certify(file: &PathBuf) -> Result<u8, Error> {
    let cert = certify_matrix(&parse_matrix_file(file)?, &Tolerances::default())?;
    print_json(&cert)?;
    if !cert.is_member() {
        eprintln!("input is neither a Higham nor an accretive-dissipative matrix");
        return Ok(EXIT_INPUT);
    }
    Ok(if cert.binding_violations == 0 {
        0
    } else {
        EXIT_VIOLATION
    })
}

fn campaign(
    config: &PathBuf,
    output: Option<PathBuf>,
    format: Option<ReportFormat>,
) -> Result<u8, Error> {
    let mut cfg = CampaignConfig::from_path(config)?;
    if let Some(path) = output {
        cfg.output_path = (path.as_os_str() != "-").then_some(path);
    }
    if format.is_some() {
        cfg.format = format;
    }
    let report = run_campaign(&cfg)?;
    let bytes = emit_report(&report, cfg.report_format())?;
    match &cfg.output_path {
        Some(path) => std::fs::write(path, &bytes)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?,
        None => emit(&bytes)?,
    }
    eprintln!(
        "{} cells, {} checks, {} binding violations, {} conjecture exceedances",
        report.cells.len(),
        report.checks.len(),
        report.binding_violations(),
        report.conjecture_exceedances()
    );
    Ok(report.exit_code() as u8)
}

fn counterexamples(json: bool) -> Result<u8, Error> {
    let mut checks = gap_checks()?;
    checks.extend(extremal_checks(&DEFAULT_OMEGAS, &DEFAULT_DIMENSIONS)?);
    if json {
        print_json(&checks)?;
    } else {
        let mut table = String::new();
        for c in &checks {
            let at = match (c.n, c.omega) {
                (Some(n), Some(w)) => format!(" n={n} omega={w}"),
                (None, Some(w)) => format!(" omega={w}"),
                _ => String::new(),
            };
            table += &format!(
                "{} {:<40} measured={:<24e} {:?} reference={:e}{at} {}\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.measured,
                c.relation,
                c.reference,
                c.detail
            );
        }
        emit(table.as_bytes())?;
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    eprintln!("{} checks, {failed} failed", checks.len());
    Ok(if failed == 0 { 0 } else { EXIT_VIOLATION })
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Growth { file } => {
            print_json(&growth_factor(&parse_matrix_file(file)?)?)?;
            Ok(0)
        }
        Command::Classify { file } => {
            print_json(&classify(&parse_matrix_file(file)?)?)?;
            Ok(0)
        }
        Command::Certify { file } => certify(&file),
        Command::Extremal(args) => {
            let (minus, plus) = extremal_pair(args.omega)?;
            let m = if args.minus { minus.matrix() } else { plus.matrix() };
            emit(emit_matrix(m).as_bytes())?;
            Ok(0)
        }
        Command::Campaign {
            config,
            output,
            format,
        } => campaign(&config, output, format),
        Command::Counterexamples { json } => counterexamples(json),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_for(&err))
        }
    }
}
