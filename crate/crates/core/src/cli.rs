//! Command-line front end: flag parsing, oracle files, dispatch, and
//! deterministic report output.
//!
//! Exit codes: 0 success, 1 usage error, 2 oracle file or promise-class
//! violation, 3 numeric-invariant failure (truncation bound, norm or
//! unitarity breakage).
//!
//! Seed resolution: `--seed` wins, then the CAVITY_DJ_SEED environment
//! variable, then 0. The `random-balanced` oracle refuses to run without
//! one of the first two, since an implicit default would silently pin the
//! "random" table.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::ffi::OsString;
use std::path::Path;

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::feasibility::{feasibility_report, max_feasible_atoms, FeasibilityReport,
    HardwareParams};
use crate::optics::FockTruncation;
use crate::protocols::{
    prepare_minus_fock_with_atom, prepare_odd_cat_with_truncation, run_deutsch,
    run_deutsch_jozsa, ExecutionMode, OracleSpec, RunReport, ATOM_B_F, ATOM_B_G,
    MAX_ORACLE_BITS,
};
use crate::report::{sample_counts, to_csv_string, to_json_string, SCHEMA_VERSION};

const DEFAULT_ALPHA: f64 = 2.0;
const DEFAULT_TAIL_EPSILON: f64 = 1e-12;

#[derive(Parser)]
#[command(
    name = "cavity-dj",
    version,
    about = "Deterministic state-vector simulation of cavity-QED constant-vs-balanced runs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// One-bit constant-vs-balanced run (a single oracle call decides)
    RunDeutsch(RunArgs),
    /// n-bit constant-vs-balanced run
    RunDj(RunArgs),
    /// Resonant-pulse preparation of the cavity in (|0>-|1>)/sqrt(2)
    PrepareCavity(PrepareArgs),
    /// Post-selected preparation of the odd cat state
    CatPrep(CatArgs),
    /// Hardware timing budget for an n-atom run
    Feasibility(FeasArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Register size in bits (defaults to the oracle file's size, or 1)
    #[arg(long)]
    n: Option<usize>,
    /// Oracle: constant0 | constant1 | parity | random-balanced | a file path
    #[arg(long, default_value = "constant0")]
    oracle: String,
    /// Execution mode: ideal | two-level | coherent
    #[arg(long, default_value = "ideal")]
    mode: String,
    /// Field amplitude (required by, and only valid in, coherent mode)
    #[arg(long)]
    alpha: Option<f64>,
    /// Truncation tail budget (coherent mode, default 1e-12)
    #[arg(long)]
    tail_epsilon: Option<f64>,
    /// Pin the Fock truncation level instead of deriving it (coherent mode)
    #[arg(long)]
    n_max: Option<usize>,
    /// RNG seed; falls back to CAVITY_DJ_SEED, then 0
    #[arg(long)]
    seed: Option<u64>,
    /// Sampled measurement shots (0 = analytic distribution only)
    #[arg(long, default_value_t = 0)]
    shots: u64,
    /// Output format: json | csv
    #[arg(long, default_value = "json")]
    format: String,
}

#[derive(Args)]
struct PrepareArgs {
    /// Output format: json | csv
    #[arg(long, default_value = "json")]
    format: String,
}

#[derive(Args)]
struct CatArgs {
    /// Detection level to post-select on: f | g
    #[arg(long, default_value = "f")]
    target: String,
    /// Field amplitude
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    alpha: f64,
    /// Truncation tail budget
    #[arg(long, default_value_t = DEFAULT_TAIL_EPSILON)]
    tail_epsilon: f64,
    /// Pin the Fock truncation level instead of deriving it
    #[arg(long)]
    n_max: Option<usize>,
    /// RNG seed; falls back to CAVITY_DJ_SEED, then 0
    #[arg(long)]
    seed: Option<u64>,
    /// Output format: json | csv
    #[arg(long, default_value = "json")]
    format: String,
}

#[derive(Args)]
struct FeasArgs {
    /// Dispersive phase per atom: "pi", "2pi", or radians as a decimal
    #[arg(long, default_value = "pi")]
    phi: String,
    /// Number of register atoms
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Coupling constant in rad/s (default 2*pi*25 kHz)
    #[arg(long)]
    g: Option<f64>,
    /// Detuning in rad/s (default 2*pi*100 kHz)
    #[arg(long)]
    delta: Option<f64>,
    /// Atomic radiative time in seconds (default 1e-2)
    #[arg(long)]
    radiative_time: Option<f64>,
    /// Cavity energy damping time in seconds (default 1e-2)
    #[arg(long)]
    damping_time: Option<f64>,
    /// Output format: json | csv
    #[arg(long, default_value = "json")]
    format: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum OutputFormat {
    Json,
    Csv,
}

impl OutputFormat {
    fn parse(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::InvalidArgument(format!(
                "unknown output format {other:?}: expected \"json\" or \"csv\""
            ))),
        }
    }

    fn as_str(&self) -> &'static str {
        match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        }
    }
}

/// Angle literal: "pi", "2pi", or radians as a decimal.
pub fn parse_angle(s: &str) -> Result<f64> {
    match s.trim() {
        "pi" => Ok(PI),
        "2pi" => Ok(2.0 * PI),
        other => other.parse::<f64>().map_err(|_| {
            Error::InvalidArgument(format!(
                "invalid angle {other:?}: expected \"pi\", \"2pi\", or a decimal radian value"
            ))
        }),
    }
}

/// Oracle file format: line 1 is the register size n; line 2 holds 2^n
/// characters, each '0' or '1', where position X (atom A1 = most
/// significant bit) is F(X). A trailing newline is allowed.
pub fn parse_oracle_file(path: &Path) -> Result<OracleSpec> {
    let content = std::fs::read_to_string(path).map_err(|source| Error::OracleFileRead {
        path: path.display().to_string(),
        source,
    })?;
    let parse_err = |line: usize, column: usize, message: String| Error::OracleFileParse {
        line,
        column,
        message,
    };
    let mut lines = content.lines();

    let first = lines
        .next()
        .ok_or_else(|| parse_err(1, 1, "missing register size line".into()))?;
    let n: usize = first.trim().parse().map_err(|_| {
        parse_err(1, 1, format!("expected an integer register size, found {first:?}"))
    })?;
    if n == 0 || n > MAX_ORACLE_BITS {
        return Err(parse_err(
            1,
            1,
            format!("register size {n} outside supported range 1..={MAX_ORACLE_BITS}"),
        ));
    }

    let second = lines
        .next()
        .ok_or_else(|| parse_err(2, 1, "missing truth table line".into()))?;
    let expected = 1usize << n;
    let chars: Vec<char> = second.chars().collect();
    if chars.len() != expected {
        return Err(parse_err(
            2,
            chars.len().min(expected) + 1,
            format!("truth table has {} characters, expected {expected}", chars.len()),
        ));
    }
    let mut table = Vec::with_capacity(expected);
    for (i, ch) in chars.iter().enumerate() {
        table.push(match ch {
            '0' => false,
            '1' => true,
            other => {
                return Err(parse_err(
                    2,
                    i + 1,
                    format!("invalid character {other:?}, expected '0' or '1'"),
                ))
            }
        });
    }

    for (offset, line) in lines.enumerate() {
        if !line.trim().is_empty() {
            return Err(parse_err(
                3 + offset,
                1,
                "unexpected content after the truth table".into(),
            ));
        }
    }
    OracleSpec::new(n, table)
}

fn resolve_seed(flag: Option<u64>) -> Result<(u64, bool)> {
    if let Some(seed) = flag {
        return Ok((seed, true));
    }
    match std::env::var("CAVITY_DJ_SEED") {
        Ok(raw) => {
            let seed = raw.parse::<u64>().map_err(|_| {
                Error::InvalidArgument(format!(
                    "CAVITY_DJ_SEED must be an unsigned 64-bit integer, found {raw:?}"
                ))
            })?;
            Ok((seed, true))
        }
        Err(_) => Ok((0, false)),
    }
}

#[derive(Serialize)]
struct ResolvedRunConfig {
    mode: String,
    n: usize,
    oracle: String,
    alpha: Option<f64>,
    tail_epsilon: Option<f64>,
    n_max: Option<usize>,
    seed: u64,
    shots: u64,
    output_format: String,
}

#[derive(Serialize)]
struct ShotsSection {
    requested: u64,
    counts: BTreeMap<String, u64>,
}

#[derive(Serialize)]
struct CliRunReport {
    schema: u32,
    command: String,
    config: ResolvedRunConfig,
    result: RunReport,
    shots: Option<ShotsSection>,
}

#[derive(Serialize)]
struct PrepareConfig {
    output_format: String,
}

#[derive(Serialize)]
struct CliPrepareReport {
    schema: u32,
    command: String,
    config: PrepareConfig,
    purity: f64,
    fidelity_vs_minus: f64,
    cavity_amplitudes: Vec<[f64; 2]>,
}

#[derive(Serialize)]
struct CatConfig {
    target: String,
    alpha: f64,
    tail_epsilon: f64,
    n_max: usize,
    seed: u64,
    output_format: String,
}

#[derive(Serialize)]
struct CliCatReport {
    schema: u32,
    command: String,
    config: CatConfig,
    status: String,
    detected: String,
    targeted: String,
    postselected: bool,
    postselect_probability: f64,
    fidelity_vs_odd_cat: f64,
    residual_cat_overlap: f64,
    cavity_amplitudes: Vec<[f64; 2]>,
}

#[derive(Serialize)]
struct FeasConfig {
    phi: f64,
    n: usize,
    g: f64,
    delta: f64,
    radiative_time: f64,
    cavity_damping_time: f64,
    output_format: String,
}

#[derive(Serialize)]
struct CliFeasibilityReport {
    schema: u32,
    command: String,
    config: FeasConfig,
    report: FeasibilityReport,
    max_feasible_n: usize,
}

fn emit<T: Serialize>(report: &T, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => to_json_string(report),
        OutputFormat::Csv => to_csv_string(report),
    }
}

fn amplitudes_of(state: &crate::hilbert::StateVector) -> Vec<[f64; 2]> {
    state.amps().iter().map(|a| [a.re, a.im]).collect()
}

fn atom_b_label(level: usize) -> &'static str {
    match level {
        ATOM_B_F => "f",
        ATOM_B_G => "g",
        _ => unreachable!("atom B is two-level"),
    }
}

fn run_protocol(command: &str, args: &RunArgs) -> Result<String> {
    let format = OutputFormat::parse(&args.format)?;
    let (seed, seed_explicit) = resolve_seed(args.seed)?;

    // Oracle first: a file fixes n, a name needs it from the flag.
    let named = matches!(
        args.oracle.as_str(),
        "constant0" | "constant1" | "parity" | "random-balanced"
    );
    let (oracle, n) = if named {
        let n = match (command, args.n) {
            (_, Some(n)) => n,
            ("run-deutsch", None) => 1,
            _ => {
                return Err(Error::InvalidArgument(
                    "--n is required with a named oracle".into(),
                ))
            }
        };
        let oracle = match args.oracle.as_str() {
            "constant0" => OracleSpec::constant(n, false)?,
            "constant1" => OracleSpec::constant(n, true)?,
            "parity" => OracleSpec::parity(n)?,
            "random-balanced" => {
                if !seed_explicit {
                    return Err(Error::InvalidArgument(
                        "oracle \"random-balanced\" requires --seed or CAVITY_DJ_SEED".into(),
                    ));
                }
                OracleSpec::random_balanced(n, seed)?
            }
            _ => unreachable!(),
        };
        (oracle, n)
    } else {
        let oracle = parse_oracle_file(Path::new(&args.oracle))?;
        let n = oracle.n();
        if let Some(flag_n) = args.n {
            if flag_n != n {
                return Err(Error::InvalidArgument(format!(
                    "--n {flag_n} contradicts the oracle file, which declares n = {n}"
                )));
            }
        }
        (oracle, n)
    };

    let mode = match args.mode.as_str() {
        "ideal" | "two-level" => {
            for (flag, set) in [
                ("--alpha", args.alpha.is_some()),
                ("--tail-epsilon", args.tail_epsilon.is_some()),
                ("--n-max", args.n_max.is_some()),
            ] {
                if set {
                    return Err(Error::InvalidArgument(format!(
                        "{flag} applies only to coherent mode"
                    )));
                }
            }
            if args.mode == "ideal" {
                ExecutionMode::IdealGate
            } else {
                ExecutionMode::TwoLevelFock
            }
        }
        "coherent" => {
            let alpha = args.alpha.ok_or_else(|| {
                Error::InvalidArgument("coherent mode requires --alpha".into())
            })?;
            let tail_epsilon = args.tail_epsilon.unwrap_or(DEFAULT_TAIL_EPSILON);
            let alpha_c = Complex64::new(alpha, 0.0);
            match args.n_max {
                Some(n_max) => ExecutionMode::ThreeLevelCoherent {
                    alpha: alpha_c,
                    truncation: FockTruncation::new(n_max, tail_epsilon)?,
                },
                None => ExecutionMode::three_level_coherent(alpha_c, tail_epsilon)?,
            }
        }
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown mode {other:?}: expected \"ideal\", \"two-level\", or \"coherent\""
            )))
        }
    };

    let result = match command {
        "run-deutsch" => run_deutsch(&oracle, &mode, seed)?,
        _ => run_deutsch_jozsa(&oracle, &mode, seed)?,
    };
    let shots = (args.shots > 0).then(|| ShotsSection {
        requested: args.shots,
        counts: sample_counts(&result.distribution, seed, args.shots),
    });

    let (cfg_alpha, cfg_tail, cfg_n_max) = match &mode {
        ExecutionMode::ThreeLevelCoherent { alpha, truncation } => (
            Some(alpha.re),
            Some(truncation.tail_epsilon()),
            Some(truncation.n_max()),
        ),
        _ => (None, None, None),
    };
    let report = CliRunReport {
        schema: SCHEMA_VERSION,
        command: command.to_string(),
        config: ResolvedRunConfig {
            mode: args.mode.clone(),
            n,
            oracle: args.oracle.clone(),
            alpha: cfg_alpha,
            tail_epsilon: cfg_tail,
            n_max: cfg_n_max,
            seed,
            shots: args.shots,
            output_format: format.as_str().to_string(),
        },
        result,
        shots,
    };
    emit(&report, format)
}

fn run_prepare(args: &PrepareArgs) -> Result<String> {
    let format = OutputFormat::parse(&args.format)?;
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let (cavity, purity) =
        prepare_minus_fock_with_atom(Complex64::new(0.0, -r), Complex64::new(r, 0.0))?;
    let target = crate::hilbert::StateVector::new(
        crate::hilbert::CompositeSpace::single(2)?,
        vec![Complex64::new(r, 0.0), Complex64::new(-r, 0.0)],
    )?;
    let report = CliPrepareReport {
        schema: SCHEMA_VERSION,
        command: "prepare-cavity".to_string(),
        config: PrepareConfig { output_format: format.as_str().to_string() },
        purity,
        fidelity_vs_minus: cavity.fidelity_up_to_phase(&target)?,
        cavity_amplitudes: amplitudes_of(&cavity),
    };
    emit(&report, format)
}

fn run_cat_prep(args: &CatArgs) -> Result<String> {
    let format = OutputFormat::parse(&args.format)?;
    let (seed, _) = resolve_seed(args.seed)?;
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let (c_f, c_g) = match args.target.as_str() {
        "f" => (Complex64::new(0.0, r), Complex64::new(r, 0.0)),
        "g" => (Complex64::new(0.0, -r), Complex64::new(r, 0.0)),
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown detection target {other:?}: expected \"f\" or \"g\""
            )))
        }
    };
    let alpha = Complex64::new(args.alpha, 0.0);
    let truncation = match args.n_max {
        Some(n_max) => FockTruncation::new(n_max, args.tail_epsilon)?,
        None => crate::optics::choose_truncation(alpha, args.tail_epsilon)?,
    };
    let outcome = prepare_odd_cat_with_truncation(c_f, c_g, alpha, truncation, seed)?;
    let report = CliCatReport {
        schema: SCHEMA_VERSION,
        command: "cat-prep".to_string(),
        config: CatConfig {
            target: args.target.clone(),
            alpha: args.alpha,
            tail_epsilon: args.tail_epsilon,
            n_max: truncation.n_max(),
            seed,
            output_format: format.as_str().to_string(),
        },
        status: if outcome.postselected { "ok" } else { "postselection failed" }.to_string(),
        detected: atom_b_label(outcome.detected).to_string(),
        targeted: atom_b_label(outcome.targeted).to_string(),
        postselected: outcome.postselected,
        postselect_probability: outcome.postselect_probability,
        fidelity_vs_odd_cat: outcome.fidelity_vs_odd_cat,
        residual_cat_overlap: outcome.residual_cat_overlap,
        cavity_amplitudes: amplitudes_of(&outcome.cavity),
    };
    emit(&report, format)
}

fn run_feasibility(args: &FeasArgs) -> Result<String> {
    let format = OutputFormat::parse(&args.format)?;
    let phi = parse_angle(&args.phi)?;
    let defaults = HardwareParams::default();
    let hw = HardwareParams::new(
        args.g.unwrap_or(defaults.g),
        args.delta.unwrap_or(defaults.delta),
        args.radiative_time.unwrap_or(defaults.radiative_time),
        args.damping_time.unwrap_or(defaults.cavity_damping_time),
    )?;
    let report = feasibility_report(&hw, phi, args.n)?;
    let cli_report = CliFeasibilityReport {
        schema: SCHEMA_VERSION,
        command: "feasibility".to_string(),
        config: FeasConfig {
            phi,
            n: args.n,
            g: hw.g,
            delta: hw.delta,
            radiative_time: hw.radiative_time,
            cavity_damping_time: hw.cavity_damping_time,
            output_format: format.as_str().to_string(),
        },
        report,
        max_feasible_n: max_feasible_atoms(&hw, phi)?,
    };
    emit(&cli_report, format)
}

fn dispatch(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::RunDeutsch(args) => run_protocol("run-deutsch", args),
        Command::RunDj(args) => run_protocol("run-dj", args),
        Command::PrepareCavity(args) => run_prepare(args),
        Command::CatPrep(args) => run_cat_prep(args),
        Command::Feasibility(args) => run_feasibility(args),
    }
}

/// CLI entry point; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let matches = match Cli::command().try_get_matches_from(argv) {
        Ok(matches) => matches,
        Err(err) => {
            // --help and --version land here with success-style kinds
            use clap::error::ErrorKind;
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{err}");
                return 0;
            }
            eprint!("{err}");
            return 1;
        }
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(cli) => cli,
        Err(err) => {
            eprint!("{err}");
            return 1;
        }
    };
    match dispatch(&cli) {
        Ok(output) => {
            // A closed pipe (e.g. | head) is not a failure of the run.
            use std::io::Write;
            match writeln!(std::io::stdout().lock(), "{output}") {
                Ok(()) => 0,
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
                Err(e) => {
                    eprintln!("error: cannot write report: {e}");
                    1
                }
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angle_literals() {
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert_eq!(parse_angle("2pi").unwrap(), 2.0 * PI);
        assert_eq!(parse_angle("1.5").unwrap(), 1.5);
        assert!(parse_angle("tau").is_err());
    }

    #[test]
    fn format_names() {
        assert_eq!(OutputFormat::parse("json").unwrap(), OutputFormat::Json);
        assert_eq!(OutputFormat::parse("csv").unwrap(), OutputFormat::Csv);
        assert!(OutputFormat::parse("yaml").is_err());
    }

    #[test]
    fn oracle_file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("oracle.txt");
        std::fs::write(&path, "2\n0110\n").unwrap();
        let oracle = parse_oracle_file(&path).unwrap();
        assert_eq!(oracle.n(), 2);
        assert!(oracle.is_parity());

        std::fs::write(&path, "1\n00").unwrap(); // no trailing newline
        let oracle = parse_oracle_file(&path).unwrap();
        assert_eq!(oracle.ones(), 0);
    }

    #[test]
    fn oracle_file_errors_carry_positions() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("oracle.txt");

        std::fs::write(&path, "x\n01\n").unwrap();
        match parse_oracle_file(&path).unwrap_err() {
            Error::OracleFileParse { line, column, .. } => {
                assert_eq!((line, column), (1, 1));
            }
            other => panic!("unexpected error {other:?}"),
        }

        std::fs::write(&path, "2\n01a0\n").unwrap();
        match parse_oracle_file(&path).unwrap_err() {
            Error::OracleFileParse { line, column, .. } => {
                assert_eq!((line, column), (2, 3));
            }
            other => panic!("unexpected error {other:?}"),
        }

        std::fs::write(&path, "2\n011\n").unwrap();
        assert!(matches!(
            parse_oracle_file(&path).unwrap_err(),
            Error::OracleFileParse { line: 2, .. }
        ));

        std::fs::write(&path, "2\n0110\nextra\n").unwrap();
        assert!(matches!(
            parse_oracle_file(&path).unwrap_err(),
            Error::OracleFileParse { line: 3, .. }
        ));

        std::fs::write(&path, "2\n0100\n").unwrap();
        assert!(matches!(
            parse_oracle_file(&path).unwrap_err(),
            Error::OracleClassViolation { ones: 1, size: 4 }
        ));

        assert!(matches!(
            parse_oracle_file(Path::new("/nonexistent/oracle.txt")).unwrap_err(),
            Error::OracleFileRead { .. }
        ));
    }

    #[test]
    fn exit_code_mapping_examples() {
        assert_eq!(Error::InvalidArgument("x".into()).exit_code(), 1);
        assert_eq!(Error::OracleClassViolation { ones: 1, size: 4 }.exit_code(), 2);
        assert_eq!(
            Error::InsufficientTruncation { tail: 1.0, epsilon: 0.5, n_max: 2 }.exit_code(),
            3
        );
    }
}
