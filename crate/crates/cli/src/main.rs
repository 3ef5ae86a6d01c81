use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kdiverse_core::driver::{self, Input, Problem, RunConfig};
use kdiverse_core::framework::{Backend, Measure};
use kdiverse_core::io::parse_table;
use kdiverse_core::Error;
use serde::Serialize;

/// Maximally diverse k-tuples of minimum s-t cuts, stable matchings, and
/// members of sublattices of products of total orders.
#[derive(Parser, Debug)]
#[command(name = "kdiverse", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Diverse minimum s-t cuts of a DIMACS max-flow file (unit capacities).
    Mincut(SolveArgs),
    /// Diverse stable matchings of a preference-list file.
    Sm(SolveArgs),
    /// Diverse members of a lattice given as JSON.
    Lattice(SolveArgs),
    /// Exhaustive optimum for a small instance.
    Oracle(CheckArgs),
    /// Compare both backends with the exhaustive optimum.
    Selftest(CheckArgs),
}

#[derive(Args, Debug)]
struct Common {
    /// Number of solutions.
    #[arg(long)]
    k: usize,
    /// `sum`, `cov`, or `table:<path>` (one value of phi per line, from phi(0)).
    #[arg(long, default_value = "sum")]
    measure: String,
    /// Where to write the JSON report; `-` is stdout.
    #[arg(long, default_value = "-")]
    output: String,
    input: PathBuf,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    common: Common,
    /// mcf, cut or auto.
    #[arg(long, default_value = "auto")]
    backend: Backend,
    /// Write the min-cost-flow network as JSON.
    #[arg(long)]
    dump_mcf: Option<PathBuf>,
    /// Write the layered cut graph as DOT.
    #[arg(long)]
    dump_cut: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// mincut, sm or lattice.
    problem: Problem,
    #[command(flatten)]
    common: Common,
}

fn parse_measure(spec: &str) -> Result<Measure, Error> {
    match spec {
        "sum" => Ok(Measure::Sum),
        "cov" => Ok(Measure::Cov),
        _ => match spec.strip_prefix("table:") {
            Some(path) => Ok(Measure::Table(parse_table(&read(Path::new(path))?)?)),
            None => Err(Error::Input(format!("unknown measure `{spec}`"))),
        },
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn write(path: &str, text: &str) -> Result<(), Error> {
    if path == "-" {
        println!("{text}");
        Ok(())
    } else {
        fs::write(path, format!("{text}\n")).map_err(|e| Error::Internal(format!("{path}: {e}")))
    }
}

fn emit(output: &str, value: &impl Serialize) -> Result<(), Error> {
    write(output, &serde_json::to_string_pretty(value).expect("report serializes"))
}

fn load(problem: Problem, common: &Common) -> Result<(Input, Measure), Error> {
    let measure = parse_measure(&common.measure)?;
    let text = read(&common.input)?;
    let input = Input::parse(problem, &text).map_err(|e| match e {
        Error::Parse { line, message } => Error::Input(format!("{}:{line}: {message}", common.input.display())),
        other => other,
    })?;
    Ok((input, measure))
}

fn solve(problem: Problem, args: &SolveArgs) -> Result<u8, Error> {
    let (input, measure) = load(problem, &args.common)?;
    let cfg = RunConfig {
        k: args.common.k,
        measure,
        backend: args.backend,
    };
    let report = driver::run(&input, &cfg)?;
    if let Some(path) = &args.dump_mcf {
        write(&path.to_string_lossy(), &driver::dump_mcf(&input, &cfg)?)?;
    }
    if let Some(path) = &args.dump_cut {
        write(&path.to_string_lossy(), &driver::dump_cut(&input, &cfg)?)?;
    }
    emit(&args.common.output, &report)?;
    Ok(0)
}

fn check(args: &CheckArgs, full: bool) -> Result<u8, Error> {
    let (input, measure) = load(args.problem, &args.common)?;
    if matches!(measure, Measure::Table(_)) {
        return Err(Error::UnsupportedPenalty);
    }
    let k = args.common.k;
    if k == 0 {
        return Err(Error::InvalidK(0));
    }
    if !full {
        emit(&args.common.output, &driver::run_oracle(&input, k, &measure)?)?;
        return Ok(0);
    }
    let report = driver::selftest(&input, k, &measure)?;
    emit(&args.common.output, &report)?;
    if report.agree {
        Ok(0)
    } else {
        eprintln!("error: backends and oracle disagree; reproduction written to the report");
        Ok(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Mincut(a) => solve(Problem::Mincut, a),
        Command::Sm(a) => solve(Problem::Sm, a),
        Command::Lattice(a) => solve(Problem::Lattice, a),
        Command::Oracle(a) => check(a, false),
        Command::Selftest(a) => check(a, true),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(driver::exit_code(&e) as u8)
        }
    }
}
