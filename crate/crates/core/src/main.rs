use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use charvar::problem::{parse_problem, Problem};
use charvar::report::{analyze, lagrangian_report, omega_report, scheme_report, Report};

/// Tangent spaces, cohomology and symplectic pairings of representation
/// varieties of finitely presented groups.
#[derive(Parser)]
#[command(name = "charvar", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Problem file.
    file: PathBuf,
    /// Emit `key = value` lines instead of the annotated report.
    #[arg(long)]
    machine: bool,
    /// Longest word tried by the spanning test.
    #[arg(long, default_value_t = 6)]
    word_cap: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Validation, centralizer, irreducibility and H¹.
    Analyze(Common),
    /// Polynomial equations, Jacobian rank and tangent dimension.
    Scheme {
        #[command(flatten)]
        common: Common,
        /// Also print every equation.
        #[arg(long)]
        emit_equations: bool,
    },
    /// Restriction of H¹ to a boundary surface, with the Lagrangian test.
    Lagrangian(Common),
    /// The pairing matrix on H¹ of a surface group.
    Omega(Common),
}

fn load(common: &Common) -> Result<Problem, ExitCode> {
    let text = std::fs::read_to_string(&common.file).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", common.file.display());
        ExitCode::from(2)
    })?;
    parse_problem(&text).map_err(|e| {
        eprintln!("{}: {e}", common.file.display());
        ExitCode::from(2)
    })
}

fn emit(report: &Report, machine: bool) -> ExitCode {
    if machine {
        print!("{}", report.machine());
    } else {
        print!("{}", report.human());
    }
    if report.failed() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = match &cli.command {
        Command::Analyze(c) | Command::Lagrangian(c) | Command::Omega(c) => c,
        Command::Scheme { common, .. } => common,
    };
    let problem = match load(common) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let report = match &cli.command {
        Command::Analyze(_) => analyze(&problem, common.word_cap),
        Command::Scheme { emit_equations, .. } => scheme_report(&problem, *emit_equations),
        Command::Lagrangian(_) => lagrangian_report(&problem),
        Command::Omega(_) => omega_report(&problem),
    };
    emit(&report, common.machine)
}
