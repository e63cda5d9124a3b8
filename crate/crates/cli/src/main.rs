use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nahyp_cli::{load_problem, render, run, CliError, Command};

#[derive(Parser)]
#[command(
    name = "nahyp",
    version,
    about = "Hyperbolicity of hypersurface complements over non-archimedean fields"
)]
struct Cli {
    #[command(subcommand)]
    action: Action,
}

#[derive(Subcommand)]
enum Action {
    /// Run the command named in the problem file.
    Run(Args),
    #[command(flatten)]
    Named(Named),
}

#[derive(Subcommand)]
enum Named {
    Decide(Args),
    CheckSmooth(Args),
    CheckTransversal(Args),
    CheckGeneralPosition(Args),
    Inflexion(Args),
    FindInflexions(Args),
    Witness(Args),
    Verify(Args),
    Degeneracy(Args),
    Newton(Args),
}

#[derive(clap::Args)]
struct Args {
    /// Problem file (JSON).
    problem: PathBuf,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Stored series coefficients.
    #[arg(long)]
    precision: Option<usize>,
    #[arg(long)]
    max_ext_degree: Option<usize>,
    /// Reduction-step budget per Groebner basis.
    #[arg(long)]
    budget: Option<u64>,
}

fn execute(args: &Args, command: Option<Command>) -> Result<(), CliError> {
    let mut problem = load_problem(&args.problem)?;
    let o = &mut problem.options;
    o.precision = args.precision.or(o.precision);
    o.max_ext_degree = args.max_ext_degree.or(o.max_ext_degree);
    o.budget = args.budget.or(o.budget);
    let text = render(&run(&problem, command)?);
    match &args.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (args, command) = match &cli.action {
        Action::Run(a) => (a, None),
        Action::Named(n) => match n {
            Named::Decide(a) => (a, Some(Command::Decide)),
            Named::CheckSmooth(a) => (a, Some(Command::CheckSmooth)),
            Named::CheckTransversal(a) => (a, Some(Command::CheckTransversal)),
            Named::CheckGeneralPosition(a) => (a, Some(Command::CheckGeneralPosition)),
            Named::Inflexion(a) => (a, Some(Command::Inflexion)),
            Named::FindInflexions(a) => (a, Some(Command::FindInflexions)),
            Named::Witness(a) => (a, Some(Command::Witness)),
            Named::Verify(a) => (a, Some(Command::Verify)),
            Named::Degeneracy(a) => (a, Some(Command::Degeneracy)),
            Named::Newton(a) => (a, Some(Command::Newton)),
        },
    };
    match execute(args, command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.module());
            ExitCode::FAILURE
        }
    }
}
