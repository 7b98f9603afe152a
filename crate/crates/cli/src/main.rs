use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod report;

use commands::Options;

/// Exact rational-homotopy invariants of Sullivan and Quillen models.
#[derive(Debug, Parser)]
#[command(name = "elliptica", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print a JSON report instead of tables.
    #[arg(long, global = true)]
    json: bool,
    /// Last degree to tabulate; verdicts never use less than the elliptic window.
    #[arg(long, global = true, value_name = "D")]
    max_degree: Option<u32>,
    /// Include representatives and claim statements.
    #[arg(long, short, global = true)]
    verbose: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and validate a model file.
    Check { path: String },
    /// Betti numbers of a Sullivan model, or homology of a Quillen model.
    Cohomology { path: String },
    /// Euler characteristics, rho or eta, and structural flags.
    Invariants { path: String },
    /// Dimensions and ranks along the Whitehead exact sequence.
    Whitehead { path: String },
    /// Evaluate every structural claim on the model.
    Verify { path: String },
    /// Check that a Sullivan and a Quillen model describe the same space.
    Compare { sullivan: String, quillen: String },
    /// Built-in models.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Debug, Subcommand)]
enum CatalogAction {
    /// List catalog entries.
    List,
    /// Print an entry as .rhm text, e.g. `show cpn_sullivan 2` or `show 'product(s2,s2)'`.
    Show { name: String, params: Vec<u32> },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        max_degree: cli.max_degree,
        verbose: cli.verbose,
    };
    let report = match &cli.command {
        Command::Check { path } => commands::check(path),
        Command::Cohomology { path } => commands::cohomology(path, opts),
        Command::Invariants { path } => commands::invariants(path, opts),
        Command::Whitehead { path } => commands::whitehead(path, opts),
        Command::Verify { path } => commands::verify(path, opts),
        Command::Compare { sullivan, quillen } => commands::compare(sullivan, quillen),
        Command::Catalog { action } => match action {
            CatalogAction::List => commands::catalog_list(),
            CatalogAction::Show { name, params } => commands::catalog_show(name, params),
        },
    };
    // a closed stdout (e.g. piped into `head`) must not turn into a panic
    let mut out = io::stdout().lock();
    let _ = if cli.json {
        writeln!(out, "{}", report.to_json())
    } else {
        report.text.iter().try_for_each(|line| writeln!(out, "{line}"))
    };
    for d in &report.diagnostics {
        eprintln!("{d}");
    }
    ExitCode::from(report.status.exit_code())
}
