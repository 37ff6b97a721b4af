mod commands;
mod input;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "detsing", version, about = "Milnor numbers and polar multiplicities of determinantal singularities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Clone)]
pub struct Global {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Fresh random choices tried after a failed genericity check.
    #[arg(long, global = true, default_value_t = 8)]
    pub retries: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, short, global = true)]
    pub verbose: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Args, Clone)]
pub struct Source {
    /// Catalog entry id.
    #[arg(long, conflicts_with = "input")]
    pub catalog: Option<String>,
    /// Matrix file (TOML).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Parameter assignment, e.g. `k=3`.
    #[arg(long = "param", value_name = "NAME=N")]
    pub params: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Checks that the input is an isolated determinantal germ.
    Check {
        #[command(flatten)]
        source: Source,
    },
    /// Milnor number (curves, surfaces) or the combined count (threefolds).
    Milnor {
        #[command(flatten)]
        source: Source,
        /// `auto` or a linear form such as "y-z".
        #[arg(long, default_value = "auto")]
        projection: String,
        /// `auto`, `template`, or a matrix file with a deformation block.
        #[arg(long, default_value = "auto")]
        perturbation: String,
    },
    /// The built-in catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Gröbner basis of the generators in a file, one polynomial per line.
    Gb {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = commands::GbOrdering::Degrevlex)]
        ordering: commands::GbOrdering,
        /// Comma-separated variable names; inferred from the file when absent.
        #[arg(long)]
        vars: Option<String>,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    /// Runs every entry and compares with the stored values.
    RunAll {
        /// Largest k swept for parametric entries. ex3 at k = 4 runs for hours.
        #[arg(long, default_value_t = 3)]
        max_k: i64,
        /// Restrict to these entry ids.
        #[arg(long = "only", value_name = "ID")]
        only: Vec<String>,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Writes computed values to a golden file.
        #[arg(long, value_name = "PATH")]
        freeze: Option<PathBuf>,
    },
    /// Prints an entry as a matrix file.
    Export {
        id: String,
        #[arg(long = "param", value_name = "NAME=N")]
        params: Vec<String>,
    },
}

/// Exit status: 0 pass, 1 usage or parse error, 2 mathematical failure.
pub enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let g = &cli.global;
    let result = match cli.command {
        Command::Check { source } => commands::check(&source, g),
        Command::Milnor { source, projection, perturbation } => commands::milnor(&source, &projection, &perturbation, g),
        Command::Catalog { action: CatalogAction::List } => commands::catalog_list(g),
        Command::Catalog { action: CatalogAction::RunAll { max_k, only, jobs, freeze } } => {
            commands::run_all(&commands::RunAllOptions { max_k, only, jobs: jobs.max(1), freeze }, g)
        }
        Command::Catalog { action: CatalogAction::Export { id, params } } => commands::export(&id, &params),
        Command::Gb { path, ordering, vars } => commands::gb(&path, ordering, vars.as_deref(), g),
    };
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
