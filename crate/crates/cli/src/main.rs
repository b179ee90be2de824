use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod report;

use report::{Format, Report};

#[derive(Parser, Debug)]
#[command(name = "monocat", version, about = "Checks for finite monoids with ideals, finite categories and existence predicates")]
struct Cli {
    /// Report verbosity.
    #[arg(long, value_enum, default_value = "summary", global = true)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Run every sweep on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReadingArg {
    Adjacent,
    Literal,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a monoid, category or relation file.
    Verify { file: PathBuf },
    /// Enumerate the ideals of a monoid and classify them.
    Ideals {
        file: PathBuf,
        #[arg(long, default_value_t = monocat_core::ideal::DEFAULT_IDEAL_SCAN_CAP)]
        cap: usize,
        /// Allow the unit and local units as weak-simplicity witnesses.
        #[arg(long)]
        allow_unit_witness: bool,
    },
    /// Collapse an ideal to a zero, and to the unit.
    Quotient {
        file: PathBuf,
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Check the pushout property against all monoids up to an order.
    Pushout {
        file: PathBuf,
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long, default_value_t = 3)]
        corpus_order: usize,
    },
    /// Complete a category to a monoid with an associative zero.
    ToMonoid {
        file: PathBuf,
        /// Also write the monoid file here.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Read a category off a monoid with an associative ideal.
    ToCategory {
        file: PathBuf,
        #[arg(long)]
        ideal: Option<String>,
        /// Also write the category file here.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Translate there and back and compare.
    Roundtrip {
        file: PathBuf,
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Enumerate chains of a relation and check the sequence properties.
    Chains {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        /// Length bound for the free-monoid ideal checks.
        #[arg(long, default_value_t = 6)]
        bound: usize,
        #[arg(long, value_enum, default_value = "adjacent")]
        reading: ReadingArg,
    },
    /// Rewrite axioms to their localized form.
    Localize {
        file: PathBuf,
        /// Also write the localized axioms here, one per line.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Evaluate the localized monoid axioms on a monoid with an ideal.
    ModelCheck {
        file: PathBuf,
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Scan small monoids for associative ideals that are not prime.
    Search {
        #[arg(long, default_value_t = 3)]
        order: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let strategy = if cli.sequential { monocat_core::Strategy::Sequential } else { monocat_core::Strategy::default() };
    let mut report = Report::new(cli.format);
    if let Err(e) = commands::run(&cli.command, strategy, &mut report) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    let text = report.render();
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: writing {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if report.failed() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
