use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

mod commands;
mod report;

/// Type-checks modal type theory and verifies modality laws on finite models.
#[derive(Parser)]
#[command(name = "modal", version)]
struct Cli {
    /// Print the elapsed time after the report.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every definition in a source file.
    Check { file: PathBuf },
    /// Print the type and normal form of a definition.
    Eval {
        file: PathBuf,
        #[arg(long = "def")]
        def: String,
    },
    /// Nuclei on the frame of down-sets of a poset.
    Nuclei {
        #[arg(long)]
        poset: PathBuf,
        /// List every nucleus (the default when nothing else is asked).
        #[arg(long)]
        enumerate: bool,
        /// Check that joins of nuclei distribute over meets.
        #[arg(long)]
        coframe: bool,
        /// Check a = (q ∨ a) ∧ (q ⇒ a) for every a.
        #[arg(long, value_name = "Q")]
        fracture_taut: Option<String>,
        /// Check a raw table against the nucleus laws.
        #[arg(long, value_name = "FILE")]
        nucleus_table: Option<PathBuf>,
    },
    /// Sheafify a presheaf for a nucleus.
    Sheafify {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long)]
        presheaf: PathBuf,
        #[command(flatten)]
        nucleus: NucleusArg,
    },
    /// The fracture square of a presheaf at a subterminal, and gluing.
    Fracture {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long)]
        presheaf: PathBuf,
        /// A down-set, as comma-separated elements.
        #[arg(long)]
        q: String,
    },
    /// Factor a presheaf map into a connected map followed by a modal one.
    Factorize {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[command(flatten)]
        nucleus: NucleusArg,
    },
    /// Run the exhaustive checks; MODAL_SUITE_BUDGET (seconds) shrinks them.
    Suite {
        /// Run only these criteria (1 to 9).
        #[arg(long = "criterion", value_parser = clap::value_parser!(u8).range(1..=9))]
        criteria: Vec<u8>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct NucleusArg {
    /// id, top, dneg, open:<q> or closed:<q>.
    #[arg(long)]
    nucleus: Option<String>,
    /// A raw table, checked against the nucleus laws before use.
    #[arg(long, value_name = "FILE")]
    nucleus_table: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = match cli.command {
        Command::Check { file } => commands::check(&file),
        Command::Eval { file, def } => commands::eval(&file, &def),
        Command::Nuclei { poset, enumerate, coframe, fracture_taut, nucleus_table } => {
            commands::nuclei(&poset, enumerate, coframe, fracture_taut.as_deref(), nucleus_table.as_deref())
        }
        Command::Sheafify { poset, presheaf, nucleus } => {
            commands::sheafify(&poset, &presheaf, nucleus.nucleus.as_deref(), nucleus.nucleus_table.as_deref())
        }
        Command::Fracture { poset, presheaf, q } => commands::fracture(&poset, &presheaf, &q),
        Command::Factorize { poset, map, nucleus } => {
            commands::factorize(&poset, &map, nucleus.nucleus.as_deref(), nucleus.nucleus_table.as_deref())
        }
        Command::Suite { criteria } => commands::suite(&criteria),
    };
    match result {
        Ok(mut report) => {
            report.command =
                std::env::args().skip(1).filter(|a| a != "-v" && a != "--verbose").collect::<Vec<_>>().join(" ");
            report.elapsed = start.elapsed();
            print!("{}", report.render(cli.verbose));
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
