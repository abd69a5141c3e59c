//! `blackswan`: check proofs, scan finite models, and run the decision-model search.
//!
//! Exit status: 0 on success, 1 when a proof is rejected, a counterexample is
//! found or an expectation is not met, 2 on malformed input or configuration.
//!
//! Size caps can be lowered or raised up to their hard limits with
//! `BLACKSWAN_MAX_N_ARBITRARY`, `BLACKSWAN_MAX_N_STRICT` and `BLACKSWAN_MAX_EVENTS`.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use blackswan_core::decision::Property;
use blackswan_core::models::Mode;
use clap::{Parser, Subcommand, ValueEnum};

use commands::{Expectation, Run};
use config::{Caps, CliError};

#[derive(Debug, Parser)]
#[command(
    name = "blackswan",
    version,
    about = "Proof kernel, finite-model scanner and decision search for the Black Swan axioms"
)]
struct Cli {
    /// Output on standard output.
    #[arg(long, value_enum, global = true, default_value_t = Format::Human)]
    format: Format,
    /// Also write the JSON report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Arbitrary,
    Strict,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Arbitrary => Mode::Arbitrary,
            ModeArg::Strict => Mode::Strict,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PropertyArg {
    Complete,
    #[value(alias = "complete-wrt-occurring")]
    Occurring,
}

impl From<PropertyArg> for Property {
    fn from(p: PropertyArg) -> Self {
        match p {
            PropertyArg::Complete => Property::Complete,
            PropertyArg::Occurring => Property::Occurring,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExpectArg {
    Complete,
    Incomplete,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a proof script. A bundled corpus name may stand in for the path.
    Check {
        file: PathBuf,
        /// Print every line with its justification and schema instantiation.
        #[arg(long)]
        trace: bool,
    },
    /// Scan every finite model up to a size for counterexamples to an entailment.
    Models {
        /// Named axioms or goals, comma separated.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        premises: Vec<String>,
        #[arg(long)]
        conclusion: String,
        /// Largest domain size; defaults to the cap for the mode.
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, value_enum, default_value_t = ModeArg::Arbitrary)]
        mode: ModeArg,
    },
    /// Check the decision map in a universe file, and optionally search all maps.
    Decision {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = PropertyArg::Occurring)]
        property: PropertyArg,
        #[arg(long, default_value_t = 2)]
        max_actions: usize,
        #[arg(long, default_value_t = 2)]
        max_outcomes: usize,
        /// Search every decision map within the bounds.
        #[arg(long)]
        search: bool,
        /// Succeed only if the verdict matches.
        #[arg(long, value_enum)]
        expect: Option<ExpectArg>,
    },
    /// Bundled proofs.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Debug, Subcommand)]
enum CorpusAction {
    List,
    Check,
    Show { name: String },
}

fn run(cli: &Cli) -> Result<Run, CliError> {
    let caps = Caps::from_env()?;
    match &cli.command {
        Command::Check { file, trace } => commands::check(file, *trace),
        Command::Models {
            premises,
            conclusion,
            max_n,
            mode,
        } => {
            let premises: Vec<String> =
                premises.iter().filter(|p| !p.is_empty()).cloned().collect();
            commands::models(&premises, conclusion, *max_n, (*mode).into(), &caps)
        }
        Command::Decision {
            file,
            property,
            max_actions,
            max_outcomes,
            search,
            expect,
        } => {
            let expect = expect.map(|e| match e {
                ExpectArg::Complete => Expectation::Complete,
                ExpectArg::Incomplete => Expectation::Incomplete,
            });
            commands::decision(
                file,
                (*property).into(),
                *max_actions,
                *max_outcomes,
                *search,
                expect,
                &caps,
            )
        }
        Command::Corpus { action } => match action {
            CorpusAction::List => Ok(commands::corpus_list()),
            CorpusAction::Check => commands::corpus_check(),
            CorpusAction::Show { name } => commands::corpus_show(name),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(result) => {
            match cli.format {
                Format::Human => print!("{}", result.text),
                Format::Json => println!("{}", result.json),
            }
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, format!("{}\n", result.json)) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(result.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
