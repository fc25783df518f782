//! `oqlkit`: checks lattice models, distributive ideals, inductions and
//! quantales from the command line.
//!
//! Exit status is 0 when every requested law holds, 1 when one fails and 2
//! when the input cannot be read, parsed or built.

mod commands;
mod output;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use oqlkit_core::catalog::CatalogError;
use oqlkit_core::dsl::ModelError;
use oqlkit_core::{Caps, DynError, IdealError, QuantaleError};
use thiserror::Error;

use crate::output::{error_json, Outcome};

#[derive(Debug, Parser)]
#[command(name = "oqlkit", version, about = "Finite models of operational quantum logic")]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Override the lattice-size cap for distributive-ideal enumeration.
    #[arg(long, global = true, env = Caps::ENV_VAR, value_name = "N")]
    cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Structural checks on the lattice and its state space.
    Check {
        file: PathBuf,
        /// Orthocomplement present, with De Morgan.
        #[arg(long)]
        ortho: bool,
        /// Orthomodular law (with the Sasaki adjunction as a note).
        #[arg(long)]
        omod: bool,
        #[arg(long)]
        atomistic: bool,
        /// Every singleton state set is closed.
        #[arg(long)]
        separating: bool,
    },
    /// Distributive ideals and their Heyting laws.
    Di {
        file: PathBuf,
        /// Print every ideal.
        #[arg(long)]
        list: bool,
        /// Print the number of ideals.
        #[arg(long)]
        count: bool,
    },
    /// Evaluates a formula to a distributive ideal.
    Eval {
        file: PathBuf,
        #[arg(long, short = 'f')]
        formula: String,
        /// Only report whether the formula is valid; invalid exits with 1.
        #[arg(long)]
        valid: bool,
    },
    /// Laws of one induction.
    Dyn {
        file: PathBuf,
        #[arg(long, short = 'i')]
        induction: String,
        /// Both continuity conditions.
        #[arg(long)]
        continuity: bool,
        /// Propagation and causation tables with the adjunctions.
        #[arg(long)]
        adjoint: bool,
        /// Relational inverse against the adjoint on atom sets.
        #[arg(long)]
        inverse_compare: bool,
        /// With --inverse-compare, a discontinuous inverse is a failure.
        #[arg(long)]
        strict_inverse: bool,
    },
    /// Quantale laws of an induction's tensor.
    Quantale {
        file: PathBuf,
        #[arg(long, short = 'i')]
        induction: String,
        #[arg(long, default_value = "fwd")]
        direction: oqlkit_core::Direction,
        /// Search for dualizing elements and check the Girard laws.
        #[arg(long)]
        girard: bool,
    },
    /// Writes a catalog model file, or lists the catalog.
    Catalog {
        name: Option<String>,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Di { .. } => "di",
            Command::Eval { .. } => "eval",
            Command::Dyn { .. } => "dyn",
            Command::Quantale { .. } => "quantale",
            Command::Catalog { .. } => "catalog",
        }
    }
}

/// Anything that stops a command before a verdict. Exit status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Model { path: String, source: ModelError },
    #[error("{0}")]
    Input(ModelError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Dyn(#[from] DynError),
    #[error(transparent)]
    Quantale(#[from] QuantaleError),
}

fn run(cli: &Cli, caps: Caps) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Check {
            file,
            ortho,
            omod,
            atomistic,
            separating,
        } => commands::check(
            file,
            caps,
            commands::CheckFlags {
                ortho: *ortho,
                omod: *omod,
                atomistic: *atomistic,
                separating: *separating,
            },
        ),
        Command::Di { file, list, count } => commands::di(file, caps, *list, *count),
        Command::Eval { file, formula, valid } => commands::eval(file, caps, formula, *valid),
        Command::Dyn {
            file,
            induction,
            continuity,
            adjoint,
            inverse_compare,
            strict_inverse,
        } => commands::dynamics(
            file,
            caps,
            induction,
            commands::DynFlags {
                continuity: *continuity,
                adjoint: *adjoint,
                inverse_compare: *inverse_compare,
                strict_inverse: *strict_inverse,
            },
        ),
        Command::Quantale {
            file,
            induction,
            direction,
            girard,
        } => commands::quantale(file, caps, induction, *direction, *girard),
        Command::Catalog { name, output } => commands::catalog(name.as_deref(), output.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = cli.cap.map_or_else(Caps::default, Caps::with_size);
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = run(&cli, caps);
    let printed = match &result {
        Ok(outcome) if cli.json => writeln!(out, "{:#}", outcome.to_json()),
        Ok(outcome) => outcome.write_text(&mut out),
        Err(err) => {
            eprintln!("error: {err}");
            if cli.json {
                writeln!(out, "{:#}", error_json(cli.command.name(), err))
            } else {
                Ok(())
            }
        }
    };
    if printed.is_err() {
        return ExitCode::from(2);
    }
    match result {
        Ok(outcome) if outcome.passed() => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(_) => ExitCode::from(2),
    }
}
