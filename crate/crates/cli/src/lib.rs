//! Command-line front end: argument parsing, file I/O and the subcommands.
//! `main` only forwards to [`main_with`] so tests can drive every command.

pub mod args;
pub mod commands;
pub mod io;
pub mod run_manifest;

use anyhow::Result;
use clap::Parser;

use crate::args::{Cli, Command};
pub use crate::commands::RunStatus;
use crate::io::InputError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;

/// Runs a parsed command line.
pub fn run(cli: &Cli, argv: &[String]) -> Result<RunStatus> {
    let go = || match &cli.command {
        Command::BuildVocab(a) => commands::build_vocab(a, argv),
        Command::Extract(a) => commands::extract(a, argv),
        Command::Crossval(a) => commands::crossval(a, argv),
        Command::Train(a) => commands::train(a, argv),
        Command::Predict(a) => commands::predict(a, argv),
        Command::Synth(a) => commands::synth(a, argv),
    };
    match cli.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build()?.install(go),
        None => go(),
    }
}

/// 1 for problems with the user's input, 2 for everything else.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    let input = err.chain().any(|c| {
        c.is::<InputError>()
            || c.is::<goeval::Error>()
            || c.is::<goeval::error::SgfError>()
            || c.is::<std::io::Error>()
    });
    if input {
        EXIT_INPUT
    } else {
        EXIT_INTERNAL
    }
}

/// Parses `argv`, runs the command and returns the process exit status.
pub fn main_with(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match run(&cli, &argv) {
        Ok(RunStatus::Complete) => EXIT_OK,
        Ok(RunStatus::Partial) => EXIT_INPUT,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code(&e)
        }
    }
}
