//! `wschreier`: check monoids, build λ-semidirect products and glueings,
//! extract and compare weakly Schreier extensions, enumerate and draw them.
//!
//! Every run prints a `key: value` report on standard output ending in a
//! `status:` line. Exit codes: 0 pass, 1 mathematical failure, 2 bad input.

mod commands;
mod load;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use report::{exit, Report, Status};

#[derive(Parser)]
#[command(name = "wschreier", version, about = "Weakly Schreier extensions of finite monoids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the monoid laws and report inverse (and frame) structure.
    Check {
        file: PathBuf,
        /// Also require the monoid to be a frame under its multiplication.
        #[arg(long)]
        as_frame: bool,
    },
    /// Print the inverse of every element of an inverse monoid.
    Inverse { file: PathBuf },
    /// Build the λ-semidirect product of an action file.
    Lambda {
        file: PathBuf,
        /// Write the extension to this .ext file plus its three monoid files.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Build the Artin glueing of a meet-preserving map between frames.
    Glue {
        file: PathBuf,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Extract the admissible relation and action of an extension file.
    Extract { file: PathBuf },
    /// Compare two actions or extensions in the preorder of extensions.
    Compare { a: PathBuf, b: PathBuf },
    /// Join two Artin-like actions given by maps H -> N.
    Join { f: PathBuf, g: PathBuf },
    /// List the actions or admissible pairs for given N and H.
    Enumerate {
        n: PathBuf,
        h: PathBuf,
        /// Inverse monoid actions of H on N.
        #[arg(long, conflicts_with = "wactions")]
        actions: bool,
        /// Admissible relations with compatible actions (default).
        #[arg(long)]
        wactions: bool,
        /// List at most K items; the count is always complete.
        #[arg(long, value_name = "K")]
        limit: Option<usize>,
    },
    /// Write the Hasse diagram of the preorder of extensions as DOT.
    Poset {
        n: PathBuf,
        h: PathBuf,
        #[arg(long, value_name = "OUT")]
        dot: PathBuf,
    },
}

impl Command {
    fn verb(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Inverse { .. } => "inverse",
            Command::Lambda { .. } => "lambda",
            Command::Glue { .. } => "glue",
            Command::Extract { .. } => "extract",
            Command::Compare { .. } => "compare",
            Command::Join { .. } => "join",
            Command::Enumerate { .. } => "enumerate",
            Command::Poset { .. } => "poset",
        }
    }
}

fn run(cmd: Command) -> (String, Status) {
    let mut r = Report::new(cmd.verb());
    let outcome = match cmd {
        Command::Check { file, as_frame } => commands::check(&mut r, &file, as_frame),
        Command::Inverse { file } => commands::inverse(&mut r, &file),
        Command::Lambda { file, emit } => commands::lambda(&mut r, &file, emit.as_deref()),
        Command::Glue { file, emit } => commands::glue(&mut r, &file, emit.as_deref()),
        Command::Extract { file } => commands::extract(&mut r, &file),
        Command::Compare { a, b } => commands::compare(&mut r, &a, &b),
        Command::Join { f, g } => commands::join(&mut r, &f, &g),
        Command::Enumerate { n, h, actions, limit, .. } => commands::enumerate(&mut r, &n, &h, actions, limit),
        Command::Poset { n, h, dot } => commands::poset(&mut r, &n, &h, &dot),
    };
    r.finish(outcome)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let message = text
                .lines()
                .take_while(|l| !l.starts_with("Usage:"))
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .collect::<Vec<_>>()
                .join(" ");
            let (report, status) = Report::new("none").finish(Err(report::input(message.trim_start_matches("error: "))));
            print!("{report}");
            println!();
            print!("{}", e.render());
            return exit(status);
        }
    };
    let (report, status) = run(cli.command);
    print!("{report}");
    exit(status)
}
