use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use consprop_cli::{cmd_build, cmd_check, cmd_decode, cmd_demo, Output};

/// Term models of and-or theories over finite classes, and hereditarily
/// finite codes.
#[derive(Parser)]
#[command(name = "consprop", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Is a finite literal set realized by some member of the scenario's class?
    Check {
        /// Scenario file, or `bundled:<name>`
        scenario: String,
        /// Literal set such as `{P(c0), !(c0 = c1)}`
        condition: String,
    },
    /// Run the construction and build the term model.
    Build {
        scenario: String,
        /// Write sigma.txt, trace.txt, model.txt and summary.txt here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decode `wfe:{(k,j),..}`, `bits:0101..` or `ack:N`; encode a `{..}` set.
    Decode { code: String },
    /// Run a bundled demo: oror-counterexample or mini-certificate.
    Demo {
        name: String,
        /// Stage budget for oror-counterexample
        #[arg(long)]
        k: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let out: Output = match &cli.command {
        Command::Check { scenario, condition } => cmd_check(scenario, condition),
        Command::Build { scenario, out } => cmd_build(scenario, out.as_deref()),
        Command::Decode { code } => cmd_decode(code),
        Command::Demo { name, k } => cmd_demo(name, *k),
    };
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
