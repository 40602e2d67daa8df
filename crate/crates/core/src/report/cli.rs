use std::io::Write;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use super::{
    cmd_hist, cmd_sweep, cmd_theorem, cmd_verify, exit_code, HistArgs, SweepArgs, TheoremArgs,
    VerifyArgs, EXIT_SUCCESS, EXIT_USAGE,
};

/// Distance concentration checks for lattice hypercubes.
#[derive(Debug, Parser)]
#[command(name = "hyperlens", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compare closed-form moments with exhaustive enumeration.
    Verify(VerifyArgs),
    /// Estimate one theorem's event proportion and print the verdict as JSON.
    Theorem(TheoremArgs),
    /// Write a histogram of sampled distances or cosines as CSV.
    Hist(HistArgs),
    /// Run a theorem over a grid of dimensions and exponents, writing CSV.
    Sweep(SweepArgs),
}

/// Parses `argv` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    EXIT_SUCCESS
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Verify(args) => cmd_verify(args, stdout),
        Command::Theorem(args) => cmd_theorem(args, stdout),
        Command::Hist(args) => cmd_hist(args, &argv, stdout),
        Command::Sweep(args) => cmd_sweep(args, &argv, stdout),
    };
    if let Err(e) = &result {
        let _ = writeln!(stderr, "error: {e}");
    }
    exit_code(&result)
}
